#include "itt/asymptotics.hpp"

#include <cmath>
#include <stdexcept>

#include <boost/math/special_functions/gamma.hpp>

namespace itt {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

SaddleResult finish(SaddleResult r, int n) {
    r.log_estimate = static_cast<double>(n) * r.f_at + std::log(r.prefactor);
    return r;
}

}  // namespace

SaddleResult laplace_interior(const ScalarFn& f, const ScalarFn& g, int n, double lo, double hi) {
    if (n < 1) throw std::invalid_argument("laplace_interior: n < 1");
    if (!(lo < hi)) throw std::invalid_argument("laplace_interior: empty bracket");
    auto d1 = [&](double x) { return f.first(x); };
    auto d2 = [&](double x) { return f.second(x); };
    double x0 = bracketed_newton(d1, d2, lo, hi, 1e-15);
    double fpp = f.second(x0);
    if (!(fpp < 0.0)) throw std::domain_error("laplace_interior: f'' >= 0 at the stationary point");
    SaddleResult r;
    r.mode = SaddleMode::interior;
    r.location = x0;
    r.f_at = f(x0);
    r.f_second = fpp;
    r.prefactor = g(x0) * std::sqrt(kTwoPi / (static_cast<double>(n) * -fpp));
    return finish(r, n);
}

SaddleResult laplace_boundary(const ScalarFn& f, int n, double endpoint, Side side) {
    if (n < 1) throw std::invalid_argument("laplace_boundary: n < 1");
    double slope = f.first(endpoint);
    SaddleResult r;
    r.mode = SaddleMode::boundary;
    r.location = endpoint;
    r.f_at = f(endpoint);
    r.f_second = f.second(endpoint);
    const double dn = static_cast<double>(n);
    if (std::abs(slope) <= 1e-10) {
        if (!(r.f_second < 0.0)) throw std::domain_error("laplace_boundary: flat endpoint is not a maximum");
        r.prefactor = 0.5 * std::sqrt(kTwoPi / (dn * -r.f_second));
        return finish(r, n);
    }
    bool inward_decreasing = (side == Side::left) ? slope < 0.0 : slope > 0.0;
    if (!inward_decreasing) throw std::domain_error("laplace_boundary: slope has the wrong sign");
    r.prefactor = 1.0 / (dn * std::abs(slope));
    return finish(r, n);
}

StirlingResult stirling(std::int64_t n) {
    if (n < 1) throw std::invalid_argument("stirling: n < 1");
    double dn = static_cast<double>(n);
    StirlingResult r;
    r.log_approx = dn * (std::log(dn) - 1.0) + 0.5 * std::log(kTwoPi * dn);
    r.approx = std::exp(r.log_approx);
    return r;
}

SaddleResult binomial_count_saddle(std::int64_t n, std::int64_t k) {
    if (n < 2 || k <= 0 || k >= n)
        throw std::domain_error("binomial_count_saddle: requires 0 < k < n (the count is 1 at the ends)");
    double q = static_cast<double>(k) / static_cast<double>(n);
    SaddleResult r;
    r.mode = SaddleMode::interior;
    r.location = q / (1.0 - q);
    r.f_at = binary_entropy(q);
    // Second derivative of ln(1 + z) - q ln z at the saddle; positive along
    // the real axis, the integration path crosses it vertically.
    r.f_second = std::pow(1.0 - q, 3) / q;
    r.prefactor = 1.0 / std::sqrt(kTwoPi * static_cast<double>(n) * q * (1.0 - q));
    r.log_estimate = static_cast<double>(n) * r.f_at + std::log(r.prefactor);
    return r;
}

SphereResult hypersphere_surface(int n, double s) {
    if (n < 1) throw std::invalid_argument("hypersphere_surface: n < 1");
    if (!(s > 0.0)) throw std::domain_error("hypersphere_surface: s <= 0");
    const double dn = static_cast<double>(n);
    const double pi = kTwoPi / 2.0;
    SphereResult r;
    r.exact_log = std::log(2.0) + 0.5 * dn * std::log(pi) + 0.5 * (dn - 1.0) * std::log(dn * s) -
                  boost::math::lgamma(0.5 * dn);
    r.saddle_log = 0.5 * dn * std::log(kTwoPi * std::exp(1.0) * s) - 0.5 * std::log(pi * s);
    return r;
}

LatticePmf LatticePmf::bernoulli(double p) {
    if (!(p > 0.0 && p < 1.0)) throw std::domain_error("LatticePmf::bernoulli: p outside (0,1)");
    return LatticePmf{1.0, 0.0, {1.0 - p, p}};
}

double LatticePmf::mean() const {
    double m = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) m += weights[i] * (offset + delta * static_cast<double>(i));
    return m;
}

double LatticePmf::max_value() const {
    for (std::size_t i = weights.size(); i-- > 0;)
        if (weights[i] > 0.0) return offset + delta * static_cast<double>(i);
    throw std::invalid_argument("LatticePmf: no mass");
}

namespace {

struct TiltMoments {
    double log_z, mean, var;
};

TiltMoments tilt(const LatticePmf& p, double s) {
    std::vector<double> lw;
    for (std::size_t i = 0; i < p.weights.size(); ++i)
        if (p.weights[i] > 0.0)
            lw.push_back(std::log(p.weights[i]) + s * (p.offset + p.delta * static_cast<double>(i)));
    double lz = log_sum_exp(lw);
    double m = 0.0, m2 = 0.0;
    std::size_t j = 0;
    for (std::size_t i = 0; i < p.weights.size(); ++i) {
        if (!(p.weights[i] > 0.0)) continue;
        double x = p.offset + p.delta * static_cast<double>(i);
        double w = std::exp(lw[j++] - lz);
        m += w * x;
        m2 += w * x * x;
    }
    return {lz, m, std::max(m2 - m * m, 0.0)};
}

double lattice_remainder(double v, double delta) {
    double r = std::fmod(v, delta);
    if (r < 0.0) r += delta;
    if (r > delta * (1.0 - 1e-9) || r < delta * 1e-9) r = 0.0;
    return r;
}

}  // namespace

double LatticePmf::cgf(double s) const { return tilt(*this, s).log_z; }
double LatticePmf::cgf_d1(double s) const { return tilt(*this, s).mean; }
double LatticePmf::cgf_d2(double s) const { return tilt(*this, s).var; }

TailResult bahadur_rao_tail(const LatticePmf& pmf, double A, int n) {
    if (n < 1) throw std::invalid_argument("bahadur_rao_tail: n < 1");
    const double mu = pmf.mean();
    TailResult r;
    if (A <= mu + 1e-14 * (1.0 + std::abs(mu))) {
        r.log_prob = std::numeric_limits<double>::quiet_NaN();
        r.prefactor = std::numeric_limits<double>::quiet_NaN();
        return r;
    }
    if (!(A < pmf.max_value())) throw std::domain_error("bahadur_rao_tail: A at or beyond the essential supremum");
    auto g = [&](double s) { return pmf.cgf_d1(s) - A; };
    auto dg = [&](double s) { return pmf.cgf_d2(s); };
    double hi = 1.0;
    while (g(hi) < 0.0) {
        hi *= 2.0;
        if (hi > 1e6) throw std::runtime_error("bahadur_rao_tail: tilting root not bracketed");
    }
    double s = bracketed_newton(g, dg, 0.0, hi, 1e-16);
    TiltMoments t = tilt(pmf, s);
    const double dn = static_cast<double>(n);
    r.has_estimate = true;
    r.s_star = s;
    r.variance = t.var;
    r.exponent = s * A - t.log_z;
    double rem = lattice_remainder(dn * pmf.offset - dn * A, pmf.delta);
    r.prefactor = pmf.delta * std::exp(-s * rem) /
                  ((1.0 - std::exp(-s * pmf.delta)) * std::sqrt(kTwoPi * dn * t.var));
    r.log_prob = -dn * r.exponent + std::log(r.prefactor);
    return r;
}

TailResult bahadur_rao_tail(const DensityCgf& law, double A, int n) {
    if (n < 1) throw std::invalid_argument("bahadur_rao_tail: n < 1");
    TailResult r;
    if (A <= law.mean + 1e-14 * (1.0 + std::abs(law.mean))) {
        r.log_prob = std::numeric_limits<double>::quiet_NaN();
        r.prefactor = std::numeric_limits<double>::quiet_NaN();
        return r;
    }
    if (!(A < law.ess_sup)) throw std::domain_error("bahadur_rao_tail: A at or beyond the essential supremum");
    auto g = [&](double s) { return law.cgf.first(s) - A; };
    auto dg = [&](double s) { return law.cgf.second(s); };
    double hi = std::min(1.0, 0.5 * law.s_max);
    while (g(hi) < 0.0) {
        double next = std::min(2.0 * hi, 0.5 * (hi + law.s_max));
        if (next == hi || next > 1e6) throw std::runtime_error("bahadur_rao_tail: tilting root not bracketed");
        hi = next;
    }
    double s = bracketed_newton(g, dg, 0.0, hi, 1e-16);
    const double dn = static_cast<double>(n);
    r.has_estimate = true;
    r.s_star = s;
    r.variance = law.cgf.second(s);
    r.exponent = s * A - law.cgf(s);
    r.prefactor = 1.0 / (s * std::sqrt(kTwoPi * dn * r.variance));
    r.log_prob = -dn * r.exponent + std::log(r.prefactor);
    return r;
}

double lattice_count_exponent(double delta, double Q, double s) {
    return Q * s - std::log(std::tanh(0.5 * delta * s));
}

LatticeCountResult lattice_code_count(double delta, double Q, int n) {
    if (!(delta > 0.0) || !(Q > 0.0) || n < 1) throw std::invalid_argument("lattice_code_count: bad arguments");
    const double dn = static_cast<double>(n);
    LatticeCountResult r;
    r.s_star = std::asinh(delta / Q) / delta;
    double sh = std::sinh(delta * r.s_star);
    r.f_at = lattice_count_exponent(delta, Q, r.s_star);
    r.f_second = delta * delta * std::cosh(delta * r.s_star) / (sh * sh);
    double rem = lattice_remainder(dn * Q, delta);
    double pref = delta * std::exp(-r.s_star * rem) /
                  ((1.0 - std::exp(-r.s_star * delta)) * std::sqrt(kTwoPi * dn * r.f_second));
    r.log_count = dn * r.f_at + std::log(pref);
    r.rate = r.f_at - std::log(dn) / (2.0 * dn);
    return r;
}

double mixture_redundancy(int n, int n1, const ScalarFn& prior) {
    if (n < 2 || n1 <= 0 || n1 >= n) throw std::domain_error("mixture_redundancy: requires 0 < n1 < n");
    const double dn = static_cast<double>(n);
    double q = static_cast<double>(n1) / dn;
    double w = prior(q);
    if (!(w > 0.0)) throw std::domain_error("mixture_redundancy: prior vanishes at the empirical frequency");
    return binary_entropy(q) + std::log(dn) / (2.0 * dn) - std::log(w * std::sqrt(kTwoPi * q * (1.0 - q))) / dn;
}

double mixture_redundancy_exact_uniform(int n, int n1) {
    if (n < 1 || n1 < 0 || n1 > n) throw std::domain_error("mixture_redundancy_exact_uniform: bad counts");
    double log_beta = log_factorial(n1) + log_factorial(n - n1) - log_factorial(n + 1);
    return -log_beta / static_cast<double>(n);
}

}  // namespace itt
