#include "itt/expectations.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include <boost/math/constants/constants.hpp>
#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/binomial.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "itt/numerics.hpp"

namespace itt {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kPi = boost::math::constants::pi<double>();

// Raw moments m_0..m_4 <-> cumulants k_1..k_4 (index 0 unused).
std::array<double, 5> moments_to_cumulants(const std::vector<double>& m) {
    std::array<double, 5> k{};
    k.fill(kNaN);
    const auto at = [&](std::size_t i) { return i < m.size() ? m[i] : kNaN; };
    const double m1 = at(1), m2 = at(2), m3 = at(3), m4 = at(4);
    k[1] = m1;
    k[2] = m2 - m1 * m1;
    k[3] = m3 - 3 * m2 * m1 + 2 * m1 * m1 * m1;
    k[4] = m4 - 4 * m3 * m1 - 3 * m2 * m2 + 12 * m2 * m1 * m1 - 6 * m1 * m1 * m1 * m1;
    return k;
}

std::vector<double> cumulants_to_moments(const std::array<double, 5>& k) {
    std::vector<double> m{1.0, k[1], k[2] + k[1] * k[1], k[3] + 3 * k[2] * k[1] + k[1] * k[1] * k[1],
                          k[4] + 4 * k[3] * k[1] + 3 * k[2] * k[2] + 6 * k[2] * k[1] * k[1] +
                              k[1] * k[1] * k[1] * k[1]};
    while (!m.empty() && !std::isfinite(m.back())) m.pop_back();
    return m;
}

void check_quad(const QuadResult& r, const char* what, double rel = 1e-6) {
    if (!std::isfinite(r.value) || !(r.error <= rel * (1.0 + std::abs(r.value))))
        throw QuadratureError(std::string(what) + ": quadrature did not converge");
}

// int_a^inf split at max(a, 1) so the finite piece sees the small-u structure.
double half_line(const RealFn& g, double a, const char* what, double tol = 1e-12) {
    double total = 0.0, err = 0.0;
    if (a < 1.0) {
        QuadResult r = integrate(g, a, 1.0, tol);
        check_quad(r, what);
        total += r.value;
        err += r.error;
    }
    QuadResult r = integrate_half_line(g, std::max(a, 1.0), tol);
    check_quad(r, what);
    return total + r.value;
}

double mgf_derivative(const MgfSpec& m, double s) {
    if (m.dM) return m.dM(s);
    const double h = 1e-5 * (1.0 + std::abs(s));
    return (3.0 * m.M(s) - 4.0 * m.M(s - h) + m.M(s - 2.0 * h)) / (2.0 * h);
}

double mean_of(const MgfSpec& m) {
    if (std::isfinite(m.mean)) return m.mean;
    if (m.moments.size() > 1) return m.moments[1];
    return mgf_derivative(m, 0.0);
}

// int_0^inf [e^{-u} sum_{j<=J} (-1)^j alpha_j u^j / j! - M(-u)] u^{-1-rho} du.
double power_integral(const MgfSpec& m, double rho, const std::vector<double>& mom) {
    const int J = static_cast<int>(std::floor(rho));
    std::vector<double> alpha(static_cast<std::size_t>(J + 1));
    for (int j = 0; j <= J; ++j) {
        double a = 0.0;
        for (int l = 0; l <= j; ++l)
            a += ((j - l) % 2 ? -1.0 : 1.0) * mom[static_cast<std::size_t>(l)] /
                 boost::math::beta(static_cast<double>(l + 1), static_cast<double>(j - l + 1));
        alpha[static_cast<std::size_t>(j)] = a / (j + 1);
    }
    const auto bracket = [&](double u) {
        double poly = 0.0, term = 1.0;
        for (int j = 0; j <= J; ++j) {
            poly += term * alpha[static_cast<std::size_t>(j)];
            term *= -u / (j + 1);
        }
        return std::exp(-u) * poly - m.M(-u);
    };

    // Taylor coefficients of the bracket from the available moments; the
    // first J vanish.
    const int K = std::min(static_cast<int>(mom.size()) - 1, J + 3);
    double head = 0.0, h = 0.0;
    if (K >= J + 1) {
        h = K >= J + 2 ? 1e-3 : 1e-4;
        for (int k = J + 1; k <= K; ++k) {
            double c = 0.0;
            for (int j = 0; j <= std::min(J, k); ++j) {
                const int i = k - j;
                c += ((i + j) % 2 ? -1.0 : 1.0) * alpha[static_cast<std::size_t>(j)] /
                     (std::tgamma(i + 1.0) * std::tgamma(j + 1.0));
            }
            c -= (k % 2 ? -1.0 : 1.0) * mom[static_cast<std::size_t>(k)] / std::tgamma(k + 1.0);
            head += c * std::pow(h, k - rho) / (k - rho);
        }
    }
    return head + half_line([&](double u) { return bracket(u) * std::pow(u, -1.0 - rho); }, h,
                            "fractional moment");
}

std::vector<double> available_moments(const MgfSpec& m) {
    if (!m.moments.empty()) return m.moments;
    std::vector<double> mom{1.0};
    if (!std::isfinite(m.mean)) return mom;
    mom.push_back(m.mean);
    if (m.has_variance()) mom.push_back(m.variance + m.mean * m.mean);
    return mom;
}

}  // namespace

void MgfSpec::validate() const {
    if (!M) throw std::invalid_argument("MgfSpec: M missing");
    if (std::abs(M(0.0) - 1.0) > 1e-12) throw std::invalid_argument("MgfSpec: M(0) != 1");
    for (double s : logspace(1e-3, 1e3, 13))
        if (!(M(-s) >= 0.0)) throw std::invalid_argument("MgfSpec: M(s) < 0 for some s <= 0");
    if (dM && std::isfinite(mean) && std::abs(dM(0.0) - mean) > 1e-8 * (1.0 + std::abs(mean)))
        throw std::invalid_argument("MgfSpec: M'(0) != mean");
}

double MgfSpec::second_moment() const {
    if (moments.size() > 2) return moments[2];
    if (std::isfinite(mean) && has_variance()) return variance + mean * mean;
    return kNaN;
}

MgfSpec MgfSpec::degenerate(double c) {
    MgfSpec m;
    m.M = [c](double s) { return std::exp(s * c); };
    m.dM = [c](double s) { return c * std::exp(s * c); };
    m.s_max = kInf;
    for (int l = 0; l <= 6; ++l) m.moments.push_back(std::pow(c, l));
    m.mean = c;
    m.variance = 0.0;
    m.tail_first_moment = [c](double a) { return c > a ? c : 0.0; };
    return m;
}

MgfSpec MgfSpec::gamma(double shape, double rate) {
    if (!(shape > 0.0) || !(rate > 0.0)) throw std::domain_error("gamma: shape and rate must be positive");
    MgfSpec m;
    m.M = [=](double s) { return std::pow(1.0 - s / rate, -shape); };
    m.dM = [=](double s) { return shape / rate * std::pow(1.0 - s / rate, -shape - 1.0); };
    m.s_max = rate;
    for (int l = 0; l <= 6; ++l)
        m.moments.push_back(std::exp(std::lgamma(shape + l) - std::lgamma(shape) - l * std::log(rate)));
    m.mean = shape / rate;
    m.variance = shape / (rate * rate);
    m.tail_first_moment = [=](double a) {
        return a <= 0.0 ? shape / rate : shape / rate * boost::math::gamma_q(shape + 1.0, rate * a);
    };
    return m;
}

MgfSpec MgfSpec::exponential(double rate) { return gamma(1.0, rate); }

MgfSpec MgfSpec::chi2(int n, double sigma2) {
    if (n < 1 || !(sigma2 > 0.0)) throw std::domain_error("chi2: need n >= 1 and sigma2 > 0");
    return gamma(0.5 * n, 0.5 / sigma2);
}

MgfSpec MgfSpec::uniform(double a, double b) {
    if (!(a >= 0.0) || !(b > a)) throw std::domain_error("uniform: need 0 <= a < b");
    const double w = b - a;
    MgfSpec m;
    for (int l = 0; l <= 8; ++l) m.moments.push_back((std::pow(b, l + 1) - std::pow(a, l + 1)) / ((l + 1) * w));
    const std::vector<double> mom = m.moments;
    m.M = [=](double s) {
        const double x = s * w;
        if (x == 0.0) return 1.0;
        return std::exp(s * a) * std::expm1(x) / x;
    };
    m.dM = [=](double s) {
        if (std::abs(s) * std::max(std::abs(a), std::abs(b)) < 1e-3) {
            double v = 0.0, term = 1.0;
            for (int l = 0; l + 1 < static_cast<int>(mom.size()); ++l) {
                v += mom[static_cast<std::size_t>(l + 1)] * term;
                term *= s / (l + 1);
            }
            return v;
        }
        const double mv = (std::exp(s * b) - std::exp(s * a)) / (s * w);
        return (b * std::exp(s * b) - a * std::exp(s * a)) / (s * w) - mv / s;
    };
    m.s_max = kInf;
    const double mean = 0.5 * (a + b);
    m.mean = mean;
    m.variance = w * w / 12.0;
    m.tail_first_moment = [=](double t) {
        if (t <= a) return mean;
        if (t >= b) return 0.0;
        return (b * b - t * t) / (2.0 * w);
    };
    return m;
}

MgfSpec MgfSpec::bernoulli_sum(int n, double p) {
    if (n < 1 || !(p >= 0.0 && p <= 1.0)) throw std::domain_error("bernoulli_sum: need n >= 1, p in [0, 1]");
    MgfSpec m;
    m.M = [=](double s) { return std::pow(1.0 - p + p * std::exp(s), n); };
    m.dM = [=](double s) { return n * p * std::exp(s) * std::pow(1.0 - p + p * std::exp(s), n - 1); };
    m.s_max = kInf;
    std::vector<double> pmf(static_cast<std::size_t>(n + 1));
    for (int k = 0; k <= n; ++k)
        pmf[static_cast<std::size_t>(k)] = boost::math::binomial_coefficient<double>(static_cast<unsigned>(n),
                                                                                     static_cast<unsigned>(k)) *
                                           std::pow(p, k) * std::pow(1.0 - p, n - k);
    for (int l = 0; l <= 6; ++l) {
        double v = 0.0;
        for (int k = 0; k <= n; ++k) v += pmf[static_cast<std::size_t>(k)] * std::pow(k, l);
        m.moments.push_back(v);
    }
    m.mean = n * p;
    m.variance = n * p * (1.0 - p);
    m.tail_first_moment = [pmf, n](double a) {
        double v = 0.0;
        for (int k = 0; k <= n; ++k)
            if (k > a) v += k * pmf[static_cast<std::size_t>(k)];
        return v;
    };
    return m;
}

MgfSpec MgfSpec::exponential_sum(const std::vector<double>& means) {
    if (means.empty()) throw std::invalid_argument("exponential_sum: no terms");
    double mx = 0.0;
    std::array<double, 5> k{};
    for (double mu : means) {
        if (!(mu > 0.0)) throw std::domain_error("exponential_sum: means must be positive");
        mx = std::max(mx, mu);
        for (int r = 1; r <= 4; ++r) k[static_cast<std::size_t>(r)] += std::tgamma(r) * std::pow(mu, r);
    }
    MgfSpec m;
    m.M = [means](double s) {
        double l = 0.0;
        for (double mu : means) l -= std::log1p(-mu * s);
        return std::exp(l);
    };
    m.dM = [means](double s) {
        double l = 0.0, d = 0.0;
        for (double mu : means) {
            l -= std::log1p(-mu * s);
            d += mu / (1.0 - mu * s);
        }
        return std::exp(l) * d;
    };
    m.s_max = 1.0 / mx;
    m.moments = cumulants_to_moments(k);
    m.mean = k[1];
    m.variance = k[2];
    return m;
}

MgfSpec MgfSpec::iid_sum(const MgfSpec& y, int n) {
    if (n < 1) throw std::domain_error("iid_sum: n must be >= 1");
    MgfSpec m;
    const auto M = y.M;
    m.M = [M, n](double s) { return std::pow(M(s), n); };
    if (y.dM) {
        const auto dM = y.dM;
        m.dM = [M, dM, n](double s) { return n * std::pow(M(s), n - 1) * dM(s); };
    }
    m.s_max = y.s_max;
    if (!y.moments.empty()) {
        auto k = moments_to_cumulants(y.moments);
        for (std::size_t r = 1; r < k.size(); ++r) k[r] *= n;
        m.moments = cumulants_to_moments(k);
    }
    m.mean = n * y.mean;
    m.variance = n * y.variance;
    return m;
}

double FnSpec::derivative(double x) const { return df ? df(x) : fd_first(f, x); }

void FnSpec::validate() const {
    if (!f) throw std::invalid_argument("FnSpec: f missing");
    if (shape != FnShape::concave_anchored) return;
    const double f0 = f(0.0);
    for (double x : logspace(1e-6, 1e6, 61))
        if (f(x) < f0 - 1e-12 * (1.0 + std::abs(f0))) throw std::invalid_argument("FnSpec: f(x) < f(0) for some x >= 0");
}

FnSpec FnSpec::ln1p(double gain) {
    return {[gain](double x) { return std::log1p(gain * x); }, [gain](double x) { return gain / (1.0 + gain * x); },
            FnShape::concave_anchored};
}

FnSpec FnSpec::neg_log() {
    return {[](double x) { return -std::log(x); }, [](double x) { return -1.0 / x; }, FnShape::convex};
}

FnSpec FnSpec::power(double s) {
    const FnShape shape = (s > 0.0 && s < 1.0) ? FnShape::concave_anchored : FnShape::convex;
    return {[s](double x) { return std::pow(x, s); }, [s](double x) { return s * std::pow(x, s - 1.0); }, shape};
}

double tail_expectation(const std::function<double(double)>& survival) {
    // Dyadic segments [0, 1], [1, 2], [2, 4], ... with adaptive Gauss-Kronrod,
    // which copes with kinks in the survival function.
    double total = 0.0, lo = 0.0, hi = 1.0;
    for (int seg = 0; seg < 400; ++seg) {
        QuadResult r = integrate_gk(survival, lo, hi, 1e-12);
        if (!std::isfinite(r.value)) throw QuadratureError("tail_expectation: non-finite survival integral");
        total += r.value;
        if (total > 1e12) throw std::overflow_error("tail_expectation: partial integral exceeds 1e12");
        if (r.value <= 1e-13 * (1.0 + total) && survival(hi) * hi <= 1e-12 * (1.0 + total)) return total;
        lo = hi;
        hi *= 2.0;
    }
    throw std::overflow_error("tail_expectation: integral does not converge");
}

double expect_ln(const MgfSpec& m) {
    if (m.M(-1e8) > 1e-6) throw std::domain_error("expect_ln: M(-u) has not vanished by u = 1e8 (atom at 0 or too much mass near 0)");
    const double mu = mean_of(m);
    const auto g = [&](double u) {
        if (u < 1e-8) return mu - 1.0;
        return (std::exp(-u) - m.M(-u)) / u;
    };
    return half_line(g, 0.0, "expect_ln");
}

double expect_ln1p(const MgfSpec& m) {
    const double mu = mean_of(m);
    const auto g = [&](double u) {
        if (u < 1e-8) return mu;
        return std::exp(-u) * (1.0 - m.M(-u)) / u;
    };
    return half_line(g, 0.0, "expect_ln1p");
}

double var_ln1p(const MgfSpec& m) {
    const double mu = mean_of(m);
    double var = m.variance;
    if (!std::isfinite(var)) var = m.second_moment() - mu * mu;
    // Symmetric in (u, v): twice the integral over v <= u.
    const auto h = [&](double u, double v) {
        if (v < 1e-9) {
            if (u < 1e-9) return std::isfinite(var) ? var : 0.0;
            return std::exp(-u) * (mu * m.M(-u) - mgf_derivative(m, -u)) / u;
        }
        return std::exp(-(u + v)) * (m.M(-u - v) - m.M(-u) * m.M(-v)) / (u * v);
    };
    // Both variables run over log scales, v = u e^{-t} and u = e^{-t} below 1,
    // so the distribution's own scale never has to be known. The inner rule is
    // fixed: at tiny u the kernel is pure cancellation noise, and an adaptive
    // rule with a relative tolerance would chase it.
    constexpr int kLogDepth = 40;
    const auto outer = [&](double u) {
        if (u == 0.0) return 0.0;
        const auto g = [&](double t) {
            const double v = u * std::exp(-t);
            return h(u, v) * v;
        };
        double s = 0.0;
        for (int k = 0; k < kLogDepth; ++k) s += boost::math::quadrature::gauss<double, 20>::integrate(g, k, k + 1.0);
        return s;
    };
    QuadResult head;
    for (int k = 0; k < kLogDepth; ++k) {
        double err = 0.0;
        head.value += boost::math::quadrature::gauss_kronrod<double, 21>::integrate(
            [&](double t) {
                const double u = std::exp(-t);
                return outer(u) * u;
            },
            k, k + 1.0, 0, 0.0, &err);
        head.error += err;
    }
    check_quad(head, "var_ln1p");
    QuadResult tail = integrate_half_line(outer, 1.0, 1e-10);
    check_quad(tail, "var_ln1p");
    const double v = 2.0 * (head.value + tail.value);
    if (v < -1e-7) throw QuadratureError("var_ln1p: negative variance from quadrature");
    return v;
}

double ln_factorial_integral(int n) {
    if (n < 0) throw std::domain_error("ln_factorial_integral: n must be >= 0");
    if (n < 2) return 0.0;
    const double dn = n;
    const auto g = [dn](double u) {
        if (u < 1e-9) return 0.5 * dn * (dn - 1.0);
        const double ratio = std::expm1(-u * dn) / std::expm1(-u);
        return std::exp(-u) * (dn - ratio) / u;
    };
    return half_line(g, 0.0, "ln_factorial_integral");
}

double expect_ln_factorial(double mean_n, const std::function<double(double)>& mgf_n) {
    if (!(mean_n >= 0.0)) throw std::domain_error("expect_ln_factorial: E{N} must be >= 0");
    if (std::abs(mgf_n(0.0) - 1.0) > 1e-12) throw std::invalid_argument("expect_ln_factorial: E{e^{-0 N}} != 1");
    const auto raw = [&](double u) { return std::exp(-u) * (mean_n + (1.0 - mgf_n(u)) / std::expm1(-u)) / u; };
    // Below u0 the difference cancels; extrapolate quadratically from u0, 2u0, 3u0.
    constexpr double u0 = 1e-4;
    const double g1 = raw(u0), g2 = raw(2 * u0), g3 = raw(3 * u0);
    const auto g = [&](double u) {
        if (u >= u0) return raw(u);
        const double t = u / u0;
        return g1 * (t - 2.0) * (t - 3.0) / 2.0 - g2 * (t - 1.0) * (t - 3.0) + g3 * (t - 1.0) * (t - 2.0) / 2.0;
    };
    return half_line(g, 0.0, "expect_ln_factorial");
}

double frac_moment_01(const MgfSpec& m, double rho) {
    if (!(rho > 0.0 && rho < 1.0)) throw std::domain_error("frac_moment_01: rho must lie in (0, 1)");
    return 1.0 + rho / std::tgamma(1.0 - rho) * power_integral(m, rho, available_moments(m));
}

double frac_moment_general(const MgfSpec& m, double rho) {
    if (!(rho > 0.0) || std::abs(rho - std::round(rho)) < 1e-3)
        throw std::domain_error("frac_moment_general: rho must be positive and non-integer");
    const int J = static_cast<int>(std::floor(rho));
    const auto mom = available_moments(m);
    if (static_cast<int>(mom.size()) <= J) throw std::invalid_argument("frac_moment_general: missing moments");
    double head = 0.0;
    for (int l = 0; l <= J; ++l) {
        double a = 0.0;
        for (int i = 0; i <= l; ++i)
            a += ((l - i) % 2 ? -1.0 : 1.0) * mom[static_cast<std::size_t>(i)] /
                 boost::math::beta(static_cast<double>(i + 1), static_cast<double>(l - i + 1));
        a /= (l + 1);
        head += a / boost::math::beta(l + 1.0, rho + 1.0 - l);
    }
    head /= (1.0 + rho);
    const double c = rho * std::sin(kPi * rho) * std::tgamma(rho) / kPi;
    return head + c * power_integral(m, rho, mom);
}

double guesswork_moment(const Dist& p, const Dist& ptilde, double rho) {
    if (p.size() != ptilde.size()) throw std::invalid_argument("guesswork_moment: size mismatch");
    if (!(rho > 0.0 && rho < 1.0)) throw std::domain_error("guesswork_moment: rho must lie in (0, 1)");
    for (std::size_t x = 0; x < p.size(); ++x)
        if (p[x] > 0.0 && !(ptilde[x] > 0.0))
            throw std::domain_error("guesswork_moment: guessing distribution misses a support letter");
    // The z-integral over (0, 1) evaluated through z = e^{-u}, which keeps
    // 1 - z and -ln z accurate near z = 1.
    const auto g = [&](double u) {
        if (u == 0.0) return 0.0;
        const double z = std::exp(-u), omz = -std::expm1(-u);
        double s = 0.0;
        for (std::size_t x = 0; x < p.size(); ++x) {
            if (p[x] == 0.0) continue;
            const double q = 1.0 - ptilde[x];
            s += p[x] * q / (1.0 - z * q);
        }
        return z * (omz / u) * std::pow(u, -rho) * s;
    };
    return 1.0 + rho / std::tgamma(1.0 - rho) * half_line(g, 0.0, "guesswork_moment");
}

double simo_capacity(double snr, const std::vector<double>& sigma2s) {
    if (!(snr > 0.0)) throw std::domain_error("simo_capacity: snr must be positive");
    if (sigma2s.empty()) throw std::invalid_argument("simo_capacity: no branches");
    double total = 0.0;
    for (double s2 : sigma2s) {
        if (!(s2 > 0.0)) throw std::domain_error("simo_capacity: branch variances must be positive");
        total += s2;
    }
    const auto g = [&](double x) {
        if (x < 1e-12) return total;
        double l = 0.0;
        for (double s2 : sigma2s) l += std::log1p(s2 * x);
        return std::exp(-x / snr) * -std::expm1(-l) / x;
    };
    return half_line(g, 0.0, "simo_capacity");
}

double simo_capacity_variance(double snr, const std::vector<double>& sigma2s) {
    if (!(snr > 0.0)) throw std::domain_error("simo_capacity_variance: snr must be positive");
    std::vector<double> means;
    for (double s2 : sigma2s) {
        if (!(s2 > 0.0)) throw std::domain_error("simo_capacity_variance: branch variances must be positive");
        means.push_back(snr * s2);
    }
    // x = snr u maps the (x, y) double integral onto the ln(1 + X) variance of
    // X = snr sum |h_l|^2.
    return var_ln1p(MgfSpec::exponential_sum(means));
}

double cauchy_entropy(int n) {
    if (n < 1) throw std::domain_error("cauchy_entropy: n must be >= 1");
    const double hn = 0.5 * n;
    // Inner integral over u = t e^x; outer over t = s^2.
    const auto inner = [hn](double t) {
        t = std::max(t, 1e-300);
        const double lo = -40.0, hi = std::log(50.0 / t);
        const auto g = [&](double x) { return std::exp(-t * std::exp(x)) * -std::expm1(-hn * std::log1p(std::exp(x))); };
        QuadResult r = integrate_gk(g, lo, hi, 1e-12);
        check_quad(r, "cauchy_entropy");
        return r.value + hn * std::exp(lo);
    };
    const double q = 0.5 * (n + 1);
    const double integral = half_line([&](double s) { return 2.0 * std::exp(-s * s) * inner(s * s); }, 0.0,
                                      "cauchy_entropy", 1e-10);
    return q / std::sqrt(kPi) * integral + q * std::log(kPi) - std::lgamma(q);
}

double generalized_gaussian_Z(double m, double t) {
    if (!(m > 0.0) || !(t > 0.0)) throw std::domain_error("generalized_gaussian_Z: need m > 0 and t > 0");
    return 2.0 * std::tgamma(1.0 / m) / (m * std::pow(t, 1.0 / m));
}

double estimation_error_moment(const CharFn& phi, double theta, int n, double rho) {
    if (!(rho > 0.0 && rho < 2.0)) throw std::domain_error("estimation_error_moment: rho must lie in (0, 2)");
    if (n < 1) throw std::domain_error("estimation_error_moment: n must be >= 1");
    const double dn = n;
    const auto psi = [&](double w) { return std::pow(phi(w / dn), n) * std::exp(std::complex<double>(0.0, -w * theta)); };
    // E{e^{-u Y^2}} from the Gaussian-smoothed omega integral; conjugate
    // symmetry folds it onto omega >= 0.
    const auto smoothed = [&](double u) {
        const double c = 2.0 * std::sqrt(u);
        const auto g = [&](double w) { return psi(w).real() * std::exp(-(w / c) * (w / c)); };
        const double pts[4] = {0.0, std::min(c, 1.0), std::max(c, 1.0), 8.0 * std::max(c, 1.0)};
        double v = integrate_half_line(g, pts[3], 1e-13).value;
        for (int i = 0; i < 3; ++i)
            if (pts[i + 1] - pts[i] > 1e-9 * pts[i + 1]) v += integrate(g, pts[i], pts[i + 1], 1e-13).value;
        return 2.0 * v / (2.0 * std::sqrt(kPi * u));
    };
    // E{Y^2} = -psi''(0) for the small-u series.
    const double h = 1e-4;
    const double ey2 = -(psi(h).real() - 2.0 * psi(0.0).real() + psi(-h).real()) / (h * h);
    const double r = 0.5 * rho;
    constexpr double u0 = 1e-6;
    const double head = (ey2 - 1.0) * std::pow(u0, 1.0 - r) / (1.0 - r);
    const auto g = [&](double u) { return (std::exp(-u) - smoothed(u)) * std::pow(u, -1.0 - r); };
    const double integral = head + half_line(g, u0, "estimation_error_moment", 1e-10);
    return 1.0 + r / std::tgamma(1.0 - r) * integral;
}

}  // namespace itt
