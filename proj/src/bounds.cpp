#include "itt/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "itt/numerics.hpp"

namespace itt {

namespace {

// Upper end of the s search when the MGF is finite everywhere.
double s_search_limit(const MgfSpec& m, double a) {
    if (std::isfinite(m.s_max)) return m.s_max * (1.0 - 1e-9);
    return std::min(700.0, 1e4 / a);
}

// Overflowed or undefined MGF values mark the s as unusable.
double safe_log(double v) {
    if (std::isnan(v) || v == kInf) return 1e300;
    return v > 0.0 ? std::log(v) : -1e300;
}

using QFn = std::function<double(double)>;

// sup over a > 0 of mu/a f(a) + (1 - mu/a) f(0) - (f(a) - f(0))/a q(a).
double rji_sup(const FnSpec& f, double mu, const QFn& q) {
    const double f0 = f.f(0.0);
    const auto bound = [&](double a) {
        const double qa = q(a);
        if (!std::isfinite(qa)) return -kInf;
        const double fa = f.f(a);
        return mu / a * fa + (1.0 - mu / a) * f0 - (fa - f0) / a * qa;
    };
    auto grid = logspace(mu / 100.0, 100.0 * mu, 161);
    grid.push_back(mu);
    std::sort(grid.begin(), grid.end());
    std::size_t best = 0;
    double bv = -kInf;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double v = bound(grid[i]);
        if (v > bv) {
            bv = v;
            best = i;
        }
    }
    if (best > 0 && best + 1 < grid.size()) {
        MinResult r = minimize_scalar([&](double a) { return -bound(a); }, grid[best - 1], grid[best + 1]);
        bv = std::max(bv, -r.value);
    }
    return bv;
}

void require_rji_inputs(const FnSpec& f, const MgfSpec& m) {
    if (f.shape != FnShape::concave_anchored)
        throw std::invalid_argument("rji: f must be concave with f(x) >= f(0)");
    f.validate();
    if (!std::isfinite(m.mean) || m.mean < 0.0) throw std::invalid_argument("rji: mean of X required");
}

}  // namespace

double q_chernoff(const MgfSpec& m, double a) {
    if (!m.dM) throw std::invalid_argument("q_chernoff: M' required");
    const double hi = s_search_limit(m, a);
    if (!(hi > 0.0)) return kInf;
    const auto g = [&](double s) { return -a * s + safe_log(m.dM(s)); };
    MinResult r = minimize_scalar(g, 0.0, hi);
    return std::exp(r.value);
}

double q_chernoff_tilde(const MgfSpec& m, double a) {
    if (!m.M) throw std::invalid_argument("q_chernoff_tilde: M required");
    const double lo = 1.0 / a, hi = s_search_limit(m, a);
    if (!(lo < hi)) return kInf;
    const auto g = [&](double s) { return -a * s + safe_log(m.M(s)); };
    MinResult r = minimize_scalar(g, lo, hi);
    return a * std::exp(r.value);
}

double q_cheb_cantelli(const MgfSpec& m, double a) {
    if (!std::isfinite(m.mean) || !m.has_variance()) throw std::invalid_argument("q_cheb_cantelli: mean and variance required");
    const double mu = m.mean, v = m.variance;
    const double ac = std::sqrt(v + mu * mu);
    if (a < ac) return (v + (a + mu) * (a + mu)) / (4.0 * a);
    return a * v / (v + (a - mu) * (a - mu));
}

double rji_lower_bound(const FnSpec& f, const MgfSpec& m, RjiMethod method) {
    require_rji_inputs(f, m);
    const double mu = m.mean;
    if (mu == 0.0) return f.f(0.0);
    switch (method) {
        case RjiMethod::exact_q:
            if (!m.tail_first_moment) throw std::invalid_argument("rji exact-q: E{X 1[X > a]} required");
            return rji_sup(f, mu, m.tail_first_moment);
        case RjiMethod::chernoff:
            if (!m.dM) throw std::invalid_argument("rji chernoff: M' required");
            return rji_sup(f, mu, [&](double a) { return q_chernoff(m, a); });
        case RjiMethod::chernoff_tilde:
            if (!m.M) throw std::invalid_argument("rji chernoff-tilde: M required");
            return rji_sup(f, mu, [&](double a) { return q_chernoff_tilde(m, a); });
        case RjiMethod::cheb_cantelli:
            if (!m.has_variance()) throw std::invalid_argument("rji cheb-cantelli: variance required");
            return rji_sup(f, mu, [&](double a) { return q_cheb_cantelli(m, a); });
        case RjiMethod::best: {
            std::vector<RjiMethod> methods;
            if (m.tail_first_moment) methods.push_back(RjiMethod::exact_q);
            if (m.dM) methods.push_back(RjiMethod::chernoff);
            if (m.M && m.s_max > 0.0) methods.push_back(RjiMethod::chernoff_tilde);
            if (m.has_variance()) methods.push_back(RjiMethod::cheb_cantelli);
            if (methods.empty()) throw std::invalid_argument("rji best: no method applicable");
            const auto qmin = [&](double a) {
                double q = kInf;
                for (RjiMethod k : methods) {
                    switch (k) {
                        case RjiMethod::exact_q: q = std::min(q, m.tail_first_moment(a)); break;
                        case RjiMethod::chernoff: q = std::min(q, q_chernoff(m, a)); break;
                        case RjiMethod::chernoff_tilde: q = std::min(q, q_chernoff_tilde(m, a)); break;
                        default: q = std::min(q, q_cheb_cantelli(m, a)); break;
                    }
                }
                return q;
            };
            // The pointwise minimum dominates each method; the max below only
            // protects against the 1-D search landing on different peaks.
            double v = rji_sup(f, mu, qmin);
            for (RjiMethod k : methods) v = std::max(v, rji_lower_bound(f, m, k));
            return v;
        }
    }
    throw std::invalid_argument("rji: unknown method");
}

double rji_iid_bound(const MgfSpec& y, int n, const FnSpec& f, double epsilon) {
    if (f.shape != FnShape::concave_anchored) throw std::invalid_argument("rji_iid_bound: f must be concave with f(x) >= f(0)");
    if (n < 1) throw std::domain_error("rji_iid_bound: n must be >= 1");
    if (!(epsilon > 0.0)) throw std::domain_error("rji_iid_bound: epsilon must be positive");
    if (!y.M || !y.dM || !std::isfinite(y.mean)) throw std::invalid_argument("rji_iid_bound: M, M' and mean required");
    const double mu = y.mean, target = mu + epsilon;
    const auto dlog = [&](double s) { return y.dM(s) / y.M(s); };
    const auto g = [&](double s) { return target - dlog(s); };
    double hi = std::isfinite(y.s_max) ? y.s_max * (1.0 - 1e-12) : 1.0;
    if (!std::isfinite(y.s_max))
        while (hi < 700.0 && !(g(hi) < 0.0)) hi *= 2.0;
    if (!(g(hi) < 0.0)) throw std::runtime_error("rji_iid_bound: no tilt attains mu + epsilon");
    const double s = bracketed_root(g, 0.0, std::min(hi, 700.0));
    const double rate = s * target - std::log(y.M(s));
    const double f0 = f.f(0.0), fa = f.f(n * target);
    return f0 + (fa - f0) / target * (mu - std::exp(-n * rate) * dlog(s));
}

double com_renyi_bound(const Dist& p, double alpha, const std::vector<double>& lengths) {
    if (!(alpha > 0.0)) throw std::domain_error("com_renyi_bound: alpha must be positive");
    if (!lengths.empty()) {
        if (lengths.size() != p.size()) throw std::invalid_argument("com_renyi_bound: lengths size mismatch");
        std::vector<double> t;
        for (std::size_t u = 0; u < p.size(); ++u)
            if (p[u] > 0.0) t.push_back(std::log(p[u]) + alpha * lengths[u]);
        return log_sum_exp(t);
    }
    const double b = 1.0 / (1.0 + alpha);
    double s = 0.0;
    for (double pu : p.probs())
        if (pu > 0.0) s += std::pow(pu, b);
    return (1.0 + alpha) * std::log(s);
}

double harmonic_mean_upper(const std::vector<double>& means) {
    if (means.empty()) throw std::invalid_argument("harmonic_mean_upper: no variables");
    double s = 0.0;
    for (double m : means) {
        if (!(m > 0.0)) throw std::domain_error("harmonic_mean_upper: means must be positive");
        s += 1.0 / m;
    }
    return static_cast<double>(means.size()) / s;
}

JensenLike jensen_like_product(const FnSpec& f, double exg, double eg) {
    if (!(eg > 0.0)) throw std::domain_error("jensen_like_product: E{g} must be positive");
    if (f.shape == FnShape::none) throw std::invalid_argument("jensen_like_product: f must be convex or concave");
    const BoundDirection dir = f.shape == FnShape::convex ? BoundDirection::lower : BoundDirection::upper;
    return {f.f(exg / eg) * eg, dir};
}

JensenLike jensen_like_double_convex(const FnSpec& f, const FnSpec& g, double ex, double ex2) {
    if (!(ex > 0.0) || !(ex2 >= ex * ex * (1.0 - 1e-12))) throw std::domain_error("jensen_like_double_convex: need EX > 0, EX2 >= EX^2");
    if (f.shape == FnShape::none || f.shape != g.shape)
        throw std::invalid_argument("jensen_like_double_convex: f and g must share a convex or concave shape");
    const double gx = g.f(ex);
    if (!(gx > 0.0)) throw std::domain_error("jensen_like_double_convex: g(EX) must be positive");
    const double z = ex * g.f(ex2 / ex) / gx;
    const double fz = f.f(z), dz = f.derivative(z);
    const double tol = 1e-12 * (1.0 + std::abs(fz));
    if (!(fz >= z * dz - tol) || !(z * dz >= -tol))
        throw std::domain_error("jensen_like_double_convex: f(a) >= a f'(a) >= 0 fails at the tangent point");
    const BoundDirection dir = f.shape == FnShape::convex ? BoundDirection::lower : BoundDirection::upper;
    return {fz * gx, dir};
}

KtLength kt_expected_length(double p, int n) {
    if (!(p > 0.0 && p < 1.0)) throw std::domain_error("kt_expected_length: p must lie in (0, 1)");
    if (n < 1) throw std::domain_error("kt_expected_length: n must be >= 1");
    if (n > kMaxKtLength) throw std::length_error("kt_expected_length: n exceeds 2048");
    const double lp = std::log(p), lq = std::log1p(-p);
    const double total = std::lgamma(n + 2.0);
    // exact: E ln(N_t(1) + 1) and E ln(N_t(0) + 1) with N_t ~ Binomial(t, p).
    double exact = total;
    for (int t = 1; t < n; ++t) {
        double acc = 0.0;
        for (int k = 0; k <= t; ++k) {
            const double lpmf = std::lgamma(t + 1.0) - std::lgamma(k + 1.0) - std::lgamma(t - k + 1.0) + k * lp + (t - k) * lq;
            acc += std::exp(lpmf) * (p * std::log(k + 1.0) + (1.0 - p) * std::log(t - k + 1.0));
        }
        exact -= acc;
    }
    // Upper bound: each expectation replaced by its best iid lower bound over epsilon.
    const FnSpec f = FnSpec::ln1p();
    const auto lower = [&](double q, int t) {
        const MgfSpec y = MgfSpec::bernoulli_sum(1, q);
        const double span = 1.0 - q;
        const auto neg = [&](double eps) { return -rji_iid_bound(y, t, f, eps); };
        MinResult r = minimize_on_grid(neg, linspace(span * 0.01, span * 0.99, 40));
        return std::max(0.0, -r.value);
    };
    double upper = total;
    for (int t = 1; t < n; ++t) upper -= p * lower(p, t) + (1.0 - p) * lower(1.0 - p, t);
    return {exact, upper};
}

double extreme_min_expectation(double p0, double p0prime, int n) {
    if (n < 1) throw std::domain_error("extreme_min_expectation: n must be >= 1");
    if (p0 < 0.0 || p0prime < 0.0) throw std::domain_error("extreme_min_expectation: negative density data");
    if (p0 > 0.0) return 1.0 / (n * p0);
    if (p0prime > 0.0) return 0.5 * std::sqrt(2.0 * std::acos(-1.0) / (n * p0prime));
    throw std::domain_error("extreme_min_expectation: p(0) = p'(0) = 0");
}

}  // namespace itt
