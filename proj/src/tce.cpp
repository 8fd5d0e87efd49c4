#include "itt/tce.hpp"

#include <algorithm>
#include <cmath>

#include "itt/numerics.hpp"
#include "itt/types_core.hpp"

namespace itt {

namespace {

constexpr double kBoundaryTol = 1e-12;

void check_params(const TceParams& p) {
    if (!(p.A >= 0.0) || !(p.B >= 0.0) || !std::isfinite(p.A) || !std::isfinite(p.B))
        throw std::invalid_argument("TceParams: A and B must be finite and nonnegative");
}

void check_lambda(const TceParams& p, double lambda) {
    if (std::abs(lambda - (p.A - p.B)) <= kBoundaryTol)
        throw PhaseBoundaryError("tce: lambda = A - B is excluded");
}

double log_pmf(std::int64_t m, double lp, double lq, std::int64_t k) {
    return log_binomial(m, k) + static_cast<double>(k) * lp + static_cast<double>(m - k) * lq;
}

void check_binomial(std::int64_t m, double p) {
    if (m < 0 || m > kMaxBinomialTrials) throw std::length_error("binomial: trials outside [0, 1e7]");
    if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("binomial: p outside [0,1]");
}

// Log-domain sum of exp(term(k)) over k in [lo, hi], walking outward from the
// mode until terms fall 700 nats below the running maximum.
template <class Term>
double log_sum_from_mode(std::int64_t lo, std::int64_t hi, std::int64_t mode, Term term) {
    mode = std::clamp(mode, lo, hi);
    double peak = term(mode);
    std::vector<double> acc{peak};
    for (std::int64_t k = mode + 1; k <= hi; ++k) {
        double t = term(k);
        acc.push_back(t);
        peak = std::max(peak, t);
        if (t < peak - 700.0) break;
    }
    for (std::int64_t k = mode - 1; k >= lo; --k) {
        double t = term(k);
        acc.push_back(t);
        peak = std::max(peak, t);
        if (t < peak - 700.0) break;
    }
    return log_sum_exp(acc);
}

}  // namespace

double tail_upper_exponent(const TceParams& p, double lambda) {
    check_params(p);
    check_lambda(p, lambda);
    return std::max(p.A - p.B, 0.0) >= lambda ? std::max(p.B - p.A, 0.0) : kInf;
}

double tail_lower_exponent(const TceParams& p, double lambda) {
    check_params(p);
    check_lambda(p, lambda);
    return p.A - p.B < lambda ? 0.0 : kInf;
}

double moment_exponent(const TceParams& p, double s) {
    check_params(p);
    if (!(s > 0.0)) throw std::domain_error("moment_exponent: s <= 0");
    if (std::abs(p.A - p.B) <= kBoundaryTol) throw PhaseBoundaryError("moment_exponent: A = B is excluded");
    return p.A > p.B ? (p.A - p.B) * s : p.A - p.B;
}

int intersection_indicator(const std::vector<TceParams>& params, double lambda) {
    double worst = kInf;
    for (const auto& p : params) {
        check_params(p);
        check_lambda(p, lambda);
        worst = std::min(worst, p.B - p.A + std::max(lambda, 0.0));
    }
    return worst > 0.0 ? 1 : 0;
}

KlAsymptotic kl_asymptotic(double a, double b) {
    if (!(a > 0.0 && a < 1.0 && b > 0.0 && b < 1.0)) throw std::domain_error("kl_asymptotic: a, b must lie in (0,1)");
    double r = a / b;
    if (r < 0.1) return {b, KlRegime::small_ratio};
    if (r > 10.0) return {a * std::log(r), KlRegime::large_ratio};
    return {binary_kl(a, b), KlRegime::neither};
}

double log_exact_binomial_moment(std::int64_t m, double p, double s) {
    check_binomial(m, p);
    if (!(s > 0.0)) throw std::domain_error("exact_binomial_moment: s <= 0");
    if (m == 0 || p == 0.0) return -kInf;
    if (p == 1.0) return s * std::log(static_cast<double>(m));
    const double lp = std::log(p), lq = std::log1p(-p);
    auto mode = static_cast<std::int64_t>(std::floor((static_cast<double>(m) + 1.0) * p));
    return log_sum_from_mode(1, m, std::max<std::int64_t>(mode, 1), [&](std::int64_t k) {
        return s * std::log(static_cast<double>(k)) + log_pmf(m, lp, lq, k);
    });
}

double exact_binomial_moment(std::int64_t m, double p, double s) {
    double l = log_exact_binomial_moment(m, p, s);
    if (l > 700.0) throw std::overflow_error("exact_binomial_moment: value overflows; use the log form");
    return std::exp(l);
}

double log_binomial_upper_tail(std::int64_t m, double p, std::int64_t k) {
    check_binomial(m, p);
    if (k <= 0) return 0.0;
    if (k > m || p == 0.0) return -kInf;
    if (p == 1.0) return 0.0;
    const double lp = std::log(p), lq = std::log1p(-p);
    auto mode = static_cast<std::int64_t>(std::floor((static_cast<double>(m) + 1.0) * p));
    return log_sum_from_mode(k, m, std::max(mode, k), [&](std::int64_t j) { return log_pmf(m, lp, lq, j); });
}

}  // namespace itt
