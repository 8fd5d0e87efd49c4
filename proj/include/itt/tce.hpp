#pragma once

// Exponential-scale behavior of type-class enumerators N ~ Binomial(e^{nA}, e^{-nB}),
// with exact finite-size binomial oracles.

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace itt {

struct TceParams {
    double A = 0.0;
    double B = 0.0;
};

// Raised at the excluded points A = B and lambda = A - B.
class PhaseBoundaryError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Exponent of Pr{N >= e^{n lambda}} and of Pr{N <= e^{n lambda}}.
double tail_upper_exponent(const TceParams& p, double lambda);
double tail_lower_exponent(const TceParams& p, double lambda);
// E[N^s] = exp(n * value) to first order.
double moment_exponent(const TceParams& p, double s);
// 1 when Pr{N_j <= e^{n lambda} for all j} does not vanish exponentially.
int intersection_indicator(const std::vector<TceParams>& params, double lambda);

enum class KlRegime { small_ratio, large_ratio, neither };

struct KlAsymptotic {
    double value = 0.0;
    KlRegime regime = KlRegime::neither;
};
// D(a||b) ~ b when a/b -> 0 and ~ a ln(a/b) when a/b -> inf; exact for 0.1 <= a/b <= 10.
KlAsymptotic kl_asymptotic(double a, double b);

inline constexpr std::int64_t kMaxBinomialTrials = 10'000'000;

// E[N^s] for N ~ Binomial(m, p), summed in the log domain.
double exact_binomial_moment(std::int64_t m, double p, double s);
double log_exact_binomial_moment(std::int64_t m, double p, double s);
// ln Pr{N >= k}.
double log_binomial_upper_tail(std::int64_t m, double p, std::int64_t k);

}  // namespace itt
