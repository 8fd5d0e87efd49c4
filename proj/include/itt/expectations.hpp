#pragma once

// Expectations of nonlinear functions through integral representations driven
// by the moment generating function M(s) = E{e^{sX}}.

#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

#include "itt/types_core.hpp"

namespace itt {

class QuadratureError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct MgfSpec {
    std::function<double(double)> M;    // valid for s <= 0 and s < s_max
    std::function<double(double)> dM;   // optional M'
    double s_max = 0.0;                 // sup of the region where M is finite (may be inf)
    std::vector<double> moments;        // optional raw moments M^(l)(0), l = 0..L
    double mean = std::numeric_limits<double>::quiet_NaN();
    double variance = std::numeric_limits<double>::quiet_NaN();
    // Optional exact E{X 1[X > a]}.
    std::function<double(double)> tail_first_moment;

    // Checks M(0) = 1, M >= 0 on a probe grid of s <= 0 and M'(0) = mean.
    void validate() const;
    bool has_variance() const { return std::isfinite(variance); }
    double second_moment() const;  // NaN when unknown

    static MgfSpec degenerate(double c);
    static MgfSpec exponential(double rate);
    static MgfSpec gamma(double shape, double rate);
    static MgfSpec uniform(double a, double b);
    static MgfSpec bernoulli_sum(int n, double p);
    // Sum of n squared N(0, sigma2) variables.
    static MgfSpec chi2(int n, double sigma2);
    // Sum of independent exponentials with the given means.
    static MgfSpec exponential_sum(const std::vector<double>& means);
    // Sum of n IID copies (moments up to the order available in y).
    static MgfSpec iid_sum(const MgfSpec& y, int n);
};

enum class FnShape { concave_anchored, convex, none };

struct FnSpec {
    std::function<double(double)> f;
    std::function<double(double)> df;  // optional; finite differences otherwise
    FnShape shape = FnShape::none;

    double derivative(double x) const;
    // For concave_anchored, spot-checks f(x) >= f(0) on a grid of x >= 0.
    void validate() const;

    static FnSpec ln1p(double gain = 1.0);
    static FnSpec neg_log();
    static FnSpec power(double s);
};

// E{X} = int_0^inf Pr{X >= t} dt.
double tail_expectation(const std::function<double(double)>& survival);

double expect_ln(const MgfSpec& m);
double expect_ln1p(const MgfSpec& m);
double var_ln1p(const MgfSpec& m);

double ln_factorial_integral(int n);
// mgf_n(u) = E{e^{-uN}} for u >= 0.
double expect_ln_factorial(double mean_n, const std::function<double(double)>& mgf_n);

double frac_moment_01(const MgfSpec& m, double rho);
// Needs m.moments up to floor(rho).
double frac_moment_general(const MgfSpec& m, double rho);

// E{G^rho} for a guesser drawing i.i.d. guesses from ptilde.
double guesswork_moment(const Dist& p, const Dist& ptilde, double rho);

double simo_capacity(double snr, const std::vector<double>& sigma2s);
double simo_capacity_variance(double snr, const std::vector<double>& sigma2s);

double cauchy_entropy(int n);
double generalized_gaussian_Z(double m, double t);

using CharFn = std::function<std::complex<double>(double)>;
// E{|mean of n samples - theta|^rho}, rho in (0, 2).
double estimation_error_moment(const CharFn& phi, double theta, int n, double rho);

}  // namespace itt
