#pragma once

// Reverse-Jensen, change-of-measure and Jensen-like bounds.

#include <vector>

#include "itt/expectations.hpp"

namespace itt {

enum class RjiMethod { exact_q, chernoff, chernoff_tilde, cheb_cantelli, best };

// Upper bounds on q(a) = E{X 1[X > a]}; +inf where the method gives nothing.
double q_chernoff(const MgfSpec& m, double a);
double q_chernoff_tilde(const MgfSpec& m, double a);
double q_cheb_cantelli(const MgfSpec& m, double a);

// Lower bound on E{f(X)} for concave f with f(x) >= f(0), X >= 0.
double rji_lower_bound(const FnSpec& f, const MgfSpec& m, RjiMethod method);

// Lower bound on E{f(Y_1 + ... + Y_n)} for IID Y_i >= 0, with a = n(mu + eps).
double rji_iid_bound(const MgfSpec& y, int n, const FnSpec& f, double epsilon);

// sup_Q [alpha H(Q) - D(Q||P)]; with lengths, sup_Q [alpha E_Q l - D(Q||P)].
double com_renyi_bound(const Dist& p, double alpha, const std::vector<double>& lengths = {});

// Upper bound on E{n / sum 1/X_i}.
double harmonic_mean_upper(const std::vector<double>& means);

enum class BoundDirection { lower, upper };

struct JensenLike {
    double value = 0.0;
    BoundDirection direction = BoundDirection::lower;
};

// f(E{Xg}/E{g}) E{g}: a lower bound on E{f(X) g(X)} for convex f, an upper
// bound for concave f.
JensenLike jensen_like_product(const FnSpec& f, double exg, double eg);

// f(EX g(EX2/EX)/g(EX)) g(EX) for nonnegative f, g of the same shape: lower
// bound on E{f g} when both are convex, upper bound when both are concave.
// Throws std::domain_error unless f(z) >= z f'(z) >= 0 at the tangent point.
JensenLike jensen_like_double_convex(const FnSpec& f, const FnSpec& g, double ex, double ex2);

struct KtLength {
    double exact = 0.0;
    double rji_upper = 0.0;
};

inline constexpr int kMaxKtLength = 2048;

// Expected length of the sequential (N_t(s) + 1)/(t + 2) code on a Bernoulli(p) source.
KtLength kt_expected_length(double p, int n);

// Asymptotic E{min of n IID} from the density behaviour at 0.
double extreme_min_expectation(double p0, double p0prime, int n);

}  // namespace itt
