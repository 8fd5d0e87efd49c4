#pragma once

// Laplace and saddle-point integrators with explicit pre-exponential factors,
// and the classical counting / tail examples built on them.

#include <cstdint>
#include <vector>

#include "itt/numerics.hpp"
#include "itt/types_core.hpp"

namespace itt {

struct ScalarFn {
    RealFn f;
    RealFn d1;  // optional
    RealFn d2;  // optional

    ScalarFn() = default;
    ScalarFn(RealFn fn, RealFn first = {}, RealFn second = {})
        : f(std::move(fn)), d1(std::move(first)), d2(std::move(second)) {}

    double operator()(double x) const { return f(x); }
    double first(double x) const { return d1 ? d1(x) : fd_first(f, x); }
    double second(double x) const { return d2 ? d2(x) : fd_second(f, x); }
};

enum class SaddleMode { interior, boundary, lattice };

struct SaddleResult {
    double location = 0.0;
    double f_at = 0.0;
    double f_second = 0.0;
    double prefactor = 0.0;
    double log_estimate = 0.0;
    SaddleMode mode = SaddleMode::interior;
};

// g(x0) exp(n f(x0)) sqrt(2 pi / (n |f''(x0)|)) around the interior maximum in [lo, hi].
SaddleResult laplace_interior(const ScalarFn& f, const ScalarFn& g, int n, double lo, double hi);

enum class Side { left, right };

// Maximum of f at a domain endpoint. Nonzero slope gives exp(n f) / (n |f'|);
// a vanishing slope switches to the half-Gaussian factor 0.5 sqrt(2 pi / (n |f''|)).
SaddleResult laplace_boundary(const ScalarFn& f, int n, double endpoint, Side side);

struct StirlingResult {
    double approx = 0.0;
    double log_approx = 0.0;
};
StirlingResult stirling(std::int64_t n);

// Saddle-point estimate of the binomial coefficient C(n, k).
SaddleResult binomial_count_saddle(std::int64_t n, std::int64_t k);

struct SphereResult {
    double exact_log = 0.0;
    double saddle_log = 0.0;
};
// Surface area of the n-sphere of radius sqrt(n s).
SphereResult hypersphere_surface(int n, double s);

// Distribution on the lattice offset + i * delta, i = 0..weights.size()-1.
struct LatticePmf {
    double delta = 1.0;
    double offset = 0.0;
    std::vector<double> weights;

    static LatticePmf bernoulli(double p);
    double mean() const;
    double cgf(double s) const;  // ln E exp(s X)
    double cgf_d1(double s) const;
    double cgf_d2(double s) const;
    double max_value() const;
};

// Non-lattice law described by its cumulant generating function.
struct DensityCgf {
    ScalarFn cgf;
    double mean = 0.0;
    double ess_sup = kInf;
    double s_max = kInf;  // cgf finite on [0, s_max)
};

struct TailResult {
    double log_prob = 0.0;
    double exponent = 0.0;
    double prefactor = 0.0;
    double s_star = 0.0;
    double variance = 0.0;
    bool has_estimate = false;  // false when A <= mean (exponent 0, no tail estimate)
};

// Pr{S_n >= n A} for an IID sum.
TailResult bahadur_rao_tail(const LatticePmf& pmf, double A, int n);
TailResult bahadur_rao_tail(const DensityCgf& law, double A, int n);

struct LatticeCountResult {
    double log_count = 0.0;
    double rate = 0.0;
    double s_star = 0.0;
    double f_at = 0.0;
    double f_second = 0.0;
};
// Number of integer vectors k in Z^n with delta * sum |k_i| <= n Q.
LatticeCountResult lattice_code_count(double delta, double Q, int n);
// The exponent function Q s - ln tanh(delta s / 2) of the count.
double lattice_count_exponent(double delta, double Q, double s);

// Three-term expansion of -ln P(x^n) / n for a mixture code with prior w.
double mixture_redundancy(int n, int n1, const ScalarFn& prior);
// Exact value for the uniform prior: -ln B(n1 + 1, n - n1 + 1) / n.
double mixture_redundancy_exact_uniform(int n, int n1);

}  // namespace itt
