#pragma once

// Quadrature, root finding and small numeric helpers shared by the modules.

#include <functional>
#include <vector>

namespace itt {

using RealFn = std::function<double(double)>;

double log_sum_exp(const std::vector<double>& v);

// Centered finite differences with step 1e-5 * (1 + |x|).
double fd_first(const RealFn& f, double x);
double fd_second(const RealFn& f, double x);

struct QuadResult {
    double value = 0.0;
    double error = 0.0;
};

// Tanh-sinh on a finite interval; tolerates integrable endpoint singularities.
QuadResult integrate(const RealFn& f, double a, double b, double tol = 1e-12);
// Integral over [a, inf) through the map u = a + t / (1 - t), t in [0, 1).
QuadResult integrate_half_line(const RealFn& f, double a = 0.0, double tol = 1e-12);
// Integral over the real line, split at zero and folded.
QuadResult integrate_real_line(const RealFn& f, double tol = 1e-12);
// Adaptive Gauss-Kronrod on a finite interval (smooth integrands).
QuadResult integrate_gk(const RealFn& f, double a, double b, double tol = 1e-12);

// Root of f in [lo, hi] by Newton steps safeguarded by bisection.
// f(lo) and f(hi) must have opposite signs (or one must vanish).
double bracketed_newton(const RealFn& f, const RealFn& df, double lo, double hi, double xtol = 1e-15,
                        int max_iter = 200);
// Bracketed root without derivatives.
double bracketed_root(const RealFn& f, double lo, double hi, double xtol = 1e-15, int max_iter = 400);

struct MinResult {
    double x = 0.0;
    double value = 0.0;
};

// Brent minimization of a unimodal function on [lo, hi].
MinResult minimize_scalar(const RealFn& f, double lo, double hi, int bits = 52, int max_iter = 500);

// Seeded search: evaluate on a grid, then refine with Brent around the best
// grid point.
MinResult minimize_on_grid(const RealFn& f, const std::vector<double>& grid);

std::vector<double> linspace(double a, double b, int n);
std::vector<double> logspace(double a, double b, int n);

}  // namespace itt
