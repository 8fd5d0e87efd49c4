#include "itt/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

namespace itt {

double log_sum_exp(const std::vector<double>& v) {
    double m = -std::numeric_limits<double>::infinity();
    for (double x : v) m = std::max(m, x);
    if (!std::isfinite(m)) return m;
    double s = 0.0;
    for (double x : v) s += std::exp(x - m);
    return m + std::log(s);
}

double fd_first(const RealFn& f, double x) {
    double h = 1e-5 * (1.0 + std::abs(x));
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

double fd_second(const RealFn& f, double x) {
    double h = 1e-5 * (1.0 + std::abs(x));
    return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
}

namespace {

boost::math::quadrature::tanh_sinh<double>& ts_engine() {
    thread_local boost::math::quadrature::tanh_sinh<double> engine(15);
    return engine;
}

}  // namespace

QuadResult integrate(const RealFn& f, double a, double b, double tol) {
    if (a == b) return {};
    QuadResult r;
    double l1 = 0.0;
    if (std::abs(a) >= 0.5) {
        // Shift to [0, b - a]: the library's left-endpoint branch for large |a|
        // can land exactly on a.
        const auto g = [&](double x) { return f(a + x); };
        r.value = ts_engine().integrate(g, 0.0, b - a, tol, &r.error, &l1);
        return r;
    }
    r.value = ts_engine().integrate(f, a, b, tol, &r.error, &l1);
    return r;
}

QuadResult integrate_half_line(const RealFn& f, double a, double tol) {
    auto g = [&](double t) {
        if (t >= 1.0) return 0.0;
        double om = 1.0 - t;
        double u = a + t / om;
        double v = f(u);
        return v == 0.0 ? 0.0 : v / (om * om);
    };
    return integrate(g, 0.0, 1.0, tol);
}

QuadResult integrate_real_line(const RealFn& f, double tol) {
    return integrate_half_line([&](double u) { return f(u) + f(-u); }, 0.0, tol);
}

QuadResult integrate_gk(const RealFn& f, double a, double b, double tol) {
    QuadResult r;
    r.value = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 15, tol, &r.error);
    return r;
}

double bracketed_newton(const RealFn& f, const RealFn& df, double lo, double hi, double xtol, int max_iter) {
    double flo = f(lo), fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0) == (fhi > 0)) throw std::runtime_error("bracketed_newton: no sign change in bracket");
    if (flo > 0) {
        std::swap(lo, hi);
    }
    // Invariant: f(lo) < 0 < f(hi) (lo may exceed hi).
    double x = 0.5 * (lo + hi);
    for (int it = 0; it < max_iter; ++it) {
        double fx = f(x);
        if (fx == 0.0) return x;
        if (fx < 0)
            lo = x;
        else
            hi = x;
        double d = df(x);
        double xn = (d != 0.0 && std::isfinite(d)) ? x - fx / d : 0.5 * (lo + hi);
        double a = std::min(lo, hi), b = std::max(lo, hi);
        if (!(xn > a && xn < b)) xn = 0.5 * (lo + hi);
        if (std::abs(xn - x) <= xtol * (1.0 + std::abs(x)) || std::abs(hi - lo) <= xtol * (1.0 + std::abs(x)))
            return xn;
        x = xn;
    }
    return x;
}

double bracketed_root(const RealFn& f, double lo, double hi, double xtol, int max_iter) {
    double flo = f(lo), fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0) == (fhi > 0)) throw std::runtime_error("bracketed_root: no sign change in bracket");
    std::uintmax_t iters = static_cast<std::uintmax_t>(max_iter);
    auto tol = [xtol](double a, double b) { return std::abs(b - a) <= xtol * (1.0 + std::abs(a)); };
    auto r = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi, tol, iters);
    return 0.5 * (r.first + r.second);
}

MinResult minimize_scalar(const RealFn& f, double lo, double hi, int bits, int max_iter) {
    std::uintmax_t iters = static_cast<std::uintmax_t>(max_iter);
    auto r = boost::math::tools::brent_find_minima(f, lo, hi, bits, iters);
    MinResult m{r.first, r.second};
    double flo = f(lo), fhi = f(hi);
    if (flo < m.value) m = {lo, flo};
    if (fhi < m.value) m = {hi, fhi};
    return m;
}

MinResult minimize_on_grid(const RealFn& f, const std::vector<double>& grid) {
    if (grid.empty()) throw std::invalid_argument("minimize_on_grid: empty grid");
    std::size_t best = 0;
    double bv = f(grid[0]);
    for (std::size_t i = 1; i < grid.size(); ++i) {
        double v = f(grid[i]);
        if (v < bv) {
            bv = v;
            best = i;
        }
    }
    double lo = grid[best > 0 ? best - 1 : 0];
    double hi = grid[best + 1 < grid.size() ? best + 1 : best];
    if (lo == hi) return {grid[best], bv};
    MinResult r = minimize_scalar(f, lo, hi);
    if (r.value > bv) return {grid[best], bv};
    return r;
}

std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> v(static_cast<std::size_t>(std::max(n, 1)));
    if (n <= 1) {
        v[0] = a;
        return v;
    }
    for (int i = 0; i < n; ++i) v[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
    return v;
}

std::vector<double> logspace(double a, double b, int n) {
    auto v = linspace(std::log(a), std::log(b), n);
    for (double& x : v) x = std::exp(x);
    return v;
}

}  // namespace itt
