#include "itt/dual.hpp"

#include <algorithm>
#include <cmath>

#include "itt/numerics.hpp"

namespace itt {

namespace {

constexpr double kLambdaMax = 10.0;
constexpr double kNuMax = 20.0;

void check(const Channel& w, const Dist& p, const DecoderScore& score, const DualParams& d) {
    if (score.tag == ScoreTag::mmi) throw std::invalid_argument("dual_rc_bound: linear scores only");
    if (score.coeffs.rows() != w.nx() || score.coeffs.cols() != w.ny())
        throw std::invalid_argument("dual_rc_bound: score size mismatch");
    if (static_cast<Eigen::Index>(p.size()) != w.nx()) throw std::invalid_argument("dual_rc_bound: |P| != |X|");
    if (!(d.rho >= 0.0 && d.rho <= 1.0) || !(d.lambda >= 0.0))
        throw std::domain_error("dual_rc_bound: rho must lie in [0,1] and lambda must be >= 0");
    if (!d.nu.empty() && static_cast<Eigen::Index>(d.nu.size()) != w.ny())
        throw std::invalid_argument("dual_rc_bound: nu size != |Y|");
}

// lambda * alpha with 0 * (-inf) = 0.
double scaled(double lambda, double alpha) { return lambda == 0.0 ? 0.0 : lambda * alpha; }

// With tau > 0 the max over y is replaced by tau ln sum_y e^{./tau}, which is
// larger, so the result is still a valid (smooth) lower bound.
double bound_impl(const Channel& w, const Dist& p, double rate, const DecoderScore& score, const DualParams& d,
                  double tau) {
    auto nu = [&](Eigen::Index y) { return d.nu.empty() ? 0.0 : d.nu[static_cast<std::size_t>(y)]; };
    std::vector<double> v;
    double first = 0.0;
    for (Eigen::Index x = 0; x < w.nx(); ++x) {
        const double px = p[static_cast<std::size_t>(x)];
        if (px <= 0.0) continue;
        v.clear();
        for (Eigen::Index y = 0; y < w.ny(); ++y)
            if (w(x, y) > 0.0) v.push_back(std::log(w(x, y)) + nu(y) - scaled(d.lambda, score.coeffs(x, y)));
        first -= px * log_sum_exp(v);
    }
    double middle = -kInf;
    std::vector<double> per_y;
    for (Eigen::Index y = 0; y < w.ny(); ++y) {
        v.clear();
        for (Eigen::Index x = 0; x < w.nx(); ++x) {
            const double px = p[static_cast<std::size_t>(x)];
            if (px <= 0.0) continue;
            const double e = scaled(d.lambda, score.coeffs(x, y)) - nu(y);
            if (e == -kInf) continue;
            v.push_back(d.rho > 0.0 ? std::log(px) + e / d.rho : e);
        }
        if (v.empty()) continue;
        const double s = d.rho > 0.0 ? d.rho * log_sum_exp(v) : *std::max_element(v.begin(), v.end());
        middle = std::max(middle, s);
        per_y.push_back(s / tau);
    }
    if (tau > 0.0 && !per_y.empty()) middle = tau * log_sum_exp(per_y);
    return first - middle - d.rho * rate;
}

}  // namespace

double dual_rc_bound(const Channel& w, const Dist& p, double rate, const DecoderScore& score, const DualParams& d) {
    check(w, p, score, d);
    return bound_impl(w, p, rate, score, d, 0.0);
}

DualOptimum dual_rc_optimize(const Channel& w, const Dist& p, double rate, const DecoderScore& score) {
    DualParams cur;
    cur.nu.assign(static_cast<std::size_t>(w.ny()), 0.0);
    check(w, p, score, cur);
    DualOptimum best{cur, bound_impl(w, p, rate, score, cur, 0.0)};

    // The bound is jointly concave but not smooth in nu (max over y), where
    // plain coordinate ascent stalls. Ascend on smoothed versions with a
    // decreasing temperature and keep the best exact bound seen.
    for (double tau : {1.0, 0.1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 0.0}) {
        double val = bound_impl(w, p, rate, score, cur, tau);
        auto sweep = [&](double& coord, double lo, double hi) {
            const double keep = coord;
            auto f = [&](double v) {
                coord = v;
                double b = bound_impl(w, p, rate, score, cur, tau);
                return std::isfinite(b) ? -b : 1e300;
            };
            MinResult m = minimize_scalar(f, lo, hi);
            coord = m.x;
            const double b = bound_impl(w, p, rate, score, cur, tau);
            if (b > val) val = b;
            else coord = keep;
            const double exact = bound_impl(w, p, rate, score, cur, 0.0);
            if (exact > best.value) best = {cur, exact};
        };
        for (int it = 0; it < 200; ++it) {
            const double before = val;
            // rho last: with lambda = 0 the bound is -rho R, which would pin rho at 0.
            sweep(cur.lambda, 0.0, kLambdaMax);
            for (std::size_t y = 0; y + 1 < cur.nu.size(); ++y) sweep(cur.nu[y], -kNuMax, kNuMax);
            sweep(cur.rho, 0.0, 1.0);
            if (val - before <= 1e-13) break;
        }
    }
    return best;
}

}  // namespace itt
