#include "itt/continuous_types.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

#include <boost/math/special_functions/gamma.hpp>

#include "itt/types_core.hpp"

namespace itt {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
const double kHalfLog2PiE = 0.5 * std::log(2.0 * kPi * std::exp(1.0));

double log_det_pd(const Eigen::MatrixXd& m, const char* what) {
    Eigen::LLT<Eigen::MatrixXd> llt(m);
    if (llt.info() != Eigen::Success) throw std::domain_error(std::string(what) + ": matrix is not positive definite");
    const Eigen::MatrixXd& l = llt.matrixL();
    double s = 0.0;
    for (Eigen::Index i = 0; i < l.rows(); ++i) {
        if (!(l(i, i) > 0.0)) throw std::domain_error(std::string(what) + ": matrix is singular");
        s += 2.0 * std::log(l(i, i));
    }
    return s;
}

}  // namespace

double gaussian_volume_exponent(double s) {
    if (!(s > 0.0)) throw std::domain_error("gaussian_volume_exponent: s <= 0");
    return kHalfLog2PiE + 0.5 * std::log(s);
}

double refined_volume_exponent(double s, double mu) {
    double v = s - mu * mu;
    if (!(v > 0.0)) throw std::domain_error("refined_volume_exponent: s <= mu^2");
    return kHalfLog2PiE + 0.5 * std::log(v);
}

double mmse_from_covariance(const Eigen::MatrixXd& full, const Eigen::MatrixXd& sub) {
    if (full.rows() != full.cols() || sub.rows() != sub.cols() || full.rows() != sub.rows() + 1)
        throw std::invalid_argument("mmse_from_covariance: full must be sub bordered by one row and column");
    if (!full.bottomRightCorner(sub.rows(), sub.cols()).isApprox(sub, 1e-12) && sub.size() > 0)
        throw std::invalid_argument("mmse_from_covariance: sub is not the trailing block of full");
    double ld_full = log_det_pd(full, "mmse_from_covariance");
    double ld_sub = sub.size() > 0 ? log_det_pd(sub, "mmse_from_covariance") : 0.0;
    return std::exp(ld_full - ld_sub);
}

double conditional_volume_exponent(const GaussianTypeSpec& spec) {
    if (!(spec.s > 0.0)) throw std::domain_error("conditional_volume_exponent: s <= 0");
    const Eigen::Index k = static_cast<Eigen::Index>(spec.c.size());
    if (k == 0) return gaussian_volume_exponent(spec.s);
    if (spec.py.rows() != k || spec.py.cols() != k)
        throw std::invalid_argument("conditional_volume_exponent: Gram matrix size does not match c");
    Eigen::MatrixXd full(k + 1, k + 1);
    full(0, 0) = spec.s;
    for (Eigen::Index j = 0; j < k; ++j) full(0, j + 1) = full(j + 1, 0) = spec.c[j];
    full.bottomRightCorner(k, k) = spec.py;
    return kHalfLog2PiE + 0.5 * std::log(mmse_from_covariance(full, spec.py));
}

ArSpec yule_walker(const std::vector<double>& autocorrs) {
    if (autocorrs.empty()) throw std::invalid_argument("yule_walker: no autocorrelations");
    const int k = static_cast<int>(autocorrs.size()) - 1;
    Eigen::MatrixXd t(k + 1, k + 1);
    for (int i = 0; i <= k; ++i)
        for (int j = 0; j <= k; ++j) t(i, j) = autocorrs[std::abs(i - j)];
    log_det_pd(t, "yule_walker");
    ArSpec ar;
    ar.autocorrs = autocorrs;
    ar.sigma2 = autocorrs[0];
    if (k == 0) return ar;
    Eigen::VectorXd rhs(k);
    for (int j = 0; j < k; ++j) rhs(j) = autocorrs[j + 1];
    Eigen::VectorXd a = t.topLeftCorner(k, k).llt().solve(rhs);
    ar.coeffs.assign(a.data(), a.data() + k);
    ar.sigma2 = autocorrs[0] - a.dot(rhs);
    if (!(ar.sigma2 > 0.0)) throw std::domain_error("yule_walker: nonpositive innovation variance");
    return ar;
}

double gm_volume_exponent(const ArSpec& ar) { return gaussian_volume_exponent(ar.sigma2); }

double ar_spectral_entropy(const ArSpec& ar) {
    auto log_s = [&](double w) {
        std::complex<double> d(1.0, 0.0);
        for (std::size_t i = 0; i < ar.coeffs.size(); ++i)
            d -= ar.coeffs[i] * std::polar(1.0, -w * static_cast<double>(i + 1));
        return std::log(ar.sigma2) - std::log(std::norm(d));
    };
    double integral = integrate_gk(log_s, -kPi, kPi, 1e-13).value;
    return kHalfLog2PiE + integral / (4.0 * kPi);
}

namespace {

double dot_stats(const ExpFamily& fam, const std::vector<double>& theta, double x) {
    double v = 0.0;
    for (std::size_t j = 0; j < theta.size(); ++j) v += theta[j] * fam.stats[j](x);
    return v;
}

// Integral of h(x) over the support; h is called with the point x.
double integrate_support(const ExpFamily& fam, const RealFn& h) {
    switch (fam.support) {
        case Support::real_line:
            return integrate_real_line(h, 1e-11).value;
        case Support::half_line:
            return integrate_half_line(h, fam.lo, 1e-11).value;
        case Support::interval:
            return integrate(h, fam.lo, fam.hi, 1e-11).value;
    }
    return 0.0;
}

// Scale shift so that exp(theta . phi - shift) stays representable.
double log_shift(const ExpFamily& fam, const std::vector<double>& theta) {
    double a = fam.support == Support::real_line ? -20.0 : fam.lo;
    double b = fam.support == Support::interval ? fam.hi : a + 40.0;
    double m = -std::numeric_limits<double>::infinity();
    for (double x : linspace(a, b, 81)) m = std::max(m, dot_stats(fam, theta, x));
    return std::isfinite(m) ? m : 0.0;
}

void check_family(const ExpFamily& fam, std::size_t d) {
    if (fam.stats.empty()) throw std::invalid_argument("ExpFamily: no statistics");
    if (d != fam.stats.size()) throw std::invalid_argument("ExpFamily: parameter dimension mismatch");
}

// The density must decay along every unbounded direction of the support.
bool decays(const ExpFamily& fam, const std::vector<double>& theta) {
    if (fam.support == Support::interval) return true;
    std::vector<double> dirs = {1.0};
    if (fam.support == Support::real_line) dirs.push_back(-1.0);
    const double base = fam.support == Support::half_line ? fam.lo : 0.0;
    for (double d : dirs) {
        double a = dot_stats(fam, theta, base + d * 1e2), b = dot_stats(fam, theta, base + d * 1e4);
        if (!(b < a) || !(b < -50.0)) return false;
    }
    return true;
}

}  // namespace

double exp_family_log_z(const ExpFamily& fam, const std::vector<double>& theta) {
    check_family(fam, theta.size());
    if (!decays(fam, theta)) return kInf;
    double c = log_shift(fam, theta);
    double z = 0.0;
    try {
        z = integrate_support(fam, [&](double x) { return std::exp(dot_stats(fam, theta, x) - c); });
    } catch (const std::exception&) {
        return kInf;  // the quadrature met an infinite integrand
    }
    if (!(z > 0.0) || !std::isfinite(z)) return kInf;
    return c + std::log(z);
}

void exp_family_moments(const ExpFamily& fam, const std::vector<double>& theta, Eigen::VectorXd& mean,
                        Eigen::MatrixXd& cov) {
    check_family(fam, theta.size());
    const std::size_t d = theta.size();
    double lz = exp_family_log_z(fam, theta);
    if (!std::isfinite(lz)) throw std::domain_error("exp_family_moments: partition function diverges");
    auto dens = [&](double x) { return std::exp(dot_stats(fam, theta, x) - lz); };
    mean.resize(static_cast<Eigen::Index>(d));
    for (std::size_t j = 0; j < d; ++j)
        mean(j) = integrate_support(fam, [&](double x) {
            double p = dens(x);
            return p == 0.0 ? 0.0 : p * fam.stats[j](x);
        });
    cov.resize(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i; j < d; ++j) {
            double v = integrate_support(fam, [&](double x) {
                double p = dens(x);
                return p == 0.0 ? 0.0 : p * (fam.stats[i](x) - mean(i)) * (fam.stats[j](x) - mean(j));
            });
            cov(i, j) = cov(j, i) = v;
        }
}

double exp_family_entropy(const ExpFamily& fam, const std::vector<double>& theta) {
    double lz = exp_family_log_z(fam, theta);
    return integrate_support(fam, [&](double x) {
        double lp = dot_stats(fam, theta, x) - lz;
        double p = std::exp(lp);
        return p == 0.0 ? 0.0 : -p * lp;
    });
}

MaxEntResult maxent_solve(const ExpFamily& fam, const std::vector<double>& q, double tol, int max_iter) {
    return maxent_solve(fam, q, fam.theta0, tol, max_iter);
}

MaxEntResult maxent_solve(const ExpFamily& fam, const std::vector<double>& q, const std::vector<double>& theta_start,
                          double tol, int max_iter) {
    check_family(fam, q.size());
    check_family(fam, theta_start.size());
    const Eigen::Index d = static_cast<Eigen::Index>(q.size());
    Eigen::Map<const Eigen::VectorXd> qv(q.data(), d);
    std::vector<double> theta = theta_start;
    auto dual = [&](const std::vector<double>& t) {
        double lz = exp_family_log_z(fam, t);
        double v = lz;
        for (Eigen::Index j = 0; j < d; ++j) v -= qv(j) * t[j];
        return v;
    };
    double val = dual(theta);
    if (!std::isfinite(val)) throw std::domain_error("maxent_solve: partition function diverges at the start point");
    MaxEntResult r;
    Eigen::VectorXd mean;
    Eigen::MatrixXd cov;
    for (r.iterations = 0; r.iterations < max_iter; ++r.iterations) {
        exp_family_moments(fam, theta, mean, cov);
        Eigen::VectorXd grad = mean - qv;
        r.residual = grad.cwiseAbs().maxCoeff();
        if (r.residual <= tol) {
            r.converged = true;
            break;
        }
        // Newton first; near the edge of the natural parameter region the
        // Newton step can point outside it, so fall back to steepest descent.
        Eigen::VectorXd newton = cov.ldlt().solve(-grad);
        std::vector<Eigen::VectorXd> dirs;
        if (newton.allFinite() && grad.dot(newton) < 0.0) dirs.push_back(newton);
        dirs.push_back(-grad);
        bool moved = false;
        std::vector<double> trial(theta.size());
        // Close to the solution the dual decrease drops below quadrature noise;
        // take the full Newton step there.
        if (r.residual <= 1e-5 && dirs.size() == 2) {
            for (Eigen::Index j = 0; j < d; ++j) trial[j] = theta[j] + newton(j);
            double tv = dual(trial);
            if (std::isfinite(tv)) {
                theta = trial;
                val = tv;
                continue;
            }
        }
        for (std::size_t k = 0; k < dirs.size() && !moved; ++k) {
            const Eigen::VectorXd& step = dirs[k];
            const double slope = grad.dot(step);
            const double t_min = (k + 1 < dirs.size()) ? 1e-6 : 1e-18;
            for (double t = 1.0; t >= t_min; t *= 0.5) {
                for (Eigen::Index j = 0; j < d; ++j) trial[j] = theta[j] + t * step(j);
                double tv = dual(trial);
                if (std::isfinite(tv) && tv <= val + 1e-4 * t * slope) {
                    theta = trial;
                    val = tv;
                    moved = true;
                    break;
                }
            }
        }
        if (!moved) break;
    }
    r.theta = theta;
    r.log_z = exp_family_log_z(fam, theta);
    r.h = r.log_z;
    for (Eigen::Index j = 0; j < d; ++j) r.h -= qv(j) * theta[j];
    if (!r.converged)
        throw std::runtime_error("maxent_solve: moment equations not met, residual " + std::to_string(r.residual));
    return r;
}

double generalized_gaussian_entropy(double m, double q) {
    if (!(m > 0.0) || !(q > 0.0)) throw std::domain_error("generalized_gaussian_entropy: m and q must be positive");
    double log_cm = m * (std::log(m) - (1.0 + 1.0 / m) * std::log(2.0) - boost::math::lgamma(1.0 / m));
    return (std::log(m * std::exp(1.0) * q / 2.0) - log_cm) / m;
}

double gaussian_ld_exponent(double A, double sigma2) {
    if (!(sigma2 > 0.0)) throw std::domain_error("gaussian_ld_exponent: sigma2 <= 0");
    if (A < sigma2) throw std::domain_error("gaussian_ld_exponent: A < sigma2");
    double r = A / sigma2;
    return 0.5 * (r - std::log(r) - 1.0);
}

double quadratic_event_exponent(double A, double B, double sigma2) {
    if (!(B > 0.0)) throw std::domain_error("quadratic_event_exponent: B <= 0");
    if (!(sigma2 > 0.0)) throw std::domain_error("quadratic_event_exponent: sigma2 <= 0");
    // The unconstrained minimizer (s, mu) = (sigma2, 0) is feasible.
    if (sigma2 + A * A >= B) return 0.0;
    // Otherwise the convex objective is minimized on the boundary
    // s = B + 2 A mu - A^2, which lies inside s > mu^2 for |mu - A| < sqrt(B).
    const double rb = std::sqrt(B);
    auto obj = [&](double mu) {
        double s = B + 2.0 * A * mu - A * A;
        double v = s - mu * mu;
        if (!(v > 0.0)) return std::numeric_limits<double>::infinity();
        return 0.5 * (s / sigma2 - std::log(v / sigma2) - 1.0);
    };
    const double lo = A - rb, hi = A + rb;
    MinResult m = minimize_on_grid(obj, linspace(lo + 1e-9 * rb, hi - 1e-9 * rb, 401));
    return m.value;
}

double autocorr_event_exponent(double rho) {
    if (!(rho > 0.0 && rho < 1.0)) throw std::domain_error("autocorr_event_exponent: rho outside (0,1)");
    return -0.5 * std::log1p(-rho * rho);
}

double mixed_stat_event_exponent(double A, double sigma2) {
    if (!(sigma2 > 0.0)) throw std::domain_error("mixed_stat_event_exponent: sigma2 <= 0");
    const double sigma = std::sqrt(sigma2);
    const double typical = std::sqrt(2.0 / kPi) * sigma;
    if (A < typical * (1.0 - 1e-12)) throw std::domain_error("mixed_stat_event_exponent: A below sqrt(2/pi) sigma");
    if (A <= typical * (1.0 + 1e-10)) return 0.0;

    ExpFamily fam;
    fam.stats = {[](double x) { return std::abs(x); }, [](double x) { return x * x; }};
    fam.support = Support::real_line;
    fam.theta0 = {0.0, -0.5 / sigma2};
    const double offset = 0.5 * std::log(2.0 * kPi * sigma2);
    std::vector<double> warm = fam.theta0;
    // The objective increases in q1 beyond the typical value, so q1 = A. The
    // optimal q2 - A^2 is the variance of a folded normal, which lies in
    // [(1 - 2/pi) sigma2, sigma2]; the search over q2 is convex.
    auto obj = [&](double q2) {
        MaxEntResult r = maxent_solve(fam, {A, q2}, warm, 1e-9, 200);
        warm = r.theta;
        return q2 / (2.0 * sigma2) - r.h + offset;
    };
    double lo = A * A + 0.3 * sigma2, hi = A * A + 1.05 * sigma2;
    MinResult m = minimize_scalar(obj, lo, hi, 40, 200);
    return m.value;
}

}  // namespace itt
