#pragma once

// Volume exponents of Gaussian, conditional Gaussian, Gauss-Markov and
// exponential-family type classes, and event exponents built from them.

#include <vector>

#include <Eigen/Dense>

#include "itt/numerics.hpp"

namespace itt {

double gaussian_volume_exponent(double s);
double refined_volume_exponent(double s, double mu);

// X with power s, correlations c_j = E[X Y_j] with conditioners of Gram matrix py.
struct GaussianTypeSpec {
    double s = 1.0;
    std::vector<double> c;
    Eigen::MatrixXd py;
};
double conditional_volume_exponent(const GaussianTypeSpec& spec);

// |full| / |sub|, where full is sub bordered by the X row and column (X first).
double mmse_from_covariance(const Eigen::MatrixXd& full, const Eigen::MatrixXd& sub);

struct ArSpec {
    std::vector<double> autocorrs;  // s_0..s_k
    std::vector<double> coeffs;     // a_1..a_k
    double sigma2 = 0.0;
};
ArSpec yule_walker(const std::vector<double>& autocorrs);
double gm_volume_exponent(const ArSpec& ar);
// 1/2 ln(2 pi e) + (1 / 4 pi) int_{-pi}^{pi} ln S(w) dw for the AR spectrum.
double ar_spectral_entropy(const ArSpec& ar);

enum class Support { real_line, half_line, interval };

struct ExpFamily {
    std::vector<RealFn> stats;
    Support support = Support::real_line;
    double lo = 0.0;  // half_line start, interval start
    double hi = 1.0;  // interval end
    std::vector<double> theta0;  // interior starting point of the natural parameter region
};

struct MaxEntResult {
    std::vector<double> theta;
    double h = 0.0;
    double log_z = 0.0;
    double residual = 0.0;
    int iterations = 0;
    bool converged = false;
};

double exp_family_log_z(const ExpFamily& fam, const std::vector<double>& theta);
// Mean vector and covariance of the statistics under P_theta.
void exp_family_moments(const ExpFamily& fam, const std::vector<double>& theta, Eigen::VectorXd& mean,
                        Eigen::MatrixXd& cov);
// -int P_theta ln P_theta by direct quadrature.
double exp_family_entropy(const ExpFamily& fam, const std::vector<double>& theta);

// Damped Newton on ln Z(theta) - q^T theta. Throws std::runtime_error with the
// residual when the moment equations are not met to tol.
MaxEntResult maxent_solve(const ExpFamily& fam, const std::vector<double>& q, double tol = 1e-8,
                          int max_iter = 100);
MaxEntResult maxent_solve(const ExpFamily& fam, const std::vector<double>& q, const std::vector<double>& theta_start,
                          double tol = 1e-8, int max_iter = 100);

// Closed form for phi(x) = |x|^m: (1/m) ln(m e q / (2 c_m)).
double generalized_gaussian_entropy(double m, double q);

double gaussian_ld_exponent(double A, double sigma2);
double quadratic_event_exponent(double A, double B, double sigma2);
double autocorr_event_exponent(double rho);
double mixed_stat_event_exponent(double A, double sigma2);

}  // namespace itt
