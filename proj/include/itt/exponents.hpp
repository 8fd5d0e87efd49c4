#pragma once

// Error exponents of discrete memoryless channels and of Slepian-Wolf random
// binning, computed by solving small convex programs over joint types.

#include <limits>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "itt/types_core.hpp"

namespace itt {

enum class ScoreTag { ml, mmi, custom_linear };

// Decoding metric alpha(x, y); a codeword's score is the sum over letters.
struct DecoderScore {
    Eigen::MatrixXd coeffs;
    ScoreTag tag = ScoreTag::ml;

    // ln W(y|x), -inf where W = 0.
    static DecoderScore ml(const Channel& w);
    static DecoderScore mmi(Eigen::Index nx, Eigen::Index ny);
    // Coefficients must be finite.
    static DecoderScore linear(Eigen::MatrixXd coeffs);
};

enum class ExponentMethod { primal_convex, grid, dual, closed_form };

struct ExponentResult {
    double rate = 0.0;
    double value = 0.0;
    // Transmitted-type minimizer first, competitor (or auxiliary) type second.
    std::vector<JointDist> minimizers;
    ExponentMethod method = ExponentMethod::primal_convex;
    double residual = 0.0;
    double r_crit = std::numeric_limits<double>::quiet_NaN();
    bool converged = true;
};

class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Random-coding exponent of the alpha-decoder, by the two-regime procedure:
// E(R) = E(0) - R below the critical rate, a divergence minimization above it.
ExponentResult rc_exponent(const Channel& w, const Dist& p, double rate, const DecoderScore& score);
ExponentResult rc_exponent_mmi(const Channel& w, const Dist& p, double rate);
// The upper branch min D(Q||P x W) subject to I(Q~) <= R and the score
// constraint; equals rc_exponent for R above the critical rate.
ExponentResult rc_exponent_upper_branch(const Channel& w, const Dist& p, double rate, const DecoderScore& score);
ExponentResult sp_exponent(const Channel& w, const Dist& p, double rate);

// -sum Q(x, x~) ln sum_y sqrt(W(y|x) W(y|x~)).
double bhattacharyya_distance(const JointDist& q, const Channel& w);
// Not clipped at zero.
ExponentResult expurgated_exponent(const Channel& w, const Dist& p, double rate);

ExponentResult correct_decoding_exponent(const Channel& w, const Dist& p, double rate);
double correct_decoding_bsc(double p, double rate);
// Smaller root of ln 2 - H(delta) = R.
double gv_distance(double rate);

// Requires a joint distribution with full support.
ExponentResult sw_binning_exponent(const JointDist& pxy, double rate);

}  // namespace itt
