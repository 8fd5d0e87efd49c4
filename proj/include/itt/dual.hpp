#pragma once

// Lagrange-dual lower bound on the random-coding exponent of a linear
// alpha-decoder. Every admissible choice of the dual variables gives a valid
// bound; the bound is not tight in general.

#include <vector>

#include "itt/exponents.hpp"

namespace itt {

struct DualParams {
    double rho = 0.5;          // in [0, 1]
    double lambda = 0.0;       // >= 0
    std::vector<double> nu;    // one entry per output letter; empty means zero
};

//   -sum_x P(x) ln sum_y W(y|x) e^{nu(y) - lambda alpha(x,y)}
//   - rho ln max_y sum_x P(x) e^{(lambda alpha(x,y) - nu(y)) / rho} - rho R
// The middle term at rho = 0 is -max_{x,y} (lambda alpha(x,y) - nu(y)).
double dual_rc_bound(const Channel& w, const Dist& p, double rate, const DecoderScore& score, const DualParams& d);

struct DualOptimum {
    DualParams params;
    double value = 0.0;
};

// Coordinate ascent from rho = 1/2, lambda = 0, nu = 0, with nu of the last
// output letter pinned at zero (the bound is invariant to shifting nu).
DualOptimum dual_rc_optimize(const Channel& w, const Dist& p, double rate, const DecoderScore& score);

}  // namespace itt
