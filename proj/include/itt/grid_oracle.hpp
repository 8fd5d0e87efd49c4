#pragma once

// Exhaustive minimization over joint types with a fixed denominator. These are
// the references the convex procedures are checked against: each value is the
// exact minimum over the rational grid, so it upper-bounds the continuum
// optimum (up to the rounding of the input distribution to the grid).

#include <vector>

#include "itt/exponents.hpp"

namespace itt {

inline constexpr int kMaxGridCells = 9;
inline constexpr int kMaxGridDenom = 400;
inline constexpr double kMaxGridTables = 2e8;

// C0 |X||Y| / denom with C0 = 2 + max |ln W| + ln denom.
double grid_residual(const Channel& w, int denom);

// The mmi score is handled too (alpha = empirical mutual information).
ExponentResult rc_exponent_grid(const Channel& w, const Dist& p, double rate, const DecoderScore& score, int denom);
// One enumeration shared by all rates. The serial path is the reference for
// the OpenMP one; both return identical values.
std::vector<ExponentResult> rc_exponent_grid_sweep(const Channel& w, const Dist& p, const std::vector<double>& rates,
                                                   const DecoderScore& score, int denom, bool parallel = true);

ExponentResult sp_exponent_grid(const Channel& w, const Dist& p, double rate, int denom);
ExponentResult expurgated_exponent_grid(const Channel& w, const Dist& p, double rate, int denom);
ExponentResult correct_decoding_exponent_grid(const Channel& w, const Dist& p, double rate, int denom);
ExponentResult sw_binning_exponent_grid(const JointDist& pxy, double rate, int denom);

}  // namespace itt
