#pragma once

// Exact finite-length error probability of the fixed-composition random-coding
// ensemble for binary-input binary-output channels.

#include "itt/exponents.hpp"

namespace itt {

inline constexpr int kMaxEnsembleLength = 400;

// Probability that some of the M - 1 = ceil(e^{nR}) - 1 competing codewords,
// drawn uniformly from the type class of the rounded composition, scores at
// least as high as the transmitted one (ties count as errors).
double ensemble_error_probability_exact(const Channel& w, const Dist& p, int n, double rate,
                                        const DecoderScore& score);
// Same, as a natural logarithm; -inf when M = 1.
double log_ensemble_error_probability_exact(const Channel& w, const Dist& p, int n, double rate,
                                            const DecoderScore& score);

}  // namespace itt
