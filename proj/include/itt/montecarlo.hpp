#pragma once

// Seeded Monte-Carlo estimation. Samples are drawn in fixed-size batches; batch
// b uses an mt19937_64 seeded with splitmix64(seed + b), so the result does not
// depend on the number of threads.

#include <cstdint>
#include <functional>
#include <random>

namespace itt {

std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t batch_seed(std::uint64_t seed, std::uint64_t batch);

struct McResult {
    double mean = 0.0;
    double se = 0.0;  // standard error of the mean
    std::uint64_t samples = 0;
};

using Sampler = std::function<double(std::mt19937_64&)>;

inline constexpr std::uint64_t kMcBatch = 1u << 16;

// OpenMP over batches; per-batch sums are combined in batch order.
McResult mc_mean(const Sampler& draw, std::uint64_t samples, std::uint64_t seed);
// Single-threaded reference with the same batch layout.
McResult mc_mean_serial(const Sampler& draw, std::uint64_t samples, std::uint64_t seed);

}  // namespace itt
