#include "itt/montecarlo.hpp"

#include <cmath>
#include <vector>

namespace itt {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t batch_seed(std::uint64_t seed, std::uint64_t batch) { return splitmix64(seed + batch); }

namespace {

struct BatchSums {
    double s1 = 0.0, s2 = 0.0;
};

BatchSums run_batch(const Sampler& draw, std::uint64_t seed, std::uint64_t b, std::uint64_t count) {
    std::mt19937_64 rng(batch_seed(seed, b));
    BatchSums s;
    for (std::uint64_t i = 0; i < count; ++i) {
        double v = draw(rng);
        s.s1 += v;
        s.s2 += v * v;
    }
    return s;
}

McResult combine(const std::vector<BatchSums>& sums, std::uint64_t samples) {
    double s1 = 0.0, s2 = 0.0;
    for (const auto& s : sums) {
        s1 += s.s1;
        s2 += s.s2;
    }
    McResult r;
    r.samples = samples;
    const double n = static_cast<double>(samples);
    r.mean = s1 / n;
    double var = samples > 1 ? std::max(0.0, (s2 - n * r.mean * r.mean) / (n - 1.0)) : 0.0;
    r.se = std::sqrt(var / n);
    return r;
}

std::uint64_t batch_count(std::uint64_t samples, std::uint64_t b) {
    std::uint64_t start = b * kMcBatch;
    return std::min(kMcBatch, samples - start);
}

}  // namespace

McResult mc_mean(const Sampler& draw, std::uint64_t samples, std::uint64_t seed) {
    if (samples == 0) return {};
    const std::int64_t nb = static_cast<std::int64_t>((samples + kMcBatch - 1) / kMcBatch);
    std::vector<BatchSums> sums(static_cast<std::size_t>(nb));
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t b = 0; b < nb; ++b) {
        auto ub = static_cast<std::uint64_t>(b);
        sums[static_cast<std::size_t>(b)] = run_batch(draw, seed, ub, batch_count(samples, ub));
    }
    return combine(sums, samples);
}

McResult mc_mean_serial(const Sampler& draw, std::uint64_t samples, std::uint64_t seed) {
    if (samples == 0) return {};
    const std::uint64_t nb = (samples + kMcBatch - 1) / kMcBatch;
    std::vector<BatchSums> sums(nb);
    for (std::uint64_t b = 0; b < nb; ++b) sums[b] = run_batch(draw, seed, b, batch_count(samples, b));
    return combine(sums, samples);
}

}  // namespace itt
