// Serial reference versus OpenMP for the two parallel kernels: the joint-type
// grid sweep and the batched Monte-Carlo mean. Prints timings and checks that
// both paths agree bit for bit.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <random>

#include <omp.h>

#include "itt/grid_oracle.hpp"
#include "itt/montecarlo.hpp"
#include "itt/numerics.hpp"

namespace {

template <class Fn>
double seconds(Fn fn) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
    const int denom = argc > 1 ? std::atoi(argv[1]) : 120;
    const std::uint64_t samples = argc > 2 ? std::strtoull(argv[2], nullptr, 10) : 20'000'000ULL;
    std::printf("threads %d, grid denom %d, mc samples %llu\n", omp_get_max_threads(), denom,
                static_cast<unsigned long long>(samples));

    Eigen::MatrixXd m(2, 3);
    m << 0.7, 0.2, 0.1, 0.1, 0.3, 0.6;
    const itt::Channel w(m);
    const itt::Dist p = itt::Dist::uniform(2);
    const auto rates = itt::linspace(0.0, 0.3, 10);
    const auto score = itt::DecoderScore::ml(w);

    std::vector<itt::ExponentResult> serial, parallel;
    const double ts = seconds([&] { serial = itt::rc_exponent_grid_sweep(w, p, rates, score, denom, false); });
    const double tp = seconds([&] { parallel = itt::rc_exponent_grid_sweep(w, p, rates, score, denom, true); });
    bool same = true;
    for (std::size_t i = 0; i < rates.size(); ++i) same = same && serial[i].value == parallel[i].value;
    std::printf("grid sweep   serial %8.3f s  openmp %8.3f s  speedup %5.2f  identical %s\n", ts, tp, ts / tp,
                same ? "yes" : "NO");

    const itt::Sampler draw = [](std::mt19937_64& g) { return std::log1p(std::exponential_distribution<double>(1.0)(g)); };
    itt::McResult a, b;
    const double ms = seconds([&] { a = itt::mc_mean_serial(draw, samples, 11); });
    const double mp = seconds([&] { b = itt::mc_mean(draw, samples, 11); });
    std::printf("mc mean      serial %8.3f s  openmp %8.3f s  speedup %5.2f  identical %s\n", ms, mp, ms / mp,
                a.mean == b.mean && a.se == b.se ? "yes" : "NO");
    return same && a.mean == b.mean ? 0 : 1;
}
