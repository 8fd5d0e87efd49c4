#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "itt/dual.hpp"
#include "itt/ensemble.hpp"
#include "itt/exponents.hpp"
#include "itt/grid_oracle.hpp"
#include "itt/montecarlo.hpp"

using namespace itt;

namespace {

Channel random_channel(std::mt19937_64& rng, int nx, int ny) {
    std::uniform_real_distribution<double> u(0.05, 1.0);
    Eigen::MatrixXd w(nx, ny);
    for (int x = 0; x < nx; ++x) {
        for (int y = 0; y < ny; ++y) w(x, y) = u(rng);
        w.row(x) /= w.row(x).sum();
    }
    return Channel(w);
}

double capacity_uniform(const Channel& w) { return mutual_information(w.joint(Dist::uniform(w.nx()))); }

// Sphere packing for the BSC with uniform input: D(delta || p) with ln 2 - H(delta) = R.
double bsc_sphere_packing(double p, double rate) { return binary_kl(gv_distance(rate), p); }

}  // namespace

TEST_CASE("decoder scores") {
    Channel w = Channel::bsc(0.0);
    DecoderScore ml = DecoderScore::ml(w);
    CHECK(ml.tag == ScoreTag::ml);
    CHECK(ml.coeffs(0, 0) == 0.0);
    CHECK(std::isinf(ml.coeffs(0, 1)));
    CHECK_THROWS_AS(DecoderScore::linear(ml.coeffs), std::invalid_argument);
    CHECK(DecoderScore::mmi(2, 3).coeffs.cols() == 3);
}

TEST_CASE("bhattacharyya distance") {
    const double p = 0.1;
    Channel w = Channel::bsc(p);
    Eigen::MatrixXd diag(2, 2), anti(2, 2);
    diag << 0.5, 0.0, 0.0, 0.5;
    anti << 0.0, 0.5, 0.5, 0.0;
    CHECK(bhattacharyya_distance(JointDist(diag), w) == doctest::Approx(0.0));
    const double da = -std::log(2.0 * std::sqrt(p * (1 - p)));
    CHECK(bhattacharyya_distance(JointDist(anti), w) == doctest::Approx(da).epsilon(1e-14));
    CHECK(bhattacharyya_distance(JointDist(0.3 * diag + 0.7 * anti), w) == doctest::Approx(0.7 * da).epsilon(1e-14));
}

TEST_CASE("gilbert-varshamov distance and BSC correct decoding") {
    const double ln2 = std::log(2.0);
    CHECK(gv_distance(0.0) == 0.5);
    CHECK(gv_distance(ln2) == 0.0);
    double d = gv_distance(0.2);
    CHECK(std::abs(ln2 - binary_entropy(d) - 0.2) <= 1e-12);
    CHECK(d < 0.5);
    CHECK_THROWS_AS(gv_distance(-0.1), std::domain_error);
    CHECK_THROWS_AS(gv_distance(0.8), std::domain_error);

    const double p = 0.1, cap = ln2 - binary_entropy(p);
    CHECK(correct_decoding_bsc(p, cap) == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(correct_decoding_bsc(p, ln2) == doctest::Approx(-std::log(1 - p)).epsilon(1e-12));
    CHECK_THROWS_AS(correct_decoding_bsc(p, 0.1), std::domain_error);
}

TEST_CASE("random coding exponent on the BSC") {
    const double p = 0.1;
    Channel w = Channel::bsc(p);
    Dist u = Dist::uniform(2);
    DecoderScore ml = DecoderScore::ml(w);
    const double cap = capacity_uniform(w);

    // E(0) = E0(1) = -ln(1/2 (sqrt(p) + sqrt(1-p))^2); R_cr = ln 2 - H(delta_c).
    ExponentResult r0 = rc_exponent(w, u, 0.0, ml);
    const double e0 = -std::log(0.5 * std::pow(std::sqrt(p) + std::sqrt(1 - p), 2));
    CHECK(r0.value == doctest::Approx(e0).epsilon(1e-9));
    const double dc = std::sqrt(p) / (std::sqrt(p) + std::sqrt(1 - p));
    CHECK(r0.r_crit == doctest::Approx(std::log(2.0) - binary_entropy(dc)).epsilon(1e-6));
    CHECK(r0.residual <= 1e-9);
    CHECK(r0.converged);
    REQUIRE(r0.minimizers.size() == 2);

    for (double rate : {0.14, 0.2, 0.3, 0.35}) {
        ExponentResult r = rc_exponent(w, u, rate, ml);
        CHECK(std::abs(r.value - sp_exponent(w, u, rate).value) <= 1e-4);
        CHECK(std::abs(r.value - bsc_sphere_packing(p, rate)) <= 1e-8);
    }
    CHECK(rc_exponent(w, u, cap, ml).value == 0.0);
    CHECK(rc_exponent(w, u, 0.5, ml).value == 0.0);
    CHECK(rc_exponent_mmi(w, u, 0.5).value == 0.0);
    CHECK(sp_exponent(w, u, 0.5).value == 0.0);
}

TEST_CASE("random coding exponent matches its grid oracle") {
    Channel w = Channel::bsc(0.1);
    Dist u = Dist::uniform(2);
    DecoderScore ml = DecoderScore::ml(w);
    const double exact = rc_exponent(w, u, 0.3, ml).value;
    double prev = kInf;
    for (int denom : {50, 100, 200}) {
        ExponentResult g = rc_exponent_grid(w, u, 0.3, ml, denom);
        CHECK(g.value >= exact - 1e-9);
        CHECK(g.value <= prev + 1e-12);
        CHECK(g.value - exact <= g.residual);
        prev = g.value;
    }
    CHECK(std::abs(prev - exact) <= 1e-3);

    std::mt19937_64 rng(7);
    Channel c = random_channel(rng, 2, 3);
    const double cap = capacity_uniform(c);
    std::vector<double> rates{0.0, 0.25 * cap, 0.5 * cap, 0.75 * cap};
    auto grid = rc_exponent_grid_sweep(c, u, rates, DecoderScore::ml(c), 60);
    for (std::size_t i = 0; i < rates.size(); ++i) {
        const double v = rc_exponent(c, u, rates[i], DecoderScore::ml(c)).value;
        CHECK(grid[i].value >= v - 1e-9);
        CHECK(grid[i].value - v <= grid[i].residual);
        CHECK(grid[i].value - v <= 2e-2);
    }
}

TEST_CASE("grid oracle: serial and parallel agree, degenerate denominators, guards") {
    std::mt19937_64 rng(11);
    Channel c = random_channel(rng, 2, 3);
    Dist u = Dist::uniform(2);
    std::vector<double> rates{0.0, 0.05, 0.2};
    auto a = rc_exponent_grid_sweep(c, u, rates, DecoderScore::ml(c), 40, true);
    auto b = rc_exponent_grid_sweep(c, u, rates, DecoderScore::ml(c), 40, false);
    for (std::size_t i = 0; i < rates.size(); ++i) CHECK(a[i].value == b[i].value);

    // denom = 1: the single type puts all mass on one input letter.
    ExponentResult g1 = rc_exponent_grid(c, u, 0.0, DecoderScore::ml(c), 1);
    CHECK(std::isfinite(g1.value));
    CHECK(g1.minimizers.front().matrix().maxCoeff() == 1.0);

    Channel big(Eigen::MatrixXd::Constant(3, 4, 0.25));
    CHECK_THROWS_AS(rc_exponent_grid(big, Dist::uniform(3), 0.1, DecoderScore::ml(big), 10), std::length_error);
    CHECK_THROWS_AS(rc_exponent_grid(c, u, 0.1, DecoderScore::ml(c), 401), std::length_error);
}

TEST_CASE("rc exponent shape: slope -1 below R_cr, convex and non-increasing") {
    std::mt19937_64 rng(3);
    Channel c = random_channel(rng, 2, 3);
    Dist u = Dist::uniform(2);
    DecoderScore ml = DecoderScore::ml(c);
    const double cap = capacity_uniform(c);
    ExponentResult r0 = rc_exponent(c, u, 0.0, ml);
    std::vector<double> v;
    for (int i = 0; i < 20; ++i) {
        double rate = cap * i / 19.0;
        ExponentResult r = rc_exponent(c, u, rate, ml);
        CHECK(r.value >= -rate);
        if (rate <= r0.r_crit) CHECK(std::abs(r.value - (r0.value - rate)) <= 1e-8);
        if (rate >= r0.r_crit) CHECK(std::abs(r.value - sp_exponent(c, u, rate).value) <= 1e-4);
        // Sphere packing upper-bounds every achievable exponent.
        CHECK(r.value <= sp_exponent(c, u, rate).value + 1e-9);
        v.push_back(r.value);
    }
    for (std::size_t i = 1; i < v.size(); ++i) CHECK(v[i] <= v[i - 1] + 1e-9);
    for (std::size_t i = 1; i + 1 < v.size(); ++i) CHECK(v[i - 1] + v[i + 1] - 2 * v[i] >= -1e-7);

    // The two branches meet at the critical rate.
    ExponentResult up = rc_exponent_upper_branch(c, u, r0.r_crit, ml);
    CHECK(std::abs(up.value - (r0.value - r0.r_crit)) <= 1e-6);
}

TEST_CASE("ML and MMI decoding give the same exponent") {
    std::mt19937_64 rng(5);
    Dist u = Dist::uniform(2);
    for (int k = 0; k < 3; ++k) {
        Channel c = random_channel(rng, 2, 3);
        const double cap = capacity_uniform(c);
        for (double f : {0.0, 0.3, 0.6, 0.9}) {
            double ml = rc_exponent(c, u, f * cap, DecoderScore::ml(c)).value;
            double mmi = rc_exponent_mmi(c, u, f * cap).value;
            CHECK(std::abs(ml - mmi) <= 1e-4);
        }
    }
    // The mmi tag dispatches to the dedicated routine.
    Channel w = Channel::bsc(0.1);
    CHECK(rc_exponent(w, u, 0.05, DecoderScore::mmi(2, 2)).value ==
          doctest::Approx(rc_exponent_mmi(w, u, 0.05).value).epsilon(1e-12));
    ExponentResult g = rc_exponent_grid(w, u, 0.05, DecoderScore::mmi(2, 2), 200);
    CHECK(std::abs(g.value - rc_exponent_mmi(w, u, 0.05).value) <= 1e-3);
}

TEST_CASE("sphere packing") {
    Channel w = Channel::bsc(0.1);
    Dist u = Dist::uniform(2);
    // R = 0: product conditionals only.
    CHECK(sp_exponent(w, u, 0.0).value == doctest::Approx(-std::log(2 * std::sqrt(0.09))).epsilon(1e-12));
    CHECK(std::abs(sp_exponent(w, u, 0.0).value - sp_exponent_grid(w, u, 0.0, 200).value) <= 1e-9);
    ExponentResult s = sp_exponent(w, u, 0.3);
    ExponentResult g = sp_exponent_grid(w, u, 0.3, 200);
    CHECK(g.value >= s.value - 1e-9);
    CHECK(g.value - s.value <= 1e-3);
}

TEST_CASE("expurgated exponent") {
    Channel useless(Eigen::MatrixXd::Constant(2, 3, 1.0 / 3));
    Dist u = Dist::uniform(2);
    for (double rate : {0.01, 0.2}) CHECK(expurgated_exponent(useless, u, rate).value == doctest::Approx(-rate).epsilon(1e-9));

    Channel w = Channel::bsc(0.1);
    ExponentResult e = expurgated_exponent(w, u, 0.01);
    ExponentResult g = expurgated_exponent_grid(w, u, 0.01, 200);
    CHECK(g.value >= e.value - 1e-9);
    CHECK(g.value - e.value <= 1e-3);
    CHECK(e.value > rc_exponent(w, u, 0.01, DecoderScore::ml(w)).value);
    // R = 0: d_B of the independent pair.
    CHECK(expurgated_exponent(w, u, 0.0).value == doctest::Approx(0.5 * -std::log(2 * std::sqrt(0.09))).epsilon(1e-12));

    Channel w2 = Channel::bsc(0.01);
    ExponentResult ex = expurgated_exponent_grid(w2, u, 0.01, 200);
    ExponentResult rc = rc_exponent_grid(w2, u, 0.01, DecoderScore::ml(w2), 200);
    CHECK(ex.value >= rc.value);
    CHECK(expurgated_exponent(w2, u, 0.01).value >= rc_exponent(w2, u, 0.01, DecoderScore::ml(w2)).value);
}

TEST_CASE("correct decoding exponent") {
    Dist u = Dist::uniform(2);
    for (double p : {0.05, 0.2}) {
        Channel w = Channel::bsc(p);
        const double cap = capacity_uniform(w);
        CHECK(correct_decoding_exponent(w, u, 0.5 * cap).value == 0.0);
        for (double f : {0.2, 0.6, 0.95}) {
            double rate = cap + f * (std::log(2.0) - cap);
            CHECK(std::abs(correct_decoding_exponent(w, u, rate).value - correct_decoding_bsc(p, rate)) <= 1e-6);
        }
    }
    std::mt19937_64 rng(13);
    Channel c = random_channel(rng, 2, 3);
    const double rmax = std::log(2.0) + std::log(3.0);
    ExponentResult e = correct_decoding_exponent(c, u, rmax);
    ExponentResult g = correct_decoding_exponent_grid(c, u, rmax, 120);
    CHECK(g.value >= e.value - 1e-9);
    CHECK(g.value - e.value <= g.residual);
    CHECK(g.value - e.value <= 5e-3);
}

TEST_CASE("Slepian-Wolf binning exponent") {
    Eigen::MatrixXd dsbs(2, 2);
    dsbs << 0.45, 0.05, 0.05, 0.45;
    JointDist pxy(dsbs);
    const double hxy = binary_entropy(0.1);
    CHECK(sw_binning_exponent(pxy, 0.5 * hxy).value == 0.0);
    CHECK(sw_binning_exponent(pxy, hxy).value == 0.0);
    double prev = 0.0;
    for (double rate : {0.35, 0.45, 0.55, 0.65}) {
        double v = sw_binning_exponent(pxy, rate).value;
        CHECK(v > prev + 1e-6);
        prev = v;
    }
    ExponentResult s = sw_binning_exponent(pxy, 0.6);
    ExponentResult g = sw_binning_exponent_grid(pxy, 0.6, 200);
    CHECK(g.value >= s.value - 1e-9);
    CHECK(g.value - s.value <= 2e-3);

    // Independent X and Y: the side information is useless, so the problem
    // reduces to binning X alone.
    Eigen::Vector2d px(0.2, 0.8), py(0.6, 0.4);
    JointDist ind(px * py.transpose());
    JointDist alone{Eigen::MatrixXd(px)};
    for (double rate : {0.55, 0.6, 0.68}) {
        double a = sw_binning_exponent(ind, rate).value, b = sw_binning_exponent(alone, rate).value;
        CHECK(a > 0.0);
        CHECK(std::abs(a - b) <= 1e-6);
    }
    Eigen::MatrixXd holes(2, 2);
    holes << 0.5, 0.0, 0.0, 0.5;
    CHECK_THROWS_AS(sw_binning_exponent(JointDist(holes), 0.3), std::domain_error);
}

TEST_CASE("finite-length ensemble oracle") {
    Dist u = Dist::uniform(2);
    Channel w = Channel::bsc(0.1);
    DecoderScore ml = DecoderScore::ml(w);
    // M = 1: nobody to confuse with.
    CHECK(ensemble_error_probability_exact(w, u, 50, 0.0, ml) == 0.0);

    // Noiseless BSC, n = 10, R = 0.1: M = 3 and a competitor wins only by
    // being identical to the transmitted word, with probability 1/252.
    Channel w0 = Channel::bsc(0.0);
    const double exact = 1.0 - std::pow(251.0 / 252.0, 2);
    const double pe = ensemble_error_probability_exact(w0, u, 10, 0.1, DecoderScore::ml(w0));
    CHECK(pe == doctest::Approx(exact).epsilon(1e-12));
    McResult mc = mc_mean(
        [](std::mt19937_64& g) {
            std::array<int, 10> x{0, 0, 0, 0, 0, 1, 1, 1, 1, 1};
            std::array<int, 10> c = x;
            std::shuffle(x.begin(), x.end(), g);
            for (int k = 0; k < 2; ++k) {
                std::shuffle(c.begin(), c.end(), g);
                if (c == x) return 1.0;
            }
            return 0.0;
        },
        1'000'000, 2024);
    CHECK(std::abs(mc.mean - pe) <= 3 * mc.se);

    const double e = rc_exponent(w, u, 0.2, ml).value;
    double prev = kInf;
    for (int n : {100, 200, 400}) {
        double slope = -log_ensemble_error_probability_exact(w, u, n, 0.2, ml) / n;
        CHECK(std::abs(slope - e) < prev);
        prev = std::abs(slope - e);
    }
    CHECK(prev <= 0.05);
    CHECK_THROWS_AS(ensemble_error_probability_exact(w, u, 401, 0.2, ml), std::length_error);
    Channel c3(Eigen::MatrixXd::Constant(2, 3, 1.0 / 3));
    CHECK_THROWS_AS(ensemble_error_probability_exact(c3, u, 10, 0.2, DecoderScore::ml(c3)), std::length_error);
}

TEST_CASE("dual bound") {
    Dist u = Dist::uniform(2);
    Channel w = Channel::bsc(0.1);
    DecoderScore ml = DecoderScore::ml(w);
    DualParams zero{0.0, 0.0, {0.0, 0.0}};
    CHECK(dual_rc_bound(w, u, 0.3, ml, zero) == doctest::Approx(0.0));
    CHECK_THROWS_AS(dual_rc_bound(w, u, 0.3, ml, DualParams{1.5, 0.0, {}}), std::domain_error);

    DualOptimum o = dual_rc_optimize(w, u, 0.3, ml);
    const double primal = rc_exponent(w, u, 0.3, ml).value;
    CHECK(o.value <= primal + 1e-9);
    CHECK(o.value >= primal - 0.05);
    DualOptimum o2 = dual_rc_optimize(w, u, 0.3, ml);
    CHECK(o2.value == o.value);

    Channel useless(Eigen::MatrixXd::Constant(2, 2, 0.5));
    CHECK(dual_rc_optimize(useless, u, 0.1, DecoderScore::ml(useless)).value <= 1e-12);
    CHECK(dual_rc_optimize(w, u, 0.5, ml).value <= 1e-12);

    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int k = 0; k < 4; ++k) {
        Channel c = random_channel(rng, 3, 3);
        Dist p3 = Dist::uniform(3);
        DecoderScore s = DecoderScore::ml(c);
        double rate = 0.5 * unif(rng) * capacity_uniform(c);
        double pv = rc_exponent(c, p3, rate, s).value;
        for (int i = 0; i < 50; ++i) {
            DualParams d{unif(rng), 5 * unif(rng), {6 * unif(rng) - 3, 6 * unif(rng) - 3, 6 * unif(rng) - 3}};
            CHECK(dual_rc_bound(c, p3, rate, s, d) <= pv + 1e-9);
        }
        CHECK(dual_rc_optimize(c, p3, rate, s).value <= pv + 1e-9);
    }
}
