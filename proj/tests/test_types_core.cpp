#include "doctest.h"

#include <cmath>
#include <random>
#include <set>

#include "itt/types_core.hpp"

using namespace itt;

namespace {

Dist random_dist(std::mt19937_64& rng, std::size_t k) {
    std::gamma_distribution<double> g(1.0, 1.0);
    std::vector<double> v(k);
    double s = 0.0;
    for (auto& x : v) s += (x = g(rng) + 1e-3);
    for (auto& x : v) x /= s;
    return Dist(v);
}

}  // namespace

TEST_CASE("entropy") {
    CHECK(entropy(Dist::uniform(4)) == doctest::Approx(std::log(4.0)).epsilon(1e-15));
    CHECK(entropy(Dist({1.0, 0.0, 0.0})) == 0.0);
    CHECK(entropy(Dist({0.11, 0.89})) == doctest::Approx(0.346515336918666152).epsilon(1e-14));
}

TEST_CASE("binary entropy") {
    CHECK(binary_entropy(0.5) == doctest::Approx(std::log(2.0)));
    CHECK(binary_entropy(0.0) == 0.0);
    CHECK(binary_entropy(0.11) == doctest::Approx(0.346515336918666152).epsilon(1e-14));
    CHECK(binary_entropy(0.3) == doctest::Approx(binary_entropy(0.7)).epsilon(1e-15));
    CHECK_THROWS_AS(binary_entropy(1.5), std::domain_error);
    CHECK_THROWS_AS(binary_entropy(-0.1), std::domain_error);
}

TEST_CASE("kl divergence") {
    Dist p({0.2, 0.3, 0.5});
    CHECK(kl_divergence(p, p) == 0.0);
    CHECK(kl_divergence(Dist({1.0, 0.0}), Dist({0.5, 0.5})) == doctest::Approx(std::log(2.0)));
    CHECK(kl_divergence(Dist({0.5, 0.5}), Dist({0.25, 0.75})) ==
          doctest::Approx(0.143841036225890464).epsilon(1e-14));
    CHECK(std::isinf(kl_divergence(Dist({0.5, 0.5}), Dist({1.0, 0.0}))));
    CHECK_THROWS_AS(kl_divergence(Dist({0.5, 0.5}), Dist::uniform(3)), std::invalid_argument);
}

TEST_CASE("kl divergence is nonnegative and vanishes only at equality") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 200; ++t) {
        std::size_t k = 2 + t % 5;
        Dist q = random_dist(rng, k), p = random_dist(rng, k);
        double d = kl_divergence(q, p);
        double gap = 0.0;
        for (std::size_t i = 0; i < k; ++i) gap = std::max(gap, std::abs(q[i] - p[i]));
        CHECK(d >= 0.0);
        if (gap > 1e-12) CHECK(d > 0.0);
    }
}

TEST_CASE("binary kl") {
    CHECK(binary_kl(0.3, 0.3) == 0.0);
    CHECK(binary_kl(1.0, 0.2) == doctest::Approx(std::log(1.0 / 0.2)));
    CHECK(binary_kl(0.5, 0.25) == doctest::Approx(0.143841036225890464).epsilon(1e-14));
    CHECK(std::isinf(binary_kl(0.5, 0.0)));
    CHECK(std::isinf(binary_kl(0.5, 1.0)));
    CHECK(binary_kl(0.0, 0.0) == 0.0);
    CHECK_THROWS_AS(binary_kl(1.2, 0.5), std::domain_error);
}

TEST_CASE("mutual information") {
    Eigen::MatrixXd prod(2, 3);
    prod << 0.1, 0.2, 0.1, 0.15, 0.3, 0.15;
    CHECK(mutual_information(JointDist(prod)) == doctest::Approx(0.0).epsilon(1e-15));
    Eigen::MatrixXd id = Eigen::MatrixXd::Identity(3, 3) / 3.0;
    CHECK(mutual_information(JointDist(id)) == doctest::Approx(std::log(3.0)));
    JointDist bsc = Channel::bsc(0.1).joint(Dist::uniform(2));
    CHECK(mutual_information(bsc) == doctest::Approx(0.368064207168497070).epsilon(1e-14));
}

TEST_CASE("mutual information equals H(Y) - H(Y|X)") {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 50; ++t) {
        Dist flat = random_dist(rng, 6);
        Eigen::MatrixXd m(2, 3);
        for (int i = 0; i < 6; ++i) m(i / 3, i % 3) = flat[i];
        JointDist q(m);
        Dist px = q.marginal_x();
        Channel c = q.conditional();
        double hyx = 0.0;
        for (int x = 0; x < 2; ++x)
            hyx += px[x] * entropy(Dist({c(x, 0), c(x, 1), c(x, 2)}));
        CHECK(std::abs(mutual_information(q) - (entropy(q.marginal_y()) - hyx)) <= 1e-12);
    }
}

TEST_CASE("conditional divergence") {
    Eigen::MatrixXd w(2, 2), qm(2, 2);
    w << 0.9, 0.1, 0.3, 0.7;
    qm << 0.6, 0.4, 0.5, 0.5;
    Channel W(w), Q(qm);
    CHECK(conditional_divergence(W, W, Dist({0.4, 0.6})) == 0.0);
    CHECK(conditional_divergence(Q, W, Dist({1.0, 0.0})) ==
          doctest::Approx(kl_divergence(Dist({0.6, 0.4}), Dist({0.9, 0.1}))));
    double direct = 0.4 * (0.6 * std::log(0.6 / 0.9) + 0.4 * std::log(0.4 / 0.1)) +
                    0.6 * (0.5 * std::log(0.5 / 0.3) + 0.5 * std::log(0.5 / 0.7));
    CHECK(conditional_divergence(Q, W, Dist({0.4, 0.6})) == doctest::Approx(direct).epsilon(1e-14));
    CHECK_THROWS_AS(conditional_divergence(Q, W, Dist::uniform(3)), std::invalid_argument);
}

TEST_CASE("validation") {
    CHECK_THROWS_AS(Dist({0.5, 0.6}), std::invalid_argument);
    CHECK_THROWS_AS(Dist({-0.1, 1.1}), std::invalid_argument);
    CHECK_THROWS_AS(Dist(std::vector<double>{}), std::invalid_argument);
    CHECK_NOTHROW(Dist({0.5, 0.5 + 5e-10}));
    Eigen::MatrixXd bad(1, 2);
    bad << 0.5, 0.4;
    CHECK_THROWS_AS(Channel{bad}, std::invalid_argument);
    CHECK_THROWS_AS(TypeVector({1, 2}, 4), std::invalid_argument);
}

TEST_CASE("type class size") {
    CHECK(std::exp(log_type_class_size(TypeVector({2, 2}))) == doctest::Approx(6.0));
    CHECK(std::llround(std::exp(log_type_class_size(TypeVector({10, 10})))) == 184756);
    CHECK(log_type_class_size(TypeVector({7, 0})) == 0.0);
    // Large n takes the log-gamma path.
    double big = log_type_class_size(TypeVector({500, 300, 200}));
    double ref = std::lgamma(1001.0) - std::lgamma(501.0) - std::lgamma(301.0) - std::lgamma(201.0);
    CHECK(big == doctest::Approx(ref).epsilon(1e-13));
}

TEST_CASE("type class sizes add up to |X|^n") {
    for (int k = 2; k <= 3; ++k)
        for (int n = 1; n <= 12; ++n) {
            unsigned __int128 total = 0;
            for_each_composition(n, k, [&](const std::vector<std::int64_t>& c) {
                unsigned __int128 v = 0;
                REQUIRE(exact_type_class_size(TypeVector(c), v));
                total += v;
            });
            unsigned __int128 pw = 1;
            for (int i = 0; i < n; ++i) pw *= static_cast<unsigned>(k);
            CHECK(total == pw);
        }
}

TEST_CASE("type class size vs entropy at n = 100") {
    const int n = 100;
    for_each_composition(n, 3, [&](const std::vector<std::int64_t>& c) {
        std::vector<double> p;
        for (auto v : c) p.push_back(static_cast<double>(v) / n);
        double gap = log_type_class_size(TypeVector(c)) / n - entropy(Dist(p));
        CHECK(gap <= 1e-12);
        CHECK(gap > -3.0 * std::log(n + 1.0) / n);
    });
}

TEST_CASE("joint type enumeration") {
    CHECK(enumerate_joint_types(TypeVector({1, 1}), 2).size() == 4);
    CHECK(enumerate_joint_types(TypeVector({1}), 1).size() == 1);

    // Exhaustive oracle: all 2x2 count tables with entries in 0..4 and rows (2, 2).
    auto types = enumerate_joint_types(TypeVector({2, 2}), 2);
    int brute = 0;
    for (int a = 0; a <= 4; ++a)
        for (int b = 0; b <= 4; ++b)
            for (int c = 0; c <= 4; ++c)
                for (int d = 0; d <= 4; ++d)
                    if (a + b == 2 && c + d == 2) ++brute;
    CHECK(types.size() == static_cast<std::size_t>(brute));
    CHECK(types.size() == 9);

    std::set<std::vector<long>> seen;
    for (const auto& t : types) {
        CHECK(t.marginal_x()[0] == doctest::Approx(0.5));
        std::vector<long> key;
        for (int x = 0; x < 2; ++x)
            for (int y = 0; y < 2; ++y) key.push_back(std::lround(t(x, y) * 4));
        seen.insert(key);
    }
    CHECK(seen.size() == types.size());
    CHECK_THROWS_AS(enumerate_joint_types(TypeVector({200, 200}), 9), std::length_error);
}

TEST_CASE("composition rounding") {
    TypeVector t = round_composition(Dist({1.0 / 3, 1.0 / 3, 1.0 / 3}), 10);
    CHECK(t.n == 10);
    CHECK(t.counts[0] + t.counts[1] + t.counts[2] == 10);
    CHECK(round_composition(Dist::uniform(2), 200).counts[0] == 100);
}
