#include "itt/ensemble.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "itt/numerics.hpp"

namespace itt {

namespace {

struct Competitor {
    double alpha;
    double log_count;
};

// Score of the 2x2 table k; -inf when an occupied cell has a -inf coefficient.
double table_score(const std::array<int, 4>& k, const DecoderScore& score, int n) {
    if (score.tag == ScoreTag::mmi) {
        const double inv = 1.0 / n;
        double i = 0.0;
        const int rows[2] = {k[0] + k[1], k[2] + k[3]}, cols[2] = {k[0] + k[2], k[1] + k[3]};
        for (int x = 0; x < 2; ++x)
            for (int y = 0; y < 2; ++y) {
                int v = k[static_cast<std::size_t>(2 * x + y)];
                if (v) i += v * inv * std::log(static_cast<double>(v) * n / (static_cast<double>(rows[x]) * cols[y]));
            }
        return i;
    }
    double s = 0.0;
    for (int c = 0; c < 4; ++c)
        if (k[static_cast<std::size_t>(c)]) s += k[static_cast<std::size_t>(c)] * score.coeffs(c / 2, c % 2);
    return s;
}

bool ties_or_beats(double a, double b) { return a >= b - 1e-12 * (1.0 + std::abs(b)); }

// ln(1 - (1 - p)^m) from ln p and ln m.
double log_union(double lp, double lm) {
    if (lp == -kInf) return -kInf;
    const double lx = lp + lm;
    if (lx < -30.0) return lx;
    const double p = std::exp(lp);
    if (p >= 1.0) return 0.0;
    return std::log(-std::expm1(std::exp(lm) * std::log1p(-p)));
}

}  // namespace

double log_ensemble_error_probability_exact(const Channel& w, const Dist& p, int n, double rate,
                                            const DecoderScore& score) {
    if (w.nx() != 2 || w.ny() != 2) throw std::length_error("ensemble oracle: binary alphabets only");
    if (n < 1 || n > kMaxEnsembleLength) throw std::length_error("ensemble oracle: n outside [1, 400]");
    if (static_cast<Eigen::Index>(p.size()) != 2) throw std::invalid_argument("ensemble oracle: |P| != 2");
    if (!(rate >= 0.0) || !std::isfinite(rate)) throw std::domain_error("ensemble oracle: rate must be finite and >= 0");
    if (score.tag != ScoreTag::mmi && (score.coeffs.rows() != 2 || score.coeffs.cols() != 2))
        throw std::invalid_argument("ensemble oracle: score size mismatch");

    // ln(M - 1) with M = ceil(e^{nR}).
    const double nr = n * rate;
    double lm;
    if (nr > 700.0) {
        lm = nr;
    } else {
        const double e = std::exp(nr);
        const double m = std::ceil(e * (1.0 - 1e-12));
        if (m <= 1.0) return -kInf;
        lm = std::log(m - 1.0);
    }

    const auto comp = round_composition(p, n).counts;
    const int a = static_cast<int>(comp[0]), b = static_cast<int>(comp[1]);
    const double log_tp = log_binomial(n, a);
    Eigen::Matrix2d lw;
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) lw(x, y) = w(x, y) > 0.0 ? std::log(w(x, y)) : -kInf;

    std::vector<double> terms;
    std::vector<Competitor> comps;
    std::vector<double> pref;
    for (int c0 = 0; c0 <= n; ++c0) {
        const int c1 = n - c0;
        const int jlo = std::max(0, c0 - b), jhi = std::min(a, c0);
        if (jlo > jhi) continue;
        // Competing codewords with this output split: count given y is C(c0, j) C(c1, a - j).
        comps.clear();
        for (int j = jlo; j <= jhi; ++j) {
            std::array<int, 4> k{j, a - j, c0 - j, c1 - a + j};
            comps.push_back({table_score(k, score, n), log_binomial(c0, j) + log_binomial(c1, a - j)});
        }
        std::sort(comps.begin(), comps.end(), [](const Competitor& u, const Competitor& v) { return u.alpha > v.alpha; });
        pref.assign(comps.size(), -kInf);
        double acc = -kInf;
        for (std::size_t i = 0; i < comps.size(); ++i) {
            const double l = comps[i].log_count;
            acc = acc == -kInf ? l : std::max(acc, l) + std::log1p(std::exp(-std::abs(acc - l)));
            pref[i] = acc;
        }
        // Transmitted joint types with the same output split.
        for (int k00 = jlo; k00 <= jhi; ++k00) {
            std::array<int, 4> k{k00, a - k00, c0 - k00, c1 - a + k00};
            double lpr = log_binomial(a, k[0]) + log_binomial(b, k[2]);
            bool possible = true;
            for (int c = 0; c < 4; ++c) {
                if (!k[static_cast<std::size_t>(c)]) continue;
                const double l = lw(c / 2, c % 2);
                if (l == -kInf) possible = false;
                lpr += k[static_cast<std::size_t>(c)] * l;
            }
            if (!possible) continue;
            const double s = table_score(k, score, n);
            if (s == -kInf) {
                terms.push_back(lpr + log_union(0.0, lm));
                continue;
            }
            std::size_t idx = 0;
            while (idx + 1 < comps.size() && ties_or_beats(comps[idx + 1].alpha, s)) ++idx;
            if (!ties_or_beats(comps[idx].alpha, s)) continue;  // cannot happen: the type itself competes
            terms.push_back(lpr + log_union(pref[idx] - log_tp, lm));
        }
    }
    return log_sum_exp(terms);
}

double ensemble_error_probability_exact(const Channel& w, const Dist& p, int n, double rate,
                                        const DecoderScore& score) {
    return std::exp(log_ensemble_error_probability_exact(w, p, n, rate, score));
}

}  // namespace itt
