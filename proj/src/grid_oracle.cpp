#include "itt/grid_oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>

namespace itt {

namespace {

using Counts = std::vector<std::int64_t>;
// Compact copy of a table; denom <= 400 fits in 16 bits.
using Packed = std::array<std::int16_t, kMaxGridCells>;

Packed pack(const Counts& c) {
    Packed p{};
    for (std::size_t i = 0; i < c.size(); ++i) p[i] = static_cast<std::int16_t>(c[i]);
    return p;
}

// Calls fn(cells) for every nonnegative nr x nc table (row-major) with the
// given row and column sums.
template <class Fn>
void for_each_table(const Counts& rows, const Counts& cols, Fn&& fn) {
    const int nr = static_cast<int>(rows.size()), nc = static_cast<int>(cols.size());
    Counts cell(static_cast<std::size_t>(nr * nc), 0), colrem = cols, rowrem = rows;
    auto rec = [&](auto&& self, int x, int y) -> void {
        if (x == nr - 1) {
            for (int j = 0; j < nc; ++j) cell[static_cast<std::size_t>(x * nc + j)] = colrem[static_cast<std::size_t>(j)];
            fn(cell);
            return;
        }
        auto& rr = rowrem[static_cast<std::size_t>(x)];
        if (y == nc - 1) {
            auto& cr = colrem[static_cast<std::size_t>(y)];
            if (rr > cr) return;
            const std::int64_t v = rr;
            cell[static_cast<std::size_t>(x * nc + y)] = v;
            cr -= v;
            rr = 0;
            self(self, x + 1, 0);
            rr = v;
            cr += v;
            return;
        }
        std::int64_t tail = 0;
        for (int j = y + 1; j < nc; ++j) tail += colrem[static_cast<std::size_t>(j)];
        auto& cr = colrem[static_cast<std::size_t>(y)];
        const std::int64_t lo = std::max<std::int64_t>(0, rr - tail), hi = std::min(rr, cr);
        for (std::int64_t v = lo; v <= hi; ++v) {
            cell[static_cast<std::size_t>(x * nc + y)] = v;
            rr -= v;
            cr -= v;
            self(self, x, y + 1);
            rr += v;
            cr += v;
        }
    };
    std::int64_t rs = std::accumulate(rows.begin(), rows.end(), std::int64_t{0});
    std::int64_t cs = std::accumulate(cols.begin(), cols.end(), std::int64_t{0});
    if (rs != cs || nr == 0 || nc == 0) return;
    rec(rec, 0, 0);
}

std::vector<Counts> compositions(std::int64_t n, int k) {
    std::vector<Counts> out;
    for_each_composition(n, k, [&](const Counts& c) { out.push_back(c); });
    return out;
}

void check_grid(Eigen::Index nx, Eigen::Index ny, int denom) {
    if (nx * ny > kMaxGridCells) throw std::length_error("grid oracle: |X||Y| exceeds 9");
    if (denom < 1 || denom > kMaxGridDenom) throw std::length_error("grid oracle: denom outside [1, 400]");
}

// n ln n for n = 0..denom, so the inner loops need no logarithms.
std::vector<double> klk_table(int denom) {
    std::vector<double> t(static_cast<std::size_t>(denom) + 1);
    for (int k = 0; k <= denom; ++k) t[static_cast<std::size_t>(k)] = xlogx(static_cast<double>(k));
    return t;
}

// Statistics of an integer table, as distributions over denom.
struct TableStats {
    const std::vector<double>& klk;
    double inv, lnn;
    int nx, ny;

    double sum_klk(const Counts& c) const {
        double s = 0.0;
        for (auto v : c) s += klk[static_cast<std::size_t>(v)];
        return s;
    }
    // sum q ln q
    double neg_h(double s) const { return s * inv - lnn; }
    // sum q * m over cells; -inf propagates only through occupied cells.
    double linear(const Counts& c, const Eigen::MatrixXd& m) const {
        double s = 0.0;
        for (int x = 0; x < nx; ++x)
            for (int y = 0; y < ny; ++y) {
                auto v = c[static_cast<std::size_t>(x * ny + y)];
                if (v) s += static_cast<double>(v) * m(x, y);
            }
        return s * inv;
    }
};

JointDist to_joint(const Counts& c, int nx, int ny, int denom) {
    Eigen::MatrixXd q(nx, ny);
    for (int x = 0; x < nx; ++x)
        for (int y = 0; y < ny; ++y) q(x, y) = static_cast<double>(c[static_cast<std::size_t>(x * ny + y)]) / denom;
    return JointDist(q);
}

Eigen::MatrixXd neg_log_pw(const Channel& w, const Dist& p) {
    Eigen::MatrixXd m(w.nx(), w.ny());
    for (Eigen::Index x = 0; x < w.nx(); ++x)
        for (Eigen::Index y = 0; y < w.ny(); ++y) {
            double v = p[static_cast<std::size_t>(x)] * w(x, y);
            m(x, y) = v > 0.0 ? -std::log(v) : kInf;
        }
    return m;
}

bool ties_or_beats(double a, double b) { return a >= b - 1e-12 * (1.0 + std::abs(b)); }

struct Best {
    double value = kInf;
    std::size_t group = 0;
    Counts table;

    void offer(double v, std::size_t g, const Counts& t) {
        if (v < value || (v == value && g < group)) {
            value = v;
            group = g;
            table = t;
        }
    }
    void offer(double v, std::size_t g, const Packed& t, std::size_t cells) {
        if (v < value || (v == value && g < group)) {
            value = v;
            group = g;
            table.assign(t.begin(), t.begin() + static_cast<std::ptrdiff_t>(cells));
        }
    }
    void merge(const Best& o) {
        if (!o.table.empty()) offer(o.value, o.group, o.table);
    }
};

ExponentResult grid_result(double rate, const Best& b, int nx, int ny, int denom, double residual) {
    ExponentResult r;
    r.rate = rate;
    r.value = b.value;
    r.method = ExponentMethod::grid;
    r.residual = residual;
    if (!b.table.empty()) r.minimizers = {to_joint(b.table, nx, ny, denom)};
    return r;
}

double table_count_estimate(const Counts& rows, int ny) {
    double t = 1.0;
    for (auto c : rows) t *= static_cast<double>(count_compositions(c, ny));
    return t;
}

}  // namespace

double grid_residual(const Channel& w, int denom) {
    double m = 0.0;
    for (Eigen::Index x = 0; x < w.nx(); ++x)
        for (Eigen::Index y = 0; y < w.ny(); ++y)
            if (w(x, y) > 0.0) m = std::max(m, std::abs(std::log(w(x, y))));
    const double c0 = 2.0 + m + std::log(static_cast<double>(denom));
    return c0 * static_cast<double>(w.nx() * w.ny()) / denom;
}

std::vector<ExponentResult> rc_exponent_grid_sweep(const Channel& w, const Dist& p, const std::vector<double>& rates,
                                                   const DecoderScore& score, int denom, bool parallel) {
    check_grid(w.nx(), w.ny(), denom);
    if (static_cast<Eigen::Index>(p.size()) != w.nx()) throw std::invalid_argument("rc_exponent_grid: |P| != |X|");
    const int nx = static_cast<int>(w.nx()), ny = static_cast<int>(w.ny());
    const Counts rows = round_composition(p, denom).counts;
    if (table_count_estimate(rows, ny) > kMaxGridTables) throw std::length_error("rc_exponent_grid: too many types");
    const auto klk = klk_table(denom);
    const double lnn = std::log(static_cast<double>(denom));
    const TableStats st{klk, 1.0 / denom, lnn, nx, ny};
    const Eigen::MatrixXd nlpw = neg_log_pw(w, p);
    const bool mmi = score.tag == ScoreTag::mmi;
    const double row_term = st.sum_klk(rows);
    const auto groups = compositions(denom, ny);
    const std::size_t nr = rates.size();

    struct Entry {
        double alpha, info, div;
        Packed table;
    };
    const std::size_t cells = static_cast<std::size_t>(nx * ny);
    std::vector<Best> best(nr);

#pragma omp parallel if (parallel)
    {
        std::vector<Best> local(nr);
        std::vector<Entry> ents;
        std::vector<double> pref;
#pragma omp for schedule(dynamic, 8)
        for (std::size_t g = 0; g < groups.size(); ++g) {
            ents.clear();
            const double col_term = st.sum_klk(groups[g]);
            for_each_table(rows, groups[g], [&](const Counts& c) {
                const double s = st.sum_klk(c);
                const double info = std::max((s - row_term - col_term) * st.inv + lnn, 0.0);
                const double div = st.neg_h(s) + st.linear(c, nlpw);
                const double alpha = mmi ? info : st.linear(c, score.coeffs);
                ents.push_back({alpha, info, div, pack(c)});
            });
            if (ents.empty()) continue;
            std::sort(ents.begin(), ents.end(), [](const Entry& a, const Entry& b) { return a.alpha > b.alpha; });
            pref.resize(ents.size());
            double m = kInf;
            for (std::size_t i = 0; i < ents.size(); ++i) pref[i] = m = std::min(m, ents[i].info);
            std::size_t j = 0;
            for (std::size_t i = 0; i < ents.size(); ++i) {
                const Entry& e = ents[i];
                if (!std::isfinite(e.div) || !std::isfinite(e.alpha)) continue;
                if (j < i) j = i;
                while (j + 1 < ents.size() && ties_or_beats(ents[j + 1].alpha, e.alpha)) ++j;
                const double min_info = pref[j];
                for (std::size_t r = 0; r < nr; ++r)
                    local[r].offer(e.div + std::max(min_info - rates[r], 0.0), g, e.table, cells);
            }
        }
#pragma omp critical
        for (std::size_t r = 0; r < nr; ++r) best[r].merge(local[r]);
    }

    const double res = grid_residual(w, denom);
    std::vector<ExponentResult> out;
    for (std::size_t r = 0; r < nr; ++r) out.push_back(grid_result(rates[r], best[r], nx, ny, denom, res));
    return out;
}

ExponentResult rc_exponent_grid(const Channel& w, const Dist& p, double rate, const DecoderScore& score, int denom) {
    return rc_exponent_grid_sweep(w, p, {rate}, score, denom).front();
}

namespace {

// Single-type grids: minimize value(div, info) over tables with row sums P.
template <class Value>
ExponentResult single_type_grid(const Channel& w, const Dist& p, double rate, int denom, Value value) {
    check_grid(w.nx(), w.ny(), denom);
    if (static_cast<Eigen::Index>(p.size()) != w.nx()) throw std::invalid_argument("grid oracle: |P| != |X|");
    const int nx = static_cast<int>(w.nx()), ny = static_cast<int>(w.ny());
    const Counts rows = round_composition(p, denom).counts;
    if (table_count_estimate(rows, ny) > kMaxGridTables) throw std::length_error("grid oracle: too many types");
    const auto klk = klk_table(denom);
    const double lnn = std::log(static_cast<double>(denom));
    const TableStats st{klk, 1.0 / denom, lnn, nx, ny};
    const Eigen::MatrixXd nlpw = neg_log_pw(w, p);
    const double row_term = st.sum_klk(rows);
    const auto groups = compositions(denom, ny);
    Best best;
    for (std::size_t g = 0; g < groups.size(); ++g) {
        const double col_term = st.sum_klk(groups[g]);
        for_each_table(rows, groups[g], [&](const Counts& c) {
            const double s = st.sum_klk(c);
            const double div = st.neg_h(s) + st.linear(c, nlpw);
            if (!std::isfinite(div)) return;
            const double info = std::max((s - row_term - col_term) * st.inv + lnn, 0.0);
            best.offer(value(div, info), g, c);
        });
    }
    return grid_result(rate, best, nx, ny, denom, grid_residual(w, denom));
}

}  // namespace

ExponentResult sp_exponent_grid(const Channel& w, const Dist& p, double rate, int denom) {
    return single_type_grid(w, p, rate, denom,
                            [rate](double d, double i) { return i <= rate + 1e-12 ? d : kInf; });
}

ExponentResult correct_decoding_exponent_grid(const Channel& w, const Dist& p, double rate, int denom) {
    return single_type_grid(w, p, rate, denom,
                            [rate](double d, double i) { return d + std::max(rate - i, 0.0); });
}

ExponentResult expurgated_exponent_grid(const Channel& w, const Dist& p, double rate, int denom) {
    const int k = static_cast<int>(w.nx());
    check_grid(k, k, denom);
    const Counts margin = round_composition(p, denom).counts;
    Eigen::MatrixXd beta(k, k);
    for (int x = 0; x < k; ++x)
        for (int xt = 0; xt < k; ++xt) {
            double z = (w.matrix().row(x).array() * w.matrix().row(xt).array()).sqrt().sum();
            beta(x, xt) = z > 0.0 ? -std::log(std::min(z, 1.0)) : kInf;
        }
    const auto klk = klk_table(denom);
    const double lnn = std::log(static_cast<double>(denom));
    const TableStats st{klk, 1.0 / denom, lnn, k, k};
    const double mterm = st.sum_klk(margin);
    Best best;
    for_each_table(margin, margin, [&](const Counts& c) {
        const double info = std::max((st.sum_klk(c) - 2.0 * mterm) * st.inv + lnn, 0.0);
        if (info > rate + 1e-12) return;
        const double db = st.linear(c, beta);
        best.offer(db + info - rate, 0, c);
    });
    return grid_result(rate, best, k, k, denom, grid_residual(w, denom));
}

ExponentResult sw_binning_exponent_grid(const JointDist& pxy, double rate, int denom) {
    const int nx = static_cast<int>(pxy.nx()), ny = static_cast<int>(pxy.ny());
    check_grid(nx, ny, denom);
    const Eigen::MatrixXd& pm = pxy.matrix();
    if ((pm.array() <= 0.0).any()) throw std::domain_error("sw_binning_exponent_grid: P_XY must have full support");
    if (static_cast<double>(count_compositions(denom, nx * ny)) > kMaxGridTables)
        throw std::length_error("sw_binning_exponent_grid: too many types");
    Eigen::RowVectorXd py = pm.colwise().sum();
    Eigen::MatrixXd nlp = -pm.array().log().matrix();
    Eigen::MatrixXd lpc(nx, ny);
    for (int x = 0; x < nx; ++x)
        for (int y = 0; y < ny; ++y) lpc(x, y) = std::log(pm(x, y) / py(y));
    const auto klk = klk_table(denom);
    const double lnn = std::log(static_cast<double>(denom));
    const TableStats st{klk, 1.0 / denom, lnn, nx, ny};

    struct Entry {
        double g, hcond, div;
        Packed table;
    };
    const std::size_t cells = static_cast<std::size_t>(nx * ny);
    Best best;
    std::vector<Entry> ents;
    const auto groups = compositions(denom, ny);
    for (std::size_t gi = 0; gi < groups.size(); ++gi) {
        ents.clear();
        const double col_term = st.sum_klk(groups[gi]);
        // Tables with these column sums: every row-sum vector.
        for_each_composition(denom, nx, [&](const Counts& rows) {
            for_each_table(rows, groups[gi], [&](const Counts& c) {
                const double s = st.sum_klk(c);
                ents.push_back({st.linear(c, lpc), (col_term - s) * st.inv, st.neg_h(s) + st.linear(c, nlp), pack(c)});
            });
        });
        std::sort(ents.begin(), ents.end(), [](const Entry& a, const Entry& b) { return a.g > b.g; });
        double m = -kInf;
        std::vector<double> pref(ents.size());
        for (std::size_t i = 0; i < ents.size(); ++i) pref[i] = m = std::max(m, ents[i].hcond);
        std::size_t j = 0;
        for (std::size_t i = 0; i < ents.size(); ++i) {
            if (j < i) j = i;
            while (j + 1 < ents.size() && ties_or_beats(ents[j + 1].g, ents[i].g)) ++j;
            best.offer(ents[i].div + std::max(rate - pref[j], 0.0), gi, ents[i].table, cells);
        }
    }
    double m = 0.0;
    for (int x = 0; x < nx; ++x)
        for (int y = 0; y < ny; ++y) m = std::max(m, std::abs(std::log(pm(x, y))));
    ExponentResult r = grid_result(rate, best, nx, ny, denom,
                                   (2.0 + m + lnn) * static_cast<double>(nx * ny) / denom);
    return r;
}

}  // namespace itt
