#include "itt/types_core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include <boost/math/special_functions/gamma.hpp>

namespace itt {

namespace {

void check_prob_vector(const std::vector<double>& p, const char* what) {
    if (p.empty()) throw std::invalid_argument(std::string(what) + ": empty alphabet");
    double s = 0.0;
    for (double v : p) {
        if (!(v >= 0.0) || !std::isfinite(v))
            throw std::invalid_argument(std::string(what) + ": negative or non-finite entry");
        s += v;
    }
    if (std::abs(s - 1.0) > kProbTol)
        throw std::invalid_argument(std::string(what) + ": entries sum to " + std::to_string(s));
}

}  // namespace

Dist::Dist(std::vector<double> probs) : p_(std::move(probs)) { check_prob_vector(p_, "Dist"); }

Dist Dist::uniform(std::size_t k) {
    if (k == 0) throw std::invalid_argument("Dist::uniform: empty alphabet");
    return Dist(std::vector<double>(k, 1.0 / static_cast<double>(k)));
}

JointDist::JointDist(Eigen::MatrixXd q) : q_(std::move(q)) {
    if (q_.size() == 0) throw std::invalid_argument("JointDist: empty");
    if (!(q_.array() >= 0.0).all() || !q_.allFinite())
        throw std::invalid_argument("JointDist: negative or non-finite entry");
    if (std::abs(q_.sum() - 1.0) > kProbTol) throw std::invalid_argument("JointDist: total mass != 1");
}

Dist JointDist::marginal_x() const {
    Eigen::VectorXd m = q_.rowwise().sum();
    return Dist(std::vector<double>(m.data(), m.data() + m.size()));
}

Dist JointDist::marginal_y() const {
    Eigen::RowVectorXd m = q_.colwise().sum();
    return Dist(std::vector<double>(m.data(), m.data() + m.size()));
}

Channel JointDist::conditional() const {
    Eigen::MatrixXd w(q_.rows(), q_.cols());
    for (Eigen::Index x = 0; x < q_.rows(); ++x) {
        double r = q_.row(x).sum();
        if (r > 0.0)
            w.row(x) = q_.row(x) / r;
        else
            w.row(x).setConstant(1.0 / static_cast<double>(q_.cols()));
    }
    return Channel(w);
}

Channel::Channel(Eigen::MatrixXd w) : w_(std::move(w)) {
    if (w_.size() == 0) throw std::invalid_argument("Channel: empty");
    if (!(w_.array() >= 0.0).all() || !w_.allFinite())
        throw std::invalid_argument("Channel: negative or non-finite entry");
    for (Eigen::Index x = 0; x < w_.rows(); ++x)
        if (std::abs(w_.row(x).sum() - 1.0) > kProbTol)
            throw std::invalid_argument("Channel: row " + std::to_string(x) + " does not sum to 1");
}

Channel Channel::bsc(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("Channel::bsc: p outside [0,1]");
    Eigen::MatrixXd w(2, 2);
    w << 1.0 - p, p, p, 1.0 - p;
    return Channel(w);
}

JointDist Channel::joint(const Dist& p) const {
    if (static_cast<Eigen::Index>(p.size()) != w_.rows())
        throw std::invalid_argument("Channel::joint: alphabet mismatch");
    Eigen::MatrixXd q = w_;
    for (Eigen::Index x = 0; x < w_.rows(); ++x) q.row(x) *= p[x];
    return JointDist(q);
}

TypeVector::TypeVector(std::vector<std::int64_t> c, std::int64_t total) : counts(std::move(c)), n(total) {
    if (counts.empty()) throw std::invalid_argument("TypeVector: empty");
    std::int64_t s = 0;
    for (auto v : counts) {
        if (v < 0) throw std::invalid_argument("TypeVector: negative count");
        s += v;
    }
    if (s != n) throw std::invalid_argument("TypeVector: counts do not sum to n");
}

TypeVector::TypeVector(std::vector<std::int64_t> c)
    : TypeVector(c, std::accumulate(c.begin(), c.end(), std::int64_t{0})) {}

double entropy(const Dist& q) {
    double h = 0.0;
    for (double v : q.probs()) h -= xlogx(v);
    return h;
}

double binary_entropy(double q) {
    if (!(q >= 0.0 && q <= 1.0)) throw std::domain_error("binary_entropy: q outside [0,1]");
    return -xlogx(q) - xlogx(1.0 - q);
}

double kl_divergence(const Dist& q, const Dist& p) {
    if (q.size() != p.size()) throw std::invalid_argument("kl_divergence: alphabet mismatch");
    double d = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i) {
        if (q[i] <= 0.0) continue;
        if (p[i] <= 0.0) return kInf;
        d += q[i] * std::log(q[i] / p[i]);
    }
    return std::max(d, 0.0);
}

double binary_kl(double a, double b) {
    if (!(a >= 0.0 && a <= 1.0 && b >= 0.0 && b <= 1.0))
        throw std::domain_error("binary_kl: argument outside [0,1]");
    double d = 0.0;
    if (a > 0.0) {
        if (b <= 0.0) return kInf;
        d += a * std::log(a / b);
    }
    if (a < 1.0) {
        if (b >= 1.0) return kInf;
        d += (1.0 - a) * (std::log1p(-a) - std::log1p(-b));
    }
    return std::max(d, 0.0);
}

double mutual_information(const JointDist& q) {
    const Eigen::MatrixXd& m = q.matrix();
    Eigen::VectorXd px = m.rowwise().sum();
    Eigen::RowVectorXd py = m.colwise().sum();
    double i = 0.0;
    for (Eigen::Index x = 0; x < m.rows(); ++x)
        for (Eigen::Index y = 0; y < m.cols(); ++y)
            if (m(x, y) > 0.0) i += m(x, y) * std::log(m(x, y) / (px(x) * py(y)));
    return std::max(i, 0.0);
}

double conditional_divergence(const Channel& qc, const Channel& w, const Dist& p) {
    if (qc.nx() != w.nx() || qc.ny() != w.ny() || static_cast<Eigen::Index>(p.size()) != w.nx())
        throw std::invalid_argument("conditional_divergence: alphabet mismatch");
    double d = 0.0;
    for (Eigen::Index x = 0; x < w.nx(); ++x) {
        if (p[x] <= 0.0) continue;
        for (Eigen::Index y = 0; y < w.ny(); ++y) {
            double a = qc(x, y);
            if (a <= 0.0) continue;
            if (w(x, y) <= 0.0) return kInf;
            d += p[x] * a * std::log(a / w(x, y));
        }
    }
    return std::max(d, 0.0);
}

namespace {

constexpr std::int64_t kLogFactTable = 4096;

// ln k! by Neumaier-compensated summation of ln k.
const std::vector<double>& log_fact_table() {
    static const std::vector<double> table = [] {
        std::vector<double> t(kLogFactTable + 1, 0.0);
        double s = 0.0, c = 0.0;
        for (std::int64_t k = 2; k <= kLogFactTable; ++k) {
            double v = std::log(static_cast<double>(k));
            double u = s + v;
            if (std::abs(s) >= std::abs(v))
                c += (s - u) + v;
            else
                c += (v - u) + s;
            s = u;
            t[k] = s + c;
        }
        return t;
    }();
    return table;
}

}  // namespace

double log_factorial(std::int64_t n) {
    if (n < 0) throw std::domain_error("log_factorial: negative argument");
    if (n <= kLogFactTable) return log_fact_table()[n];
    return boost::math::lgamma(static_cast<double>(n) + 1.0);
}

double log_binomial(std::int64_t n, std::int64_t k) {
    if (k < 0 || k > n) return -kInf;
    return log_factorial(n) - log_factorial(k) - log_factorial(n - k);
}

bool exact_type_class_size(const TypeVector& t, unsigned __int128& out) {
    // Product of binomials C(m + c, c), each built incrementally so every
    // intermediate value is an integer.
    using u128 = unsigned __int128;
    const u128 kMax = ~u128{0};
    u128 acc = 1;
    std::int64_t m = 0;
    for (auto c : t.counts) {
        u128 b = 1;
        for (std::int64_t j = 1; j <= c; ++j) {
            u128 num = static_cast<u128>(m + j);
            if (b > kMax / num) return false;
            b = b * num / static_cast<u128>(j);
        }
        if (b != 0 && acc > kMax / b) return false;
        acc *= b;
        m += c;
    }
    out = acc;
    return true;
}

double log_type_class_size(const TypeVector& t) {
    if (t.n <= 64) {
        unsigned __int128 v;
        if (exact_type_class_size(t, v)) return std::log(static_cast<long double>(v));
    }
    double s = log_factorial(t.n);
    for (auto c : t.counts) s -= log_factorial(c);
    return std::max(s, 0.0);
}

void for_each_composition(std::int64_t n, int k,
                          const std::function<void(const std::vector<std::int64_t>&)>& fn,
                          const std::vector<std::int64_t>& caps) {
    if (k <= 0 || n < 0) return;
    std::vector<std::int64_t> parts(static_cast<std::size_t>(k), 0);
    auto cap = [&](int i) { return caps.empty() ? n : caps[static_cast<std::size_t>(i)]; };
    std::vector<std::int64_t> tail_cap(static_cast<std::size_t>(k) + 1, 0);
    for (int i = k - 1; i >= 0; --i) tail_cap[i] = std::min<std::int64_t>(n, tail_cap[i + 1] + cap(i));
    std::function<void(int, std::int64_t)> rec = [&](int i, std::int64_t left) {
        if (i == k - 1) {
            if (left <= cap(i)) {
                parts[i] = left;
                fn(parts);
            }
            return;
        }
        std::int64_t lo = std::max<std::int64_t>(0, left - tail_cap[i + 1]);
        std::int64_t hi = std::min(left, cap(i));
        for (std::int64_t v = lo; v <= hi; ++v) {
            parts[i] = v;
            rec(i + 1, left - v);
        }
    };
    rec(0, n);
}

std::uint64_t count_compositions(std::int64_t n, int k) {
    if (k <= 0) return 0;
    // C(n + k - 1, k - 1) with saturation.
    long double v = std::exp(static_cast<long double>(log_binomial(n + k - 1, k - 1)));
    if (v > 1.8e19L) return ~std::uint64_t{0};
    return static_cast<std::uint64_t>(std::llround(static_cast<double>(v)));
}

std::vector<JointDist> enumerate_joint_types(const TypeVector& nx, int ny) {
    if (ny < 1) throw std::invalid_argument("enumerate_joint_types: |Y| < 1");
    if (nx.n <= 0) throw std::invalid_argument("enumerate_joint_types: n must be positive");
    long double total = 1.0L;
    for (auto c : nx.counts) total *= static_cast<long double>(count_compositions(c, ny));
    if (total > static_cast<long double>(kMaxEnumeratedTypes))
        throw std::length_error("enumerate_joint_types: type count exceeds guard");

    const int kx = static_cast<int>(nx.counts.size());
    const double inv = 1.0 / static_cast<double>(nx.n);
    std::vector<std::vector<std::vector<std::int64_t>>> rows(kx);
    for (int x = 0; x < kx; ++x)
        for_each_composition(nx.counts[x], ny, [&](const auto& c) { rows[x].push_back(c); });

    std::vector<JointDist> out;
    out.reserve(static_cast<std::size_t>(total));
    std::vector<std::size_t> idx(kx, 0);
    Eigen::MatrixXd q(kx, ny);
    for (;;) {
        for (int x = 0; x < kx; ++x)
            for (int y = 0; y < ny; ++y) q(x, y) = static_cast<double>(rows[x][idx[x]][y]) * inv;
        out.emplace_back(q);
        int x = kx - 1;
        while (x >= 0 && ++idx[x] == rows[x].size()) idx[x--] = 0;
        if (x < 0) break;
    }
    return out;
}

TypeVector round_composition(const Dist& p, std::int64_t n) {
    std::vector<std::int64_t> c(p.size());
    std::vector<std::pair<double, std::size_t>> rem;
    std::int64_t used = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        double v = p[i] * static_cast<double>(n);
        c[i] = static_cast<std::int64_t>(std::floor(v + 1e-9));
        used += c[i];
        rem.emplace_back(v - static_cast<double>(c[i]), i);
    }
    std::stable_sort(rem.begin(), rem.end(), [](auto a, auto b) { return a.first > b.first; });
    for (std::size_t j = 0; used < n && j < rem.size(); ++j, ++used) ++c[rem[j].second];
    return TypeVector(c, n);
}

}  // namespace itt
