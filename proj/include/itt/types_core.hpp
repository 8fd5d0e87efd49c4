#pragma once

// Finite-alphabet distributions, channels, information measures and exact
// type-class combinatorics. All logarithms are natural.

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

#include <Eigen/Dense>

namespace itt {

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kProbTol = 1e-9;

class Dist {
public:
    Dist() = default;
    explicit Dist(std::vector<double> probs);

    static Dist uniform(std::size_t k);

    std::size_t size() const { return p_.size(); }
    double operator[](std::size_t i) const { return p_[i]; }
    const std::vector<double>& probs() const { return p_; }

private:
    std::vector<double> p_;
};

class Channel;

class JointDist {
public:
    JointDist() = default;
    explicit JointDist(Eigen::MatrixXd q);

    Eigen::Index nx() const { return q_.rows(); }
    Eigen::Index ny() const { return q_.cols(); }
    double operator()(Eigen::Index x, Eigen::Index y) const { return q_(x, y); }
    const Eigen::MatrixXd& matrix() const { return q_; }

    Dist marginal_x() const;
    Dist marginal_y() const;
    // Rows with zero x-mass get a uniform conditional.
    Channel conditional() const;

private:
    Eigen::MatrixXd q_;
};

class Channel {
public:
    Channel() = default;
    explicit Channel(Eigen::MatrixXd w);

    static Channel bsc(double p);

    Eigen::Index nx() const { return w_.rows(); }
    Eigen::Index ny() const { return w_.cols(); }
    double operator()(Eigen::Index x, Eigen::Index y) const { return w_(x, y); }
    const Eigen::MatrixXd& matrix() const { return w_; }

    JointDist joint(const Dist& p) const;

private:
    Eigen::MatrixXd w_;
};

struct TypeVector {
    std::vector<std::int64_t> counts;
    std::int64_t n = 0;

    TypeVector() = default;
    TypeVector(std::vector<std::int64_t> c, std::int64_t n);
    explicit TypeVector(std::vector<std::int64_t> c);
};

// x ln x with 0 ln 0 = 0.
inline double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

double entropy(const Dist& q);
double binary_entropy(double q);
double kl_divergence(const Dist& q, const Dist& p);
double binary_kl(double a, double b);
double mutual_information(const JointDist& q);
double conditional_divergence(const Channel& qc, const Channel& w, const Dist& p);

double log_factorial(std::int64_t n);
double log_binomial(std::int64_t n, std::int64_t k);
double log_type_class_size(const TypeVector& t);
// Exact multinomial coefficient when it fits in 128 bits; false otherwise.
bool exact_type_class_size(const TypeVector& t, unsigned __int128& out);

inline constexpr std::size_t kMaxEnumeratedTypes = 10'000'000;

std::vector<JointDist> enumerate_joint_types(const TypeVector& nx, int ny);

// Calls fn(parts) for every composition of n into k nonnegative parts, in
// lexicographic order. Parts are bounded above by caps when caps is non-empty.
void for_each_composition(std::int64_t n, int k,
                          const std::function<void(const std::vector<std::int64_t>&)>& fn,
                          const std::vector<std::int64_t>& caps = {});
std::uint64_t count_compositions(std::int64_t n, int k);

// Largest-remainder rounding of n * p to integer counts summing to n.
TypeVector round_composition(const Dist& p, std::int64_t n);

}  // namespace itt
