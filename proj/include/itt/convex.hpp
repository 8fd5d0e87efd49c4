#pragma once

// Small dense convex programs whose objective and constraints are sums of
// x ln x terms of affine expressions plus linear parts, solved by a
// log-barrier Newton method on the null space of the equality constraints.

#include <vector>

#include <Eigen/Dense>

namespace itt {

// f(x) = sum_k c_k u_k ln u_k + lin . x + c0, with u = L x + l0.
struct EntropyForm {
    std::vector<double> c;
    Eigen::MatrixXd L;
    Eigen::VectorXd l0;
    Eigen::VectorXd lin;
    double c0 = 0.0;

    explicit EntropyForm(Eigen::Index n = 0);

    void add_term(double coeff, const Eigen::VectorXd& row, double offset = 0.0);
    void add_xlogx(double coeff, Eigen::Index var);

    // Returns +inf outside the domain u_k > 0 (for c_k != 0).
    double value(const Eigen::VectorXd& x) const;
    Eigen::VectorXd gradient(const Eigen::VectorXd& x) const;
    Eigen::MatrixXd hessian(const Eigen::VectorXd& x) const;
    bool is_linear() const { return c.empty(); }

    EntropyForm& operator+=(const EntropyForm& o);
};

struct ConvexProblem {
    EntropyForm objective;
    std::vector<EntropyForm> ineq;  // each f_i(x) <= 0
    Eigen::MatrixXd Aeq;
    Eigen::VectorXd beq;
    // Strictly positive point satisfying the equalities (inequalities may be violated).
    Eigen::VectorXd start;
};

struct ConvexResult {
    Eigen::VectorXd x;
    double value = 0.0;
    double gap = 0.0;  // duality-gap bound m / t at termination
    int newton_steps = 0;
    bool feasible = false;
    bool converged = false;
};

struct ConvexOptions {
    double gap_tol = 1e-11;
    double mu = 20.0;
    int max_newton = 400;
};

// Every variable is kept strictly positive.
ConvexResult solve_convex(const ConvexProblem& prob, const ConvexOptions& opt = {});

}  // namespace itt
