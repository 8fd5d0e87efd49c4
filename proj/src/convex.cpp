#include "itt/convex.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace itt {

namespace {

constexpr double kInfinity = std::numeric_limits<double>::infinity();

}  // namespace

EntropyForm::EntropyForm(Eigen::Index n) : L(0, n), l0(0), lin(Eigen::VectorXd::Zero(n)) {}

void EntropyForm::add_term(double coeff, const Eigen::VectorXd& row, double offset) {
    if (row.size() != lin.size()) throw std::invalid_argument("EntropyForm::add_term: row size mismatch");
    const Eigen::Index k = L.rows();
    L.conservativeResize(k + 1, lin.size());
    L.row(k) = row.transpose();
    l0.conservativeResize(k + 1);
    l0(k) = offset;
    c.push_back(coeff);
}

void EntropyForm::add_xlogx(double coeff, Eigen::Index var) {
    Eigen::VectorXd row = Eigen::VectorXd::Zero(lin.size());
    row(var) = 1.0;
    add_term(coeff, row);
}

EntropyForm& EntropyForm::operator+=(const EntropyForm& o) {
    if (o.lin.size() != lin.size()) throw std::invalid_argument("EntropyForm: size mismatch");
    const Eigen::Index k = L.rows();
    L.conservativeResize(k + o.L.rows(), lin.size());
    L.bottomRows(o.L.rows()) = o.L;
    l0.conservativeResize(k + o.l0.size());
    l0.tail(o.l0.size()) = o.l0;
    c.insert(c.end(), o.c.begin(), o.c.end());
    lin += o.lin;
    c0 += o.c0;
    return *this;
}

double EntropyForm::value(const Eigen::VectorXd& x) const {
    double v = lin.dot(x) + c0;
    if (c.empty()) return v;
    Eigen::VectorXd u = L * x + l0;
    for (std::size_t k = 0; k < c.size(); ++k) {
        if (c[k] == 0.0) continue;
        double uk = u(static_cast<Eigen::Index>(k));
        if (!(uk > 0.0)) return kInfinity;
        v += c[k] * uk * std::log(uk);
    }
    return v;
}

Eigen::VectorXd EntropyForm::gradient(const Eigen::VectorXd& x) const {
    if (c.empty()) return lin;
    Eigen::VectorXd u = L * x + l0;
    Eigen::VectorXd w(u.size());
    for (Eigen::Index k = 0; k < u.size(); ++k) w(k) = c[static_cast<std::size_t>(k)] * (std::log(u(k)) + 1.0);
    return L.transpose() * w + lin;
}

Eigen::MatrixXd EntropyForm::hessian(const Eigen::VectorXd& x) const {
    const Eigen::Index n = lin.size();
    if (c.empty()) return Eigen::MatrixXd::Zero(n, n);
    Eigen::VectorXd u = L * x + l0;
    Eigen::VectorXd w(u.size());
    for (Eigen::Index k = 0; k < u.size(); ++k) w(k) = c[static_cast<std::size_t>(k)] / u(k);
    return L.transpose() * w.asDiagonal() * L;
}

namespace {

// Barrier subproblem over y with x = x0 + Z y. When phase_one is set, the last
// coordinate of y is the slack s and the objective is s itself.
struct Barrier {
    const EntropyForm* objective;
    std::vector<const EntropyForm*> ineq;
    Eigen::VectorXd x0;
    Eigen::MatrixXd Z;
    bool phase_one = false;

    Eigen::Index nz() const { return Z.cols(); }

    Eigen::VectorXd point(const Eigen::VectorXd& y) const { return x0 + Z * y.head(nz()); }
    double slack(const Eigen::VectorXd& y) const { return phase_one ? y(nz()) : 0.0; }

    double base(const Eigen::VectorXd& y) const { return phase_one ? slack(y) : objective->value(point(y)); }

    // t * base - sum ln(s - f_i) - sum ln x_j; +inf outside the domain.
    double value(const Eigen::VectorXd& y, double t) const {
        Eigen::VectorXd x = point(y);
        double v = 0.0;
        for (Eigen::Index j = 0; j < x.size(); ++j) {
            if (!(x(j) > 0.0)) return kInfinity;
            v -= std::log(x(j));
        }
        const double s = slack(y);
        for (const auto* f : ineq) {
            double fi = f->value(x);
            if (!(fi < s)) return kInfinity;
            v -= std::log(s - fi);
        }
        double b = base(y);
        if (!std::isfinite(b)) return kInfinity;
        return t * b + v;
    }

    void derivatives(const Eigen::VectorXd& y, double t, Eigen::VectorXd& g, Eigen::MatrixXd& h) const {
        Eigen::VectorXd x = point(y);
        const Eigen::Index n = x.size();
        const Eigen::Index dim = y.size();
        // Work in the extended (x, s) space, then project.
        Eigen::VectorXd gx = Eigen::VectorXd::Zero(n);
        Eigen::MatrixXd hx = Eigen::MatrixXd::Zero(n, n);
        double gs = 0.0, hss = 0.0;
        Eigen::VectorXd hxs = Eigen::VectorXd::Zero(n);
        if (phase_one) {
            gs += t;
        } else {
            gx += t * objective->gradient(x);
            hx += t * objective->hessian(x);
        }
        for (Eigen::Index j = 0; j < n; ++j) {
            gx(j) -= 1.0 / x(j);
            hx(j, j) += 1.0 / (x(j) * x(j));
        }
        const double s = slack(y);
        for (const auto* f : ineq) {
            double d = s - f->value(x);  // > 0
            Eigen::VectorXd gf = f->gradient(x);
            // -ln(s - f): gradient (gf, -1) / d, Hessian (gf, -1)(gf, -1)^T / d^2 + (Hf, 0) / d.
            gx += gf / d;
            hx += gf * gf.transpose() / (d * d);
            if (!f->is_linear()) hx += f->hessian(x) / d;
            if (phase_one) {
                gs -= 1.0 / d;
                hss += 1.0 / (d * d);
                hxs -= gf / (d * d);
            }
        }
        g.resize(dim);
        h.resize(dim, dim);
        g.head(nz()) = Z.transpose() * gx;
        h.topLeftCorner(nz(), nz()) = Z.transpose() * hx * Z;
        if (phase_one) {
            g(nz()) = gs;
            h(nz(), nz()) = hss;
            Eigen::VectorXd zh = Z.transpose() * hxs;
            h.block(0, nz(), nz(), 1) = zh;
            h.block(nz(), 0, 1, nz()) = zh.transpose();
        }
    }
};

struct CenterStats {
    int steps = 0;
    bool ok = true;
};

// Newton centering for a fixed t. Stops early when stop(y) returns true.
template <class Stop>
CenterStats center(const Barrier& b, Eigen::VectorXd& y, double t, int budget, Stop stop) {
    CenterStats st;
    Eigen::VectorXd g;
    Eigen::MatrixXd h;
    double val = b.value(y, t);
    for (; st.steps < budget; ++st.steps) {
        if (stop(y)) return st;
        b.derivatives(y, t, g, h);
        Eigen::LDLT<Eigen::MatrixXd> ldlt(h);
        Eigen::VectorXd dy = ldlt.solve(-g);
        if (ldlt.info() != Eigen::Success || !dy.allFinite()) {
            double ridge = 1e-12 * (1.0 + h.diagonal().cwiseAbs().maxCoeff());
            h.diagonal().array() += ridge;
            dy = h.ldlt().solve(-g);
        }
        double dec2 = -g.dot(dy);
        if (!(dec2 > 0.0)) {
            dy = -g;
            dec2 = g.squaredNorm();
        }
        // The objective error after centering is about dec2 / t.
        if (dec2 <= 1e-10) return st;
        double step = 1.0;
        bool moved = false;
        for (int ls = 0; ls < 80; ++ls, step *= 0.5) {
            Eigen::VectorXd yn = y + step * dy;
            double vn = b.value(yn, t);
            if (!std::isfinite(vn)) continue;
            // Inside the quadratic region accept any feasible step; the value
            // difference there is below round-off at large t.
            if (dec2 < 1e-6 || vn <= val - 0.25 * step * dec2) {
                y = yn;
                val = vn;
                moved = true;
                break;
            }
        }
        if (!moved) {
            st.ok = false;
            return st;
        }
    }
    return st;
}

}  // namespace

ConvexResult solve_convex(const ConvexProblem& prob, const ConvexOptions& opt) {
    const Eigen::Index n = prob.start.size();
    if (prob.objective.lin.size() != n) throw std::invalid_argument("solve_convex: objective size mismatch");
    if ((prob.start.array() <= 0.0).any()) throw std::invalid_argument("solve_convex: start must be strictly positive");

    Eigen::MatrixXd Z;
    if (prob.Aeq.rows() > 0) {
        if ((prob.Aeq * prob.start - prob.beq).cwiseAbs().maxCoeff() > 1e-9)
            throw std::invalid_argument("solve_convex: start violates the equality constraints");
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(prob.Aeq, Eigen::ComputeFullV);
        const auto& sv = svd.singularValues();
        Eigen::Index rank = 0;
        for (Eigen::Index i = 0; i < sv.size(); ++i)
            if (sv(i) > 1e-10 * std::max(1.0, sv(0))) ++rank;
        Z = svd.matrixV().rightCols(n - rank);
    } else {
        Z = Eigen::MatrixXd::Identity(n, n);
    }

    ConvexResult res;
    Barrier b;
    b.objective = &prob.objective;
    b.x0 = prob.start;
    b.Z = Z;
    // Linear constraints that are constant on the affine set are decided once.
    for (const auto& f : prob.ineq) {
        if (f.is_linear() && (Z.transpose() * f.lin).cwiseAbs().maxCoeff() <= 1e-12 * (1.0 + f.lin.cwiseAbs().maxCoeff())) {
            if (f.value(prob.start) > 1e-12) return res;  // infeasible
            continue;
        }
        b.ineq.push_back(&f);
    }
    const double m = static_cast<double>(b.ineq.size() + static_cast<std::size_t>(n));
    Eigen::VectorXd y = Eigen::VectorXd::Zero(Z.cols());

    // Phase I: minimize s subject to f_i(x) <= s until s < 0.
    double worst = -kInfinity;
    for (const auto* f : b.ineq) worst = std::max(worst, f->value(prob.start));
    if (!b.ineq.empty() && !(worst < 0.0)) {
        Barrier p1 = b;
        p1.phase_one = true;
        Eigen::VectorXd ys(Z.cols() + 1);
        ys.head(Z.cols()).setZero();
        ys(Z.cols()) = worst + 1.0 + 0.1 * std::abs(worst);
        auto feasible_now = [&](const Eigen::VectorXd& v) { return v(Z.cols()) < 0.0; };
        double t = 1.0;
        bool found = false;
        for (int outer = 0; outer < 60 && !found; ++outer) {
            CenterStats cs = center(p1, ys, t, opt.max_newton, feasible_now);
            res.newton_steps += cs.steps;
            if (feasible_now(ys)) {
                found = true;
                break;
            }
            if (m / t < 1e-13) break;
            t *= opt.mu;
        }
        if (!found) return res;
        y = ys.head(Z.cols());
    }
    res.feasible = true;

    // Phase II.
    double t = 1.0;
    auto never = [](const Eigen::VectorXd&) { return false; };
    for (int outer = 0; outer < 100; ++outer) {
        CenterStats cs = center(b, y, t, opt.max_newton, never);
        res.newton_steps += cs.steps;
        if (m / t <= opt.gap_tol) {
            res.converged = cs.ok;
            break;
        }
        t *= opt.mu;
    }
    res.x = b.point(y);
    res.value = prob.objective.value(res.x);
    res.gap = m / t;
    return res;
}

}  // namespace itt
