#include "itt/exponents.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "itt/convex.hpp"
#include "itt/numerics.hpp"

namespace itt {

DecoderScore DecoderScore::ml(const Channel& w) {
    DecoderScore s;
    s.coeffs = w.matrix().unaryExpr([](double v) { return v > 0.0 ? std::log(v) : -kInf; });
    s.tag = ScoreTag::ml;
    return s;
}

DecoderScore DecoderScore::mmi(Eigen::Index nx, Eigen::Index ny) {
    DecoderScore s;
    s.coeffs = Eigen::MatrixXd::Zero(nx, ny);
    s.tag = ScoreTag::mmi;
    return s;
}

DecoderScore DecoderScore::linear(Eigen::MatrixXd coeffs) {
    if (!coeffs.allFinite()) throw std::invalid_argument("DecoderScore::linear: coefficients must be finite");
    DecoderScore s;
    s.coeffs = std::move(coeffs);
    s.tag = ScoreTag::custom_linear;
    return s;
}

namespace {

// Variables are blocks of joint-type cells; masked-out cells are fixed at zero.
class Layout {
public:
    int add_block(const Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>& mask) {
        Eigen::MatrixXi idx = Eigen::MatrixXi::Constant(mask.rows(), mask.cols(), -1);
        for (Eigen::Index x = 0; x < mask.rows(); ++x)
            for (Eigen::Index y = 0; y < mask.cols(); ++y)
                if (mask(x, y)) idx(x, y) = n_++;
        blocks_.push_back(idx);
        return static_cast<int>(blocks_.size()) - 1;
    }
    int size() const { return n_; }
    const Eigen::MatrixXi& block(int b) const { return blocks_[static_cast<std::size_t>(b)]; }

    Eigen::VectorXd zero() const { return Eigen::VectorXd::Zero(n_); }

    void scatter(int b, const Eigen::MatrixXd& m, Eigen::VectorXd& v) const {
        const auto& idx = block(b);
        for (Eigen::Index x = 0; x < idx.rows(); ++x)
            for (Eigen::Index y = 0; y < idx.cols(); ++y)
                if (idx(x, y) >= 0) v(idx(x, y)) = m(x, y);
    }

    Eigen::MatrixXd gather(int b, const Eigen::VectorXd& v) const {
        const auto& idx = block(b);
        Eigen::MatrixXd m = Eigen::MatrixXd::Zero(idx.rows(), idx.cols());
        for (Eigen::Index x = 0; x < idx.rows(); ++x)
            for (Eigen::Index y = 0; y < idx.cols(); ++y)
                if (idx(x, y) >= 0) m(x, y) = v(idx(x, y));
        return m;
    }

    JointDist joint(int b, const Eigen::VectorXd& v) const {
        Eigen::MatrixXd m = gather(b, v);
        return JointDist(m / m.sum());
    }

    // Indicator row of the cells of block b selected by pred(x, y).
    template <class Pred>
    Eigen::VectorXd row(int b, Pred pred) const {
        Eigen::VectorXd r = zero();
        const auto& idx = block(b);
        for (Eigen::Index x = 0; x < idx.rows(); ++x)
            for (Eigen::Index y = 0; y < idx.cols(); ++y)
                if (idx(x, y) >= 0 && pred(x, y)) r(idx(x, y)) = 1.0;
        return r;
    }

    Eigen::VectorXd linear(int b, const Eigen::MatrixXd& coef) const {
        Eigen::VectorXd r = zero();
        scatter(b, coef, r);
        return r;
    }

private:
    std::vector<Eigen::MatrixXi> blocks_;
    int n_ = 0;
};

using Mask = Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>;

void add_xlogx_cells(EntropyForm& f, const Layout& lay, int b, double coeff) {
    const auto& idx = lay.block(b);
    for (Eigen::Index x = 0; x < idx.rows(); ++x)
        for (Eigen::Index y = 0; y < idx.cols(); ++y)
            if (idx(x, y) >= 0) f.add_xlogx(coeff, idx(x, y));
}

void add_xlogx_cols(EntropyForm& f, const Layout& lay, int b, double coeff) {
    for (Eigen::Index y = 0; y < lay.block(b).cols(); ++y) {
        Eigen::VectorXd r = lay.row(b, [y](Eigen::Index, Eigen::Index yy) { return yy == y; });
        if (r.sum() > 0.0) f.add_term(coeff, r);
    }
}

struct Equalities {
    std::vector<Eigen::VectorXd> rows;
    std::vector<double> rhs;

    void add(Eigen::VectorXd r, double b) {
        rows.push_back(std::move(r));
        rhs.push_back(b);
    }
    void fill(ConvexProblem& prob) const {
        const auto n = prob.start.size();
        prob.Aeq.resize(static_cast<Eigen::Index>(rows.size()), n);
        prob.beq.resize(static_cast<Eigen::Index>(rows.size()));
        for (std::size_t i = 0; i < rows.size(); ++i) {
            prob.Aeq.row(static_cast<Eigen::Index>(i)) = rows[i].transpose();
            prob.beq(static_cast<Eigen::Index>(i)) = rhs[i];
        }
    }
};

// Q_X = P on block b.
void add_x_marginal(Equalities& eq, const Layout& lay, int b, const Dist& p) {
    for (Eigen::Index x = 0; x < lay.block(b).rows(); ++x) {
        if (p[static_cast<std::size_t>(x)] <= 0.0) continue;
        eq.add(lay.row(b, [x](Eigen::Index xx, Eigen::Index) { return xx == x; }), p[static_cast<std::size_t>(x)]);
    }
}

// Q_Y on block a equals Q_Y on block b.
void add_y_match(Equalities& eq, const Layout& lay, int a, int b) {
    for (Eigen::Index y = 0; y < lay.block(a).cols(); ++y) {
        auto sel = [y](Eigen::Index, Eigen::Index yy) { return yy == y; };
        eq.add(lay.row(a, sel) - lay.row(b, sel), 0.0);
    }
}

void check_inputs(const Channel& w, const Dist& p, double rate) {
    if (static_cast<Eigen::Index>(p.size()) != w.nx()) throw std::invalid_argument("exponent: |P| != |X|");
    if (!(rate >= 0.0) || !std::isfinite(rate)) throw std::domain_error("exponent: rate must be finite and >= 0");
}

double neg_entropy_const(const Dist& p) {
    double s = 0.0;
    for (double v : p.probs()) s += xlogx(v);
    return s;
}

Mask support_mask(const Channel& w, const Dist& p) {
    Mask m(w.nx(), w.ny());
    for (Eigen::Index x = 0; x < w.nx(); ++x)
        for (Eigen::Index y = 0; y < w.ny(); ++y) m(x, y) = p[static_cast<std::size_t>(x)] > 0.0 && w(x, y) > 0.0;
    return m;
}

// -ln(P(x) W(y|x)) on the support, zero elsewhere.
Eigen::MatrixXd neg_log_pw(const Channel& w, const Dist& p) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(w.nx(), w.ny());
    for (Eigen::Index x = 0; x < w.nx(); ++x)
        for (Eigen::Index y = 0; y < w.ny(); ++y)
            if (p[static_cast<std::size_t>(x)] > 0.0 && w(x, y) > 0.0)
                m(x, y) = -std::log(p[static_cast<std::size_t>(x)] * w(x, y));
    return m;
}

ConvexResult run(const ConvexProblem& prob, const char* what) {
    ConvexResult r = solve_convex(prob);
    if (!r.feasible) throw SolverError(std::string(what) + ": no strictly feasible point");
    return r;
}

// D(Q || P x W) on block b, with Q_X = P imposed separately.
void add_divergence(EntropyForm& f, const Layout& lay, int b, const Channel& w, const Dist& p) {
    add_xlogx_cells(f, lay, b, 1.0);
    f.lin += lay.linear(b, neg_log_pw(w, p));
}

// I(Q) on block b when Q_X = P is imposed.
void add_mutual_info(EntropyForm& f, const Layout& lay, int b, const Dist& p, double scale = 1.0) {
    add_xlogx_cells(f, lay, b, scale);
    add_xlogx_cols(f, lay, b, -scale);
    f.c0 -= scale * neg_entropy_const(p);
}

struct RcSetup {
    Layout lay;
    int q = 0, qt = 0;
    ConvexProblem prob;
    EntropyForm div;   // D(Q || P x W)
    EntropyForm info;  // I(Q~)
};

RcSetup rc_setup(const Channel& w, const Dist& p, const DecoderScore& score) {
    RcSetup s;
    Mask mq = support_mask(w, p);
    JointDist pw = w.joint(p);
    Eigen::RowVectorXd qy = pw.matrix().colwise().sum();
    Mask mt(w.nx(), w.ny());
    bool full = score.tag == ScoreTag::custom_linear;
    for (Eigen::Index x = 0; x < w.nx(); ++x)
        for (Eigen::Index y = 0; y < w.ny(); ++y)
            mt(x, y) = full ? (p[static_cast<std::size_t>(x)] > 0.0 && qy(y) > 0.0) : mq(x, y);
    s.q = s.lay.add_block(mq);
    s.qt = s.lay.add_block(mt);
    const int n = s.lay.size();

    Eigen::VectorXd start = Eigen::VectorXd::Zero(n);
    s.lay.scatter(s.q, pw.matrix(), start);
    Eigen::MatrixXd prod = Eigen::VectorXd(Eigen::Map<const Eigen::VectorXd>(p.probs().data(), w.nx())) * qy;
    s.lay.scatter(s.qt, full ? prod : pw.matrix(), start);

    s.div = EntropyForm(n);
    add_divergence(s.div, s.lay, s.q, w, p);
    s.info = EntropyForm(n);
    add_mutual_info(s.info, s.lay, s.qt, p);

    Equalities eq;
    add_x_marginal(eq, s.lay, s.q, p);
    add_x_marginal(eq, s.lay, s.qt, p);
    add_y_match(eq, s.lay, s.q, s.qt);
    s.prob.start = start;
    eq.fill(s.prob);

    // alpha(Q) - alpha(Q~) <= 0; -inf cells are masked out of both blocks.
    Eigen::MatrixXd a = score.coeffs.unaryExpr([](double v) { return std::isfinite(v) ? v : 0.0; });
    EntropyForm sc(n);
    sc.lin = s.lay.linear(s.q, a) - s.lay.linear(s.qt, a);
    s.prob.ineq.push_back(sc);
    return s;
}

ExponentResult finish(double rate, double value, double residual, bool converged) {
    ExponentResult r;
    r.rate = rate;
    r.value = value;
    r.residual = residual;
    r.converged = converged;
    r.method = ExponentMethod::primal_convex;
    return r;
}

}  // namespace

ExponentResult rc_exponent_upper_branch(const Channel& w, const Dist& p, double rate, const DecoderScore& score) {
    check_inputs(w, p, rate);
    if (score.tag == ScoreTag::mmi) return sp_exponent(w, p, rate);
    JointDist pw = w.joint(p);
    if (rate >= mutual_information(pw)) {
        ExponentResult r = finish(rate, 0.0, 0.0, true);
        r.minimizers = {pw, pw};
        return r;
    }
    RcSetup s = rc_setup(w, p, score);
    s.prob.objective = s.div;
    EntropyForm cons = s.info;
    cons.c0 -= rate;
    s.prob.ineq.push_back(cons);
    ConvexResult cr = run(s.prob, "rc_exponent");
    ExponentResult r = finish(rate, std::max(cr.value, 0.0), cr.gap, cr.converged);
    r.minimizers = {s.lay.joint(s.q, cr.x), s.lay.joint(s.qt, cr.x)};
    return r;
}

ExponentResult rc_exponent(const Channel& w, const Dist& p, double rate, const DecoderScore& score) {
    check_inputs(w, p, rate);
    if (score.coeffs.rows() != w.nx() || score.coeffs.cols() != w.ny())
        throw std::invalid_argument("rc_exponent: score size mismatch");
    if (score.tag == ScoreTag::mmi) return rc_exponent_mmi(w, p, rate);
    JointDist pw = w.joint(p);
    const double cap = mutual_information(pw);

    RcSetup s = rc_setup(w, p, score);
    s.prob.objective = s.div;
    s.prob.objective += s.info;
    ConvexResult cr = run(s.prob, "rc_exponent");
    const double e0 = cr.value;
    const double r_crit = std::max(s.info.value(cr.x), 0.0);

    ExponentResult r;
    if (rate >= cap) {
        r = finish(rate, 0.0, cr.gap, cr.converged);
        r.minimizers = {pw, pw};
    } else if (rate <= r_crit) {
        r = finish(rate, e0 - rate, cr.gap, cr.converged);
        r.minimizers = {s.lay.joint(s.q, cr.x), s.lay.joint(s.qt, cr.x)};
    } else {
        r = rc_exponent_upper_branch(w, p, rate, score);
    }
    r.r_crit = r_crit;
    return r;
}

ExponentResult sp_exponent(const Channel& w, const Dist& p, double rate) {
    check_inputs(w, p, rate);
    JointDist pw = w.joint(p);
    if (rate >= mutual_information(pw)) {
        ExponentResult r = finish(rate, 0.0, 0.0, true);
        r.minimizers = {pw};
        return r;
    }
    if (rate == 0.0) {
        // Product channels Q(y|x) = V(y): min_V sum_y V(y) ln V(y) - sum_x P(x) sum_y V(y) ln W(y|x).
        Eigen::VectorXd g(w.ny());
        for (Eigen::Index y = 0; y < w.ny(); ++y) {
            double a = 0.0;
            for (Eigen::Index x = 0; x < w.nx(); ++x) {
                double px = p[static_cast<std::size_t>(x)];
                if (px <= 0.0) continue;
                a = w(x, y) > 0.0 ? a + px * std::log(w(x, y)) : -kInf;
                if (!std::isfinite(a)) break;
            }
            g(y) = a;
        }
        std::vector<double> gv(g.data(), g.data() + g.size());
        double lz = log_sum_exp(gv);
        ExponentResult r = finish(rate, std::isfinite(lz) ? -lz : kInf, 0.0, true);
        r.method = ExponentMethod::closed_form;
        if (std::isfinite(lz)) {
            Eigen::MatrixXd q(w.nx(), w.ny());
            for (Eigen::Index x = 0; x < w.nx(); ++x)
                for (Eigen::Index y = 0; y < w.ny(); ++y) q(x, y) = p[static_cast<std::size_t>(x)] * std::exp(g(y) - lz);
            r.minimizers = {JointDist(q)};
        }
        return r;
    }
    Layout lay;
    const int b = lay.add_block(support_mask(w, p));
    ConvexProblem prob;
    prob.start = lay.zero();
    lay.scatter(b, pw.matrix(), prob.start);
    prob.objective = EntropyForm(lay.size());
    add_divergence(prob.objective, lay, b, w, p);
    EntropyForm cons(lay.size());
    add_mutual_info(cons, lay, b, p);
    cons.c0 -= rate;
    prob.ineq.push_back(cons);
    Equalities eq;
    add_x_marginal(eq, lay, b, p);
    eq.fill(prob);
    ConvexResult cr = run(prob, "sp_exponent");
    ExponentResult r = finish(rate, std::max(cr.value, 0.0), cr.gap, cr.converged);
    r.minimizers = {lay.joint(b, cr.x)};
    return r;
}

ExponentResult rc_exponent_mmi(const Channel& w, const Dist& p, double rate) {
    check_inputs(w, p, rate);
    JointDist pw = w.joint(p);
    const double cap = mutual_information(pw);
    Layout lay;
    const int b = lay.add_block(support_mask(w, p));
    ConvexProblem prob;
    prob.start = lay.zero();
    lay.scatter(b, pw.matrix(), prob.start);
    prob.objective = EntropyForm(lay.size());
    add_divergence(prob.objective, lay, b, w, p);
    add_mutual_info(prob.objective, lay, b, p);
    Equalities eq;
    add_x_marginal(eq, lay, b, p);
    eq.fill(prob);
    ConvexResult cr = run(prob, "rc_exponent_mmi");
    EntropyForm info(lay.size());
    add_mutual_info(info, lay, b, p);
    const double r_crit = std::max(info.value(cr.x), 0.0);

    ExponentResult r;
    if (rate >= cap) {
        r = finish(rate, 0.0, cr.gap, cr.converged);
        r.minimizers = {pw};
    } else if (rate <= r_crit) {
        r = finish(rate, cr.value - rate, cr.gap, cr.converged);
        r.minimizers = {lay.joint(b, cr.x)};
    } else {
        r = sp_exponent(w, p, rate);
    }
    r.r_crit = r_crit;
    return r;
}

double bhattacharyya_distance(const JointDist& q, const Channel& w) {
    if (q.nx() != w.nx() || q.ny() != w.nx()) throw std::invalid_argument("bhattacharyya_distance: alphabet mismatch");
    double d = 0.0;
    for (Eigen::Index x = 0; x < w.nx(); ++x)
        for (Eigen::Index xt = 0; xt < w.nx(); ++xt) {
            if (q(x, xt) <= 0.0) continue;
            double z = (w.matrix().row(x).array() * w.matrix().row(xt).array()).sqrt().sum();
            if (z <= 0.0) return kInf;
            d -= q(x, xt) * std::log(std::min(z, 1.0));
        }
    return d;
}

ExponentResult expurgated_exponent(const Channel& w, const Dist& p, double rate) {
    check_inputs(w, p, rate);
    const Eigen::Index k = w.nx();
    Eigen::MatrixXd beta = Eigen::MatrixXd::Zero(k, k);
    Mask mask(k, k);
    for (Eigen::Index x = 0; x < k; ++x)
        for (Eigen::Index xt = 0; xt < k; ++xt) {
            double z = (w.matrix().row(x).array() * w.matrix().row(xt).array()).sqrt().sum();
            bool on = p[static_cast<std::size_t>(x)] > 0.0 && p[static_cast<std::size_t>(xt)] > 0.0 && z > 0.0;
            mask(x, xt) = on;
            if (on) beta(x, xt) = -std::log(std::min(z, 1.0));
        }
    Layout lay;
    const int b = lay.add_block(mask);
    Eigen::VectorXd pv = Eigen::Map<const Eigen::VectorXd>(p.probs().data(), k);
    Eigen::MatrixXd pp = pv * pv.transpose();

    // I(Q) with both marginals fixed at P: sum Q ln Q - 2 sum P ln P.
    EntropyForm info(lay.size());
    add_xlogx_cells(info, lay, b, 1.0);
    info.c0 = -2.0 * neg_entropy_const(p);

    ConvexProblem prob;
    prob.start = lay.zero();
    lay.scatter(b, pp, prob.start);
    if ((prob.start.array() <= 0.0).any()) throw SolverError("expurgated_exponent: product type off the support");
    prob.objective = info;
    prob.objective.lin += lay.linear(b, beta);
    prob.objective.c0 -= rate;
    Equalities eq;
    add_x_marginal(eq, lay, b, p);
    for (Eigen::Index xt = 0; xt < k; ++xt) {
        if (p[static_cast<std::size_t>(xt)] <= 0.0) continue;
        eq.add(lay.row(b, [xt](Eigen::Index, Eigen::Index y) { return y == xt; }), p[static_cast<std::size_t>(xt)]);
    }
    eq.fill(prob);

    ExponentResult r;
    if (rate == 0.0) {
        JointDist q(pp);
        r = finish(rate, bhattacharyya_distance(q, w), 0.0, true);
        r.minimizers = {q};
        return r;
    }
    EntropyForm cons = info;
    cons.c0 -= rate;
    prob.ineq.push_back(cons);
    ConvexResult cr = run(prob, "expurgated_exponent");
    r = finish(rate, cr.value, cr.gap, cr.converged);
    r.minimizers = {lay.joint(b, cr.x)};
    return r;
}

ExponentResult correct_decoding_exponent(const Channel& w, const Dist& p, double rate) {
    check_inputs(w, p, rate);
    JointDist pw = w.joint(p);
    if (rate <= mutual_information(pw)) {
        ExponentResult r = finish(rate, 0.0, 0.0, true);
        r.minimizers = {pw};
        return r;
    }
    // On {I(Q) <= R}: D(Q || P x W) + R - I(Q) = R - E_Q ln W - H(Q_Y), convex.
    Layout lay;
    const int b = lay.add_block(support_mask(w, p));
    ConvexProblem prob;
    prob.start = lay.zero();
    lay.scatter(b, pw.matrix(), prob.start);
    EntropyForm obj(lay.size());
    Eigen::MatrixXd nlw = w.matrix().unaryExpr([](double v) { return v > 0.0 ? -std::log(v) : 0.0; });
    obj.lin = lay.linear(b, nlw);
    add_xlogx_cols(obj, lay, b, 1.0);
    obj.c0 = rate;
    prob.objective = obj;
    EntropyForm cons(lay.size());
    add_mutual_info(cons, lay, b, p);
    cons.c0 -= rate;
    prob.ineq.push_back(cons);
    Equalities eq;
    add_x_marginal(eq, lay, b, p);
    eq.fill(prob);
    ConvexResult cr = run(prob, "correct_decoding_exponent");
    ExponentResult r = finish(rate, std::max(cr.value, 0.0), cr.gap, cr.converged);
    r.minimizers = {lay.joint(b, cr.x)};
    return r;
}

double gv_distance(double rate) {
    const double ln2 = std::log(2.0);
    if (!(rate >= 0.0 && rate <= ln2 + 1e-15)) throw std::domain_error("gv_distance: rate outside [0, ln 2]");
    if (rate >= ln2) return 0.0;
    if (rate == 0.0) return 0.5;
    // H is increasing on [0, 1/2].
    double lo = 0.0, hi = 0.5;
    for (int i = 0; i < 200 && hi - lo > 0.0; ++i) {
        double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        if (ln2 - binary_entropy(mid) > rate) lo = mid;
        else hi = mid;
    }
    return 0.5 * (lo + hi);
}

double correct_decoding_bsc(double p, double rate) {
    if (!(p > 0.0 && p < 0.5)) throw std::domain_error("correct_decoding_bsc: p outside (0, 1/2)");
    const double cap = std::log(2.0) - binary_entropy(p);
    if (rate < cap - 1e-12 || rate > std::log(2.0) + 1e-15)
        throw std::domain_error("correct_decoding_bsc: rate outside [C, ln 2]");
    return binary_kl(gv_distance(std::min(rate, std::log(2.0))), p);
}

ExponentResult sw_binning_exponent(const JointDist& pxy, double rate) {
    if (!(rate >= 0.0) || !std::isfinite(rate)) throw std::domain_error("sw_binning_exponent: rate must be finite and >= 0");
    const Eigen::MatrixXd& pm = pxy.matrix();
    if ((pm.array() <= 0.0).any()) throw std::domain_error("sw_binning_exponent: P_XY must have full support");
    const Eigen::Index nx = pm.rows(), ny = pm.cols();
    Eigen::RowVectorXd py = pm.colwise().sum();
    double h_cond = 0.0;  // H(X|Y)
    Eigen::MatrixXd lpc(nx, ny);
    for (Eigen::Index x = 0; x < nx; ++x)
        for (Eigen::Index y = 0; y < ny; ++y) {
            lpc(x, y) = std::log(pm(x, y) / py(y));
            h_cond -= pm(x, y) * lpc(x, y);
        }
    ExponentResult r;
    if (rate <= h_cond) {
        r = finish(rate, 0.0, 0.0, true);
        r.minimizers = {pxy, pxy};
        return r;
    }

    Mask all = Mask::Constant(nx, ny, true);
    Layout lay;
    const int q = lay.add_block(all), qp = lay.add_block(all);
    const int n = lay.size();
    ConvexProblem prob;
    prob.start = lay.zero();
    lay.scatter(q, pm, prob.start);
    lay.scatter(qp, pm, prob.start);
    EntropyForm div(n);  // D(Q || P)
    add_xlogx_cells(div, lay, q, 1.0);
    div.lin = lay.linear(q, -pm.array().log().matrix());
    EntropyForm neg_h(n);  // -H_{Q'}(X|Y)
    add_xlogx_cells(neg_h, lay, qp, 1.0);
    add_xlogx_cols(neg_h, lay, qp, -1.0);
    EntropyForm g(n);  // g(Q) - g(Q') <= 0
    g.lin = lay.linear(q, lpc) - lay.linear(qp, lpc);
    prob.ineq.push_back(g);
    Equalities eq;
    eq.add(lay.row(q, [](Eigen::Index, Eigen::Index) { return true; }), 1.0);
    add_y_match(eq, lay, q, qp);
    eq.fill(prob);

    // F0 = min D - H'; above the critical rate the bracket is active at the optimum.
    ConvexProblem p0 = prob;
    p0.objective = div;
    p0.objective += neg_h;
    ConvexResult c0 = run(p0, "sw_binning_exponent");
    const double r_crit = -neg_h.value(c0.x);
    if (rate >= r_crit) {
        r = finish(rate, c0.value + rate, c0.gap, c0.converged);
        r.minimizers = {lay.joint(q, c0.x), lay.joint(qp, c0.x)};
    } else {
        // min D subject to H_{Q'}(X|Y) >= R.
        prob.objective = div;
        EntropyForm cons = neg_h;
        cons.c0 += rate;
        prob.ineq.push_back(cons);
        ConvexResult c1 = run(prob, "sw_binning_exponent");
        r = finish(rate, std::max(c1.value, 0.0), c1.gap, c1.converged);
        r.minimizers = {lay.joint(q, c1.x), lay.joint(qp, c1.x)};
    }
    r.r_crit = r_crit;
    return r;
}

}  // namespace itt
