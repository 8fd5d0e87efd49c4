#include "cli.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <omp.h>

#include "CLI11.hpp"
#include "itt/asymptotics.hpp"
#include "itt/bounds.hpp"
#include "itt/channel_io.hpp"
#include "itt/dual.hpp"
#include "itt/expectations.hpp"
#include "itt/exponents.hpp"
#include "itt/grid_oracle.hpp"
#include "itt/montecarlo.hpp"
#include "itt/tce.hpp"

namespace itt::cli {

namespace {

const double kLn2 = std::log(2.0);
const double kPi = std::acos(-1.0);

class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

std::string num(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0.0 ? "inf" : "-inf";
    if (v == 0.0) v = 0.0;
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 12);
    return std::string(buf, r.ptr);
}

void csv_row(std::ostream& os, const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << cells[i];
    os << '\n';
}

double parse_double(const std::string& s, const std::string& what) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v))
        throw UsageError(what + ": not a number: '" + s + "'");
    return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

// "a:b:k" -> k equally spaced values from a to b.
std::vector<double> parse_rates(const std::string& spec) {
    const auto parts = split(spec, ':');
    if (parts.size() != 3) throw UsageError("--rates: expected min:max:steps, got '" + spec + "'");
    const double a = parse_double(parts[0], "--rates"), b = parse_double(parts[1], "--rates");
    int k = 0;
    const auto [ptr, ec] = std::from_chars(parts[2].data(), parts[2].data() + parts[2].size(), k);
    if (ec != std::errc() || ptr != parts[2].data() + parts[2].size() || k < 1)
        throw UsageError("--rates: steps must be a positive integer");
    if (a > b) throw UsageError("--rates: min exceeds max");
    if (k == 1) return {a};
    return linspace(a, b, k);
}

std::vector<double> parse_list(const std::string& s, const std::string& what) {
    std::vector<double> out;
    for (const auto& t : split(s, ',')) out.push_back(parse_double(t, what));
    return out;
}

Dist parse_input(const std::string& s, Eigen::Index nx) {
    if (s == "uniform") return Dist::uniform(static_cast<std::size_t>(nx));
    Dist p(parse_list(s, "--input"));
    if (static_cast<Eigen::Index>(p.size()) != nx) throw UsageError("--input: size does not match the channel");
    return p;
}

// Runs fn over the index range in parallel and rethrows the first failure in index order.
template <class Fn>
void parallel_rows(std::size_t n, Fn fn) {
    std::vector<std::exception_ptr> errs(n);
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < static_cast<long>(n); ++i) {
        try {
            fn(static_cast<std::size_t>(i));
        } catch (...) {
            errs[static_cast<std::size_t>(i)] = std::current_exception();
        }
    }
    for (auto& e : errs)
        if (e) std::rethrow_exception(e);
}

// ---------------------------------------------------------------- exponent

struct ExponentArgs {
    std::string kind, channel, source, input = "uniform", rates, decoder = "ml", method = "primal";
    double bsc = -1.0, dsbs = -1.0;
    int denom = 100;
    bool bits = false;
};

void cmd_exponent(const ExponentArgs& a, std::ostream& os) {
    std::vector<double> rates = parse_rates(a.rates);
    const double unit = a.bits ? kLn2 : 1.0;
    for (double& r : rates) r *= unit;
    const bool sw = a.kind == "sw";

    Channel w;
    JointDist pxy;
    Dist p;
    if (sw) {
        if (a.source.empty() == (a.dsbs < 0.0)) throw UsageError("sw needs exactly one of --source, --dsbs");
        if (!a.source.empty()) {
            pxy = read_joint_source_file(a.source);
        } else {
            if (!(a.dsbs > 0.0 && a.dsbs < 1.0)) throw UsageError("--dsbs must lie in (0, 1)");
            Eigen::Matrix2d q;
            q << (1 - a.dsbs) / 2, a.dsbs / 2, a.dsbs / 2, (1 - a.dsbs) / 2;
            pxy = JointDist(q);
        }
    } else {
        if (a.channel.empty() == (a.bsc < 0.0)) throw UsageError("need exactly one of --channel, --bsc");
        w = a.channel.empty() ? Channel::bsc(a.bsc) : read_channel_file(a.channel);
        p = parse_input(a.input, w.nx());
    }
    const bool mmi = a.kind == "rc-mmi" || (a.kind == "rc" && a.decoder == "mmi");
    const auto score = [&] { return mmi ? DecoderScore::mmi(w.nx(), w.ny()) : DecoderScore::ml(w); };

    std::vector<ExponentResult> res(rates.size());
    if (a.method == "grid") {
        if (a.denom < 1) throw UsageError("--denom must be positive");
        if (a.kind == "rc" || a.kind == "rc-mmi") {
            res = rc_exponent_grid_sweep(w, p, rates, score(), a.denom);
        } else {
            for (std::size_t i = 0; i < rates.size(); ++i) {
                const double r = rates[i];
                if (a.kind == "sp") res[i] = sp_exponent_grid(w, p, r, a.denom);
                else if (a.kind == "ex") res[i] = expurgated_exponent_grid(w, p, r, a.denom);
                else if (a.kind == "cd") res[i] = correct_decoding_exponent_grid(w, p, r, a.denom);
                else res[i] = sw_binning_exponent_grid(pxy, r, a.denom);
            }
        }
    } else if (a.method == "dual") {
        if (a.kind != "rc" || mmi) throw UsageError("the dual method applies to rc with the ml decoder");
        const DecoderScore s = score();
        parallel_rows(rates.size(), [&](std::size_t i) {
            res[i].rate = rates[i];
            res[i].value = dual_rc_optimize(w, p, rates[i], s).value;
            res[i].method = ExponentMethod::dual;
        });
    } else {
        const DecoderScore s = sw ? DecoderScore{} : score();
        parallel_rows(rates.size(), [&](std::size_t i) {
            const double r = rates[i];
            if (a.kind == "rc") res[i] = rc_exponent(w, p, r, s);
            else if (a.kind == "rc-mmi") res[i] = rc_exponent_mmi(w, p, r);
            else if (a.kind == "sp") res[i] = sp_exponent(w, p, r);
            else if (a.kind == "ex") res[i] = expurgated_exponent(w, p, r);
            else if (a.kind == "cd") res[i] = correct_decoding_exponent(w, p, r);
            else res[i] = sw_binning_exponent(pxy, r);
        });
    }

    csv_row(os, {"rate", "exponent", "method", "residual"});
    for (std::size_t i = 0; i < rates.size(); ++i)
        csv_row(os, {num(rates[i] / unit), num(res[i].value / unit), a.method, num(res[i].residual / unit)});
}

// -------------------------------------------------------------- asymptotic

struct AsymptoticArgs {
    std::string kind;
    std::vector<std::int64_t> n;
    std::int64_t k = -1, n1 = -1;
    double s = 1.0, bernoulli = -1.0, A = -1.0, delta = 1.0, Q = -1.0;
};

// ln #{k in Z^n : sum |k_i| <= m}.
double log_l1_ball_count(std::int64_t n, std::int64_t m) {
    if (static_cast<double>(n) * static_cast<double>(m) * static_cast<double>(m) > 1e9)
        return std::numeric_limits<double>::quiet_NaN();
    std::vector<long double> c(m + 1, 0.0L);
    c[0] = 1.0L;
    for (std::int64_t d = 0; d < n; ++d) {
        std::vector<long double> next(c);
        for (std::int64_t s = 0; s <= m; ++s)
            for (std::int64_t j = 1; s + j <= m; ++j) next[s + j] += 2.0L * c[s];
        c = std::move(next);
    }
    long double total = 0.0L;
    for (long double v : c) total += v;
    return static_cast<double>(std::log(total));
}

void cmd_asymptotic(const AsymptoticArgs& a, std::ostream& os) {
    if (a.n.empty()) throw UsageError("--n is required");
    const auto need = [](bool ok, const char* msg) {
        if (!ok) throw UsageError(msg);
    };
    csv_row(os, {"n", "exact_log", "approx_log", "ratio"});
    for (std::int64_t n : a.n) {
        need(n >= 1, "--n must be positive");
        double exact = std::numeric_limits<double>::quiet_NaN(), approx = 0.0;
        if (a.kind == "stirling") {
            exact = log_factorial(n);
            approx = stirling(n).log_approx;
        } else if (a.kind == "binom") {
            need(a.k >= 0, "binom needs --k");
            exact = log_binomial(n, a.k);
            approx = binomial_count_saddle(n, a.k).log_estimate;
        } else if (a.kind == "sphere") {
            const SphereResult r = hypersphere_surface(static_cast<int>(n), a.s);
            exact = r.exact_log;
            approx = r.saddle_log;
        } else if (a.kind == "tail") {
            need(a.bernoulli > 0.0 && a.bernoulli < 1.0, "tail needs --bernoulli in (0, 1)");
            need(a.A >= 0.0, "tail needs --A");
            const auto k0 = static_cast<std::int64_t>(std::ceil(static_cast<double>(n) * a.A - 1e-9));
            exact = log_binomial_upper_tail(n, a.bernoulli, k0);
            approx = bahadur_rao_tail(LatticePmf::bernoulli(a.bernoulli), a.A, static_cast<int>(n)).log_prob;
        } else if (a.kind == "lattice") {
            need(a.Q > 0.0, "lattice needs --Q");
            approx = lattice_code_count(a.delta, a.Q, static_cast<int>(n)).log_count;
            const double m = static_cast<double>(n) * a.Q / a.delta;
            if (a.delta == 1.0 && std::abs(m - std::round(m)) < 1e-9)
                exact = log_l1_ball_count(n, static_cast<std::int64_t>(std::llround(m)));
        } else {
            need(a.n1 >= 1 && a.n1 < n, "redundancy needs 0 < --n1 < n");
            exact = std::lgamma(a.n1 + 1.0) + std::lgamma(double(n - a.n1) + 1.0) - std::lgamma(double(n) + 2.0);
            approx = -static_cast<double>(n) *
                     mixture_redundancy(static_cast<int>(n), static_cast<int>(a.n1), ScalarFn([](double) { return 1.0; }));
        }
        csv_row(os, {std::to_string(n), num(exact), num(approx), num(std::exp(approx - exact))});
    }
}

// --------------------------------------------------------- expect / bounds

struct FamilyArgs {
    std::string name = "exp";
    double rate = 1.0, shape = 1.0, p = 0.5, sigma2 = 1.0, lo = 0.0, hi = 1.0, value = 1.0;
    int trials = 1, dof = 1;
};

struct Family {
    MgfSpec mgf;
    Sampler draw;
};

Family make_family(const FamilyArgs& f) {
    if (f.name == "exp") {
        const double r = f.rate;
        return {MgfSpec::exponential(r), [r](std::mt19937_64& g) { return std::exponential_distribution<double>(r)(g); }};
    }
    if (f.name == "gamma") {
        const double k = f.shape, r = f.rate;
        return {MgfSpec::gamma(k, r), [k, r](std::mt19937_64& g) { return std::gamma_distribution<double>(k, 1.0 / r)(g); }};
    }
    if (f.name == "bernoulli-sum") {
        const int n = f.trials;
        const double p = f.p;
        return {MgfSpec::bernoulli_sum(n, p),
                [n, p](std::mt19937_64& g) { return static_cast<double>(std::binomial_distribution<int>(n, p)(g)); }};
    }
    if (f.name == "chi2") {
        const int n = f.dof;
        const double s2 = f.sigma2;
        return {MgfSpec::chi2(n, s2),
                [n, s2](std::mt19937_64& g) { return std::gamma_distribution<double>(n / 2.0, 2.0 * s2)(g); }};
    }
    if (f.name == "uniform" || f.name == "uniform01") {
        const double a = f.name == "uniform01" ? 0.0 : f.lo, b = f.name == "uniform01" ? 1.0 : f.hi;
        return {MgfSpec::uniform(a, b), [a, b](std::mt19937_64& g) { return std::uniform_real_distribution<double>(a, b)(g); }};
    }
    const double c = f.value;
    return {MgfSpec::degenerate(c), [c](std::mt19937_64&) { return c; }};
}

void add_family_options(CLI::App* sub, FamilyArgs& f) {
    sub->add_option("--family", f.name, "distribution family")
        ->check(CLI::IsMember({"exp", "gamma", "bernoulli-sum", "chi2", "uniform", "uniform01", "degenerate"}));
    sub->add_option("--rate", f.rate, "exp/gamma rate");
    sub->add_option("--shape", f.shape, "gamma shape");
    sub->add_option("--trials", f.trials, "bernoulli-sum number of terms");
    sub->add_option("--p", f.p, "bernoulli-sum success probability");
    sub->add_option("--dof", f.dof, "chi2 degrees of freedom");
    sub->add_option("--sigma2", f.sigma2, "chi2 component variance");
    sub->add_option("--lo", f.lo, "uniform lower end");
    sub->add_option("--hi", f.hi, "uniform upper end");
    sub->add_option("--value", f.value, "degenerate value");
}

struct McArgs {
    std::uint64_t seed = 1;
    std::uint64_t samples = 1'000'000;
};

struct ExpectArgs {
    std::string kind, dist, guess;
    FamilyArgs family;
    McArgs mc;
    double rho = -1.0, snr = 1.0;
    std::vector<double> sigmas{1.0};
    int dim = 1;
    bool mc_check = false;
};

void cmd_expect(const ExpectArgs& a, std::ostream& os) {
    double value = 0.0;
    Sampler sample;
    const auto need_rho = [&] {
        if (!(a.rho > 0.0)) throw UsageError(a.kind + " needs --rho > 0");
    };
    if (a.kind == "guesswork") {
        if (a.dist.empty() || a.guess.empty()) throw UsageError("guesswork needs --dist and --guess");
        need_rho();
        const Dist p(parse_list(a.dist, "--dist")), pt(parse_list(a.guess, "--guess"));
        value = guesswork_moment(p, pt, a.rho);
        const double rho = a.rho;
        sample = [p, pt, rho](std::mt19937_64& g) {
            const std::size_t x = std::discrete_distribution<std::size_t>(p.probs().begin(), p.probs().end())(g);
            // Number of i.i.d. guesses up to and including the first hit.
            const double tries = 1.0 + static_cast<double>(std::geometric_distribution<long long>(pt[x])(g));
            return std::pow(tries, rho);
        };
    } else if (a.kind == "simo" || a.kind == "simo-var") {
        const double snr = a.snr;
        const std::vector<double> s2 = a.sigmas;
        const auto draw = [snr, s2](std::mt19937_64& g) {
            double t = 0.0;
            for (double v : s2) t += snr * v * std::exponential_distribution<double>(1.0)(g);
            return std::log1p(t);
        };
        if (a.kind == "simo") {
            value = simo_capacity(snr, s2);
            sample = draw;
        } else {
            value = simo_capacity_variance(snr, s2);
            const double mean = simo_capacity(snr, s2);
            sample = [draw, mean](std::mt19937_64& g) {
                const double d = draw(g) - mean;
                return d * d;
            };
        }
    } else if (a.kind == "cauchy") {
        const int n = a.dim;
        value = cauchy_entropy(n);
        const double h = (n + 1) / 2.0;
        const double log_norm = std::lgamma(h) - h * std::log(kPi);
        sample = [n, h, log_norm](std::mt19937_64& g) {
            std::normal_distribution<double> z;
            double r2 = 0.0;
            for (int i = 0; i < n; ++i) r2 += std::pow(z(g), 2);
            const double d = z(g);
            return -(log_norm - h * std::log1p(r2 / (d * d)));
        };
    } else {
        const Family fam = make_family(a.family);
        const MgfSpec& m = fam.mgf;
        const Sampler draw = fam.draw;
        if (a.kind == "ln") {
            value = expect_ln(m);
            sample = [draw](std::mt19937_64& g) { return std::log(draw(g)); };
        } else if (a.kind == "ln1p") {
            value = expect_ln1p(m);
            sample = [draw](std::mt19937_64& g) { return std::log1p(draw(g)); };
        } else if (a.kind == "var-ln1p") {
            value = var_ln1p(m);
            const double mean = expect_ln1p(m);
            sample = [draw, mean](std::mt19937_64& g) {
                const double d = std::log1p(draw(g)) - mean;
                return d * d;
            };
        } else {
            need_rho();
            value = a.rho < 1.0 ? frac_moment_01(m, a.rho) : frac_moment_general(m, a.rho);
            const double rho = a.rho;
            sample = [draw, rho](std::mt19937_64& g) { return std::pow(draw(g), rho); };
        }
    }
    if (!a.mc_check) {
        csv_row(os, {"value"});
        csv_row(os, {num(value)});
        return;
    }
    const McResult r = mc_mean(sample, a.mc.samples, a.mc.seed);
    csv_row(os, {"value", "mc_mean", "mc_se"});
    csv_row(os, {num(value), num(r.mean), num(r.se)});
}

struct BoundsArgs {
    std::string kind, f = "ln1p", method = "best";
    FamilyArgs family;
    McArgs mc;
    int terms = 10, copies = 3;
    double eps = 0.1;
};

RjiMethod parse_method(const std::string& s) {
    if (s == "exact-q") return RjiMethod::exact_q;
    if (s == "chernoff") return RjiMethod::chernoff;
    if (s == "chernoff-tilde") return RjiMethod::chernoff_tilde;
    if (s == "cheb-cantelli") return RjiMethod::cheb_cantelli;
    return RjiMethod::best;
}

void cmd_bounds(const BoundsArgs& a, std::ostream& os) {
    const Family fam = make_family(a.family);
    const MgfSpec& m = fam.mgf;
    const Sampler draw = fam.draw;
    const FnSpec f = a.f == "sqrt" ? FnSpec::power(0.5) : FnSpec::ln1p();
    double bound = 0.0;
    BoundDirection dir = BoundDirection::lower;
    Sampler sample;
    if (a.kind == "rji") {
        bound = rji_lower_bound(f, m, parse_method(a.method));
        sample = [draw, f](std::mt19937_64& g) { return f.f(draw(g)); };
    } else if (a.kind == "rji-iid") {
        bound = rji_iid_bound(m, a.terms, f, a.eps);
        const int n = a.terms;
        sample = [draw, f, n](std::mt19937_64& g) {
            double s = 0.0;
            for (int i = 0; i < n; ++i) s += draw(g);
            return f.f(s);
        };
    } else if (a.kind == "jensen-like-entropy") {
        const JensenLike j = jensen_like_product(FnSpec::neg_log(), m.second_moment(), m.mean);
        bound = j.value;
        dir = j.direction;
        sample = [draw](std::mt19937_64& g) {
            const double x = draw(g);
            return x > 0.0 ? -x * std::log(x) : 0.0;
        };
    } else {
        if (a.copies < 1) throw UsageError("--copies must be positive");
        bound = harmonic_mean_upper(std::vector<double>(static_cast<std::size_t>(a.copies), m.mean));
        dir = BoundDirection::upper;
        const int k = a.copies;
        sample = [draw, k](std::mt19937_64& g) {
            double s = 0.0;
            for (int i = 0; i < k; ++i) s += 1.0 / draw(g);
            return k / s;
        };
    }
    const McResult r = mc_mean(sample, a.mc.samples, a.mc.seed);
    // Rounding slack so that exact bounds on degenerate laws still hold.
    const double slack = 3.0 * r.se + 1e-9 * (1.0 + std::abs(r.mean));
    const bool holds = dir == BoundDirection::lower ? bound <= r.mean + slack : bound >= r.mean - slack;
    csv_row(os, {"bound", "mc_mean", "mc_se", "direction", "holds"});
    csv_row(os, {num(bound), num(r.mean), num(r.se), dir == BoundDirection::lower ? "lower" : "upper",
                 holds ? "true" : "false"});
}

void apply_thread_env() {
    const char* v = std::getenv(kThreadsEnv);
    if (!v || !*v) return;
    int n = -1;
    const std::string s(v);
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), n);
    if (ec != std::errc() || ptr != s.data() + s.size() || n < 0)
        throw UsageError(std::string(kThreadsEnv) + " must be a nonnegative integer");
    if (n > 0) omp_set_num_threads(n);
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Information-theoretic asymptotics, exponents and expectations; CSV on standard output"};
    app.name("itt");
    app.require_subcommand(1);

    ExponentArgs ea;
    auto* exp = app.add_subcommand("exponent", "error-exponent sweep over rates (nats unless --bits)");
    exp->add_option("kind", ea.kind)->required()->check(CLI::IsMember({"rc", "rc-mmi", "sp", "ex", "cd", "sw"}));
    exp->add_option("--channel", ea.channel, "channel file (dmc header)");
    exp->add_option("--bsc", ea.bsc, "binary symmetric channel crossover");
    exp->add_option("--source", ea.source, "joint-source file (src header), for sw");
    exp->add_option("--dsbs", ea.dsbs, "doubly symmetric binary source crossover, for sw");
    exp->add_option("--input", ea.input, "input distribution: uniform or comma-separated");
    exp->add_option("--rates", ea.rates, "min:max:steps")->required();
    exp->add_option("--decoder", ea.decoder)->check(CLI::IsMember({"ml", "mmi"}));
    exp->add_option("--method", ea.method)->check(CLI::IsMember({"primal", "dual", "grid"}));
    exp->add_option("--denom", ea.denom, "joint-type denominator for --method grid");
    exp->add_flag("--bits", ea.bits, "rates and exponents in bits");

    AsymptoticArgs aa;
    auto* asy = app.add_subcommand("asymptotic", "exact versus asymptotic values, as logarithms");
    asy->add_option("kind", aa.kind)
        ->required()
        ->check(CLI::IsMember({"stirling", "binom", "sphere", "tail", "lattice", "redundancy"}));
    asy->add_option("--n", aa.n, "length(s), comma-separated")->delimiter(',');
    asy->add_option("--k", aa.k);
    asy->add_option("--s", aa.s, "sphere: squared radius per dimension");
    asy->add_option("--bernoulli", aa.bernoulli, "tail: Bernoulli parameter");
    asy->add_option("--A", aa.A, "tail: threshold per symbol");
    asy->add_option("--delta", aa.delta, "lattice: step");
    asy->add_option("--Q", aa.Q, "lattice: l1 budget per symbol");
    asy->add_option("--n1", aa.n1, "redundancy: number of ones");

    ExpectArgs xa;
    auto* ex = app.add_subcommand("expect", "expectations from integral representations");
    ex->add_option("kind", xa.kind)
        ->required()
        ->check(CLI::IsMember({"ln", "ln1p", "var-ln1p", "frac", "guesswork", "simo", "simo-var", "cauchy"}));
    add_family_options(ex, xa.family);
    ex->add_option("--rho", xa.rho, "moment order");
    ex->add_option("--dist", xa.dist, "guesswork: source distribution");
    ex->add_option("--guess", xa.guess, "guesswork: guessing distribution");
    ex->add_option("--snr", xa.snr);
    ex->add_option("--sigmas", xa.sigmas, "simo: branch gains")->delimiter(',');
    ex->add_option("--dim", xa.dim, "cauchy: dimension");
    ex->add_flag("--mc-check", xa.mc_check, "add Monte-Carlo mean and standard error");
    ex->add_option("--seed", xa.mc.seed);
    ex->add_option("--samples", xa.mc.samples);

    BoundsArgs ba;
    auto* bd = app.add_subcommand("bounds", "bounds with a Monte-Carlo ground truth");
    bd->add_option("kind", ba.kind)
        ->required()
        ->check(CLI::IsMember({"rji", "rji-iid", "jensen-like-entropy", "harmonic-mean"}));
    add_family_options(bd, ba.family);
    bd->add_option("--f", ba.f)->check(CLI::IsMember({"ln1p", "sqrt"}));
    bd->add_option("--method", ba.method)
        ->check(CLI::IsMember({"exact-q", "chernoff", "chernoff-tilde", "cheb-cantelli", "best"}));
    bd->add_option("--terms", ba.terms, "rji-iid: number of summands");
    bd->add_option("--eps", ba.eps, "rji-iid: threshold offset above the mean");
    bd->add_option("--copies", ba.copies, "harmonic-mean: number of copies");
    bd->add_option("--seed", ba.mc.seed);
    bd->add_option("--samples", ba.mc.samples);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitParse;
    }

    std::ostringstream os;
    try {
        apply_thread_env();
        if (exp->parsed()) cmd_exponent(ea, os);
        else if (asy->parsed()) cmd_asymptotic(aa, os);
        else if (ex->parsed()) cmd_expect(xa, os);
        else cmd_bounds(ba, os);
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitParse;
    } catch (const std::logic_error& e) {
        err << "error: " << e.what() << '\n';
        return kExitParse;
    } catch (const std::exception& e) {
        err << "solver failure: " << e.what() << '\n';
        return kExitSolver;
    }
    out << os.str();
    return kExitOk;
}

}  // namespace itt::cli
