#include "itt/channel_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

namespace itt {

namespace {

struct Table {
    Eigen::MatrixXd m;
    std::vector<int> row_lines;
};

[[noreturn]] void fail(const std::string& source, int line, const std::string& msg) {
    throw ParseError(source + ":" + std::to_string(line) + ": " + msg);
}

std::vector<std::string> split_ws(const std::string& s) {
    std::istringstream is(s);
    std::vector<std::string> out;
    for (std::string t; is >> t;) out.push_back(t);
    return out;
}

double parse_real(const std::string& tok, const std::string& source, int line) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size() || !std::isfinite(v))
        fail(source, line, "not a number: '" + tok + "'");
    if (v < 0.0) fail(source, line, "negative entry " + tok);
    return v;
}

int parse_dim(const std::string& tok, const std::string& source, int line) {
    int v = 0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size() || v < 1)
        fail(source, line, "bad alphabet size '" + tok + "'");
    return v;
}

Table read_table(std::istream& in, const std::string& source, const std::string& keyword) {
    Table t;
    int line_no = 0, rows = 0, nx = 0, ny = 0;
    bool have_header = false;
    for (std::string line; std::getline(in, line);) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto tok = split_ws(line);
        if (tok.empty() || tok[0][0] == '#') continue;
        if (!have_header) {
            if (tok.size() != 3 || tok[0] != keyword)
                fail(source, line_no, "expected header '" + keyword + " <|X|> <|Y|>'");
            nx = parse_dim(tok[1], source, line_no);
            ny = parse_dim(tok[2], source, line_no);
            t.m = Eigen::MatrixXd::Zero(nx, ny);
            have_header = true;
            continue;
        }
        if (rows == nx) fail(source, line_no, "more than " + std::to_string(nx) + " rows");
        if (static_cast<int>(tok.size()) != ny)
            fail(source, line_no, "expected " + std::to_string(ny) + " entries, got " + std::to_string(tok.size()));
        for (int y = 0; y < ny; ++y) t.m(rows, y) = parse_real(tok[y], source, line_no);
        t.row_lines.push_back(line_no);
        ++rows;
    }
    if (!have_header) fail(source, line_no, "missing header '" + keyword + " <|X|> <|Y|>'");
    if (rows < nx) fail(source, line_no, "expected " + std::to_string(nx) + " rows, got " + std::to_string(rows));
    return t;
}

std::string fmt_sum(double s) {
    std::ostringstream os;
    os.precision(17);
    os << s;
    return os.str();
}

void write_table(std::ostream& out, const Eigen::MatrixXd& m, const char* keyword) {
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os.precision(17);
    os << keyword << ' ' << m.rows() << ' ' << m.cols() << '\n';
    for (Eigen::Index x = 0; x < m.rows(); ++x) {
        for (Eigen::Index y = 0; y < m.cols(); ++y) os << (y ? " " : "") << m(x, y);
        os << '\n';
    }
    out << os.str();
}

std::ifstream open_or_throw(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ParseError(path + ": cannot open");
    return f;
}

}  // namespace

Channel read_channel(std::istream& in, const std::string& source) {
    Table t = read_table(in, source, "dmc");
    for (Eigen::Index x = 0; x < t.m.rows(); ++x) {
        const double s = t.m.row(x).sum();
        if (std::abs(s - 1.0) > kProbTol) fail(source, t.row_lines[x], "row sums to " + fmt_sum(s));
    }
    return Channel(t.m);
}

Channel read_channel_file(const std::string& path) {
    auto f = open_or_throw(path);
    return read_channel(f, path);
}

JointDist read_joint_source(std::istream& in, const std::string& source) {
    Table t = read_table(in, source, "src");
    const double s = t.m.sum();
    if (std::abs(s - 1.0) > kProbTol) fail(source, t.row_lines.back(), "table sums to " + fmt_sum(s));
    return JointDist(t.m);
}

JointDist read_joint_source_file(const std::string& path) {
    auto f = open_or_throw(path);
    return read_joint_source(f, path);
}

void write_channel(std::ostream& out, const Channel& w) { write_table(out, w.matrix(), "dmc"); }

void write_joint_source(std::ostream& out, const JointDist& q) { write_table(out, q.matrix(), "src"); }

}  // namespace itt
