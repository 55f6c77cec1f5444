#include "gave/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <tuple>
#include <vector>

#include "gave/errors.hpp"

namespace gave {

namespace {

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

std::string fmt_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

double parse_double(const std::string& tok) {
    try {
        std::size_t used = 0;
        double v = std::stod(tok, &used);
        if (used != tok.size()) throw ParseError("trailing characters in number '" + tok + "'");
        return v;
    } catch (const std::logic_error&) {
        throw ParseError("not a number: '" + tok + "'");
    }
}

std::size_t parse_count(const std::string& tok) {
    if (tok.empty() || !std::all_of(tok.begin(), tok.end(), ::isdigit))
        throw ParseError("not a count: '" + tok + "'");
    return std::stoul(tok);
}

struct Header {
    bool coordinate = false;
    bool symmetric = false;
};

Header read_header(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError("empty Matrix Market stream");
    std::istringstream hs(line);
    std::string banner, object, format, field, symmetry;
    hs >> banner >> object >> format >> field >> symmetry;
    if (banner != "%%MatrixMarket" || lower(object) != "matrix")
        throw ParseError("missing '%%MatrixMarket matrix' header");
    Header h;
    format = lower(format);
    if (format == "coordinate") h.coordinate = true;
    else if (format != "array") throw ParseError("unsupported format '" + format + "'");
    field = lower(field);
    if (field != "real" && field != "integer" && field != "double")
        throw ParseError("unsupported field '" + field + "'");
    symmetry = lower(symmetry);
    if (symmetry == "symmetric") h.symmetric = true;
    else if (symmetry != "general") throw ParseError("unsupported symmetry '" + symmetry + "'");
    return h;
}

// remaining whitespace-separated tokens after comments
std::vector<std::string> body_tokens(std::istream& in) {
    std::vector<std::string> toks;
    std::string line;
    while (std::getline(in, line)) {
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '%') continue;
        std::istringstream ls(line);
        std::string t;
        while (ls >> t) toks.push_back(t);
    }
    return toks;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ParseError("cannot open '" + path + "'");
    return f;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream f(path);
    if (!f) throw ParseError("cannot write '" + path + "'");
    return f;
}

}  // namespace

DenseMatrix read_matrix_market(std::istream& in) {
    Header h = read_header(in);
    auto toks = body_tokens(in);
    std::size_t pos = 0;
    auto next = [&]() -> const std::string& {
        if (pos >= toks.size()) throw ParseError("unexpected end of Matrix Market data");
        return toks[pos++];
    };
    std::size_t rows = parse_count(next());
    std::size_t cols = parse_count(next());
    if (rows == 0 || cols == 0) throw ParseError("matrix dimensions must be positive");
    if (h.symmetric && rows != cols) throw ParseError("symmetric matrix must be square");

    if (!h.coordinate) {
        std::vector<double> e(rows * cols, 0.0);
        for (std::size_t j = 0; j < cols; ++j)
            for (std::size_t i = h.symmetric ? j : 0; i < rows; ++i) {
                double v = parse_double(next());
                e[i * cols + j] = v;
                if (h.symmetric) e[j * cols + i] = v;
            }
        if (pos != toks.size()) throw ParseError("extra data after array entries");
        return DenseMatrix::from_row_major(rows, cols, e);
    }

    std::size_t nnz = parse_count(next());
    std::vector<std::tuple<std::size_t, std::size_t, double>> entries;
    entries.reserve(h.symmetric ? 2 * nnz : nnz);
    std::size_t kl = 0, ku = 0;
    for (std::size_t k = 0; k < nnz; ++k) {
        std::size_t i = parse_count(next()), j = parse_count(next());
        double v = parse_double(next());
        if (i < 1 || i > rows || j < 1 || j > cols)
            throw ParseError("entry index out of range");
        --i;
        --j;
        entries.emplace_back(i, j, v);
        if (h.symmetric && i != j) entries.emplace_back(j, i, v);
        std::size_t d = i > j ? i - j : j - i;
        if (i > j || h.symmetric) kl = std::max(kl, d);
        if (j > i || h.symmetric) ku = std::max(ku, d);
    }
    if (pos != toks.size()) throw ParseError("extra data after coordinate entries");
    DenseMatrix m = DenseMatrix::banded(rows, cols, kl, ku);
    for (auto [i, j, v] : entries) m.at(i, j) += v;
    return m;
}

DenseMatrix read_matrix_market_file(const std::string& path) {
    auto f = open_in(path);
    try {
        return read_matrix_market(f);
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

Vector read_vector_market(std::istream& in) {
    DenseMatrix m = read_matrix_market(in);
    if (m.cols() != 1) throw ParseError("vector file must have exactly one column");
    Vector v(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) v[i] = m(i, 0);
    return v;
}

Vector read_vector_market_file(const std::string& path) {
    auto f = open_in(path);
    try {
        return read_vector_market(f);
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

void write_matrix_market(std::ostream& out, const DenseMatrix& m) {
    if (m.is_full()) {
        out << "%%MatrixMarket matrix array real general\n" << m.rows() << ' ' << m.cols() << '\n';
        for (std::size_t j = 0; j < m.cols(); ++j)
            for (std::size_t i = 0; i < m.rows(); ++i) out << fmt_double(m(i, j)) << '\n';
        return;
    }
    std::size_t nnz = 0;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = m.row_begin(i); j < m.row_end(i); ++j) nnz += m(i, j) != 0.0;
    out << "%%MatrixMarket matrix coordinate real general\n"
        << m.rows() << ' ' << m.cols() << ' ' << nnz << '\n';
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = m.row_begin(i); j < m.row_end(i); ++j)
            if (m(i, j) != 0.0) out << i + 1 << ' ' << j + 1 << ' ' << fmt_double(m(i, j)) << '\n';
}

void write_matrix_market_file(const std::string& path, const DenseMatrix& m) {
    auto f = open_out(path);
    write_matrix_market(f, m);
}

void write_vector_market(std::ostream& out, const Vector& v) {
    out << "%%MatrixMarket matrix array real general\n" << v.size() << " 1\n";
    for (double x : v) out << fmt_double(x) << '\n';
}

void write_vector_market_file(const std::string& path, const Vector& v) {
    auto f = open_out(path);
    write_vector_market(f, v);
}

}  // namespace gave
