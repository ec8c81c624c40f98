#include "gapcert/mmio.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace gapcert {

namespace {

[[noreturn]] void fail(const std::string& path, int line, const std::string& msg) {
    throw ParseError(path + ":" + std::to_string(line) + ": " + msg);
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

bool next_content_line(std::istream& in, std::string& out, int& lineno) {
    while (std::getline(in, out)) {
        ++lineno;
        const auto pos = out.find_first_not_of(" \t\r");
        if (pos == std::string::npos) continue;
        if (out[pos] == '%') continue;
        return true;
    }
    return false;
}

double parse_value(const std::string& tok, const std::string& path, int line) {
    try {
        std::size_t used = 0;
        const double v = std::stod(tok, &used);
        if (used != tok.size()) fail(path, line, "malformed number '" + tok + "'");
        return v;
    } catch (const std::exception&) {
        fail(path, line, "malformed number '" + tok + "'");
    }
}

}  // namespace

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

Matrix read_matrix_market(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path + ": cannot open file");
    int lineno = 0;

    std::string banner;
    if (!std::getline(in, banner)) fail(path, 1, "empty file");
    ++lineno;
    std::istringstream bs(banner);
    std::string tag, object, format, field, symmetry;
    bs >> tag >> object >> format >> field >> symmetry;
    if (tag != "%%MatrixMarket" || lower(object) != "matrix")
        fail(path, 1, "not a MatrixMarket matrix file");
    format = lower(format);
    field = lower(field);
    symmetry = lower(symmetry);
    if (format != "array" && format != "coordinate")
        fail(path, 1, "unsupported format '" + format + "'");
    if (field != "real" && field != "integer")
        fail(path, 1, "unsupported field '" + field + "'");
    if (symmetry != "general" && symmetry != "symmetric")
        fail(path, 1, "unsupported symmetry '" + symmetry + "'");

    std::string line;
    if (!next_content_line(in, line, lineno)) fail(path, lineno, "missing size line");
    std::istringstream sz(line);
    long rows = 0, cols = 0, nnz = 0;
    if (!(sz >> rows >> cols)) fail(path, lineno, "malformed size line");
    if (rows <= 0 || cols <= 0) fail(path, lineno, "dimensions must be positive");
    if (symmetry == "symmetric" && rows != cols)
        fail(path, lineno, "symmetric matrix must be square");

    Matrix m = Matrix::Zero(rows, cols);
    if (format == "array") {
        auto read_entry = [&](long i, long j) {
            if (!next_content_line(in, line, lineno))
                fail(path, lineno, "unexpected end of file in array data");
            std::istringstream vs(line);
            std::string tok;
            if (!(vs >> tok)) fail(path, lineno, "missing value");
            m(i, j) = parse_value(tok, path, lineno);
        };
        if (symmetry == "general") {
            for (long j = 0; j < cols; ++j)
                for (long i = 0; i < rows; ++i) read_entry(i, j);
        } else {
            for (long j = 0; j < cols; ++j)
                for (long i = j; i < rows; ++i) {
                    read_entry(i, j);
                    m(j, i) = m(i, j);
                }
        }
    } else {
        if (!(sz >> nnz)) fail(path, lineno, "coordinate size line needs an entry count");
        for (long e = 0; e < nnz; ++e) {
            if (!next_content_line(in, line, lineno))
                fail(path, lineno, "unexpected end of file in coordinate data");
            std::istringstream vs(line);
            long i = 0, j = 0;
            std::string tok;
            if (!(vs >> i >> j >> tok)) fail(path, lineno, "malformed coordinate entry");
            if (i < 1 || i > rows || j < 1 || j > cols)
                fail(path, lineno, "coordinate indices out of range");
            const double v = parse_value(tok, path, lineno);
            m(i - 1, j - 1) = v;
            if (symmetry == "symmetric") m(j - 1, i - 1) = v;
        }
    }
    return m;
}

void write_matrix_market_symmetric(const std::string& path, const Matrix& m) {
    if (m.rows() != m.cols())
        throw DimensionMismatch("write_matrix_market_symmetric: matrix must be square");
    std::ofstream out(path);
    if (!out) throw ParseError(path + ": cannot open file for writing");
    out << "%%MatrixMarket matrix array real symmetric\n";
    out << m.rows() << " " << m.cols() << "\n";
    for (Eigen::Index j = 0; j < m.cols(); ++j)
        for (Eigen::Index i = j; i < m.rows(); ++i) out << format_double(m(i, j)) << "\n";
}

void write_matrix_market_general(const std::string& path, const Matrix& m) {
    std::ofstream out(path);
    if (!out) throw ParseError(path + ": cannot open file for writing");
    out << "%%MatrixMarket matrix array real general\n";
    out << m.rows() << " " << m.cols() << "\n";
    for (Eigen::Index j = 0; j < m.cols(); ++j)
        for (Eigen::Index i = 0; i < m.rows(); ++i) out << format_double(m(i, j)) << "\n";
}

}  // namespace gapcert
