#include "dgsor/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "dgsor/error.hpp"

namespace dgsor::mm {

namespace {

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
}

[[noreturn]] void parse_error(std::size_t line, const std::string& what) {
    throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + what);
}

std::vector<std::string> tokens(const std::string& line) {
    std::istringstream in(line);
    std::vector<std::string> out;
    for (std::string t; in >> t;) out.push_back(t);
    return out;
}

double parse_real(const std::string& token, std::size_t line) {
    double value = 0.0;
    const char* first = token.data();
    const char* last = token.data() + token.size();
    if (*first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) parse_error(line, "bad numeric value '" + token + "'");
    if (!std::isfinite(value)) parse_error(line, "non-finite value '" + token + "'");
    return value;
}

std::size_t parse_count(const std::string& token, std::size_t line) {
    std::size_t value = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size()) {
        parse_error(line, "bad integer '" + token + "'");
    }
    return value;
}

// Reads the next non-comment, non-blank line.
bool next_data_line(std::istream& in, std::string& line, std::size_t& line_no) {
    while (std::getline(in, line)) {
        ++line_no;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '%') continue;
        return true;
    }
    return false;
}

std::string format_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

bool exactly_symmetric(const DenseMatrix& m) {
    if (!m.is_square()) return false;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (m(i, j) != m(j, i)) return false;
    return true;
}

} // namespace

DenseMatrix read_matrix(std::istream& in) {
    std::size_t line_no = 0;
    std::string line;
    if (!std::getline(in, line)) parse_error(1, "empty input");
    ++line_no;

    const auto header = tokens(line);
    if (header.size() != 5 || lower(header[0]) != "%%matrixmarket") {
        parse_error(line_no, "expected '%%MatrixMarket matrix <format> <field> <symmetry>'");
    }
    if (lower(header[1]) != "matrix") parse_error(line_no, "unsupported object '" + header[1] + "'");
    const std::string format = lower(header[2]);
    const std::string field = lower(header[3]);
    const std::string symmetry = lower(header[4]);
    if (format != "coordinate" && format != "array") parse_error(line_no, "unknown format '" + header[2] + "'");
    if (field == "complex" || field == "pattern") {
        throw Error(ErrorCode::UnsupportedField, "line " + std::to_string(line_no) + ": field '" + header[3] + "'");
    }
    if (field != "real" && field != "integer" && field != "double") {
        parse_error(line_no, "unknown field '" + header[3] + "'");
    }
    if (symmetry != "general" && symmetry != "symmetric") {
        throw Error(ErrorCode::UnsupportedField,
                    "line " + std::to_string(line_no) + ": symmetry '" + header[4] + "'");
    }
    const bool symmetric = symmetry == "symmetric";
    const bool coordinate = format == "coordinate";

    if (!next_data_line(in, line, line_no)) parse_error(line_no, "missing size line");
    const auto size = tokens(line);
    if (size.size() != (coordinate ? 3u : 2u)) parse_error(line_no, "malformed size line");
    const std::size_t rows = parse_count(size[0], line_no);
    const std::size_t cols = parse_count(size[1], line_no);
    if (symmetric && rows != cols) parse_error(line_no, "symmetric matrix must be square");

    DenseMatrix m(rows, cols);
    if (coordinate) {
        const std::size_t nnz = parse_count(size[2], line_no);
        for (std::size_t k = 0; k < nnz; ++k) {
            if (!next_data_line(in, line, line_no)) {
                parse_error(line_no, "expected " + std::to_string(nnz) + " entries, found " + std::to_string(k));
            }
            const auto t = tokens(line);
            if (t.size() != 3) parse_error(line_no, "expected 'row col value'");
            const std::size_t i = parse_count(t[0], line_no);
            const std::size_t j = parse_count(t[1], line_no);
            if (i < 1 || i > rows || j < 1 || j > cols) parse_error(line_no, "index out of range");
            const double v = parse_real(t[2], line_no);
            m(i - 1, j - 1) += v;
            if (symmetric && i != j) m(j - 1, i - 1) += v;
        }
    } else {
        // Column-major; symmetric arrays store the lower triangle only.
        for (std::size_t j = 0; j < cols; ++j) {
            for (std::size_t i = symmetric ? j : 0; i < rows; ++i) {
                if (!next_data_line(in, line, line_no)) parse_error(line_no, "too few array entries");
                const auto t = tokens(line);
                if (t.size() != 1) parse_error(line_no, "expected one value per line");
                const double v = parse_real(t[0], line_no);
                m(i, j) = v;
                if (symmetric) m(j, i) = v;
            }
        }
    }
    if (next_data_line(in, line, line_no)) parse_error(line_no, "unexpected trailing data");
    return m;
}

DenseMatrix load_matrix(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::Io, "cannot open '" + path.string() + "'");
    try {
        return read_matrix(in);
    } catch (const Error& e) {
        throw Error(e.code(), path.string() + ": " + e.what());
    }
}

Vector read_vector(std::istream& in) {
    const DenseMatrix m = read_matrix(in);
    if (m.cols() != 1 && m.rows() != 1) {
        throw Error(ErrorCode::DimensionMismatch, "vector file must have a single row or column, got " +
                                                      std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    }
    return Vector(m.entries());
}

Vector load_vector(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::Io, "cannot open '" + path.string() + "'");
    try {
        return read_vector(in);
    } catch (const Error& e) {
        throw Error(e.code(), path.string() + ": " + e.what());
    }
}

void write_matrix(std::ostream& out, const DenseMatrix& m) {
    const bool symmetric = exactly_symmetric(m);
    std::vector<std::string> lines;
    for (std::size_t j = 0; j < m.cols(); ++j) {
        for (std::size_t i = symmetric ? j : 0; i < m.rows(); ++i) {
            if (m(i, j) == 0.0) continue;
            lines.push_back(std::to_string(i + 1) + " " + std::to_string(j + 1) + " " + format_real(m(i, j)));
        }
    }
    out << "%%MatrixMarket matrix coordinate real " << (symmetric ? "symmetric" : "general") << '\n';
    out << m.rows() << ' ' << m.cols() << ' ' << lines.size() << '\n';
    for (const auto& l : lines) out << l << '\n';
}

void save_matrix(const std::filesystem::path& path, const DenseMatrix& m) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::Io, "cannot write '" + path.string() + "'");
    write_matrix(out, m);
    if (!out) throw Error(ErrorCode::Io, "write failed for '" + path.string() + "'");
}

void write_vector(std::ostream& out, const Vector& v) {
    out << "%%MatrixMarket matrix array real general\n";
    out << v.size() << " 1\n";
    for (double x : v) out << format_real(x) << '\n';
}

void save_vector(const std::filesystem::path& path, const Vector& v) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::Io, "cannot write '" + path.string() + "'");
    write_vector(out, v);
    if (!out) throw Error(ErrorCode::Io, "write failed for '" + path.string() + "'");
}

} // namespace dgsor::mm
