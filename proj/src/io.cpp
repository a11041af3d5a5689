#include "centrolab/io.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "centrolab/errors.hpp"

namespace centrolab {

std::string format_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write_matrix_csv(std::ostream& out, const Matrix& m) {
    out << "n=" << m.rows() << '\n';
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (j > 0) out << ',';
            out << format_double(m(i, j));
        }
        out << '\n';
    }
}

Matrix read_matrix_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line.rfind("n=", 0) != 0) throw IoError("matrix CSV: missing 'n=<int>' header");
    long n = 0;
    try {
        n = std::stol(line.substr(2));
    } catch (const std::exception&) {
        throw IoError("matrix CSV: bad header '" + line + "'");
    }
    if (n <= 0) throw IoError("matrix CSV: order must be positive");
    Matrix m(n, n);
    for (long i = 0; i < n; ++i) {
        if (!std::getline(in, line)) throw IoError("matrix CSV: expected " + std::to_string(n) + " rows");
        std::stringstream row(line);
        std::string cell;
        long j = 0;
        while (std::getline(row, cell, ',')) {
            if (j >= n) throw IoError("matrix CSV: row " + std::to_string(i) + " has too many values");
            try {
                m(i, j++) = std::stod(cell);
            } catch (const std::exception&) {
                throw IoError("matrix CSV: bad value '" + cell + "'");
            }
        }
        if (j != n) throw IoError("matrix CSV: row " + std::to_string(i) + " has too few values");
    }
    return m;
}

void write_spectrum_csv(std::ostream& out, const Spectrum& spec) {
    out << "re,im\n";
    for (const Complex& v : spec.values) out << format_double(v.real()) << ',' << format_double(v.imag()) << '\n';
}

void write_text_file(const std::filesystem::path& path, const std::string& contents) {
    std::error_code ec;
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path(), ec);
        if (ec) throw IoError("cannot create directory " + path.parent_path().string() + ": " + ec.message());
    }
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) throw IoError("cannot open " + path.string() + " for writing");
    file << contents;
    file.flush();
    if (!file) throw IoError("failed writing " + path.string());
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream file(path, std::ios::binary);
    if (!file) throw IoError("cannot open " + path.string());
    std::stringstream buf;
    buf << file.rdbuf();
    return buf.str();
}

}  // namespace centrolab
