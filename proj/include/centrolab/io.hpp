#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "centrolab/eig_engine.hpp"
#include "centrolab/numeric.hpp"

namespace centrolab {

/// "n=<int>" then n rows of n comma-separated values, 17 significant digits.
void write_matrix_csv(std::ostream& out, const Matrix& m);
/// Throws IoError on malformed input.
Matrix read_matrix_csv(std::istream& in);

/// Header "re,im" then one row per eigenvalue.
void write_spectrum_csv(std::ostream& out, const Spectrum& spec);

/// Writes `contents` to `path`, creating parent directories. Throws IoError.
void write_text_file(const std::filesystem::path& path, const std::string& contents);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace centrolab
