#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

#include "centrolab/numeric.hpp"

namespace centrolab {

/// Entry laws allowed for the raw variables x. Both are continuous with a
/// bounded density, mean 0 and variance 1.
enum class EntryDist {
    gaussian,  ///< standard normal
    uniform,   ///< uniform on (-sqrt(3), sqrt(3))
};

/// Parses "gaussian" / "uniform". Anything else (including discrete laws such
/// as "rademacher") is a ConfigError.
EntryDist parse_dist(std::string_view tag);
std::string to_string(EntryDist dist);

/// Equivalence class of a cell under the reflection (i, j) -> (n-1-i, n-1-j).
struct EntryClass {
    std::size_t row = 0;  ///< representative: lexicographic minimum of the orbit
    std::size_t col = 0;
    bool selfPaired = false;  ///< only the center cell of an odd-order matrix

    friend bool operator==(const EntryClass&, const EntryClass&) = default;
};

/// Exchange matrix: ones on the anti-diagonal.
Matrix counter_identity(std::size_t n);

EntryClass entry_class(std::size_t n, std::size_t i, std::size_t j);

/// Number of distinct entry classes, ceil(n^2 / 2).
std::size_t entry_class_count(std::size_t n);

/// Dense random centrosymmetric matrix with entries x / sqrt(n). Immutable.
class CentroMatrix {
public:
    /// Wraps an existing matrix; throws InvalidInputError unless it is exactly
    /// centrosymmetric.
    CentroMatrix(Matrix entries, std::uint64_t seed, EntryDist dist);

    [[nodiscard]] std::size_t order() const { return static_cast<std::size_t>(entries_.rows()); }
    [[nodiscard]] const Matrix& entries() const { return entries_; }
    [[nodiscard]] double operator()(std::size_t i, std::size_t j) const {
        return entries_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
    [[nodiscard]] std::uint64_t seed() const { return seed_; }
    [[nodiscard]] EntryDist dist() const { return dist_; }

private:
    Matrix entries_;
    std::uint64_t seed_;
    EntryDist dist_;
};

/// One i.i.d. draw per entry class, in row-major order of the class
/// representatives, copied to both cells and scaled by 1/sqrt(n).
/// Deterministic in (n, dist, seed).
CentroMatrix sample_centro(std::size_t n, EntryDist dist, std::uint64_t seed);

/// The orthogonally similar block pair. For odd n the plus block carries the
/// extra bordered row and column.
struct WeaverBlocks {
    Matrix plus;   ///< order ceil(n/2)
    Matrix minus;  ///< order floor(n/2)
};

WeaverBlocks weaver_blocks(const CentroMatrix& m);

/// The explicit orthogonal matrix Q with Q^T M Q = diag(plus, minus).
/// Column blocks are (1/sqrt2)[I;0;J], [0;1;0] (odd n only), (1/sqrt2)[I;0;-J].
Matrix weaver_transform(std::size_t n);

/// True iff max |m(i,j) - m(n-1-i, n-1-j)| <= tol. Non-square input is false.
bool assert_centrosymmetric(const Matrix& mat, double tol);

}  // namespace centrolab
