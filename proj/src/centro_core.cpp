#include "centrolab/centro_core.hpp"

#include <cmath>
#include <utility>

#include "centrolab/errors.hpp"
#include "centrolab/random.hpp"

namespace centrolab {

EntryDist parse_dist(std::string_view tag) {
    if (tag == "gaussian") return EntryDist::gaussian;
    if (tag == "uniform") return EntryDist::uniform;
    throw ConfigError("unsupported entry distribution '" + std::string(tag) +
                      "' (expected gaussian or uniform; discrete laws lack a bounded density)");
}

std::string to_string(EntryDist dist) {
    switch (dist) {
        case EntryDist::gaussian:
            return "gaussian";
        case EntryDist::uniform:
            return "uniform";
    }
    return "unknown";
}

Matrix counter_identity(std::size_t n) {
    if (n == 0) throw InvalidDimensionError("counter_identity: order must be at least 1");
    const auto size = static_cast<Eigen::Index>(n);
    Matrix j = Matrix::Zero(size, size);
    for (Eigen::Index i = 0; i < size; ++i) j(i, size - 1 - i) = 1.0;
    return j;
}

EntryClass entry_class(std::size_t n, std::size_t i, std::size_t j) {
    if (i >= n || j >= n) {
        throw InvalidIndexError("entry_class: index (" + std::to_string(i) + "," + std::to_string(j) +
                                ") out of range for order " + std::to_string(n));
    }
    const std::size_t ri = n - 1 - i;
    const std::size_t rj = n - 1 - j;
    EntryClass cls;
    if (std::pair(i, j) <= std::pair(ri, rj)) {
        cls.row = i;
        cls.col = j;
    } else {
        cls.row = ri;
        cls.col = rj;
    }
    cls.selfPaired = (i == ri && j == rj);
    return cls;
}

std::size_t entry_class_count(std::size_t n) { return (n * n + 1) / 2; }

CentroMatrix::CentroMatrix(Matrix entries, std::uint64_t seed, EntryDist dist)
    : entries_(std::move(entries)), seed_(seed), dist_(dist) {
    if (entries_.rows() == 0) throw InvalidDimensionError("CentroMatrix: order must be at least 1");
    if (!assert_centrosymmetric(entries_, 0.0)) {
        throw InvalidInputError("CentroMatrix: entries are not centrosymmetric");
    }
}

CentroMatrix sample_centro(std::size_t n, EntryDist dist, std::uint64_t seed) {
    if (n == 0) throw InvalidDimensionError("sample_centro: order must be at least 1");
    const auto size = static_cast<Eigen::Index>(n);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    Variates rng(seed);
    Matrix m(size, size);
    // Representatives in row-major order are exactly the cells of the first
    // ceil(n^2/2) positions of the flattened array.
    const std::size_t classes = entry_class_count(n);
    double* data = m.data();
    const std::size_t cells = n * n;
    for (std::size_t flat = 0; flat < classes; ++flat) {
        const double x = dist == EntryDist::gaussian ? rng.normal() : rng.centered_uniform();
        const double value = x * scale;
        data[flat] = value;
        data[cells - 1 - flat] = value;
    }
    return CentroMatrix(std::move(m), seed, dist);
}

WeaverBlocks weaver_blocks(const CentroMatrix& cm) {
    const Matrix& m = cm.entries();
    const Eigen::Index n = m.rows();
    const Eigen::Index half = n / 2;
    const bool odd = (n % 2) != 0;
    const Eigen::Index lower = half + (odd ? 1 : 0);  // first row of the C block

    WeaverBlocks blocks;
    blocks.plus.resize(half + (odd ? 1 : 0), half + (odd ? 1 : 0));
    blocks.minus.resize(half, half);
    for (Eigen::Index i = 0; i < half; ++i) {
        // (J C)(i, j) = C(half-1-i, j)
        const Eigen::Index ci = lower + half - 1 - i;
        for (Eigen::Index j = 0; j < half; ++j) {
            const double a = m(i, j);
            const double jc = m(ci, j);
            blocks.plus(i, j) = a + jc;
            blocks.minus(i, j) = a - jc;
        }
    }
    if (odd) {
        const double root2 = std::sqrt(2.0);
        for (Eigen::Index i = 0; i < half; ++i) {
            blocks.plus(i, half) = root2 * m(i, half);  // u
            blocks.plus(half, i) = root2 * m(half, i);  // p^T
        }
        blocks.plus(half, half) = m(half, half);
    }
    return blocks;
}

Matrix weaver_transform(std::size_t n) {
    if (n == 0) throw InvalidDimensionError("weaver_transform: order must be at least 1");
    const auto size = static_cast<Eigen::Index>(n);
    const Eigen::Index half = size / 2;
    const bool odd = (size % 2) != 0;
    const Eigen::Index lower = half + (odd ? 1 : 0);
    const Eigen::Index plusOrder = half + (odd ? 1 : 0);
    const double r = 1.0 / std::sqrt(2.0);

    Matrix q = Matrix::Zero(size, size);
    for (Eigen::Index i = 0; i < half; ++i) {
        // plus column i: (1/sqrt2)(e_i + e_{reflect(i)})
        q(i, i) = r;
        q(lower + half - 1 - i, i) = r;
        // minus column: (1/sqrt2)(e_i - e_{reflect(i)})
        q(i, plusOrder + i) = r;
        q(lower + half - 1 - i, plusOrder + i) = -r;
    }
    if (odd) q(half, half) = 1.0;
    return q;
}

bool assert_centrosymmetric(const Matrix& mat, double tol) {
    if (mat.rows() != mat.cols()) return false;
    const Eigen::Index n = mat.rows();
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            const double diff = std::abs(mat(i, j) - mat(n - 1 - i, n - 1 - j));
            if (!(diff <= tol)) return false;
        }
    }
    return true;
}

}  // namespace centrolab
