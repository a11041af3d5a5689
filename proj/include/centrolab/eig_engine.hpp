#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "centrolab/numeric.hpp"

namespace centrolab {

/// Eigenvalue multiset of a real square matrix plus solver diagnostics.
struct Spectrum {
    std::vector<Complex> values;
    std::size_t iterations = 0;  ///< total QR sweeps
    bool converged = true;
};

/// Budget value meaning "30 * n".
inline constexpr std::size_t kDefaultSweeps = 0;

/// Diagonal similarity by powers of two that equalizes row and column norms.
/// Returns the balanced copy; eigenvalues are unchanged exactly.
Matrix balance(Matrix a);

/// Upper Hessenberg form by Householder orthogonal similarity.
Matrix hessenberg(Matrix a);

/// All eigenvalues of a real square matrix: balancing, Hessenberg reduction and
/// Francis implicit double-shift QR with deflation. `maxSweeps` is the total
/// sweep budget across the whole reduction (kDefaultSweeps selects 30 n). On
/// budget exhaustion the returned spectrum has converged == false and the
/// undeflated positions hold the current diagonal entries.
/// Throws InvalidInputError for empty, non-square or non-finite input.
Spectrum eigenvalues(const Matrix& mat, std::size_t maxSweeps = kDefaultSweeps);

/// Tr(mat^k) by repeated multiplication; no eigensolver involved.
double trace_power(const Matrix& mat, int k);

/// Tr(mat^1) .. Tr(mat^kMax). Only powers up to ceil(kMax/2) are formed;
/// higher traces use Tr(A B) = sum_ij A_ij B_ji.
std::vector<double> trace_powers(const Matrix& mat, int kMax);

/// Fraction of eigenvalues with |lambda| <= r, for each radius in the grid.
std::vector<double> spectral_radial_cdf(const Spectrum& spec, std::span<const double> grid);

/// Minimal-cost (sum of |a_i - b_pi(i)|) perfect matching between two
/// multisets of equal size, solved exactly with the Hungarian algorithm.
/// Returns the largest pairwise distance of the optimal matching.
double matched_distance(std::span<const Complex> a, std::span<const Complex> b);

}  // namespace centrolab
