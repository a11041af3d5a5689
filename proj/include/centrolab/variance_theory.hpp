#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "centrolab/numeric.hpp"
#include "centrolab/polynomial.hpp"

namespace centrolab {

/// Covariance kernels for the centered resolvent traces.
///
/// fullKernel is the complete kernel
///   2 (1 - w)^-2 + 4 / (w (w^2 - 1)) + 4 (1 / (w (z - 1)(e - 1)) - 1 / (w (w - 1))),  w = z e,
/// diagonalKernel keeps only 2 (1 - w)^-2, the part generated by Var(Tr M^k) = 2k.
enum class KernelVariant { fullKernel, diagonalKernel };

std::string to_string(KernelVariant variant);
KernelVariant parse_kernel_variant(std::string_view tag);

/// Sum_{k>=1} 2k |a_k|^2. Throws DegenerateInputError for degree 0.
double closed_form_variance(const Polynomial& f);

/// Pointwise kernel value. Throws SingularityError within 1e-9 of an excluded
/// point: z etaBar in {0, +1, -1} or |z etaBar| = 1 (both variants), and
/// z = 1 or etaBar = 1 (fullKernel).
Complex kernel_eval(Complex z, Complex etaBar, KernelVariant variant);

struct QuadratureResult {
    KernelVariant variant = KernelVariant::diagonalKernel;
    double radius = 0.0;
    int nodes = 0;
    Complex value;
    std::vector<std::string> warnings;
};

/// Double trapezoidal rule on two circles of the given radius, `nodes` points
/// each:
///   V = -(1/4 pi^2) oint oint f(z) conj(f)(etaBar) K(z, etaBar) dz detaBar
/// with both circles traversed counterclockwise. conj(f) has conjugated
/// coefficients, which makes the diagonal kernel reproduce sum 2k |a_k|^2 for
/// complex f and coincides with f for real f. Throws ConfigError for
/// radius <= 1 or nodes < 1; fewer than 4 (d+1) nodes adds a warning.
QuadratureResult contour_variance(const Polynomial& f, KernelVariant variant, double radius, int nodes);

struct VarianceReport {
    Polynomial f;
    double closedForm = 0.0;
    std::vector<QuadratureResult> quadrature;  ///< one per variant
    std::vector<double> discrepancy;           ///< |quadrature - closedForm|, same order
};

VarianceReport variance_report(const Polynomial& f, double radius, int nodes);

/// Partial sums (k, l <= kMax) of the resolvent covariance series
///   2 sum k w^{-k-1} + 4 sum_{k even} w^{-k-1} + 4 sum_{k != l} z^{-k-1} etaBar^{-l-1},
/// with analytic bounds on the omitted tails.
struct SeriesPartialSum {
    Complex full;          ///< all three series; converges to fullKernel
    Complex diagonal;      ///< first series only; converges to diagonalKernel
    double fullTailBound = 0.0;
    double diagonalTailBound = 0.0;
};

/// Requires |z| > 1, |etaBar| > 1 and kMax >= 2 (ConfigError otherwise).
SeriesPartialSum resolvent_series_check(int kMax, Complex z, Complex etaBar);

}  // namespace centrolab
