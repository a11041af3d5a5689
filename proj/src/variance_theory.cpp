#include "centrolab/variance_theory.hpp"

#include <cmath>
#include <numbers>

#include "centrolab/errors.hpp"

namespace centrolab {

namespace {

constexpr double kPoleGuard = 1e-9;

// Orientation of both circles. Calibrated once so that the diagonal kernel
// reproduces the closed form on f(z) = z (+2 rather than -2), then frozen.
constexpr double kOrientation = 1.0;

void guard(bool tooClose, const char* what) {
    if (tooClose) throw SingularityError(std::string("kernel_eval: argument within 1e-9 of the pole ") + what);
}

}  // namespace

std::string to_string(KernelVariant variant) {
    return variant == KernelVariant::fullKernel ? "fullKernel" : "diagonalKernel";
}

KernelVariant parse_kernel_variant(std::string_view tag) {
    if (tag == "fullKernel") return KernelVariant::fullKernel;
    if (tag == "diagonalKernel") return KernelVariant::diagonalKernel;
    throw ConfigError("unknown kernel variant '" + std::string(tag) + "'");
}

double closed_form_variance(const Polynomial& f) {
    if (f.degree() == 0) throw DegenerateInputError("closed_form_variance: constant f does not fluctuate (variance 0)");
    double v = 0.0;
    for (std::size_t k = 1; k <= f.degree(); ++k) v += 2.0 * static_cast<double>(k) * std::norm(f.coeff(k));
    return v;
}

Complex kernel_eval(Complex z, Complex etaBar, KernelVariant variant) {
    const Complex w = z * etaBar;
    guard(std::abs(w - 1.0) < kPoleGuard, "z*etaBar = 1");
    guard(std::abs(w + 1.0) < kPoleGuard, "z*etaBar = -1");
    guard(std::abs(std::abs(w) - 1.0) < kPoleGuard, "|z*etaBar| = 1");
    const Complex one(1.0, 0.0);
    const Complex diagonal = 2.0 / ((one - w) * (one - w));
    if (variant == KernelVariant::diagonalKernel) return diagonal;

    guard(std::abs(w) < kPoleGuard, "z*etaBar = 0");
    guard(std::abs(z - 1.0) < kPoleGuard, "z = 1");
    guard(std::abs(etaBar - 1.0) < kPoleGuard, "etaBar = 1");
    const Complex even = 4.0 / (w * (w * w - one));
    const Complex cross = 4.0 * (one / (w * (z - one) * (etaBar - one)) - one / (w * (w - one)));
    return diagonal + even + cross;
}

QuadratureResult contour_variance(const Polynomial& f, KernelVariant variant, double radius, int nodes) {
    if (!(radius > 1.0)) {
        throw ConfigError("contour_variance: radius must exceed 1 (the resolvent series diverge on |z eta| <= 1)");
    }
    if (nodes < 1) throw ConfigError("contour_variance: node count must be positive");

    QuadratureResult result;
    result.variant = variant;
    result.radius = radius;
    result.nodes = nodes;
    const auto minimum = 4 * (static_cast<long>(f.degree()) + 1);
    if (nodes < minimum) {
        result.warnings.push_back("accuracy: " + std::to_string(nodes) + " nodes is below 4(d+1) = " +
                                  std::to_string(minimum));
    }

    const Polynomial g = f.conjugate();
    const auto count = static_cast<std::size_t>(nodes);
    std::vector<Complex> points(count);
    std::vector<Complex> fz(count);
    std::vector<Complex> ge(count);
    for (std::size_t a = 0; a < count; ++a) {
        const double theta = 2.0 * std::numbers::pi * static_cast<double>(a) / static_cast<double>(nodes);
        points[a] = std::polar(radius, theta);
        // dz = i z dtheta on both circles; the i^2 cancels the leading minus.
        fz[a] = points[a] * f(points[a]);
        ge[a] = points[a] * g(points[a]);
    }
    ComplexCompensatedSum acc;
    for (std::size_t a = 0; a < count; ++a) {
        for (std::size_t b = 0; b < count; ++b) {
            acc += fz[a] * ge[b] * kernel_eval(points[a], points[b], variant);
        }
    }
    const double scale = kOrientation / (static_cast<double>(nodes) * static_cast<double>(nodes));
    result.value = acc.value() * scale;
    return result;
}

VarianceReport variance_report(const Polynomial& f, double radius, int nodes) {
    VarianceReport report;
    report.f = f;
    report.closedForm = closed_form_variance(f);
    for (KernelVariant v : {KernelVariant::diagonalKernel, KernelVariant::fullKernel}) {
        report.quadrature.push_back(contour_variance(f, v, radius, nodes));
        report.discrepancy.push_back(std::abs(report.quadrature.back().value - report.closedForm));
    }
    return report;
}

SeriesPartialSum resolvent_series_check(int kMax, Complex z, Complex etaBar) {
    if (kMax < 2) throw ConfigError("resolvent_series_check: kMax must be at least 2");
    if (!(std::abs(z) > 1.0) || !(std::abs(etaBar) > 1.0)) {
        throw ConfigError("resolvent_series_check: requires |z| > 1 and |etaBar| > 1");
    }
    const Complex w = z * etaBar;
    const Complex wInv = 1.0 / w;
    const Complex zInv = 1.0 / z;
    const Complex eInv = 1.0 / etaBar;

    ComplexCompensatedSum diag;
    ComplexCompensatedSum even;
    ComplexCompensatedSum sameIndex;
    ComplexCompensatedSum zSeries;
    ComplexCompensatedSum eSeries;
    Complex wPow = wInv;  // w^{-k-1}, starting at k = 0
    Complex zPow = zInv;
    Complex ePow = eInv;
    for (int k = 1; k <= kMax; ++k) {
        wPow *= wInv;
        zPow *= zInv;
        ePow *= eInv;
        diag += 2.0 * static_cast<double>(k) * wPow;
        if (k % 2 == 0) even += 4.0 * wPow;
        sameIndex += wPow;
        zSeries += zPow;
        eSeries += ePow;
    }

    SeriesPartialSum out;
    out.diagonal = diag.value();
    out.full = diag.value() + even.value() + 4.0 * (zSeries.value() * eSeries.value() - sameIndex.value());

    const double a = 1.0 / std::abs(w);
    const double b = 1.0 / std::abs(z);
    const double c = 1.0 / std::abs(etaBar);
    const double K = kMax;
    // 2 sum_{k>K} k a^{k+1}
    const double diagTail = 2.0 * std::pow(a, K + 2.0) * ((K + 1.0) - K * a) / ((1.0 - a) * (1.0 - a));
    // 4 sum_{even k>K} a^{k+1}
    const double firstEven = (kMax % 2 == 0) ? K + 2.0 : K + 1.0;
    const double evenTail = 4.0 * std::pow(a, firstEven + 1.0) / (1.0 - a * a);
    // 4 sum over k != l with max(k, l) > K of b^{k+1} c^{l+1}
    const double sb = b * b / (1.0 - b);
    const double sc = c * c / (1.0 - c);
    const double tb = std::pow(b, K + 2.0) / (1.0 - b);
    const double tc = std::pow(c, K + 2.0) / (1.0 - c);
    const double crossTail = 4.0 * (tb * sc + (sb - tb) * tc);
    out.diagonalTailBound = diagTail;
    out.fullTailBound = diagTail + evenTail + crossTail;
    return out;
}

}  // namespace centrolab
