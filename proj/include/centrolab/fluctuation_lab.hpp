#pragma once

#include <cstdint>
#include <functional>
#include <ostream>
#include <span>
#include <vector>

#include "centrolab/centro_core.hpp"
#include "centrolab/eig_engine.hpp"
#include "centrolab/numeric.hpp"
#include "centrolab/polynomial.hpp"

namespace centrolab {

/// Normality gate on the KS statistic of standardized CLT samples.
inline constexpr double kKsThreshold = 0.08;

/// Tr(M^1) .. Tr(M^kMax) of a centrosymmetric matrix, evaluated on its
/// Weaver blocks: Tr(M^k) = Tr(plus^k) + Tr(minus^k).
std::vector<double> centro_trace_powers(const CentroMatrix& m, int kMax);

/// L_n(f) = sum_k a_k Tr(M^k) + a_0 n, through the trace path only.
Complex les_polynomial(const CentroMatrix& m, const Polynomial& f);
Complex les_polynomial(const Matrix& m, const Polynomial& f);

/// L_n(f) = sum_i f(lambda_i). Throws DiagnosticError on an unconverged spectrum.
Complex les_analytic(const Spectrum& spec, const std::function<Complex(Complex)>& f);

/// Sup distance between the empirical CDF of the standardized samples (sample
/// mean, unbiased standard deviation) and the standard normal CDF.
/// Throws DiagnosticError for fewer than two samples or zero variance.
double ks_statistic(std::span<const double> samples);

struct CltReport {
    std::size_t n = 0;
    std::size_t trials = 0;
    Polynomial f;
    EntryDist dist = EntryDist::gaussian;
    std::uint64_t seed = 0;
    std::vector<Complex> samples;  ///< L_n(f) minus the across-trial mean, trial order
    double empiricalVariance = 0.0;  ///< unbiased estimate of E|L - EL|^2
    double varianceReal = 0.0;
    double varianceImag = 0.0;
    double theoreticalVariance = 0.0;
    double ksStatistic = 0.0;  ///< on the real parts
    double runtimeSeconds = 0.0;
};

/// Monte Carlo CLT run. Trial t samples with seed trial_seed(masterSeed, t);
/// per-trial values are collected by index and reduced in index order, so the
/// report is bit-identical for any worker count.
/// Throws ConfigError when trials < 2 or f has degree 0.
CltReport run_clt(std::size_t n, std::size_t trials, const Polynomial& f, EntryDist dist,
                  std::uint64_t masterSeed, std::size_t threads = 0);

/// One Monte Carlo moment estimate against its asymptotic target.
struct MomentRow {
    int k = 0;
    int l = 0;  ///< 0 for single traces E[Tr M^k]
    double estimate = 0.0;
    double standardError = 0.0;
    double target = 0.0;
    double zScore = 0.0;
};

struct MomentReport {
    std::size_t n = 0;
    std::size_t trials = 0;
    EntryDist dist = EntryDist::gaussian;
    std::uint64_t seed = 0;
    std::vector<MomentRow> rows;  ///< singles first, then pairs with k <= l
    double runtimeSeconds = 0.0;

    [[nodiscard]] const MomentRow& single(int k) const;
    [[nodiscard]] const MomentRow& pair(int k, int l) const;
};

/// Limit of E[Tr M^k]: 2 for even k, 0 for odd k.
double single_trace_target(int k);
/// Limit of E[Tr M^k Tr M^l]: 2k+4 / 2k on the diagonal, 4 for distinct even
/// powers, 0 otherwise.
double double_trace_target(int k, int l);

/// Estimates E[Tr M^k] (k <= kMax) and E[Tr M^k Tr M^l] (k <= l <= kMax).
/// Throws ConfigError when kMax < 2 or trials < 2.
MomentReport moment_suite(std::size_t n, std::size_t trials, int kMax, EntryDist dist, std::uint64_t masterSeed,
                          std::size_t threads = 0);

struct HistogramBin {
    double left = 0.0;
    double right = 0.0;
    std::size_t count = 0;
};

/// Freedman-Diaconis bins (width 2 IQR / T^{1/3}); a single bin when the IQR
/// or the range is zero.
std::vector<HistogramBin> histogram(std::span<const double> samples);

void write_histogram_csv(std::ostream& out, std::span<const HistogramBin> bins);

}  // namespace centrolab
