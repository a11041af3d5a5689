#include "centrolab/fluctuation_lab.hpp"

#include <algorithm>
#include <chrono>
#include <numbers>
#include <cmath>

#include "centrolab/errors.hpp"
#include "centrolab/parallel.hpp"
#include "centrolab/random.hpp"
#include "centrolab/variance_theory.hpp"

namespace centrolab {

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

double standard_normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

// Linear-interpolation quantile of sorted data (Hyndman-Fan type 7).
double quantile(std::span<const double> sorted, double p) {
    const double pos = p * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

struct MeanSd {
    double mean = 0.0;
    double sd = 0.0;
};

MeanSd mean_sd(std::span<const double> xs) {
    CompensatedSum sum;
    for (double x : xs) sum += x;
    const double mean = sum.value() / static_cast<double>(xs.size());
    CompensatedSum sq;
    for (double x : xs) sq += (x - mean) * (x - mean);
    const double var = xs.size() > 1 ? sq.value() / static_cast<double>(xs.size() - 1) : 0.0;
    return {mean, std::sqrt(var)};
}

}  // namespace

std::vector<double> centro_trace_powers(const CentroMatrix& m, int kMax) {
    const WeaverBlocks blocks = weaver_blocks(m);
    std::vector<double> traces = trace_powers(blocks.plus, kMax);
    if (blocks.minus.rows() > 0) {
        const std::vector<double> other = trace_powers(blocks.minus, kMax);
        for (std::size_t i = 0; i < traces.size(); ++i) traces[i] += other[i];
    }
    return traces;
}

namespace {

Complex assemble(const Polynomial& f, std::span<const double> traces, std::size_t n) {
    Complex value = f.coeff(0) * static_cast<double>(n);
    for (std::size_t k = 1; k <= f.degree(); ++k) value += f.coeff(k) * traces[k - 1];
    return value;
}

}  // namespace

Complex les_polynomial(const CentroMatrix& m, const Polynomial& f) {
    if (f.degree() == 0) return f.coeff(0) * static_cast<double>(m.order());
    return assemble(f, centro_trace_powers(m, static_cast<int>(f.degree())), m.order());
}

Complex les_polynomial(const Matrix& m, const Polynomial& f) {
    const auto n = static_cast<std::size_t>(m.rows());
    if (f.degree() == 0) return f.coeff(0) * static_cast<double>(n);
    return assemble(f, trace_powers(m, static_cast<int>(f.degree())), n);
}

Complex les_analytic(const Spectrum& spec, const std::function<Complex(Complex)>& f) {
    if (!spec.converged) throw DiagnosticError("les_analytic: spectrum did not converge");
    ComplexCompensatedSum acc;
    for (const Complex& lambda : spec.values) acc += f(lambda);
    return acc.value();
}

double ks_statistic(std::span<const double> samples) {
    if (samples.size() < 2) throw DiagnosticError("ks_statistic: need at least two samples");
    const MeanSd stats = mean_sd(samples);
    if (!(stats.sd > 0.0)) throw DiagnosticError("ks_statistic: samples have zero variance");
    std::vector<double> z(samples.begin(), samples.end());
    for (double& v : z) v = (v - stats.mean) / stats.sd;
    std::sort(z.begin(), z.end());
    const double total = static_cast<double>(z.size());
    double sup = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i) {
        const double cdf = standard_normal_cdf(z[i]);
        sup = std::max(sup, static_cast<double>(i + 1) / total - cdf);
        sup = std::max(sup, cdf - static_cast<double>(i) / total);
    }
    return sup;
}

CltReport run_clt(std::size_t n, std::size_t trials, const Polynomial& f, EntryDist dist, std::uint64_t masterSeed,
                  std::size_t threads) {
    if (trials < 2) throw ConfigError("run_clt: at least two trials are required");
    if (n == 0) throw InvalidDimensionError("run_clt: order must be at least 1");
    if (f.degree() == 0) throw ConfigError("run_clt: f must have degree at least 1");
    const auto start = std::chrono::steady_clock::now();

    std::vector<Complex> values(trials);
    parallel_for(trials, resolve_threads(threads), [&](std::size_t t) {
        const CentroMatrix m = sample_centro(n, dist, trial_seed(masterSeed, t));
        values[t] = les_polynomial(m, f);
    });

    ComplexCompensatedSum total;
    for (const Complex& v : values) total += v;
    const Complex mean = total.value() / static_cast<double>(trials);

    CltReport report;
    report.n = n;
    report.trials = trials;
    report.f = f;
    report.dist = dist;
    report.seed = masterSeed;
    report.samples.reserve(trials);
    CompensatedSum re2;
    CompensatedSum im2;
    std::vector<double> real(trials);
    for (std::size_t t = 0; t < trials; ++t) {
        const Complex centered = values[t] - mean;
        report.samples.push_back(centered);
        real[t] = centered.real();
        re2 += centered.real() * centered.real();
        im2 += centered.imag() * centered.imag();
    }
    const double dof = static_cast<double>(trials - 1);
    report.varianceReal = re2.value() / dof;
    report.varianceImag = im2.value() / dof;
    report.empiricalVariance = report.varianceReal + report.varianceImag;
    report.theoreticalVariance = closed_form_variance(f);
    report.ksStatistic = ks_statistic(real);
    report.runtimeSeconds = seconds_since(start);
    return report;
}

double single_trace_target(int k) { return k % 2 == 0 ? 2.0 : 0.0; }

double double_trace_target(int k, int l) {
    if (k == l) return k % 2 == 0 ? 2.0 * k + 4.0 : 2.0 * k;
    if (k % 2 == 0 && l % 2 == 0) return 4.0;
    return 0.0;
}

const MomentRow& MomentReport::single(int k) const {
    for (const auto& row : rows) {
        if (row.l == 0 && row.k == k) return row;
    }
    throw InvalidInputError("MomentReport: no single-trace row for k=" + std::to_string(k));
}

const MomentRow& MomentReport::pair(int k, int l) const {
    if (k > l) std::swap(k, l);
    for (const auto& row : rows) {
        if (row.l != 0 && row.k == k && row.l == l) return row;
    }
    throw InvalidInputError("MomentReport: no pair row for (" + std::to_string(k) + "," + std::to_string(l) + ")");
}

MomentReport moment_suite(std::size_t n, std::size_t trials, int kMax, EntryDist dist, std::uint64_t masterSeed,
                          std::size_t threads) {
    if (kMax < 2) throw ConfigError("moment_suite: kmax must be at least 2");
    if (trials < 2) throw ConfigError("moment_suite: at least two trials are required");
    if (n == 0) throw InvalidDimensionError("moment_suite: order must be at least 1");
    const auto start = std::chrono::steady_clock::now();

    std::vector<std::vector<double>> traces(trials);
    parallel_for(trials, resolve_threads(threads), [&](std::size_t t) {
        traces[t] = centro_trace_powers(sample_centro(n, dist, trial_seed(masterSeed, t)), kMax);
    });

    MomentReport report;
    report.n = n;
    report.trials = trials;
    report.dist = dist;
    report.seed = masterSeed;
    const double root = std::sqrt(static_cast<double>(trials));
    auto add_row = [&](int k, int l, const std::vector<double>& xs, double target) {
        const MeanSd stats = mean_sd(xs);
        MomentRow row;
        row.k = k;
        row.l = l;
        row.estimate = stats.mean;
        row.standardError = stats.sd / root;
        row.target = target;
        row.zScore = row.standardError > 0.0 ? (row.estimate - target) / row.standardError : 0.0;
        report.rows.push_back(row);
    };
    std::vector<double> xs(trials);
    for (int k = 1; k <= kMax; ++k) {
        for (std::size_t t = 0; t < trials; ++t) xs[t] = traces[t][static_cast<std::size_t>(k - 1)];
        add_row(k, 0, xs, single_trace_target(k));
    }
    for (int k = 1; k <= kMax; ++k) {
        for (int l = k; l <= kMax; ++l) {
            for (std::size_t t = 0; t < trials; ++t) {
                xs[t] = traces[t][static_cast<std::size_t>(k - 1)] * traces[t][static_cast<std::size_t>(l - 1)];
            }
            add_row(k, l, xs, double_trace_target(k, l));
        }
    }
    report.runtimeSeconds = seconds_since(start);
    return report;
}

std::vector<HistogramBin> histogram(std::span<const double> samples) {
    if (samples.empty()) return {};
    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    const double lo = sorted.front();
    const double hi = sorted.back();
    const double iqr = quantile(sorted, 0.75) - quantile(sorted, 0.25);
    const double width = 2.0 * iqr / std::cbrt(static_cast<double>(sorted.size()));
    std::size_t bins = 1;
    if (width > 0.0 && hi > lo) bins = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil((hi - lo) / width)));
    const double step = bins == 1 ? (hi - lo) : (hi - lo) / static_cast<double>(bins);

    std::vector<HistogramBin> out(bins);
    for (std::size_t b = 0; b < bins; ++b) {
        out[b].left = lo + step * static_cast<double>(b);
        out[b].right = b + 1 == bins ? hi : lo + step * static_cast<double>(b + 1);
    }
    for (double x : sorted) {
        std::size_t b = step > 0.0 ? static_cast<std::size_t>((x - lo) / step) : 0;
        b = std::min(b, bins - 1);
        ++out[b].count;
    }
    return out;
}

void write_histogram_csv(std::ostream& out, std::span<const HistogramBin> bins) {
    out << "bin_left,bin_right,count\n";
    for (const auto& bin : bins) {
        out << format_double(bin.left) << ',' << format_double(bin.right) << ',' << bin.count << '\n';
    }
}

}  // namespace centrolab
