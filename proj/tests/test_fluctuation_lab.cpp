#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "centrolab/centro_core.hpp"
#include "centrolab/eig_engine.hpp"
#include "centrolab/errors.hpp"
#include "centrolab/fluctuation_lab.hpp"
#include "centrolab/random.hpp"

using namespace centrolab;

namespace {

Polynomial real_poly(std::vector<double> c) { return Polynomial(std::span<const double>(c)); }

std::vector<double> real_parts(const std::vector<Complex>& v) {
    std::vector<double> out;
    for (const Complex& z : v) out.push_back(z.real());
    return out;
}

}  // namespace

TEST_CASE("les_polynomial on the trace path", "[fluctuation_lab]") {
    const CentroMatrix m = sample_centro(9, EntryDist::gaussian, 4);
    const Matrix& a = m.entries();
    CHECK(les_polynomial(m, real_poly({0, 1})).real() == Catch::Approx(a.trace()).epsilon(1e-13));

    Complex sq{};
    for (const Complex& v : eigenvalues(a).values) sq += v * v;
    CHECK(std::abs(les_polynomial(m, real_poly({0, 0, 1})) - sq) <= 1e-10);

    const Matrix a2 = a * a;
    const double direct = (a2 + 4.0 * a2 * a2 * a).trace();
    CHECK(les_polynomial(m, real_poly({0, 0, 1, 0, 0, 4})).real() == Catch::Approx(direct).epsilon(1e-12));
    CHECK(les_polynomial(a, real_poly({0, 0, 1, 0, 0, 4})).real() == Catch::Approx(direct).epsilon(1e-12));

    // a_0 contributes a_0 n
    CHECK(les_polynomial(m, real_poly({2.0})).real() == Catch::Approx(18.0));

    const Polynomial complexF = Polynomial::parse("0,1+2i");
    const Complex z = les_polynomial(m, complexF);
    CHECK(z.real() == Catch::Approx(a.trace()));
    CHECK(z.imag() == Catch::Approx(2.0 * a.trace()));
}

TEST_CASE("Weaver trace path equals the full-matrix path", "[fluctuation_lab]") {
    for (std::size_t n : {1u, 2u, 7u, 12u, 31u}) {
        const CentroMatrix m = sample_centro(n, EntryDist::uniform, 60 + n);
        const auto weaver = centro_trace_powers(m, 6);
        const auto full = trace_powers(m.entries(), 6);
        REQUIRE(weaver.size() == 6);
        for (std::size_t k = 0; k < 6; ++k) {
            CHECK(std::abs(weaver[k] - full[k]) <= 1e-10 * std::max(1.0, std::abs(full[k])));
        }
    }
}

TEST_CASE("les_analytic", "[fluctuation_lab]") {
    const auto id = [](Complex z) { return z; };
    CHECK(std::abs(les_analytic(eigenvalues(Matrix::Identity(3, 3)), id) - Complex(3, 0)) <= 1e-14);

    Matrix rot(2, 2);
    rot << 0, -1, 1, 0;
    const auto square = [](Complex z) { return z * z; };
    CHECK(std::abs(les_analytic(eigenvalues(rot), square) - Complex(-2, 0)) <= 1e-13);

    const CentroMatrix m = sample_centro(8, EntryDist::gaussian, 12);
    std::vector<double> series(31);
    double fact = 1.0;
    for (std::size_t k = 0; k < series.size(); ++k) {
        if (k > 0) fact *= static_cast<double>(k);
        series[k] = 1.0 / fact;
    }
    const Complex viaEig = les_analytic(eigenvalues(m.entries()), [](Complex z) { return std::exp(z); });
    CHECK(std::abs(viaEig - les_polynomial(m, real_poly(series))) <= 1e-9);

    Spectrum bad;
    bad.values = {{1, 0}};
    bad.converged = false;
    CHECK_THROWS_AS(les_analytic(bad, id), DiagnosticError);
}

TEST_CASE("ks_statistic", "[fluctuation_lab]") {
    Variates rng(2718);
    std::vector<double> normal(1000);
    for (double& x : normal) x = rng.normal();
    const double d = ks_statistic(normal);
    CHECK(d < 0.06);
    CHECK(d > 0.0);

    std::vector<double> shifted = normal;
    for (double& x : shifted) x = 3.0 * x - 7.0;
    CHECK(ks_statistic(shifted) == Catch::Approx(d).epsilon(1e-10));

    std::vector<double> signs(1000);
    for (std::size_t i = 0; i < signs.size(); ++i) signs[i] = (i % 2 == 0) ? 1.0 : -1.0;
    CHECK(ks_statistic(signs) >= 0.3);

    const std::vector<double> flat(10, 1.5);
    CHECK_THROWS_AS(ks_statistic(flat), DiagnosticError);
    const std::vector<double> one{1.0};
    CHECK_THROWS_AS(ks_statistic(one), DiagnosticError);
}

TEST_CASE("run_clt: trace variance", "[fluctuation_lab]") {
    const CltReport r = run_clt(200, 1000, real_poly({0, 1}), EntryDist::gaussian, 5);
    CHECK(r.samples.size() == 1000);
    CHECK(r.theoreticalVariance == 2.0);
    CHECK(r.empiricalVariance >= 1.7);
    CHECK(r.empiricalVariance <= 2.3);
    CHECK(r.varianceImag == 0.0);

    Complex total{};
    for (const Complex& s : r.samples) total += s;
    CHECK(std::abs(total) <= 1e-12 * 1000 * 10);
}

TEST_CASE("run_clt: cubic", "[fluctuation_lab]") {
    const CltReport r = run_clt(200, 1000, real_poly({0, 0, 0, 1}), EntryDist::gaussian, 6);
    CHECK(r.theoreticalVariance == 6.0);
    CHECK(r.empiricalVariance >= 4.8);
    CHECK(r.empiricalVariance <= 7.2);
}

TEST_CASE("run_clt: universality across entry laws", "[fluctuation_lab]") {
    const Polynomial f = real_poly({0, 0, 1});
    const CltReport g = run_clt(200, 1000, f, EntryDist::gaussian, 8);
    const CltReport u = run_clt(200, 1000, f, EntryDist::uniform, 8);
    CHECK(g.empiricalVariance == Catch::Approx(4.0).epsilon(0.2));
    CHECK(u.empiricalVariance == Catch::Approx(4.0).epsilon(0.2));
}

TEST_CASE("run_clt: complex test function", "[fluctuation_lab]") {
    const CltReport r = run_clt(100, 600, Polynomial::parse("0,1i,0,1"), EntryDist::gaussian, 9);
    CHECK(r.theoreticalVariance == 8.0);
    CHECK(r.varianceImag > 0.0);
    CHECK(r.empiricalVariance == Catch::Approx(r.varianceReal + r.varianceImag));
}

TEST_CASE("run_clt is identical across worker counts", "[fluctuation_lab]") {
    const Polynomial f = real_poly({0, 0, 1, 0, 0, 4});
    const CltReport a = run_clt(40, 50, f, EntryDist::gaussian, 42, 1);
    const CltReport b = run_clt(40, 50, f, EntryDist::gaussian, 42, 3);
    CHECK(a.samples == b.samples);
    CHECK(a.empiricalVariance == b.empiricalVariance);
    CHECK(a.ksStatistic == b.ksStatistic);
}

TEST_CASE("run_clt rejects degenerate configurations", "[fluctuation_lab]") {
    CHECK_THROWS_AS(run_clt(10, 1, real_poly({0, 1}), EntryDist::gaussian, 1), ConfigError);
    CHECK_THROWS_AS(run_clt(10, 10, real_poly({3}), EntryDist::gaussian, 1), ConfigError);
    CHECK_THROWS_AS(run_clt(0, 10, real_poly({0, 1}), EntryDist::gaussian, 1), InvalidDimensionError);
}

TEST_CASE("moment targets", "[fluctuation_lab]") {
    CHECK(single_trace_target(2) == 2.0);
    CHECK(single_trace_target(3) == 0.0);
    CHECK(double_trace_target(2, 2) == 8.0);
    CHECK(double_trace_target(3, 3) == 6.0);
    CHECK(double_trace_target(2, 4) == 4.0);
    CHECK(double_trace_target(4, 2) == 4.0);
    CHECK(double_trace_target(1, 3) == 0.0);
    CHECK(double_trace_target(1, 2) == 0.0);
}

TEST_CASE("moment_suite at small scale", "[fluctuation_lab]") {
    const MomentReport r = moment_suite(100, 600, 3, EntryDist::gaussian, 10);
    CHECK(r.rows.size() == 3 + 6);
    for (const MomentRow& row : r.rows) {
        CHECK(row.standardError > 0.0);
        CHECK(std::abs(row.zScore) <= 5.0);
        if (row.l != 0) CHECK(row.k <= row.l);
    }
    CHECK(r.single(2).target == 2.0);
    CHECK(r.pair(1, 3).target == 0.0);
    CHECK_THROWS_AS(r.pair(3, 4), InvalidInputError);
    CHECK_THROWS_AS(moment_suite(10, 100, 1, EntryDist::gaussian, 1), ConfigError);
}

TEST_CASE("histogram", "[fluctuation_lab]") {
    Variates rng(3);
    std::vector<double> xs(500);
    for (double& x : xs) x = rng.normal();
    const auto bins = histogram(xs);
    REQUIRE(bins.size() > 1);
    std::size_t total = 0;
    for (std::size_t i = 0; i < bins.size(); ++i) {
        total += bins[i].count;
        CHECK(bins[i].right > bins[i].left);
        if (i > 0) CHECK(bins[i].left == bins[i - 1].right);
    }
    CHECK(total == xs.size());
    CHECK(bins.front().left == *std::min_element(xs.begin(), xs.end()));
    CHECK(bins.back().right >= *std::max_element(xs.begin(), xs.end()));

    const std::vector<double> flat(20, 2.0);
    const auto one = histogram(flat);
    REQUIRE(one.size() == 1);
    CHECK(one[0].count == 20);

    std::ostringstream csv;
    write_histogram_csv(csv, bins);
    CHECK(csv.str().rfind("bin_left,bin_right,count\n", 0) == 0);

    const CltReport r = run_clt(20, 30, real_poly({0, 1}), EntryDist::gaussian, 1);
    std::size_t clt = 0;
    const auto re = real_parts(r.samples);
    for (const auto& b : histogram(re)) clt += b.count;
    CHECK(clt == 30);
}
