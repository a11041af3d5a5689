#include <catch_amalgamated.hpp>

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include <Eigen/Eigenvalues>

#include "centrolab/centro_core.hpp"
#include "centrolab/eig_engine.hpp"
#include "centrolab/errors.hpp"
#include "centrolab/random.hpp"

using namespace centrolab;

namespace {

Matrix random_matrix(Eigen::Index n, std::uint64_t seed) {
    Variates rng(seed);
    Matrix m(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) m(i, j) = rng.normal();
    }
    return m;
}

Matrix random_orthogonal(Eigen::Index n, std::uint64_t seed) {
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(Eigen::MatrixXd(random_matrix(n, seed)));
    return Matrix(qr.householderQ());
}

void check_conjugate_closure(const Spectrum& spec) {
    std::vector<Complex> conj;
    for (const Complex& v : spec.values) conj.push_back(std::conj(v));
    CHECK(matched_distance(spec.values, conj) <= 1e-10);
}

}  // namespace

TEST_CASE("eigenvalues of small closed-form matrices", "[eig_engine]") {
    Matrix swap(2, 2);
    swap << 0, 1, 1, 0;
    const Spectrum s1 = eigenvalues(swap);
    CHECK(s1.converged);
    CHECK(matched_distance(s1.values, std::vector<Complex>{{1, 0}, {-1, 0}}) <= 1e-14);

    Matrix rot(2, 2);
    rot << 0, -1, 1, 0;
    const Spectrum s2 = eigenvalues(rot);
    CHECK(matched_distance(s2.values, std::vector<Complex>{{0, 1}, {0, -1}}) <= 1e-14);

    // companion matrix of z^3 - 1
    Matrix comp = Matrix::Zero(3, 3);
    comp(0, 2) = 1.0;
    comp(1, 0) = 1.0;
    comp(2, 1) = 1.0;
    const double h = std::sqrt(3.0) / 2.0;
    const Spectrum s3 = eigenvalues(comp);
    CHECK(matched_distance(s3.values, std::vector<Complex>{{1, 0}, {-0.5, h}, {-0.5, -h}}) <= 1e-10);

    const Spectrum one = eigenvalues(Matrix::Constant(1, 1, -3.5));
    REQUIRE(one.values.size() == 1);
    CHECK(one.values[0] == Complex(-3.5, 0.0));
}

TEST_CASE("eigenvalues rejects bad input", "[eig_engine]") {
    Matrix nan = Matrix::Zero(3, 3);
    nan(1, 2) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(eigenvalues(nan), InvalidInputError);
    CHECK_THROWS_AS(eigenvalues(Matrix::Zero(2, 3)), InvalidInputError);
    CHECK_THROWS_AS(eigenvalues(Matrix(0, 0)), InvalidInputError);
}

TEST_CASE("sweep budget exhaustion is flagged", "[eig_engine]") {
    const Matrix m = random_matrix(30, 5);
    const Spectrum partial = eigenvalues(m, 1);
    CHECK_FALSE(partial.converged);
    CHECK(partial.values.size() == 30);
    const Spectrum full = eigenvalues(m);
    CHECK(full.converged);
    CHECK(full.iterations > 1);
}

TEST_CASE("agrees with Eigen's solver", "[eig_engine]") {
    for (Eigen::Index n : {2, 3, 7, 20, 64}) {
        const Matrix m = random_matrix(n, 100 + static_cast<std::uint64_t>(n));
        const Spectrum mine = eigenvalues(m);
        REQUIRE(mine.converged);
        Eigen::EigenSolver<Eigen::MatrixXd> ref(Eigen::MatrixXd(m), false);
        std::vector<Complex> theirs(ref.eigenvalues().begin(), ref.eigenvalues().end());
        CHECK(matched_distance(mine.values, theirs) <= 1e-9);
    }
}

TEST_CASE("spectrum invariants: trace and conjugate pairs", "[eig_engine]") {
    for (std::size_t n : {3u, 10u, 50u, 120u}) {
        const CentroMatrix m = sample_centro(n, EntryDist::gaussian, 9 + n);
        const Spectrum spec = eigenvalues(m.entries());
        REQUIRE(spec.converged);
        Complex sum{};
        for (const Complex& v : spec.values) sum += v;
        const double scale = std::max(1.0, m.entries().cwiseAbs().maxCoeff());
        CHECK(std::abs(sum - Complex(m.entries().trace(), 0.0)) <= 1e-8 * static_cast<double>(n) * scale);
        check_conjugate_closure(spec);
    }
}

TEST_CASE("similarity invariance under random orthogonal Q", "[eig_engine]") {
    for (Eigen::Index n : {4, 9, 16}) {
        const Matrix m = random_matrix(n, 40 + static_cast<std::uint64_t>(n)) / std::sqrt(static_cast<double>(n));
        const Matrix q = random_orthogonal(n, 7);
        const Spectrum a = eigenvalues(m);
        const Spectrum b = eigenvalues(Matrix(q.transpose() * m * q));
        CHECK(matched_distance(a.values, b.values) <= 1e-8);
    }
}

TEST_CASE("hessenberg form and trace preservation", "[eig_engine]") {
    const Matrix m = random_matrix(25, 3);
    const Matrix h = hessenberg(m);
    for (Eigen::Index i = 2; i < h.rows(); ++i) {
        for (Eigen::Index j = 0; j + 1 < i; ++j) CHECK(h(i, j) == 0.0);
    }
    CHECK(std::abs(h.trace() - m.trace()) <= 1e-12 * std::max(1.0, std::abs(m.trace())) * 25);
    CHECK(std::abs(h.norm() - m.norm()) <= 1e-12 * m.norm() * 25);
}

TEST_CASE("balance keeps the spectrum", "[eig_engine]") {
    Matrix m = random_matrix(6, 11);
    m.row(2) *= 1e6;
    m.col(2) /= 1e6;
    const Matrix b = balance(m);
    CHECK(b.trace() == Catch::Approx(m.trace()).epsilon(1e-14));
    Eigen::EigenSolver<Eigen::MatrixXd> ref(Eigen::MatrixXd(m), false);
    std::vector<Complex> theirs(ref.eigenvalues().begin(), ref.eigenvalues().end());
    CHECK(matched_distance(eigenvalues(m).values, theirs) <= 1e-6);
}

TEST_CASE("trace_power", "[eig_engine]") {
    for (int k = 1; k <= 6; ++k) CHECK(trace_power(Matrix::Identity(7, 7), k) == 7.0);
    const Matrix m = random_matrix(5, 1);
    CHECK(trace_power(m, 1) == m.trace());
    CHECK(trace_power(m, 3) == Catch::Approx((m * m * m).trace()).epsilon(1e-13));
    CHECK_THROWS_AS(trace_power(m, 0), InvalidInputError);
}

TEST_CASE("moment matching: trace path vs eigenvalue path", "[eig_engine]") {
    for (std::size_t n : {2u, 5u, 8u, 17u, 50u}) {
        const CentroMatrix m = sample_centro(n, EntryDist::gaussian, 300 + n);
        const Spectrum spec = eigenvalues(m.entries());
        const std::vector<double> traces = trace_powers(m.entries(), 5);
        for (int k = 1; k <= 5; ++k) {
            Complex sum{};
            for (const Complex& v : spec.values) sum += std::pow(v, k);
            const double ref = traces[static_cast<std::size_t>(k - 1)];
            CHECK(std::abs(sum.real() - ref) <= 1e-7 * std::max(1.0, std::abs(ref)));
            CHECK(std::abs(sum.imag()) <= 1e-7 * std::max(1.0, std::abs(ref)));
        }
    }
}

TEST_CASE("spectral_radial_cdf", "[eig_engine]") {
    const std::vector<double> proxy{10.0};
    const Spectrum small = eigenvalues(sample_centro(20, EntryDist::gaussian, 1).entries());
    CHECK(spectral_radial_cdf(small, proxy)[0] == 1.0);

    Spectrum manual;
    manual.values = {{0.1, 0}, {0, 0.6}, {0.8, 0.8}, {2, 0}};
    const std::vector<double> grid{0.0, 0.5, 1.0, 1.2, 3.0};
    const auto cdf = spectral_radial_cdf(manual, grid);
    CHECK(cdf == std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0});
}

TEST_CASE("circular law at n=1000", "[eig_engine][slow]") {
    const Spectrum spec = eigenvalues(sample_centro(1000, EntryDist::gaussian, 31).entries());
    REQUIRE(spec.converged);
    const std::vector<double> grid{0.5, 1.05};
    const auto cdf = spectral_radial_cdf(spec, grid);
    CHECK(cdf[0] == Catch::Approx(0.25).margin(0.05));
    CHECK(cdf[1] >= 0.99);
}

TEST_CASE("matched_distance finds the optimal pairing", "[eig_engine]") {
    const std::vector<Complex> a{{0, 0}, {1, 0}, {2, 0}};
    const std::vector<Complex> b{{2.1, 0}, {0.1, 0}, {1.1, 0}};
    CHECK(matched_distance(a, b) == Catch::Approx(0.1));
    CHECK_THROWS_AS(matched_distance(a, std::vector<Complex>{{0, 0}}), InvalidInputError);
}
