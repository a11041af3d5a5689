#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <string>

#include <Eigen/Dense>

namespace centrolab {

/// Dense row-major real matrix used throughout the library.
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Complex = std::complex<double>;

/// Neumaier's variant of Kahan summation. Order dependent like any
/// floating-point sum, but the error no longer grows with the term count.
class CompensatedSum {
public:
    CompensatedSum& operator+=(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
        return *this;
    }

    [[nodiscard]] double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

class ComplexCompensatedSum {
public:
    ComplexCompensatedSum& operator+=(Complex x) {
        re_ += x.real();
        im_ += x.imag();
        return *this;
    }

    [[nodiscard]] Complex value() const { return {re_.value(), im_.value()}; }

private:
    CompensatedSum re_;
    CompensatedSum im_;
};

/// Pairwise reduction of partial sums in index order. The result depends only
/// on the contents of `parts`, never on how they were produced.
template <typename T>
T pairwise_sum(std::span<const T> parts) {
    if (parts.empty()) return T{};
    if (parts.size() == 1) return parts[0];
    const std::size_t half = parts.size() / 2;
    return pairwise_sum(parts.first(half)) + pairwise_sum(parts.subspan(half));
}

/// Formats a double with 17 significant digits (round-trip exact).
std::string format_double(double x);

}  // namespace centrolab
