#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "centrolab/numeric.hpp"

namespace centrolab {

/// Test function f(z) = sum_k a_k z^k with complex coefficients. Trailing
/// zero coefficients are trimmed, so degree() always refers to a nonzero
/// leading coefficient (the zero polynomial has degree 0).
class Polynomial {
public:
    Polynomial() : coeffs_{Complex{}} {}
    explicit Polynomial(std::vector<Complex> coeffs);
    explicit Polynomial(std::span<const double> coeffs);

    [[nodiscard]] std::size_t degree() const { return coeffs_.size() - 1; }
    [[nodiscard]] const std::vector<Complex>& coeffs() const { return coeffs_; }
    [[nodiscard]] Complex coeff(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : Complex{}; }
    [[nodiscard]] bool is_real() const;

    /// Horner evaluation.
    [[nodiscard]] Complex operator()(Complex z) const;

    /// Same polynomial with conjugated coefficients.
    [[nodiscard]] Polynomial conjugate() const;

    /// Parses "c0,c1,...,cd". Each token is a real ("2.5"), an imaginary
    /// ("3i", "-i") or a complex literal ("1+2i", "0.5-1e-3i").
    static Polynomial parse(std::string_view text);

    /// Inverse of parse; reals print as plain numbers.
    [[nodiscard]] std::string to_string() const;

private:
    std::vector<Complex> coeffs_;
};

}  // namespace centrolab
