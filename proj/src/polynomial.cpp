#include "centrolab/polynomial.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>

#include "centrolab/errors.hpp"

namespace centrolab {

namespace {

std::string trim(std::string_view s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

double parse_real(const std::string& token, std::string_view whole) {
    if (token.empty() || token == "+") return 1.0;
    if (token == "-") return -1.0;
    std::size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(token, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != token.size()) throw ConfigError("bad polynomial coefficient '" + std::string(whole) + "'");
    return value;
}

Complex parse_coefficient(std::string_view raw) {
    const std::string token = trim(raw);
    if (token.empty()) throw ConfigError("empty polynomial coefficient");
    if (token.back() != 'i') return {parse_real(token, token), 0.0};
    const std::string body = token.substr(0, token.size() - 1);
    // Split at the last sign that is not part of an exponent and not leading.
    std::size_t split = std::string::npos;
    for (std::size_t p = body.size(); p-- > 1;) {
        if ((body[p] == '+' || body[p] == '-') && body[p - 1] != 'e' && body[p - 1] != 'E') {
            split = p;
            break;
        }
    }
    if (split == std::string::npos) return {0.0, parse_real(body, token)};
    return {parse_real(body.substr(0, split), token), parse_real(body.substr(split), token)};
}

std::string format_component(double x) { return format_double(x); }

}  // namespace

Polynomial::Polynomial(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {
    while (coeffs_.size() > 1 && coeffs_.back() == Complex{}) coeffs_.pop_back();
    if (coeffs_.empty()) coeffs_.push_back(Complex{});
}

Polynomial::Polynomial(std::span<const double> coeffs)
    : Polynomial(std::vector<Complex>(coeffs.begin(), coeffs.end())) {}

bool Polynomial::is_real() const {
    for (const Complex& c : coeffs_) {
        if (c.imag() != 0.0) return false;
    }
    return true;
}

Complex Polynomial::operator()(Complex z) const {
    Complex acc{};
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
    return acc;
}

Polynomial Polynomial::conjugate() const {
    std::vector<Complex> c(coeffs_);
    for (Complex& v : c) v = std::conj(v);
    return Polynomial(std::move(c));
}

Polynomial Polynomial::parse(std::string_view text) {
    std::vector<Complex> coeffs;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = text.find(',', start);
        coeffs.push_back(parse_coefficient(text.substr(start, comma == std::string_view::npos ? text.npos : comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return Polynomial(std::move(coeffs));
}

std::string Polynomial::to_string() const {
    std::string out;
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
        if (k > 0) out += ',';
        const Complex c = coeffs_[k];
        out += format_component(c.real());
        if (c.imag() != 0.0) {
            if (!std::signbit(c.imag())) out += '+';
            out += format_component(c.imag());
            out += 'i';
        }
    }
    return out;
}

}  // namespace centrolab
