#include "centrolab/eig_engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "centrolab/errors.hpp"

namespace centrolab {

namespace {

// Deflation threshold factor: |h(i+1,i)| <= 8 eps (|h(i,i)| + |h(i+1,i+1)|).
constexpr double kDeflationEps = 8.0 * std::numeric_limits<double>::epsilon();
constexpr std::size_t kExceptionalPeriod = 10;

void require_square_finite(const Matrix& mat, const char* who) {
    if (mat.rows() == 0 || mat.rows() != mat.cols()) {
        throw InvalidInputError(std::string(who) + ": expected a non-empty square matrix");
    }
    if (!mat.allFinite()) throw InvalidInputError(std::string(who) + ": matrix has non-finite entries");
}

// Francis double-shift QR on an upper Hessenberg matrix, eigenvalues only.
// Follows the EISPACK hqr structure, restricted to the active window.
Spectrum francis_qr(Matrix h, std::size_t maxSweeps) {
    const Eigen::Index size = h.rows();
    Spectrum spec;
    spec.values.assign(static_cast<std::size_t>(size), Complex{});

    double norm = 0.0;
    for (Eigen::Index i = 0; i < size; ++i) {
        for (Eigen::Index j = std::max<Eigen::Index>(i - 1, 0); j < size; ++j) norm += std::abs(h(i, j));
    }

    auto store = [&](Eigen::Index idx, Complex v) { spec.values[static_cast<std::size_t>(idx)] = v; };

    Eigen::Index hi = size - 1;
    double exshift = 0.0;
    std::size_t stalled = 0;
    double p = 0.0, q = 0.0, r = 0.0, s = 0.0, w = 0.0, x = 0.0, y = 0.0, z = 0.0;

    while (hi >= 0) {
        // Locate the lowest negligible subdiagonal entry.
        Eigen::Index lo = hi;
        while (lo > 0) {
            s = std::abs(h(lo - 1, lo - 1)) + std::abs(h(lo, lo));
            if (s == 0.0) s = norm;
            if (std::abs(h(lo, lo - 1)) <= kDeflationEps * s) break;
            --lo;
        }

        if (lo == hi) {
            store(hi, Complex(h(hi, hi) + exshift, 0.0));
            --hi;
            stalled = 0;
            continue;
        }
        if (lo == hi - 1) {
            w = h(hi, hi - 1) * h(hi - 1, hi);
            p = 0.5 * (h(hi - 1, hi - 1) - h(hi, hi));
            q = p * p + w;
            z = std::sqrt(std::abs(q));
            x = h(hi, hi) + exshift;
            if (q >= 0.0) {
                z = p >= 0.0 ? p + z : p - z;
                const double first = x + z;
                const double second = z != 0.0 ? x - w / z : first;
                store(hi - 1, Complex(first, 0.0));
                store(hi, Complex(second, 0.0));
            } else {
                store(hi - 1, Complex(x + p, z));
                store(hi, Complex(x + p, -z));
            }
            hi -= 2;
            stalled = 0;
            continue;
        }

        if (spec.iterations >= maxSweeps) {
            spec.converged = false;
            for (Eigen::Index i = 0; i <= hi; ++i) store(i, Complex(h(i, i) + exshift, 0.0));
            return spec;
        }

        x = h(hi, hi);
        y = h(hi - 1, hi - 1);
        w = h(hi, hi - 1) * h(hi - 1, hi);

        if (stalled > 0 && stalled % kExceptionalPeriod == 0) {
            // Ad hoc shift to break cycles.
            exshift += x;
            for (Eigen::Index i = 0; i <= hi; ++i) h(i, i) -= x;
            s = std::abs(h(hi, hi - 1)) + std::abs(h(hi - 1, hi - 2));
            x = y = 0.75 * s;
            w = -0.4375 * s * s;
        }
        ++stalled;
        ++spec.iterations;

        // Look for two consecutive small subdiagonal elements.
        Eigen::Index m = hi - 2;
        while (m >= lo) {
            z = h(m, m);
            r = x - z;
            s = y - z;
            p = (r * s - w) / h(m + 1, m) + h(m, m + 1);
            q = h(m + 1, m + 1) - z - r - s;
            r = h(m + 2, m + 1);
            s = std::abs(p) + std::abs(q) + std::abs(r);
            p /= s;
            q /= s;
            r /= s;
            if (m == lo) break;
            const double lhs = std::abs(h(m, m - 1)) * (std::abs(q) + std::abs(r));
            const double rhs = std::numeric_limits<double>::epsilon() *
                               (std::abs(p) * (std::abs(h(m - 1, m - 1)) + std::abs(z) + std::abs(h(m + 1, m + 1))));
            if (lhs < rhs) break;
            --m;
        }
        for (Eigen::Index i = m + 2; i <= hi; ++i) {
            h(i, i - 2) = 0.0;
            if (i > m + 2) h(i, i - 3) = 0.0;
        }

        // Double QR step on rows lo..hi and columns m..hi.
        for (Eigen::Index k = m; k <= hi - 1; ++k) {
            const bool notlast = k != hi - 1;
            if (k != m) {
                p = h(k, k - 1);
                q = h(k + 1, k - 1);
                r = notlast ? h(k + 2, k - 1) : 0.0;
                x = std::abs(p) + std::abs(q) + std::abs(r);
                if (x == 0.0) continue;
                p /= x;
                q /= x;
                r /= x;
            }
            s = std::sqrt(p * p + q * q + r * r);
            if (p < 0.0) s = -s;
            if (s == 0.0) continue;
            if (k != m) {
                h(k, k - 1) = -s * x;
            } else if (lo != m) {
                h(k, k - 1) = -h(k, k - 1);
            }
            p += s;
            x = p / s;
            y = q / s;
            z = r / s;
            q /= p;
            r /= p;
            for (Eigen::Index j = k; j <= hi; ++j) {
                p = h(k, j) + q * h(k + 1, j);
                if (notlast) {
                    p += r * h(k + 2, j);
                    h(k + 2, j) -= p * z;
                }
                h(k, j) -= p * x;
                h(k + 1, j) -= p * y;
            }
            const Eigen::Index last = std::min(hi, k + 3);
            for (Eigen::Index i = lo; i <= last; ++i) {
                p = x * h(i, k) + y * h(i, k + 1);
                if (notlast) {
                    p += z * h(i, k + 2);
                    h(i, k + 2) -= p * r;
                }
                h(i, k) -= p;
                h(i, k + 1) -= p * q;
            }
        }
    }
    return spec;
}

}  // namespace

Matrix balance(Matrix a) {
    constexpr double radix = 2.0;
    constexpr double radix2 = radix * radix;
    const Eigen::Index n = a.rows();
    bool done = false;
    while (!done) {
        done = true;
        for (Eigen::Index i = 0; i < n; ++i) {
            double c = 0.0;
            double r = 0.0;
            for (Eigen::Index j = 0; j < n; ++j) {
                if (j == i) continue;
                c += std::abs(a(j, i));
                r += std::abs(a(i, j));
            }
            if (c == 0.0 || r == 0.0) continue;
            double g = r / radix;
            double f = 1.0;
            const double total = c + r;
            while (c < g) {
                f *= radix;
                c *= radix2;
            }
            g = r * radix;
            while (c > g) {
                f /= radix;
                c /= radix2;
            }
            if ((c + r) / f < 0.95 * total) {
                done = false;
                a.row(i) /= f;
                a.col(i) *= f;
            }
        }
    }
    return a;
}

Matrix hessenberg(Matrix a) {
    const Eigen::Index n = a.rows();
    Eigen::VectorXd v(n);
    for (Eigen::Index k = 0; k + 2 < n; ++k) {
        const Eigen::Index len = n - k - 1;
        auto x = a.col(k).segment(k + 1, len);
        const double xnorm = x.norm();
        if (xnorm == 0.0) continue;
        const double alpha = x(0) > 0.0 ? -xnorm : xnorm;
        auto vk = v.head(len);
        vk = x;
        vk(0) -= alpha;
        const double vnorm2 = vk.squaredNorm();
        if (vnorm2 == 0.0) continue;
        const double beta = 2.0 / vnorm2;

        // Left: rows k+1.., columns k..
        Eigen::RowVectorXd tmp = vk.transpose() * a.block(k + 1, k, len, n - k);
        a.block(k + 1, k, len, n - k).noalias() -= beta * vk * tmp;
        // Right: all rows, columns k+1..
        Eigen::VectorXd tmp2 = a.block(0, k + 1, n, len) * vk;
        a.block(0, k + 1, n, len).noalias() -= beta * tmp2 * vk.transpose();

        a(k + 1, k) = alpha;
        a.col(k).tail(n - k - 2).setZero();
    }
    return a;
}

Spectrum eigenvalues(const Matrix& mat, std::size_t maxSweeps) {
    require_square_finite(mat, "eigenvalues");
    const auto n = static_cast<std::size_t>(mat.rows());
    if (maxSweeps == kDefaultSweeps) maxSweeps = 30 * n;
    return francis_qr(hessenberg(balance(mat)), maxSweeps);
}

std::vector<double> trace_powers(const Matrix& mat, int kMax) {
    if (kMax < 1) throw InvalidInputError("trace_powers: power must be at least 1");
    if (mat.rows() != mat.cols()) throw InvalidInputError("trace_powers: matrix must be square");
    const int half = (kMax + 1) / 2;
    std::vector<Matrix> powers;
    powers.reserve(static_cast<std::size_t>(half));
    powers.push_back(mat);
    for (int p = 2; p <= half; ++p) {
        Matrix next(mat.rows(), mat.cols());
        next.noalias() = powers.back() * mat;
        powers.push_back(std::move(next));
    }
    std::vector<double> traces(static_cast<std::size_t>(kMax));
    for (int k = 1; k <= kMax; ++k) {
        const int a = (k + 1) / 2;
        const int b = k - a;
        const Matrix& pa = powers[static_cast<std::size_t>(a - 1)];
        if (b == 0) {
            traces[static_cast<std::size_t>(k - 1)] = pa.trace();
        } else {
            const Matrix& pb = powers[static_cast<std::size_t>(b - 1)];
            traces[static_cast<std::size_t>(k - 1)] = pa.cwiseProduct(pb.transpose()).sum();
        }
    }
    return traces;
}

double trace_power(const Matrix& mat, int k) { return trace_powers(mat, k).back(); }

std::vector<double> spectral_radial_cdf(const Spectrum& spec, std::span<const double> grid) {
    std::vector<double> moduli;
    moduli.reserve(spec.values.size());
    for (const Complex& v : spec.values) moduli.push_back(std::abs(v));
    std::sort(moduli.begin(), moduli.end());
    std::vector<double> out;
    out.reserve(grid.size());
    const double total = static_cast<double>(moduli.size());
    for (double radius : grid) {
        const auto inside = std::upper_bound(moduli.begin(), moduli.end(), radius) - moduli.begin();
        out.push_back(total == 0.0 ? 0.0 : static_cast<double>(inside) / total);
    }
    return out;
}

double matched_distance(std::span<const Complex> a, std::span<const Complex> b) {
    if (a.size() != b.size()) throw InvalidInputError("matched_distance: multisets differ in size");
    const std::size_t n = a.size();
    if (n == 0) return 0.0;
    // Hungarian algorithm with potentials, 1-based internal indexing.
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0), minv(n + 1);
    std::vector<std::size_t> match(n + 1, 0), way(n + 1, 0);
    std::vector<char> used(n + 1);
    auto cost = [&](std::size_t i, std::size_t j) { return std::abs(a[i - 1] - b[j - 1]); };
    for (std::size_t i = 1; i <= n; ++i) {
        match[0] = i;
        std::size_t j0 = 0;
        std::fill(minv.begin(), minv.end(), inf);
        std::fill(used.begin(), used.end(), 0);
        do {
            used[j0] = 1;
            const std::size_t i0 = match[j0];
            double delta = inf;
            std::size_t j1 = 0;
            for (std::size_t j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const double cur = cost(i0, j) - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (std::size_t j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[match[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (match[j0] != 0);
        do {
            const std::size_t j1 = way[j0];
            match[j0] = match[j1];
            j0 = j1;
        } while (j0 != 0);
    }
    double worst = 0.0;
    for (std::size_t j = 1; j <= n; ++j) worst = std::max(worst, cost(match[j], j));
    return worst;
}

}  // namespace centrolab
