#include "centrolab/pairing_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "centrolab/centro_core.hpp"
#include "centrolab/errors.hpp"
#include "centrolab/numeric.hpp"
#include "centrolab/parallel.hpp"

namespace centrolab {

namespace {

// n^e, or 0 when it would exceed `cap`.
std::uint64_t bounded_power(std::size_t n, int e, std::uint64_t cap) {
    std::uint64_t result = 1;
    for (int i = 0; i < e; ++i) {
        if (n != 0 && result > cap / n) return 0;
        result *= n;
    }
    return result;
}

std::vector<std::uint32_t> class_ids(std::size_t n) {
    std::vector<std::uint32_t> ids(n * n);
    const std::size_t cells = n * n;
    for (std::size_t flat = 0; flat < cells; ++flat) {
        const std::size_t mirror = cells - 1 - flat;
        ids[flat] = static_cast<std::uint32_t>(std::min(flat, mirror));
    }
    return ids;
}

struct ChainSpec {
    std::size_t n;
    std::vector<int> lengths;  // one or two cycles
};

// Sum over all index tuples whose first index equals `first` of the Wick
// value of the joint chain product. Terms are integers, so the compensated
// sum is exact well beyond the default budget.
double enumerate_chunk(const ChainSpec& spec, const std::vector<std::uint32_t>& ids,
                       const std::vector<double>& moments, std::size_t first) {
    int total = 0;
    for (int len : spec.lengths) total += len;
    const std::size_t n = spec.n;
    const auto slots = static_cast<std::size_t>(total);

    std::vector<std::size_t> idx(slots, 0);
    idx[0] = first;
    std::vector<std::uint32_t> cells(slots);
    CompensatedSum acc;

    while (true) {
        // Map each factor of each cycle to its entry class.
        std::size_t offset = 0;
        for (int len : spec.lengths) {
            const auto clen = static_cast<std::size_t>(len);
            for (std::size_t t = 0; t < clen; ++t) {
                const std::size_t row = idx[offset + t];
                const std::size_t col = idx[offset + (t + 1) % clen];
                cells[offset + t] = ids[row * n + col];
            }
            offset += clen;
        }
        std::sort(cells.begin(), cells.end());
        double term = 1.0;
        for (std::size_t a = 0; a < slots && term != 0.0;) {
            std::size_t b = a + 1;
            while (b < slots && cells[b] == cells[a]) ++b;
            term *= moments[b - a];
            a = b;
        }
        if (term != 0.0) acc += term;

        // Odometer over slots 1..end; slot 0 is fixed by the chunk.
        std::size_t pos = slots;
        while (pos > 1) {
            --pos;
            if (++idx[pos] < n) break;
            idx[pos] = 0;
            if (pos == 1) return acc.value();
        }
        if (slots == 1) return acc.value();
    }
}

ChainExpectation run_oracle(std::size_t n, int k, std::optional<int> l, std::uint64_t budget,
                            std::size_t threads) {
    if (n == 0) throw InvalidDimensionError("pairing oracle: order must be at least 1");
    if (k < 1 || (l && *l < 1)) throw ConfigError("pairing oracle: chain lengths must be at least 1");
    const int total = k + l.value_or(0);
    const std::uint64_t terms = bounded_power(n, total, budget);
    if (terms == 0 || terms > budget) {
        std::string tuple = "(n=" + std::to_string(n) + ", k=" + std::to_string(k);
        if (l) tuple += ", l=" + std::to_string(*l);
        tuple += ")";
        throw ResourceError("pairing oracle: n^" + std::to_string(total) + " terms for " + tuple +
                            " exceeds the enumeration budget of " + std::to_string(budget));
    }

    ChainSpec spec{n, {k}};
    if (l) spec.lengths.push_back(*l);
    const auto ids = class_ids(n);
    std::vector<double> moments(static_cast<std::size_t>(total) + 1);
    for (int m = 0; m <= total; ++m) moments[static_cast<std::size_t>(m)] = gaussian_moment(m);

    std::vector<double> partial(n, 0.0);
    parallel_for(n, resolve_threads(threads),
                 [&](std::size_t first) { partial[first] = enumerate_chunk(spec, ids, moments, first); });
    const double sum = pairwise_sum<double>(partial);

    double norm = 0.0;
    if (total % 2 == 0) {
        norm = 1.0;
        for (int i = 0; i < total / 2; ++i) norm *= static_cast<double>(n);
    } else {
        norm = std::pow(static_cast<double>(n), 0.5 * total);
    }

    ChainExpectation out;
    out.n = n;
    out.k = k;
    out.l = l;
    out.value = sum / norm;
    out.termsEnumerated = terms;
    return out;
}

}  // namespace

double gaussian_moment(int m) {
    if (m < 0) throw InvalidInputError("gaussian_moment: order must be nonnegative");
    if (m % 2 != 0) return 0.0;
    double result = 1.0;
    for (int f = m - 1; f > 1; f -= 2) result *= f;
    return result;
}

ChainExpectation oracle_single_chain(std::size_t n, int k, std::uint64_t budget, std::size_t threads) {
    return run_oracle(n, k, std::nullopt, budget, threads);
}

ChainExpectation oracle_double_chain(std::size_t n, int k, int l, std::uint64_t budget, std::size_t threads) {
    return run_oracle(n, k, l, budget, threads);
}

std::vector<ChainExpectation> convergence_table(std::span<const int> kList, std::span<const int> lList,
                                                std::span<const std::size_t> nList, std::uint64_t budget,
                                                std::size_t threads) {
    std::vector<ChainExpectation> table;
    for (std::size_t n : nList) {
        for (int k : kList) {
            if (lList.empty()) {
                table.push_back(oracle_single_chain(n, k, budget, threads));
            } else {
                for (int l : lList) table.push_back(oracle_double_chain(n, k, l, budget, threads));
            }
        }
    }
    return table;
}

void write_table_csv(std::ostream& out, std::span<const ChainExpectation> table) {
    out << "n,k,l,value,terms\n";
    for (const auto& row : table) {
        out << row.n << ',' << row.k << ',';
        if (row.l) out << *row.l;
        out << ',' << format_double(row.value) << ',' << row.termsEnumerated << '\n';
    }
}

}  // namespace centrolab
