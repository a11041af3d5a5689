#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

namespace centrolab {

/// Exact finite-n expectation of Tr(M^k) or Tr(M^k) Tr(M^l) for Gaussian
/// entries, including the n^{-(k+l)/2} normalization.
struct ChainExpectation {
    std::size_t n = 0;
    int k = 0;
    std::optional<int> l;
    double value = 0.0;
    std::uint64_t termsEnumerated = 0;
};

inline constexpr std::uint64_t kDefaultTermBudget = 100'000'000ULL;

/// E[x^m] for a standard normal x: (m-1)!! for even m, 0 for odd m.
double gaussian_moment(int m);

/// Exhaustive enumeration over all index chains (i_1, ..., i_k). Each chain
/// contributes the product of Gaussian moments of its entry-class
/// multiplicities. Throws ResourceError when n^k exceeds `budget`.
/// `threads` == 0 resolves via resolve_threads; the value is independent of it.
ChainExpectation oracle_single_chain(std::size_t n, int k, std::uint64_t budget = kDefaultTermBudget,
                                     std::size_t threads = 1);

/// Same over joint chains (i_1..i_k, j_1..j_l); n^{k+l} terms.
ChainExpectation oracle_double_chain(std::size_t n, int k, int l, std::uint64_t budget = kDefaultTermBudget,
                                     std::size_t threads = 1);

/// Exact values for every (n, k) (empty lList) or every (n, k, l).
std::vector<ChainExpectation> convergence_table(std::span<const int> kList, std::span<const int> lList,
                                                std::span<const std::size_t> nList,
                                                std::uint64_t budget = kDefaultTermBudget, std::size_t threads = 1);

/// CSV with header "n,k,l,value,terms"; l is empty for single chains.
void write_table_csv(std::ostream& out, std::span<const ChainExpectation> table);

}  // namespace centrolab
