#pragma once

#include <cstdint>
#include <vector>

namespace lab {

/// Exact binomial coefficient; throws std::overflow_error if it does not fit
/// in 64 bits.
std::uint64_t binomial(int n, int k);

/// Colexicographic rank of a strictly increasing k-subset of {0,...,n-1}:
/// rank(S) = sum_i C(S[i], i+1). Bijective onto [0, C(n,k)).
std::uint64_t rank_subset_colex(const std::vector<int>& subset, int n);

/// Inverse of rank_subset_colex.
std::vector<int> unrank_subset_colex(std::uint64_t rank, int n, int k);

/// Advance a strictly increasing k-subset of {0,...,n-1} to its colex
/// successor. Returns false after the last subset. Start from {0,...,k-1}.
bool next_subset_colex(std::vector<int>& subset, int n);

}  // namespace lab
