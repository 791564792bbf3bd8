#include "lab/subsets.hpp"

#include <stdexcept>

namespace lab {

std::uint64_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  std::uint64_t result = 1;
  for (int i = 1; i <= k; ++i) {
    const std::uint64_t numer = static_cast<std::uint64_t>(n - k + i);
    if (result > UINT64_MAX / numer)
      throw std::overflow_error("binomial: result exceeds 64 bits");
    result = result * numer / static_cast<std::uint64_t>(i);
  }
  return result;
}

std::uint64_t rank_subset_colex(const std::vector<int>& subset, int n) {
  std::uint64_t rank = 0;
  int prev = -1;
  for (std::size_t i = 0; i < subset.size(); ++i) {
    const int s = subset[i];
    if (s <= prev || s < 0 || s >= n)
      throw std::invalid_argument("rank_subset_colex: malformed subset");
    prev = s;
    rank += binomial(s, static_cast<int>(i) + 1);
  }
  return rank;
}

std::vector<int> unrank_subset_colex(std::uint64_t rank, int n, int k) {
  if (k < 0 || k > n) throw std::invalid_argument("unrank_subset_colex: bad k");
  if (rank >= binomial(n, k))
    throw std::invalid_argument("unrank_subset_colex: rank out of range");
  std::vector<int> subset(k);
  int hi = n - 1;
  for (int i = k; i >= 1; --i) {
    // Largest element e with C(e, i) <= rank.
    while (binomial(hi, i) > rank) --hi;
    subset[i - 1] = hi;
    rank -= binomial(hi, i);
    --hi;
  }
  return subset;
}

bool next_subset_colex(std::vector<int>& subset, int n) {
  const int k = static_cast<int>(subset.size());
  for (int i = 0; i < k; ++i) {
    const int limit = (i + 1 < k) ? subset[i + 1] : n;
    if (subset[i] + 1 < limit) {
      ++subset[i];
      for (int j = 0; j < i; ++j) subset[j] = j;
      return true;
    }
  }
  return false;
}

}  // namespace lab
