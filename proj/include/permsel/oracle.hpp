#pragma once

#include <utility>
#include <vector>

#include "permsel/permutation.hpp"
#include "permsel/set_valued_map.hpp"

namespace permsel {

inline constexpr int kDefaultEnumerationCap = 8;
inline constexpr int kDefaultCoverCap = 6;

/// Every permutation p with p(x) in F(x) for all x, found by backtracking
/// in ground order; the result is in lexicographic order of the forward
/// vectors. Throws CapExceeded when the ground is larger than the cap.
std::vector<Permutation> enumerate_bijective_selectors(
    const SetValuedMap& map, int cap = kDefaultEnumerationCap);

/// Result of the exact minimum-cover search: the smallest number of
/// bijective selectors whose graphs cover every pair (x, y in F(x)), or
/// infeasibility with the first uncoverable pair.
struct MinFamilyResult {
  bool feasible = false;
  int size = 0;
  std::vector<Permutation> family;
  std::pair<int, int> uncoverable{-1, -1};
};

/// Exact set cover over the full selector enumeration; branch and bound
/// with the per-row/per-column lower bound. Intended as an independent
/// oracle for small instances only.
MinFamilyResult min_family_oracle(const SetValuedMap& map, int cap = kDefaultCoverCap);

}  // namespace permsel
