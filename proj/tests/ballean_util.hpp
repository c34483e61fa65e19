#pragma once

#include <cstdlib>
#include <string>
#include <utility>
#include <vector>

#include "permsel/ballean.hpp"
#include "test_util.hpp"

namespace test_util {

/// { (x, y) : |x - y| <= radius } on {0..n-1}.
inline permsel::Entourage line_entourage(const permsel::GroundPtr& ground, int radius) {
  std::vector<std::pair<int, int>> pairs;
  for (int x = 0; x < ground->size(); ++x) {
    for (int y = 0; y < ground->size(); ++y) {
      if (std::abs(x - y) <= radius) {
        pairs.emplace_back(x, y);
      }
    }
  }
  return permsel::Entourage::from_pairs(ground, pairs);
}

/// The base {Delta, E1, E2, E4, E8, E9} used throughout: radii double until
/// they reach the diameter, which keeps every composition inside the base.
inline permsel::CoarseBase line_base(int n) {
  permsel::GroundPtr ground = ground_of(n);
  permsel::CoarseBase base;
  base.ground = ground;
  base.members.push_back({"Delta", permsel::Entourage::diagonal(ground)});
  for (int radius = 1; radius < n - 1; radius *= 2) {
    base.members.push_back({"E" + std::to_string(radius), line_entourage(ground, radius)});
  }
  base.members.push_back({"E" + std::to_string(n - 1), line_entourage(ground, n - 1)});
  return base;
}

}  // namespace test_util
