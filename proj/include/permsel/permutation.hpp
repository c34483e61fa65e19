#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "permsel/ground_set.hpp"

namespace permsel {

/// Bijection of a ground set onto itself, stored as the forward image in
/// ground order. Construction always validates bijectivity.
class Permutation {
public:
  static Permutation identity(GroundPtr ground);
  static Permutation from_forward(GroundPtr ground, std::vector<int> forward);
  static Permutation transposition(GroundPtr ground, int a, int b);

  const GroundPtr& ground() const { return ground_; }
  int size() const { return static_cast<int>(forward_.size()); }
  int apply(int x) const { return forward_[static_cast<size_t>(x)]; }
  const std::vector<int>& forward() const { return forward_; }

  /// (p.compose(q))(x) = p(q(x)); grounds must match.
  Permutation compose(const Permutation& q) const;
  Permutation inverse() const;

  bool is_identity() const;
  bool is_involution() const;

  bool operator==(const Permutation& other) const { return forward_ == other.forward_; }
  bool operator!=(const Permutation& other) const { return !(*this == other); }
  bool operator<(const Permutation& other) const { return forward_ < other.forward_; }

  /// "a->b b->a c->c" in ground order.
  std::string one_line() const;

private:
  Permutation(GroundPtr ground, std::vector<int> forward)
      : ground_(std::move(ground)), forward_(std::move(forward)) {}

  GroundPtr ground_;
  std::vector<int> forward_;
};

struct ForwardVectorHash {
  size_t operator()(const std::vector<int>& v) const {
    size_t h = 1469598103934665603ull;
    for (int x : v) {
      h ^= static_cast<size_t>(x) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
  }
};

}  // namespace permsel
