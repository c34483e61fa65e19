#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "permsel/ground_set.hpp"

namespace permsel {

/// Exact degree maxima of a map together with the smallest strict upper
/// bound m > max(|image|, |preimage|). On a finite ground the cardinal
/// bound of the decomposition degenerates to this arithmetic.
struct DegreeBounds {
  int max_image = 0;
  int max_preimage = 0;
  int m = 1;  // max(max_image, max_preimage) + 1
};

/// Partition of the ground into the minimal subsets closed under both the
/// map and its inverse. Blocks and their elements follow ground order.
struct ComponentPartition {
  std::vector<std::vector<int>> blocks;
};

/// Reflexive set-valued mapping x -> F(x) over a ground set: every image
/// contains its own point, lies inside the ground, and every point has an
/// entry. Images are kept sorted in ground order.
class SetValuedMap {
public:
  SetValuedMap() = default;

  /// Label-based construction; rejects unknown elements, duplicate and
  /// missing entries, and any x with x not in F(x).
  static SetValuedMap build(
      GroundPtr ground,
      const std::vector<std::pair<std::string, std::vector<std::string>>>& entries);

  /// Index-based construction with the same validation.
  static SetValuedMap from_rows(GroundPtr ground, std::vector<std::vector<int>> rows);

  const GroundPtr& ground() const { return ground_; }
  int size() const { return static_cast<int>(rows_.size()); }
  const std::vector<int>& image(int x) const { return rows_[static_cast<size_t>(x)]; }
  bool contains(int x, int y) const;
  int pair_count() const;

  /// G(x) = { y : x in F(y) }; reflexive because this map is.
  SetValuedMap inverse() const;

  DegreeBounds degree_bounds() const;

  bool is_symmetric() const { return !symmetry_violation().has_value(); }

  /// First (x, y) in ground order with y in F(x) but x not in F(y).
  std::optional<std::pair<int, int>> symmetry_violation() const;

  /// x -> F(x) union F^-1(x); symmetric, reflexive, idempotent.
  SetValuedMap symmetrize() const;

  /// Connected components of the undirected graph with an edge {x, y}
  /// whenever y is in F(x). Each block is minimal closed under the map in
  /// both directions.
  ComponentPartition components() const;

  bool operator==(const SetValuedMap& other) const;

private:
  GroundPtr ground_;
  std::vector<std::vector<int>> rows_;
};

}  // namespace permsel
