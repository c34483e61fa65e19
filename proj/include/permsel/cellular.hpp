#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "permsel/ballean.hpp"

namespace permsel {

inline constexpr std::uint64_t kDefaultClosureCap = 1000000;

struct EquivalenceWitness {
  enum class Kind { Reflexivity, Symmetry, Transitivity };

  Kind kind;
  int x = -1;
  int y = -1;
  int z = -1;  // set for transitivity: (x,y) and (y,z) present, (x,z) absent
};

/// Nullopt when the entourage is reflexive, symmetric and transitive;
/// otherwise the first violation in ground order.
std::optional<EquivalenceWitness> is_equivalence(const Entourage& entourage);

/// Equivalence relation presented by its classes. Blocks are ordered by
/// least element and sorted inside.
struct PartitionEntourage {
  GroundPtr ground;
  std::vector<std::vector<int>> blocks;

  static PartitionEntourage from_blocks(GroundPtr ground,
                                        std::vector<std::vector<int>> blocks);
  static PartitionEntourage from_entourage(const Entourage& entourage);

  int block_of(int x) const;
  int max_block_size() const;
  Entourage relation() const;
};

struct NamedPartition {
  std::string name;
  PartitionEntourage partition;
  int bound = 0;  // recorded max block size
};

struct PartitionBase {
  GroundPtr ground;
  std::vector<NamedPartition> partitions;
};

/// Converts every base member to its block partition; throws NotEquivalence
/// naming the member and the violated pair/triple.
PartitionBase partitions_from_base(const CoarseBase& base);

/// Identity plus the adjacent transpositions of every block, acting
/// identically off-block. Their closure is the direct product of the
/// symmetric groups on the blocks.
GeneratorSet block_generators(const std::string& name, const PartitionEntourage& partition);

struct ClosureResult {
  enum class Status { Finite, CapExceeded };

  Status status = Status::Finite;
  std::vector<Permutation> elements;  // breadth-first discovery order

  bool finite() const { return status == Status::Finite; }
  std::uint64_t order() const { return elements.size(); }
};

/// Breadth-first closure under composition and inversion, stopping once
/// more than `cap` elements appear.
ClosureResult subgroup_closure(const GeneratorSet& generators,
                               std::uint64_t cap = kDefaultClosureCap);

struct CellularCheck {
  std::string name;
  bool closure_finite = false;
  std::uint64_t closure_order = 0;
  bool orbit_matches = false;  // closure orbit entourage equals the partition relation
};

struct CellularRepresentation {
  GSpaceRepresentation rep;  // entries carry block generators and closure orbits
  PartitionBase partitions;
  std::vector<CellularCheck> checks;
  ClosureResult full_group;  // capped closure of the union of all generators

  bool all_ok() const;
};

/// Per-partition block generators, capped subgroup closures (which become
/// the ideal base), and the orbit-equality checks.
CellularRepresentation represent_cellular(const CoarseBase& base,
                                          std::uint64_t cap = kDefaultClosureCap);

}  // namespace permsel
