#pragma once

#include <string>
#include <vector>

#include "permsel/permutation.hpp"
#include "permsel/set_valued_map.hpp"

namespace permsel {

/// Ordered family of permutations realising a set-valued map pointwise:
/// every member selects inside the source map and the member images at x
/// sweep out the whole image of x. In strict mode the source is the map
/// itself; in relaxed mode it is the symmetrized map.
struct SelectorFamily {
  enum class Mode { Strict, Relaxed };

  Mode mode = Mode::Strict;
  std::vector<Permutation> perms;

  int size() const { return static_cast<int>(perms.size()); }
};

const char* mode_name(SelectorFamily::Mode mode);

/// Graph on the ground set joining x and y exactly when their images
/// intersect. Adjacency lists are sorted; no self loops. Every vertex
/// degree stays below m^2 for the m of the map's degree bounds.
struct ConflictGraph {
  GroundPtr ground;
  std::vector<std::vector<int>> adjacency;

  int max_degree() const;
};

ConflictGraph conflict_graph(const SetValuedMap& map);

/// Proper coloring with color_count <= max_degree + 1, produced by the
/// ground-order greedy scan.
struct VertexColoring {
  std::vector<int> color;
  int color_count = 0;

  bool is_proper(const ConflictGraph& graph) const;
};

VertexColoring greedy_color(const ConflictGraph& graph);

/// Decomposes a reflexive map into bijective selectors: color the conflict
/// graph, then for each color class and image position emit the product of
/// transpositions (x, j-th element of F(x)) over the class. Strict mode
/// requires a symmetric map and covers it exactly; relaxed mode decomposes
/// the symmetrized map. Components may be processed on several threads;
/// the merged family is identical to the single-thread result.
SelectorFamily decompose(const SetValuedMap& map, SelectorFamily::Mode mode,
                         int threads = 1);

struct VerificationWitness {
  enum class Kind { NotBijective, NotSelector, MissingCoverage };

  Kind kind;
  int perm_index = -1;  // family index, -1 for coverage witnesses
  int x = -1;
  int y = -1;
};

/// Exhaustive re-check of a family against a map: bijectivity of every
/// member, the selector property, exact orbit coverage, and the size bound
/// m^2 * M of the source map. Witnesses list every violation.
struct VerificationReport {
  bool bijective_ok = false;
  bool selector_ok = false;
  bool coverage_ok = false;
  bool size_bound_ok = false;
  int family_size = 0;
  int size_limit = 0;
  std::vector<VerificationWitness> witnesses;

  bool all_ok() const {
    return bijective_ok && selector_ok && coverage_ok && size_bound_ok;
  }
};

VerificationReport verify_family(const SetValuedMap& map, const SelectorFamily& family);

}  // namespace permsel
