#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "permsel/decompose.hpp"
#include "permsel/ground_set.hpp"
#include "permsel/permutation.hpp"
#include "permsel/set_valued_map.hpp"

namespace permsel {

/// Relation on the ground set, stored as sorted target rows: rows[x] is the
/// ball around x. Expected to contain the diagonal; that is checked by
/// validate_base rather than assumed at construction so that documents can
/// be diagnosed instead of rejected.
class Entourage {
public:
  Entourage() = default;

  static Entourage from_pairs(GroundPtr ground,
                              const std::vector<std::pair<int, int>>& pairs);
  static Entourage from_rows(GroundPtr ground, std::vector<std::vector<int>> rows);
  static Entourage diagonal(GroundPtr ground);
  static Entourage full(GroundPtr ground);

  const GroundPtr& ground() const { return ground_; }
  int size() const { return static_cast<int>(rows_.size()); }
  const std::vector<int>& row(int x) const { return rows_[static_cast<size_t>(x)]; }
  bool contains(int x, int y) const;
  int pair_count() const;
  std::vector<std::pair<int, int>> pairs() const;  // row-major order

  bool has_diagonal() const;
  std::optional<int> missing_diagonal_at() const;
  bool is_symmetric() const;
  bool subset_of(const Entourage& other) const;
  std::optional<std::pair<int, int>> first_pair_not_in(const Entourage& other) const;

  /// Ball of radius this around x: { y : (x, y) in E }.
  const std::vector<int>& ball(int x) const;
  /// Union of the balls around every a in A; sorted.
  std::vector<int> ball_set(const std::vector<int>& points) const;

  /// (this o other) = { (x, y) : exists z, (x, z) in this, (z, y) in other }.
  Entourage compose(const Entourage& other) const;
  Entourage inverse() const;
  Entourage union_with(const Entourage& other) const;

  /// Reads the rows as a set-valued map (requires the diagonal, which makes
  /// the map reflexive).
  SetValuedMap as_map() const;

  bool operator==(const Entourage& other) const { return rows_ == other.rows_; }
  bool operator!=(const Entourage& other) const { return !(*this == other); }

private:
  GroundPtr ground_;
  std::vector<std::vector<int>> rows_;
};

struct NamedEntourage {
  std::string name;
  Entourage entourage;
};

/// Explicit finite base of a desk-scale coarse space. All existential
/// checks are against these members and their bounded compositions; the
/// generated structure itself is never materialized.
struct CoarseBase {
  GroundPtr ground;
  std::vector<NamedEntourage> members;

  const Entourage* find(const std::string& name) const;
};

struct BaseReport {
  struct DiagonalFailure {
    std::string name;
    int x;  // (x, x) missing
  };
  struct CompositionFailure {
    std::string left, right;
    // For each base member, one pair of left o right it fails to contain.
    std::vector<std::pair<std::string, std::pair<int, int>>> missing;
  };
  struct InverseFailure {
    std::string name;
    std::vector<std::pair<std::string, std::pair<int, int>>> missing;
  };

  bool diagonal_ok = false;
  bool composition_ok = false;
  bool inverse_ok = false;
  bool connectivity_ok = false;
  std::vector<DiagonalFailure> diagonal_failures;
  std::vector<CompositionFailure> composition_failures;
  std::vector<InverseFailure> inverse_failures;
  std::vector<std::pair<int, int>> uncovered_pairs;

  // The subset axiom of the generated structure is vacuous for a base.
  static constexpr const char* kSubsetAxiomNote =
      "subset axiom: not applicable to a base";

  bool ok() const {
    return diagonal_ok && composition_ok && inverse_ok && connectivity_ok;
  }
};

/// Checks the base axioms with witnesses: diagonal in every member, every
/// pairwise composition and every inverse dominated by some member, and
/// every pair of points covered by some member.
BaseReport validate_base(const CoarseBase& base);

/// Total map between two grounds, by index.
struct PointMap {
  GroundPtr src;
  GroundPtr dst;
  std::vector<int> forward;

  static PointMap identity(GroundPtr ground);
  int apply(int x) const { return forward[static_cast<size_t>(x)]; }
  bool is_bijective() const;
  PointMap inverse() const;  // throws NotBijective
};

struct MacroUniformWitness {
  struct Failure {
    std::string entourage;
    int x;
    int y;  // y in E[x] but f(y) outside every candidate ball around f(x)
  };

  std::vector<std::pair<std::string, std::string>> assignment;
  std::vector<Failure> failures;

  bool ok() const { return failures.empty(); }
};

/// For every source member, first-fit (over destination members sorted by
/// pair count) an E' with f(E[x]) contained in E'[f(x)] for all x.
MacroUniformWitness is_macro_uniform(const PointMap& f, const CoarseBase& src,
                                     const CoarseBase& dst);

struct AsymorphismResult {
  bool ok = false;
  MacroUniformWitness forward;
  MacroUniformWitness backward;
};

/// Bijection macro-uniform in both directions; throws NotBijective.
AsymorphismResult is_asymorphism(const PointMap& f, const CoarseBase& src,
                                 const CoarseBase& dst);

/// Named permutation family containing the identity.
struct GeneratorSet {
  std::string name;
  std::vector<Permutation> members;
};

/// { (x, p(x)) : p in members, x in ground }; contains the diagonal because
/// the identity is a member.
Entourage orbit_entourage(const GeneratorSet& generators);

struct RepresentationEntry {
  GeneratorSet generators;
  Entourage orbit;
  bool symmetrized = false;  // source entourage was replaced by E union E^-1
  DegreeBounds bounds;
};

/// Per-entourage permutation families realising the base, together with the
/// generating sets of the (never materialized) group ideal.
struct GSpaceRepresentation {
  CoarseBase base;
  std::vector<RepresentationEntry> entries;
  std::vector<GeneratorSet> ideal_base;
};

/// Builds, for each base member E, the map x -> E[x] and decomposes it into
/// a selector family; the family's orbit entourage equals E when E is
/// symmetric and E union E^-1 otherwise (recorded per entry). Strict mode
/// refuses asymmetric members. Throws InvalidBase when the axioms fail.
GSpaceRepresentation represent(const CoarseBase& base,
                               SelectorFamily::Mode mode = SelectorFamily::Mode::Relaxed,
                               int threads = 1);

struct IdealClosureEntry {
  std::string left, right;  // orbit of { p o q^-1 : p in left, q in right }
  bool dominated = false;
  std::string dominated_by;  // composition word over base members
  std::optional<std::pair<int, int>> witness;
};

struct IdealClosureReport {
  int depth = 0;
  std::vector<IdealClosureEntry> entries;

  bool all_dominated() const;
};

/// For every ordered pair of recorded generator sets A, B, checks that the
/// orbit entourage of A B^-1 is contained in some composition of at most
/// `depth` base members. Depth counts composed members, so depth 0 offers
/// no candidates at all.
IdealClosureReport ideal_closure_check(const GSpaceRepresentation& rep, int depth);

}  // namespace permsel
