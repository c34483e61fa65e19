#include <random>
#include <set>

#include "ballean_util.hpp"
#include "doctest.h"
#include "permsel/ballean.hpp"
#include "permsel/decompose.hpp"
#include "permsel/error.hpp"
#include "test_util.hpp"

using namespace permsel;
using test_util::ground_of;
using test_util::line_base;
using test_util::line_entourage;

namespace {

Entourage random_entourage(std::mt19937& rng, const GroundPtr& ground, int extra) {
  std::uniform_int_distribution<int> element(0, ground->size() - 1);
  std::vector<std::pair<int, int>> pairs;
  for (int x = 0; x < ground->size(); ++x) {
    pairs.emplace_back(x, x);
  }
  for (int k = 0; k < extra; ++k) {
    pairs.emplace_back(element(rng), element(rng));
  }
  return Entourage::from_pairs(ground, pairs);
}

Entourage brute_compose(const Entourage& e, const Entourage& f) {
  std::vector<std::pair<int, int>> pairs;
  for (int x = 0; x < e.size(); ++x) {
    for (int y = 0; y < e.size(); ++y) {
      for (int z = 0; z < e.size(); ++z) {
        if (e.contains(x, z) && f.contains(z, y)) {
          pairs.emplace_back(x, y);
          break;
        }
      }
    }
  }
  return Entourage::from_pairs(e.ground(), pairs);
}

}  // namespace

TEST_CASE("balls") {
  auto ground = ground_of(10);
  Entourage diag = Entourage::diagonal(ground);
  for (int x = 0; x < 10; ++x) {
    CHECK(diag.ball(x) == std::vector<int>{x});
  }

  Entourage e1 = line_entourage(ground, 1);
  CHECK(e1.ball(5) == std::vector<int>{4, 5, 6});
  CHECK(e1.ball_set({0, 9}) == std::vector<int>{0, 1, 8, 9});

  CHECK_THROWS_AS(e1.ball(10), Error);
}

TEST_CASE("entourage algebra: pinned") {
  auto ground = ground_of(10);
  Entourage diag = Entourage::diagonal(ground);
  Entourage e1 = line_entourage(ground, 1);
  Entourage e2 = line_entourage(ground, 2);

  CHECK(diag.compose(e1) == e1);
  CHECK(e1.compose(diag) == e1);
  CHECK(e1.inverse() == e1);  // symmetric
  CHECK(e1.compose(e1) == e2);
  CHECK(e1.compose(e1) == brute_compose(e1, e1));

  CHECK(e1.subset_of(e2));
  CHECK_FALSE(e2.subset_of(e1));
  CHECK(e2.first_pair_not_in(e1) == std::pair<int, int>{0, 2});
  CHECK(e1.has_diagonal());
  CHECK(Entourage::full(ground).pair_count() == 100);

  CHECK_THROWS_AS(e1.compose(Entourage::diagonal(ground_of(3))), Error);
}

TEST_CASE("entourage algebra: relation laws on random instances") {
  std::mt19937 rng(7401);
  auto ground = ground_of(7);
  for (int round = 0; round < 20; ++round) {
    Entourage a = random_entourage(rng, ground, 10);
    Entourage b = random_entourage(rng, ground, 10);
    Entourage c = random_entourage(rng, ground, 10);
    Entourage diag = Entourage::diagonal(ground);

    CHECK(a.compose(b) == brute_compose(a, b));
    CHECK(a.compose(b).compose(c) == a.compose(b.compose(c)));
    CHECK(diag.compose(a) == a);
    CHECK(a.compose(diag) == a);
    CHECK(a.inverse().inverse() == a);
    CHECK(a.compose(b).inverse() == b.inverse().compose(a.inverse()));
    CHECK(a.compose(b).has_diagonal());

    // composition orientation: (E o E')[x] is the E'-ball set of E[x]
    for (int x = 0; x < 7; ++x) {
      CHECK(a.compose(b).ball(x) == b.ball_set(a.ball(x)));
    }
  }
}

TEST_CASE("validate_base") {
  BaseReport line_report = validate_base(line_base(10));
  CHECK(line_report.ok());

  // {Delta} alone on two points: no member covers off-diagonal pairs
  CoarseBase lonely;
  lonely.ground = ground_of(2);
  lonely.members.push_back({"Delta", Entourage::diagonal(lonely.ground)});
  BaseReport lonely_report = validate_base(lonely);
  CHECK(lonely_report.diagonal_ok);
  CHECK(lonely_report.composition_ok);
  CHECK(lonely_report.inverse_ok);
  CHECK_FALSE(lonely_report.connectivity_ok);
  CHECK(lonely_report.uncovered_pairs.front() == std::pair<int, int>{0, 1});

  // {E1} alone: E1 o E1 reaches (0,2), outside every member
  CoarseBase short_base;
  short_base.ground = ground_of(10);
  short_base.members.push_back({"E1", line_entourage(short_base.ground, 1)});
  BaseReport short_report = validate_base(short_base);
  CHECK_FALSE(short_report.composition_ok);
  REQUIRE(short_report.composition_failures.size() == 1);
  CHECK(short_report.composition_failures[0].left == "E1");
  CHECK(short_report.composition_failures[0].right == "E1");
  CHECK(short_report.composition_failures[0].missing.front().second ==
        std::pair<int, int>{0, 2});

  // missing diagonal is reported by member and point
  CoarseBase holed;
  holed.ground = ground_of(3);
  holed.members.push_back(
      {"halfdiag", Entourage::from_pairs(holed.ground, {{0, 0}, {1, 1}})});
  holed.members.push_back({"full", Entourage::full(holed.ground)});
  BaseReport holed_report = validate_base(holed);
  CHECK_FALSE(holed_report.diagonal_ok);
  CHECK(holed_report.diagonal_failures.front().name == "halfdiag");
  CHECK(holed_report.diagonal_failures.front().x == 2);

  // asymmetric member whose inverse no member dominates
  CoarseBase lop;
  lop.ground = ground_of(3);
  lop.members.push_back(
      {"up", Entourage::from_pairs(lop.ground, {{0, 0}, {1, 1}, {2, 2}, {0, 1}, {1, 2}, {0, 2}})});
  BaseReport lop_report = validate_base(lop);
  CHECK_FALSE(lop_report.inverse_ok);
  CHECK(lop_report.inverse_failures.front().name == "up");
}

TEST_CASE("macro uniformity") {
  CoarseBase base = line_base(10);
  PointMap id = PointMap::identity(base.ground);

  MacroUniformWitness same = is_macro_uniform(id, base, base);
  CHECK(same.ok());
  for (const auto& [source, target] : same.assignment) {
    CHECK(source == target);  // each member is the smallest containing itself
  }

  // any map into a one-point space is macro-uniform
  CoarseBase point;
  point.ground = GroundSet::make({"pt"});
  point.members.push_back({"Delta", Entourage::diagonal(point.ground)});
  PointMap collapse{base.ground, point.ground,
                    std::vector<int>(static_cast<size_t>(10), 0)};
  CHECK(is_macro_uniform(collapse, base, point).ok());

  // identity into {Delta, full}: everything fits in full
  CoarseBase coarse;
  coarse.ground = base.ground;
  coarse.members.push_back({"Delta", Entourage::diagonal(coarse.ground)});
  coarse.members.push_back({"full", Entourage::full(coarse.ground)});
  MacroUniformWitness into_coarse = is_macro_uniform(id, base, coarse);
  CHECK(into_coarse.ok());
  for (const auto& [source, target] : into_coarse.assignment) {
    if (source != "Delta") {
      CHECK(target == "full");
    }
  }

  // identity into {Delta} only: E1[0] does not fit in Delta[anything]
  CoarseBase tight;
  tight.ground = base.ground;
  tight.members.push_back({"Delta", Entourage::diagonal(tight.ground)});
  MacroUniformWitness failing = is_macro_uniform(id, base, tight);
  CHECK_FALSE(failing.ok());
  bool e1_failed = false;
  for (const auto& failure : failing.failures) {
    if (failure.entourage == "E1") {
      e1_failed = true;
    }
  }
  CHECK(e1_failed);
}

TEST_CASE("asymorphism") {
  CoarseBase base = line_base(10);
  PointMap id = PointMap::identity(base.ground);
  AsymorphismResult same = is_asymorphism(id, base, base);
  CHECK(same.ok);

  // relabeling x -> 9 - x maps the line base to itself
  std::vector<int> reversed(10);
  for (int x = 0; x < 10; ++x) {
    reversed[static_cast<size_t>(x)] = 9 - x;
  }
  PointMap mirror{base.ground, base.ground, reversed};
  AsymorphismResult mirrored = is_asymorphism(mirror, base, base);
  CHECK(mirrored.ok);

  CoarseBase tight;
  tight.ground = base.ground;
  tight.members.push_back({"Delta", Entourage::diagonal(tight.ground)});
  AsymorphismResult broken = is_asymorphism(id, base, tight);
  CHECK_FALSE(broken.ok);
  CHECK_FALSE(broken.forward.ok());

  PointMap squash{base.ground, base.ground,
                  std::vector<int>(static_cast<size_t>(10), 3)};
  CHECK_THROWS_AS(is_asymorphism(squash, base, base), Error);

  // macro-uniform maps compose assignment-wise
  CoarseBase coarse;
  coarse.ground = base.ground;
  coarse.members.push_back({"Delta", Entourage::diagonal(coarse.ground)});
  coarse.members.push_back({"full", Entourage::full(coarse.ground)});
  MacroUniformWitness first = is_macro_uniform(mirror, base, base);
  MacroUniformWitness second = is_macro_uniform(id, base, coarse);
  REQUIRE(first.ok());
  REQUIRE(second.ok());
  PointMap composed{base.ground, coarse.ground, reversed};
  CHECK(is_macro_uniform(composed, base, coarse).ok());
}

TEST_CASE("orbit entourage") {
  auto ground = ground_of(3);
  GeneratorSet only_id{"I", {Permutation::identity(ground)}};
  CHECK(orbit_entourage(only_id) == Entourage::diagonal(ground));

  GeneratorSet with_swap{
      "S", {Permutation::identity(ground), Permutation::transposition(ground, 0, 1)}};
  CHECK(orbit_entourage(with_swap) ==
        Entourage::from_pairs(ground, {{0, 0}, {1, 1}, {2, 2}, {0, 1}, {1, 0}}));
}

TEST_CASE("represent realises every member") {
  // one-point base
  CoarseBase point;
  point.ground = GroundSet::make({"pt"});
  point.members.push_back({"Delta", Entourage::diagonal(point.ground)});
  GSpaceRepresentation tiny = represent(point);
  REQUIRE(tiny.entries.size() == 1);
  REQUIRE(tiny.entries[0].generators.members.size() == 1);
  CHECK(tiny.entries[0].generators.members[0].is_identity());

  for (int n : {7, 10}) {
    CoarseBase base = line_base(n);
    GSpaceRepresentation rep = represent(base);
    REQUIRE(rep.entries.size() == base.members.size());
    for (size_t i = 0; i < rep.entries.size(); ++i) {
      CHECK_FALSE(rep.entries[i].symmetrized);
      CHECK(rep.entries[i].orbit == base.members[i].entourage);  // exact equality
      // family of F_E verifies against the ball map
      SetValuedMap balls = base.members[i].entourage.as_map();
      SelectorFamily family{SelectorFamily::Mode::Strict,
                            rep.entries[i].generators.members};
      CHECK(verify_family(balls, family).all_ok());
    }
    CHECK(rep.ideal_base.size() == base.members.size());
  }

  // invalid base is refused with InvalidBase
  CoarseBase lonely;
  lonely.ground = ground_of(2);
  lonely.members.push_back({"Delta", Entourage::diagonal(lonely.ground)});
  try {
    represent(lonely);
    FAIL("expected a throw");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidBase);
  }
}

TEST_CASE("represent handles asymmetric members") {
  // drift: pairs (x, x+1) plus diagonal, closed off with the full relation
  auto ground = ground_of(4);
  std::vector<std::pair<int, int>> drift_pairs;
  for (int x = 0; x < 4; ++x) {
    drift_pairs.emplace_back(x, x);
    if (x + 1 < 4) {
      drift_pairs.emplace_back(x, x + 1);
    }
  }
  CoarseBase base;
  base.ground = ground;
  base.members.push_back({"drift", Entourage::from_pairs(ground, drift_pairs)});
  base.members.push_back({"full", Entourage::full(ground)});
  REQUIRE(validate_base(base).ok());

  GSpaceRepresentation rep = represent(base, SelectorFamily::Mode::Relaxed);
  const Entourage& drift = base.members[0].entourage;
  CHECK(rep.entries[0].symmetrized);
  CHECK(rep.entries[0].orbit == drift.union_with(drift.inverse()));

  try {
    represent(base, SelectorFamily::Mode::Strict);
    FAIL("expected a throw");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotSymmetric);
  }
}

TEST_CASE("ideal closure check") {
  // singleton base of the full relation: everything is dominated at depth 1
  CoarseBase full_base;
  full_base.ground = ground_of(4);
  full_base.members.push_back({"full", Entourage::full(full_base.ground)});
  REQUIRE(validate_base(full_base).ok());
  GSpaceRepresentation full_rep = represent(full_base);
  IdealClosureReport full_report = ideal_closure_check(full_rep, 1);
  CHECK(full_report.all_dominated());
  CHECK(full_report.entries.size() == 1);
  CHECK(full_report.entries[0].dominated_by == "full");

  CoarseBase base = line_base(10);
  GSpaceRepresentation rep = represent(base);

  IdealClosureReport at_two = ideal_closure_check(rep, 2);
  CHECK(at_two.all_dominated());
  for (const auto& entry : at_two.entries) {
    CHECK(entry.witness == std::nullopt);
  }

  // depth 0 offers no candidate compositions at all
  IdealClosureReport at_zero = ideal_closure_check(rep, 0);
  CHECK_FALSE(at_zero.all_dominated());
  for (const auto& entry : at_zero.entries) {
    CHECK_FALSE(entry.dominated);
    CHECK(entry.witness.has_value());
  }

  // products of E1-families move points by at most 2: E2 dominates already
  // at depth 1
  IdealClosureReport at_one = ideal_closure_check(rep, 1);
  for (const auto& entry : at_one.entries) {
    if (entry.left == "E1" && entry.right == "E1") {
      CHECK(entry.dominated);
    }
  }
}
