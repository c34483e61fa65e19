#include "permsel/ballean.hpp"

#include <algorithm>
#include <numeric>

#include "permsel/error.hpp"

namespace permsel {

namespace {

void sort_unique(std::vector<int>& row) {
  std::sort(row.begin(), row.end());
  row.erase(std::unique(row.begin(), row.end()), row.end());
}

}  // namespace

Entourage Entourage::from_pairs(GroundPtr ground,
                                const std::vector<std::pair<int, int>>& pairs) {
  std::vector<std::vector<int>> rows(static_cast<size_t>(ground->size()));
  for (auto [x, y] : pairs) {
    if (x < 0 || x >= ground->size() || y < 0 || y >= ground->size()) {
      throw Error(ErrorKind::UnknownElement, "entourage pair out of range");
    }
    rows[static_cast<size_t>(x)].push_back(y);
  }
  for (auto& row : rows) {
    sort_unique(row);
  }
  Entourage e;
  e.ground_ = std::move(ground);
  e.rows_ = std::move(rows);
  return e;
}

Entourage Entourage::from_rows(GroundPtr ground, std::vector<std::vector<int>> rows) {
  if (static_cast<int>(rows.size()) != ground->size()) {
    throw Error(ErrorKind::UnknownElement, "entourage row count does not match ground");
  }
  for (auto& row : rows) {
    for (int y : row) {
      if (y < 0 || y >= ground->size()) {
        throw Error(ErrorKind::UnknownElement, "entourage pair out of range");
      }
    }
    sort_unique(row);
  }
  Entourage e;
  e.ground_ = std::move(ground);
  e.rows_ = std::move(rows);
  return e;
}

Entourage Entourage::diagonal(GroundPtr ground) {
  std::vector<std::vector<int>> rows(static_cast<size_t>(ground->size()));
  for (int x = 0; x < ground->size(); ++x) {
    rows[static_cast<size_t>(x)].push_back(x);
  }
  Entourage e;
  e.ground_ = std::move(ground);
  e.rows_ = std::move(rows);
  return e;
}

Entourage Entourage::full(GroundPtr ground) {
  std::vector<int> all(static_cast<size_t>(ground->size()));
  std::iota(all.begin(), all.end(), 0);
  std::vector<std::vector<int>> rows(static_cast<size_t>(ground->size()), all);
  Entourage e;
  e.ground_ = std::move(ground);
  e.rows_ = std::move(rows);
  return e;
}

bool Entourage::contains(int x, int y) const {
  const auto& row = rows_[static_cast<size_t>(x)];
  return std::binary_search(row.begin(), row.end(), y);
}

int Entourage::pair_count() const {
  int count = 0;
  for (const auto& row : rows_) {
    count += static_cast<int>(row.size());
  }
  return count;
}

std::vector<std::pair<int, int>> Entourage::pairs() const {
  std::vector<std::pair<int, int>> out;
  out.reserve(static_cast<size_t>(pair_count()));
  for (int x = 0; x < size(); ++x) {
    for (int y : rows_[static_cast<size_t>(x)]) {
      out.emplace_back(x, y);
    }
  }
  return out;
}

bool Entourage::has_diagonal() const { return !missing_diagonal_at().has_value(); }

std::optional<int> Entourage::missing_diagonal_at() const {
  for (int x = 0; x < size(); ++x) {
    if (!contains(x, x)) {
      return x;
    }
  }
  return std::nullopt;
}

bool Entourage::is_symmetric() const {
  for (int x = 0; x < size(); ++x) {
    for (int y : rows_[static_cast<size_t>(x)]) {
      if (!contains(y, x)) {
        return false;
      }
    }
  }
  return true;
}

bool Entourage::subset_of(const Entourage& other) const {
  return !first_pair_not_in(other).has_value();
}

std::optional<std::pair<int, int>> Entourage::first_pair_not_in(
    const Entourage& other) const {
  for (int x = 0; x < size(); ++x) {
    for (int y : rows_[static_cast<size_t>(x)]) {
      if (!other.contains(x, y)) {
        return std::pair<int, int>{x, y};
      }
    }
  }
  return std::nullopt;
}

const std::vector<int>& Entourage::ball(int x) const {
  if (x < 0 || x >= size()) {
    throw Error(ErrorKind::UnknownElement, "ball center out of range");
  }
  return rows_[static_cast<size_t>(x)];
}

std::vector<int> Entourage::ball_set(const std::vector<int>& points) const {
  std::vector<int> out;
  for (int a : points) {
    const auto& row = ball(a);
    out.insert(out.end(), row.begin(), row.end());
  }
  sort_unique(out);
  return out;
}

Entourage Entourage::compose(const Entourage& other) const {
  if (!same_ground(ground_, other.ground_)) {
    throw Error(ErrorKind::GroundMismatch, "composing entourages of different grounds");
  }
  std::vector<std::vector<int>> rows(rows_.size());
  for (int x = 0; x < size(); ++x) {
    auto& out = rows[static_cast<size_t>(x)];
    for (int z : rows_[static_cast<size_t>(x)]) {
      const auto& tail = other.rows_[static_cast<size_t>(z)];
      out.insert(out.end(), tail.begin(), tail.end());
    }
    sort_unique(out);
  }
  Entourage e;
  e.ground_ = ground_;
  e.rows_ = std::move(rows);
  return e;
}

Entourage Entourage::inverse() const {
  std::vector<std::vector<int>> rows(rows_.size());
  for (int x = 0; x < size(); ++x) {
    for (int y : rows_[static_cast<size_t>(x)]) {
      rows[static_cast<size_t>(y)].push_back(x);
    }
  }
  Entourage e;
  e.ground_ = ground_;
  e.rows_ = std::move(rows);
  return e;
}

Entourage Entourage::union_with(const Entourage& other) const {
  if (!same_ground(ground_, other.ground_)) {
    throw Error(ErrorKind::GroundMismatch, "union of entourages of different grounds");
  }
  std::vector<std::vector<int>> rows = rows_;
  for (int x = 0; x < size(); ++x) {
    const auto& extra = other.rows_[static_cast<size_t>(x)];
    rows[static_cast<size_t>(x)].insert(rows[static_cast<size_t>(x)].end(),
                                        extra.begin(), extra.end());
    sort_unique(rows[static_cast<size_t>(x)]);
  }
  Entourage e;
  e.ground_ = ground_;
  e.rows_ = std::move(rows);
  return e;
}

SetValuedMap Entourage::as_map() const { return SetValuedMap::from_rows(ground_, rows_); }

const Entourage* CoarseBase::find(const std::string& name) const {
  for (const auto& member : members) {
    if (member.name == name) {
      return &member.entourage;
    }
  }
  return nullptr;
}

BaseReport validate_base(const CoarseBase& base) {
  BaseReport report;
  report.diagonal_ok = true;
  report.composition_ok = true;
  report.inverse_ok = true;

  for (const auto& member : base.members) {
    if (auto x = member.entourage.missing_diagonal_at()) {
      report.diagonal_ok = false;
      report.diagonal_failures.push_back({member.name, *x});
    }
  }

  auto dominated = [&](const Entourage& candidate)
      -> std::optional<std::vector<std::pair<std::string, std::pair<int, int>>>> {
    std::vector<std::pair<std::string, std::pair<int, int>>> missing;
    for (const auto& member : base.members) {
      auto gap = candidate.first_pair_not_in(member.entourage);
      if (!gap) {
        return std::nullopt;  // dominated by this member
      }
      missing.emplace_back(member.name, *gap);
    }
    return missing;
  };

  for (const auto& left : base.members) {
    for (const auto& right : base.members) {
      if (auto missing = dominated(left.entourage.compose(right.entourage))) {
        report.composition_ok = false;
        report.composition_failures.push_back({left.name, right.name, std::move(*missing)});
      }
    }
  }
  for (const auto& member : base.members) {
    if (auto missing = dominated(member.entourage.inverse())) {
      report.inverse_ok = false;
      report.inverse_failures.push_back({member.name, std::move(*missing)});
    }
  }

  const int n = base.ground ? base.ground->size() : 0;
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      bool covered = false;
      for (const auto& member : base.members) {
        if (member.entourage.contains(x, y)) {
          covered = true;
          break;
        }
      }
      if (!covered) {
        report.uncovered_pairs.emplace_back(x, y);
      }
    }
  }
  report.connectivity_ok = report.uncovered_pairs.empty();
  return report;
}

PointMap PointMap::identity(GroundPtr ground) {
  std::vector<int> forward(static_cast<size_t>(ground->size()));
  std::iota(forward.begin(), forward.end(), 0);
  return PointMap{ground, ground, std::move(forward)};
}

bool PointMap::is_bijective() const {
  if (!src || !dst || src->size() != dst->size() ||
      static_cast<int>(forward.size()) != src->size()) {
    return false;
  }
  std::vector<bool> hit(forward.size(), false);
  for (int y : forward) {
    if (y < 0 || y >= dst->size() || hit[static_cast<size_t>(y)]) {
      return false;
    }
    hit[static_cast<size_t>(y)] = true;
  }
  return true;
}

PointMap PointMap::inverse() const {
  if (!is_bijective()) {
    throw Error(ErrorKind::NotBijective, "point map is not a bijection");
  }
  std::vector<int> back(forward.size());
  for (size_t x = 0; x < forward.size(); ++x) {
    back[static_cast<size_t>(forward[x])] = static_cast<int>(x);
  }
  return PointMap{dst, src, std::move(back)};
}

MacroUniformWitness is_macro_uniform(const PointMap& f, const CoarseBase& src,
                                     const CoarseBase& dst) {
  // Containment is monotone in the target, so first-fit over the base
  // sorted by size already finds an assignment whenever one exists.
  std::vector<size_t> order(dst.members.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return dst.members[a].entourage.pair_count() < dst.members[b].entourage.pair_count();
  });

  MacroUniformWitness witness;
  for (const auto& source : src.members) {
    const std::string* assigned = nullptr;
    std::pair<int, int> violation{-1, -1};
    for (size_t index : order) {
      const auto& target = dst.members[index].entourage;
      bool fits = true;
      for (int x = 0; x < source.entourage.size() && fits; ++x) {
        for (int y : source.entourage.row(x)) {
          if (!target.contains(f.apply(x), f.apply(y))) {
            fits = false;
            violation = {x, y};
            break;
          }
        }
      }
      if (fits) {
        assigned = &dst.members[index].name;
        break;
      }
    }
    if (assigned) {
      witness.assignment.emplace_back(source.name, *assigned);
    } else {
      witness.failures.push_back({source.name, violation.first, violation.second});
    }
  }
  return witness;
}

AsymorphismResult is_asymorphism(const PointMap& f, const CoarseBase& src,
                                 const CoarseBase& dst) {
  if (!f.is_bijective()) {
    throw Error(ErrorKind::NotBijective, "asymorphism check needs a bijection");
  }
  AsymorphismResult result;
  result.forward = is_macro_uniform(f, src, dst);
  result.backward = is_macro_uniform(f.inverse(), dst, src);
  result.ok = result.forward.ok() && result.backward.ok();
  return result;
}

Entourage orbit_entourage(const GeneratorSet& generators) {
  if (generators.members.empty()) {
    throw Error(ErrorKind::InvalidBase, "orbit of an empty generator set");
  }
  const GroundPtr& ground = generators.members.front().ground();
  std::vector<std::vector<int>> rows(static_cast<size_t>(ground->size()));
  for (const auto& perm : generators.members) {
    for (int x = 0; x < perm.size(); ++x) {
      rows[static_cast<size_t>(x)].push_back(perm.apply(x));
    }
  }
  return Entourage::from_rows(ground, std::move(rows));
}

GSpaceRepresentation represent(const CoarseBase& base, SelectorFamily::Mode mode,
                               int threads) {
  BaseReport report = validate_base(base);
  if (!report.ok()) {
    throw Error(ErrorKind::InvalidBase, "base axioms fail; run validate_base for details");
  }
  GSpaceRepresentation rep;
  rep.base = base;
  for (const auto& member : base.members) {
    RepresentationEntry entry;
    entry.generators.name = member.name;
    const bool symmetric = member.entourage.is_symmetric();
    entry.symmetrized = !symmetric;
    // x -> E[x]; reflexive because every member carries the diagonal.
    SetValuedMap balls = member.entourage.as_map();
    if (mode == SelectorFamily::Mode::Strict && !symmetric) {
      auto violation = balls.symmetry_violation();
      throw Error(ErrorKind::NotSymmetric,
                  "entourage '" + member.name + "' is not symmetric",
                  base.ground->label(violation->first),
                  base.ground->label(violation->second));
    }
    SelectorFamily family = decompose(
        balls, symmetric ? SelectorFamily::Mode::Strict : SelectorFamily::Mode::Relaxed,
        threads);
    entry.bounds = (symmetric ? balls : balls.symmetrize()).degree_bounds();
    entry.generators.members = std::move(family.perms);
    entry.orbit = orbit_entourage(entry.generators);
    rep.ideal_base.push_back(entry.generators);
    rep.entries.push_back(std::move(entry));
  }
  return rep;
}

bool IdealClosureReport::all_dominated() const {
  for (const auto& entry : entries) {
    if (!entry.dominated) {
      return false;
    }
  }
  return true;
}

IdealClosureReport ideal_closure_check(const GSpaceRepresentation& rep, int depth) {
  IdealClosureReport report;
  report.depth = depth;

  // Composition words over base members, lengths 1..depth.
  std::vector<std::pair<std::string, Entourage>> candidates;
  std::vector<std::pair<std::string, Entourage>> layer;
  for (int length = 1; length <= depth; ++length) {
    std::vector<std::pair<std::string, Entourage>> next;
    if (length == 1) {
      for (const auto& member : rep.base.members) {
        next.emplace_back(member.name, member.entourage);
      }
    } else {
      for (const auto& [word, entourage] : layer) {
        for (const auto& member : rep.base.members) {
          next.emplace_back(word + "*" + member.name, entourage.compose(member.entourage));
        }
      }
    }
    candidates.insert(candidates.end(), next.begin(), next.end());
    layer = std::move(next);
  }

  const int n = rep.base.ground ? rep.base.ground->size() : 0;
  for (const auto& left : rep.entries) {
    for (const auto& right : rep.entries) {
      // orbit of { p o q^-1 } without materializing the product set
      std::vector<std::vector<int>> rows(static_cast<size_t>(n));
      for (const auto& q : right.generators.members) {
        Permutation q_inverse = q.inverse();
        for (const auto& p : left.generators.members) {
          for (int x = 0; x < n; ++x) {
            rows[static_cast<size_t>(x)].push_back(p.apply(q_inverse.apply(x)));
          }
        }
      }
      Entourage orbit = Entourage::from_rows(rep.base.ground, std::move(rows));

      IdealClosureEntry entry;
      entry.left = left.generators.name;
      entry.right = right.generators.name;
      int best_overlap = -1;
      std::optional<std::pair<int, int>> best_witness;
      for (const auto& [word, candidate] : candidates) {
        auto gap = orbit.first_pair_not_in(candidate);
        if (!gap) {
          entry.dominated = true;
          entry.dominated_by = word;
          break;
        }
        int overlap = 0;
        for (int x = 0; x < n; ++x) {
          for (int y : orbit.row(x)) {
            if (candidate.contains(x, y)) {
              ++overlap;
            }
          }
        }
        if (overlap > best_overlap) {
          best_overlap = overlap;
          best_witness = gap;
        }
      }
      if (!entry.dominated) {
        if (best_witness) {
          entry.witness = best_witness;  // gap of the closest candidate
        } else if (orbit.pair_count() > 0) {
          entry.witness = orbit.pairs().front();  // no candidates at this depth
        }
      }
      report.entries.push_back(std::move(entry));
    }
  }
  return report;
}

}  // namespace permsel
