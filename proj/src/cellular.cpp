#include "permsel/cellular.hpp"

#include <algorithm>
#include <deque>
#include <unordered_set>

#include "permsel/error.hpp"

namespace permsel {

std::optional<EquivalenceWitness> is_equivalence(const Entourage& entourage) {
  using Kind = EquivalenceWitness::Kind;
  if (auto x = entourage.missing_diagonal_at()) {
    return EquivalenceWitness{Kind::Reflexivity, *x, *x, -1};
  }
  for (int x = 0; x < entourage.size(); ++x) {
    for (int y : entourage.row(x)) {
      if (!entourage.contains(y, x)) {
        return EquivalenceWitness{Kind::Symmetry, x, y, -1};
      }
    }
  }
  for (int x = 0; x < entourage.size(); ++x) {
    for (int y : entourage.row(x)) {
      for (int z : entourage.row(y)) {
        if (!entourage.contains(x, z)) {
          return EquivalenceWitness{Kind::Transitivity, x, y, z};
        }
      }
    }
  }
  return std::nullopt;
}

PartitionEntourage PartitionEntourage::from_blocks(GroundPtr ground,
                                                   std::vector<std::vector<int>> blocks) {
  std::vector<bool> seen(static_cast<size_t>(ground->size()), false);
  for (auto& block : blocks) {
    std::sort(block.begin(), block.end());
    for (int x : block) {
      if (x < 0 || x >= ground->size()) {
        throw Error(ErrorKind::UnknownElement, "partition block element out of range");
      }
      if (seen[static_cast<size_t>(x)]) {
        throw Error(ErrorKind::DuplicateEntry, "element in two partition blocks",
                    ground->label(x));
      }
      seen[static_cast<size_t>(x)] = true;
    }
  }
  for (int x = 0; x < ground->size(); ++x) {
    if (!seen[static_cast<size_t>(x)]) {
      throw Error(ErrorKind::MissingEntry, "element missing from every block",
                  ground->label(x));
    }
  }
  std::sort(blocks.begin(), blocks.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return PartitionEntourage{std::move(ground), std::move(blocks)};
}

PartitionEntourage PartitionEntourage::from_entourage(const Entourage& entourage) {
  std::vector<std::vector<int>> blocks;
  std::vector<bool> seen(static_cast<size_t>(entourage.size()), false);
  for (int x = 0; x < entourage.size(); ++x) {
    if (seen[static_cast<size_t>(x)]) {
      continue;
    }
    const auto& block = entourage.row(x);  // the class of x, already sorted
    for (int y : block) {
      seen[static_cast<size_t>(y)] = true;
    }
    blocks.push_back(block);
  }
  return PartitionEntourage{entourage.ground(), std::move(blocks)};
}

int PartitionEntourage::block_of(int x) const {
  for (size_t i = 0; i < blocks.size(); ++i) {
    if (std::binary_search(blocks[i].begin(), blocks[i].end(), x)) {
      return static_cast<int>(i);
    }
  }
  return -1;
}

int PartitionEntourage::max_block_size() const {
  int best = 0;
  for (const auto& block : blocks) {
    best = std::max(best, static_cast<int>(block.size()));
  }
  return best;
}

Entourage PartitionEntourage::relation() const {
  std::vector<std::vector<int>> rows(static_cast<size_t>(ground->size()));
  for (const auto& block : blocks) {
    for (int x : block) {
      rows[static_cast<size_t>(x)] = block;
    }
  }
  return Entourage::from_rows(ground, std::move(rows));
}

PartitionBase partitions_from_base(const CoarseBase& base) {
  PartitionBase out;
  out.ground = base.ground;
  for (const auto& member : base.members) {
    if (auto witness = is_equivalence(member.entourage)) {
      std::string detail;
      switch (witness->kind) {
        case EquivalenceWitness::Kind::Reflexivity:
          detail = "misses (" + base.ground->label(witness->x) + ", " +
                   base.ground->label(witness->x) + ")";
          break;
        case EquivalenceWitness::Kind::Symmetry:
          detail = "lacks the reverse of (" + base.ground->label(witness->x) + ", " +
                   base.ground->label(witness->y) + ")";
          break;
        case EquivalenceWitness::Kind::Transitivity:
          detail = "misses (" + base.ground->label(witness->x) + ", " +
                   base.ground->label(witness->z) + ") despite the path through " +
                   base.ground->label(witness->y);
          break;
      }
      throw Error(ErrorKind::NotEquivalence,
                  "entourage '" + member.name + "' is not an equivalence: " + detail,
                  base.ground->label(witness->x), base.ground->label(witness->y));
    }
    PartitionEntourage partition = PartitionEntourage::from_entourage(member.entourage);
    int bound = partition.max_block_size();
    out.partitions.push_back({member.name, std::move(partition), bound});
  }
  return out;
}

GeneratorSet block_generators(const std::string& name,
                              const PartitionEntourage& partition) {
  GeneratorSet gens;
  gens.name = name;
  gens.members.push_back(Permutation::identity(partition.ground));
  for (const auto& block : partition.blocks) {
    for (size_t i = 0; i + 1 < block.size(); ++i) {
      gens.members.push_back(
          Permutation::transposition(partition.ground, block[i], block[i + 1]));
    }
  }
  return gens;
}

ClosureResult subgroup_closure(const GeneratorSet& generators, std::uint64_t cap) {
  if (generators.members.empty()) {
    throw Error(ErrorKind::InvalidBase, "closure of an empty generator set");
  }
  const GroundPtr& ground = generators.members.front().ground();
  std::vector<Permutation> step = generators.members;
  for (const auto& gen : generators.members) {
    if (!same_ground(gen.ground(), ground)) {
      throw Error(ErrorKind::GroundMismatch, "generators on different grounds");
    }
    Permutation inverse = gen.inverse();
    if (inverse != gen) {
      step.push_back(std::move(inverse));
    }
  }

  ClosureResult result;
  std::unordered_set<std::vector<int>, ForwardVectorHash> seen;
  std::deque<size_t> queue;
  Permutation identity = Permutation::identity(ground);
  seen.insert(identity.forward());
  result.elements.push_back(std::move(identity));
  queue.push_back(0);

  while (!queue.empty()) {
    const size_t at = queue.front();
    queue.pop_front();
    for (const auto& gen : step) {
      Permutation next = result.elements[at].compose(gen);
      if (!seen.insert(next.forward()).second) {
        continue;
      }
      if (result.elements.size() >= cap) {
        result.status = ClosureResult::Status::CapExceeded;
        return result;
      }
      result.elements.push_back(std::move(next));
      queue.push_back(result.elements.size() - 1);
    }
  }
  return result;
}

bool CellularRepresentation::all_ok() const {
  if (!full_group.finite()) {
    return false;
  }
  for (const auto& check : checks) {
    if (!check.closure_finite || !check.orbit_matches) {
      return false;
    }
  }
  return true;
}

CellularRepresentation represent_cellular(const CoarseBase& base, std::uint64_t cap) {
  CellularRepresentation out;
  out.partitions = partitions_from_base(base);
  out.rep.base = base;

  GeneratorSet combined;
  combined.name = "all";
  for (const auto& named : out.partitions.partitions) {
    GeneratorSet gens = block_generators(named.name, named.partition);
    ClosureResult closure = subgroup_closure(gens, cap);

    CellularCheck check;
    check.name = named.name;
    check.closure_finite = closure.finite();
    check.closure_order = closure.order();

    RepresentationEntry entry;
    entry.generators = gens;
    entry.bounds = named.partition.relation().as_map().degree_bounds();
    if (closure.finite()) {
      GeneratorSet group{named.name, closure.elements};
      entry.orbit = orbit_entourage(group);
      check.orbit_matches = entry.orbit == named.partition.relation();
      out.rep.ideal_base.push_back(std::move(group));
    } else {
      entry.orbit = orbit_entourage(gens);
      check.orbit_matches = false;
      out.rep.ideal_base.push_back(gens);
    }
    out.rep.entries.push_back(std::move(entry));
    out.checks.push_back(check);

    for (const auto& perm : gens.members) {
      if (combined.members.empty() || !perm.is_identity()) {
        combined.members.push_back(perm);
      }
    }
  }

  if (!combined.members.empty()) {
    out.full_group = subgroup_closure(combined, cap);
  }
  return out;
}

}  // namespace permsel
