#include "permsel/decompose.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <thread>
#include <unordered_set>

#include "permsel/error.hpp"

namespace permsel {

const char* mode_name(SelectorFamily::Mode mode) {
  return mode == SelectorFamily::Mode::Strict ? "strict" : "relaxed";
}

int ConflictGraph::max_degree() const {
  int degree = 0;
  for (const auto& row : adjacency) {
    degree = std::max(degree, static_cast<int>(row.size()));
  }
  return degree;
}

ConflictGraph conflict_graph(const SetValuedMap& map) {
  const int n = map.size();
  // x and y conflict iff their images share a point, i.e. both appear in
  // some preimage list; each such list is a clique. Every neighbour of x
  // lies in F^-1(F(x)), so degrees stay below m^2.
  std::vector<std::vector<int>> preimage(static_cast<size_t>(n));
  for (int x = 0; x < n; ++x) {
    for (int y : map.image(x)) {
      preimage[static_cast<size_t>(y)].push_back(x);
    }
  }
  std::vector<std::vector<int>> adjacency(static_cast<size_t>(n));
  for (const auto& bucket : preimage) {
    for (size_t i = 0; i < bucket.size(); ++i) {
      for (size_t j = i + 1; j < bucket.size(); ++j) {
        adjacency[static_cast<size_t>(bucket[i])].push_back(bucket[j]);
        adjacency[static_cast<size_t>(bucket[j])].push_back(bucket[i]);
      }
    }
  }
  for (auto& row : adjacency) {
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
  }
  return ConflictGraph{map.ground(), std::move(adjacency)};
}

bool VertexColoring::is_proper(const ConflictGraph& graph) const {
  for (size_t x = 0; x < graph.adjacency.size(); ++x) {
    for (int y : graph.adjacency[x]) {
      if (color[x] == color[static_cast<size_t>(y)]) {
        return false;
      }
    }
  }
  return true;
}

VertexColoring greedy_color(const ConflictGraph& graph) {
  const int n = static_cast<int>(graph.adjacency.size());
  VertexColoring coloring;
  coloring.color.assign(static_cast<size_t>(n), -1);
  std::vector<char> used;
  for (int x = 0; x < n; ++x) {
    const auto& neighbours = graph.adjacency[static_cast<size_t>(x)];
    used.assign(neighbours.size() + 1, 0);
    for (int y : neighbours) {
      int c = coloring.color[static_cast<size_t>(y)];
      if (c >= 0 && c < static_cast<int>(used.size())) {
        used[static_cast<size_t>(c)] = 1;
      }
    }
    int c = 0;
    while (used[static_cast<size_t>(c)]) {
      ++c;
    }
    coloring.color[static_cast<size_t>(x)] = c;
    coloring.color_count = std::max(coloring.color_count, c + 1);
  }
  return coloring;
}

namespace {

// Transposition schedule of one component: swaps[c][j] lists the pairs
// (x, j-th enumerated element of F(x)) over the component's color-c
// vertices. Within one (c, j) the supports are pairwise disjoint, since
// same-colored vertices have disjoint images and every transposition stays
// inside F(x).
struct ComponentPlan {
  int colors = 0;
  std::vector<std::vector<std::vector<std::pair<int, int>>>> swaps;
};

ComponentPlan plan_component(const SetValuedMap& map, const ConflictGraph& graph,
                             const std::vector<int>& block, int max_image) {
  ComponentPlan plan;
  // Greedy coloring restricted to the block. Neighbours never leave the
  // block, so the colors agree with a whole-ground greedy scan.
  std::vector<std::pair<int, int>> colored;  // (vertex, color), block order
  colored.reserve(block.size());
  std::vector<char> used;
  for (int x : block) {
    used.assign(graph.adjacency[static_cast<size_t>(x)].size() + 1, 0);
    for (auto& [y, c] : colored) {
      if (std::binary_search(graph.adjacency[static_cast<size_t>(x)].begin(),
                             graph.adjacency[static_cast<size_t>(x)].end(), y) &&
          c < static_cast<int>(used.size())) {
        used[static_cast<size_t>(c)] = 1;
      }
    }
    int c = 0;
    while (used[static_cast<size_t>(c)]) {
      ++c;
    }
    colored.emplace_back(x, c);
    plan.colors = std::max(plan.colors, c + 1);
  }
  plan.swaps.assign(static_cast<size_t>(plan.colors),
                    std::vector<std::vector<std::pair<int, int>>>(
                        static_cast<size_t>(max_image)));
  std::vector<int> enumeration;
  for (auto& [x, c] : colored) {
    // F(x) enumerated with x first, the rest in ground order; positions
    // past |F(x)| repeat x and contribute nothing.
    enumeration.assign(1, x);
    for (int y : map.image(x)) {
      if (y != x) {
        enumeration.push_back(y);
      }
    }
    for (int j = 1; j < static_cast<int>(enumeration.size()); ++j) {
      plan.swaps[static_cast<size_t>(c)][static_cast<size_t>(j)].emplace_back(
          x, enumeration[static_cast<size_t>(j)]);
    }
  }
  return plan;
}

}  // namespace

SelectorFamily decompose(const SetValuedMap& map, SelectorFamily::Mode mode, int threads) {
  SetValuedMap symmetrized;
  const SetValuedMap* source = &map;
  if (mode == SelectorFamily::Mode::Strict) {
    if (auto violation = map.symmetry_violation()) {
      const auto& ground = *map.ground();
      throw Error(ErrorKind::NotSymmetric,
                  "strict decomposition needs a symmetric map: '" +
                      ground.label(violation->second) + "' is in the image of '" +
                      ground.label(violation->first) + "' but not conversely",
                  ground.label(violation->first), ground.label(violation->second));
    }
  } else {
    symmetrized = map.symmetrize();
    source = &symmetrized;
  }

  const int n = source->size();
  const int max_image = source->degree_bounds().max_image;
  ConflictGraph graph = conflict_graph(*source);
  ComponentPartition components = source->components();

  std::vector<ComponentPlan> plans(components.blocks.size());
  auto run = [&](size_t index) {
    plans[index] = plan_component(*source, graph, components.blocks[index], max_image);
  };
  if (threads > 1 && components.blocks.size() > 1) {
    std::atomic<size_t> next{0};
    auto worker = [&] {
      for (size_t index = next.fetch_add(1); index < plans.size();
           index = next.fetch_add(1)) {
        run(index);
      }
    };
    std::vector<std::thread> pool;
    const size_t count = std::min<size_t>(static_cast<size_t>(threads), plans.size());
    pool.reserve(count);
    for (size_t i = 0; i < count; ++i) {
      pool.emplace_back(worker);
    }
    for (auto& thread : pool) {
      thread.join();
    }
  } else {
    for (size_t index = 0; index < plans.size(); ++index) {
      run(index);
    }
  }

  int total_colors = 0;
  for (const auto& plan : plans) {
    total_colors = std::max(total_colors, plan.colors);
  }

  SelectorFamily family;
  family.mode = mode;
  std::unordered_set<std::vector<int>, ForwardVectorHash> seen;
  std::vector<int> forward(static_cast<size_t>(n));
  auto emit = [&](const std::vector<int>& image) {
    if (seen.insert(image).second) {
      family.perms.push_back(Permutation::from_forward(source->ground(), image));
    }
  };
  if (n > 0) {
    std::iota(forward.begin(), forward.end(), 0);
    emit(forward);  // the identity realises x in F(x)
  }
  for (int c = 0; c < total_colors; ++c) {
    for (int j = 1; j < max_image; ++j) {
      std::iota(forward.begin(), forward.end(), 0);
      for (const auto& plan : plans) {
        if (c >= plan.colors) {
          continue;
        }
        for (auto [a, b] : plan.swaps[static_cast<size_t>(c)][static_cast<size_t>(j)]) {
          std::swap(forward[static_cast<size_t>(a)], forward[static_cast<size_t>(b)]);
        }
      }
      emit(forward);
    }
  }
  return family;
}

VerificationReport verify_family(const SetValuedMap& map, const SelectorFamily& family) {
  for (const auto& perm : family.perms) {
    if (!same_ground(map.ground(), perm.ground())) {
      throw Error(ErrorKind::GroundMismatch,
                  "family permutation ground does not match the map ground");
    }
  }

  const SetValuedMap source =
      family.mode == SelectorFamily::Mode::Strict ? map : map.symmetrize();
  const int n = source.size();

  VerificationReport report;
  report.bijective_ok = true;
  report.selector_ok = true;
  report.coverage_ok = true;
  report.family_size = family.size();

  std::vector<bool> hit;
  for (int i = 0; i < family.size(); ++i) {
    const auto& forward = family.perms[static_cast<size_t>(i)].forward();
    hit.assign(static_cast<size_t>(n), false);
    for (int x = 0; x < n; ++x) {
      int y = forward[static_cast<size_t>(x)];
      if (y < 0 || y >= n || hit[static_cast<size_t>(y)]) {
        report.bijective_ok = false;
        report.witnesses.push_back(
            {VerificationWitness::Kind::NotBijective, i, x, y});
      } else {
        hit[static_cast<size_t>(y)] = true;
      }
      if (!source.contains(x, y)) {
        report.selector_ok = false;
        report.witnesses.push_back({VerificationWitness::Kind::NotSelector, i, x, y});
      }
    }
  }

  std::vector<int> orbit;
  for (int x = 0; x < n; ++x) {
    orbit.clear();
    for (const auto& perm : family.perms) {
      orbit.push_back(perm.apply(x));
    }
    std::sort(orbit.begin(), orbit.end());
    orbit.erase(std::unique(orbit.begin(), orbit.end()), orbit.end());
    for (int y : source.image(x)) {
      if (!std::binary_search(orbit.begin(), orbit.end(), y)) {
        report.coverage_ok = false;
        report.witnesses.push_back({VerificationWitness::Kind::MissingCoverage, -1, x, y});
      }
    }
  }

  DegreeBounds bounds = source.degree_bounds();
  report.size_limit = bounds.m * bounds.m * bounds.max_image;
  report.size_bound_ok = report.family_size <= report.size_limit;
  return report;
}

}  // namespace permsel
