// Acceptance gate: one line per criterion, exit code = number of failures.
#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "permsel/ballean.hpp"
#include "permsel/cellular.hpp"
#include "permsel/decompose.hpp"
#include "permsel/document.hpp"
#include "permsel/error.hpp"
#include "permsel/oracle.hpp"

#include "ballean_util.hpp"
#include "test_util.hpp"

using namespace permsel;

namespace {

struct Line {
  bool ok = true;
  std::string note;
};

Line pass(std::string note) { return {true, std::move(note)}; }
Line fail(std::string note) { return {false, std::move(note)}; }

double ms_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                   start)
      .count();
}

// ---- criteria 1 and 2: round trip and size bound on the same instances ----

std::pair<Line, Line> round_trip_and_bounds() {
  constexpr int kInstances = 500;
  constexpr double kBudgetMs = 2000.0;
  std::mt19937 rng(20260814);
  double worst_ms = 0.0;
  int worst_family = 0;
  std::string round_trip_failure;
  std::string bound_failure;
  for (int i = 0; i < kInstances; ++i) {
    SetValuedMap map = test_util::random_symmetric_map(rng, 200, 8);
    auto start = std::chrono::steady_clock::now();
    SelectorFamily family = decompose(map, SelectorFamily::Mode::Strict);
    double elapsed = ms_since(start);
    worst_ms = std::max(worst_ms, elapsed);
    if (elapsed > kBudgetMs && round_trip_failure.empty()) {
      round_trip_failure = "instance " + std::to_string(i) + " took " +
                           std::to_string(elapsed) + " ms";
    }
    VerificationReport report = verify_family(map, family);
    if (!report.all_ok() && round_trip_failure.empty()) {
      round_trip_failure = "instance " + std::to_string(i) + " failed verification";
    }
    DegreeBounds bounds = map.degree_bounds();
    int d = std::max(bounds.max_image, bounds.max_preimage);
    long limit = static_cast<long>(d + 1) * (d + 1) * bounds.max_image;
    if (family.size() > limit && bound_failure.empty()) {
      bound_failure = "instance " + std::to_string(i) + ": family " +
                      std::to_string(family.size()) + " > " + std::to_string(limit);
    }
    ConflictGraph graph = conflict_graph(map);
    if (graph.max_degree() >= (d + 1) * (d + 1) && bound_failure.empty()) {
      bound_failure = "instance " + std::to_string(i) + ": conflict degree " +
                      std::to_string(graph.max_degree());
    }
    worst_family = std::max(worst_family, family.size());
  }
  char note[128];
  std::snprintf(note, sizeof note, "%d maps, worst decompose %.1f ms", kInstances,
                worst_ms);
  Line round_trip = round_trip_failure.empty() ? pass(note) : fail(round_trip_failure);
  Line bound = bound_failure.empty()
                   ? pass("largest family " + std::to_string(worst_family) +
                          ", all degrees audited")
                   : fail(bound_failure);
  return {round_trip, bound};
}

// ---- criterion 3: decompose against the exhaustive selector oracle ----

Line oracle_equivalence() {
  auto start = std::chrono::steady_clock::now();
  std::vector<SetValuedMap> maps;
  for (int n = 1; n <= 4; ++n) {
    for (SetValuedMap& map : test_util::all_symmetric_maps(n)) {
      maps.push_back(std::move(map));
    }
  }
  const size_t exhaustive = maps.size();
  if (exhaustive != 75) {
    return fail("expected 75 exhaustive maps, got " + std::to_string(exhaustive));
  }
  std::mt19937 rng(7);
  for (int i = 0; i < 200; ++i) {
    maps.push_back(test_util::random_symmetric_map(rng, 6, 3 + i % 4));
  }
  for (size_t index = 0; index < maps.size(); ++index) {
    const SetValuedMap& map = maps[index];
    SelectorFamily family = decompose(map, SelectorFamily::Mode::Strict);

    std::set<std::pair<int, int>> covered;
    for (const Permutation& perm : family.perms) {
      for (int x = 0; x < map.size(); ++x) {
        covered.emplace(x, perm.apply(x));
      }
    }
    std::set<std::pair<int, int>> wanted;
    for (int x = 0; x < map.size(); ++x) {
      for (int y : map.image(x)) {
        wanted.emplace(x, y);
      }
    }
    if (covered != wanted) {
      return fail("map " + std::to_string(index) + ": covered pairs differ");
    }

    std::vector<Permutation> all = enumerate_bijective_selectors(map);
    std::set<Permutation> pool(all.begin(), all.end());
    for (const Permutation& perm : family.perms) {
      if (pool.find(perm) == pool.end()) {
        return fail("map " + std::to_string(index) +
                    ": family member is not a bijective selector");
      }
    }

    MinFamilyResult minimum = min_family_oracle(map);
    if (!minimum.feasible) {
      return fail("map " + std::to_string(index) + ": oracle claims infeasible");
    }
    if (minimum.size > family.size()) {
      return fail("map " + std::to_string(index) + ": oracle minimum " +
                  std::to_string(minimum.size) + " above family size " +
                  std::to_string(family.size()));
    }
  }
  double elapsed = ms_since(start);
  if (elapsed > 5 * 60 * 1000.0) {
    return fail("suite took " + std::to_string(elapsed) + " ms");
  }
  char note[128];
  std::snprintf(note, sizeof note, "%zu maps in %.0f ms", maps.size(), elapsed);
  return pass(note);
}

// ---- criterion 4: the two-point impossibility witness ----

Line impossibility_guard() {
  GroundPtr ground = GroundSet::make({"1", "2"});
  SetValuedMap map = SetValuedMap::build(ground, {{"1", {"1", "2"}}, {"2", {"2"}}});
  bool rejected = false;
  try {
    decompose(map, SelectorFamily::Mode::Strict);
  } catch (const Error& error) {
    rejected = error.kind() == ErrorKind::NotSymmetric;
  }
  if (!rejected) {
    return fail("strict mode accepted the asymmetric map");
  }
  MinFamilyResult minimum = min_family_oracle(map);
  if (minimum.feasible) {
    return fail("oracle found a cover");
  }
  if (minimum.uncoverable != std::make_pair(0, 1) ||
      ground->label(minimum.uncoverable.first) != "1" ||
      ground->label(minimum.uncoverable.second) != "2") {
    return fail("wrong witness pair");
  }
  return pass("strict rejection and infeasible witness (1,2)");
}

// ---- criterion 5: the ten-point line ----

Line line_ballean() {
  CoarseBase base = test_util::line_base(10);
  BaseReport report = validate_base(base);
  if (!report.ok()) {
    return fail("base axioms failed");
  }
  GSpaceRepresentation rep = represent(base);
  for (size_t i = 0; i < base.members.size(); ++i) {
    if (rep.entries[i].symmetrized) {
      return fail(base.members[i].name + " needed symmetrization");
    }
    if (rep.entries[i].orbit != base.members[i].entourage) {
      return fail("orbit of " + base.members[i].name + " differs from the member");
    }
  }
  IdealClosureReport ideal = ideal_closure_check(rep, 2);
  if (!ideal.all_dominated()) {
    return fail("undominated product at depth 2");
  }
  return pass(std::to_string(base.members.size()) + " members, " +
              std::to_string(ideal.entries.size()) + " products dominated");
}

// ---- criterion 6: sampled partition bases ----

std::vector<std::vector<int>> random_partition(std::mt19937& rng, int n) {
  std::vector<int> order(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    order[static_cast<size_t>(i)] = i;
  }
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<std::vector<int>> blocks;
  size_t used = 0;
  while (used < order.size()) {
    int most = std::min<int>(4, static_cast<int>(order.size() - used));
    std::uniform_int_distribution<int> width(1, most);
    int take = width(rng);
    blocks.emplace_back(order.begin() + static_cast<long>(used),
                        order.begin() + static_cast<long>(used) + take);
    used += static_cast<size_t>(take);
  }
  return blocks;
}

Line partition_bases() {
  std::mt19937 rng(99);
  std::uniform_int_distribution<int> ground_size(1, 8);
  for (int round = 0; round < 100; ++round) {
    int n = ground_size(rng);
    GroundPtr ground = test_util::ground_of(n);
    CoarseBase base{ground, {}};
    int count = 1 + round % 3;
    for (int k = 0; k < count; ++k) {
      PartitionEntourage partition =
          PartitionEntourage::from_blocks(ground, random_partition(rng, n));
      base.members.push_back({"P" + std::to_string(k + 1), partition.relation()});
    }
    CellularRepresentation cellular = represent_cellular(base);
    for (size_t i = 0; i < cellular.checks.size(); ++i) {
      const CellularCheck& check = cellular.checks[i];
      if (!check.closure_finite || !check.orbit_matches) {
        return fail("round " + std::to_string(round) + ", " + check.name);
      }
      std::uint64_t product = 1;
      for (const auto& block :
           cellular.partitions.partitions[i].partition.blocks) {
        std::uint64_t factorial = 1;
        for (std::uint64_t j = 2; j <= block.size(); ++j) {
          factorial *= j;
        }
        product *= factorial;
      }
      if (check.closure_order == 0 || product % check.closure_order != 0) {
        return fail("round " + std::to_string(round) + ", " + check.name +
                    ": order " + std::to_string(check.closure_order) +
                    " does not divide " + std::to_string(product));
      }
    }
    CoarseBase orbits{ground, {}};
    for (size_t i = 0; i < cellular.rep.entries.size(); ++i) {
      orbits.members.push_back(
          {base.members[i].name, cellular.rep.entries[i].orbit});
    }
    AsymorphismResult asym = is_asymorphism(PointMap::identity(ground), base, orbits);
    if (!asym.ok) {
      return fail("round " + std::to_string(round) + ": identity not an asymorphism");
    }
  }
  return pass("100 bases checked");
}

// ---- criterion 7: component-parallel decomposition is deterministic ----

Line component_determinism() {
  std::mt19937 rng(123);
  std::uniform_int_distribution<int> chunk_size(4, 12);
  for (int round = 0; round < 100; ++round) {
    int chunks = 3 + round % 3;
    std::vector<int> sizes(static_cast<size_t>(chunks));
    int n = 0;
    for (int& size : sizes) {
      size = chunk_size(rng);
      n += size;
    }
    GroundPtr ground = test_util::ground_of(n);
    std::vector<std::vector<int>> rows(static_cast<size_t>(n));
    int offset = 0;
    for (int size : sizes) {
      SetValuedMap local = test_util::random_symmetric_map(rng, size, 4);
      for (int x = 0; x < size; ++x) {
        for (int y : local.image(x)) {
          rows[static_cast<size_t>(offset + x)].push_back(offset + y);
        }
      }
      offset += size;
    }
    SetValuedMap map = SetValuedMap::from_rows(ground, std::move(rows));
    if (map.components().blocks.size() < 3) {
      return fail("round " + std::to_string(round) + ": fewer than 3 components");
    }
    std::string sequential =
        write_family_document(decompose(map, SelectorFamily::Mode::Strict, 1));
    for (int threads : {2, 3, 8}) {
      std::string threaded = write_family_document(
          decompose(map, SelectorFamily::Mode::Strict, threads));
      if (threaded != sequential) {
        return fail("round " + std::to_string(round) + ": " +
                    std::to_string(threads) + " threads diverged");
      }
    }
  }
  return pass("100 maps, threads in {1,2,3,8}");
}

// ---- criterion 8: CLI golden files ----

bool run_cli(const std::string& args, int* code, std::string* output) {
  std::string command = std::string("\"") + PERMSEL_BIN + "\" " + args + " 2>/dev/null";
  FILE* pipe = popen(command.c_str(), "r");
  if (pipe == nullptr) {
    return false;
  }
  output->clear();
  char buffer[4096];
  size_t got;
  while ((got = fread(buffer, 1, sizeof buffer, pipe)) > 0) {
    output->append(buffer, got);
  }
  int status = pclose(pipe);
  *code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return true;
}

Line cli_goldens() {
  struct Golden {
    std::string args;
    std::string file;
    bool threaded;
  };
  const std::string samples = SAMPLES_DIR;
  const Golden goldens[] = {
      {"decompose \"" + samples + "/path_map.txt\"", "path_map.decompose.golden", true},
      {"represent \"" + samples + "/line_ballean.txt\" --depth 2",
       "line_ballean.represent.golden", true},
      {"represent \"" + samples + "/partition_chain.txt\" --cellular",
       "partition_chain.cellular.golden", false},
  };
  for (const Golden& golden : goldens) {
    std::ifstream stream(std::string(GOLDEN_DIR) + "/" + golden.file,
                         std::ios::binary);
    if (!stream.good()) {
      return fail("missing golden file " + golden.file);
    }
    std::ostringstream buffer;
    buffer << stream.rdbuf();
    const std::string expected = buffer.str();

    std::vector<std::string> invocations;
    for (int round = 0; round < 10; ++round) {
      invocations.push_back(golden.args);
    }
    if (golden.threaded) {
      for (int threads : {1, 2, 8}) {
        invocations.push_back(golden.args + " --threads " + std::to_string(threads));
      }
    }
    for (const std::string& args : invocations) {
      int code = -1;
      std::string output;
      if (!run_cli(args, &code, &output)) {
        return fail("could not spawn the CLI");
      }
      if (code != 0) {
        return fail(golden.file + ": exit " + std::to_string(code));
      }
      if (output != expected) {
        return fail(golden.file + ": output drifted");
      }
    }
  }
  return pass("3 documents, 10 runs each plus thread settings");
}

void print(int number, const Line& line, int* failures) {
  if (line.ok) {
    if (line.note.empty()) {
      std::printf("criterion %d: pass\n", number);
    } else {
      std::printf("criterion %d: pass (%s)\n", number, line.note.c_str());
    }
  } else {
    std::printf("criterion %d: FAIL (%s)\n", number, line.note.c_str());
    ++*failures;
  }
  std::fflush(stdout);
}

}  // namespace

int main() {
  int failures = 0;
  try {
    auto [round_trip, bounds] = round_trip_and_bounds();
    print(1, round_trip, &failures);
    print(2, bounds, &failures);
  } catch (const std::exception& error) {
    print(1, fail(error.what()), &failures);
    print(2, fail("not evaluated"), &failures);
  }
  struct Criterion {
    int number;
    Line (*run)();
  };
  const Criterion rest[] = {
      {3, oracle_equivalence}, {4, impossibility_guard},    {5, line_ballean},
      {6, partition_bases},    {7, component_determinism},  {8, cli_goldens},
  };
  for (const Criterion& criterion : rest) {
    try {
      print(criterion.number, criterion.run(), &failures);
    } catch (const std::exception& error) {
      print(criterion.number, fail(error.what()), &failures);
    }
  }
  return failures;
}
