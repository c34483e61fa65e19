#include "permsel/oracle.hpp"

#include <algorithm>
#include <string>

#include "permsel/error.hpp"

namespace permsel {

std::vector<Permutation> enumerate_bijective_selectors(const SetValuedMap& map, int cap) {
  const int n = map.size();
  if (n > cap) {
    throw Error(ErrorKind::CapExceeded,
                "selector enumeration limited to " + std::to_string(cap) +
                    " elements, got " + std::to_string(n));
  }
  std::vector<Permutation> out;
  std::vector<int> forward(static_cast<size_t>(n), -1);
  std::vector<bool> used(static_cast<size_t>(n), false);
  // Ground-order backtracking with ground-order candidates yields the
  // selectors in lexicographic order of their forward vectors.
  auto recurse = [&](auto&& self, int x) -> void {
    if (x == n) {
      out.push_back(Permutation::from_forward(map.ground(), forward));
      return;
    }
    for (int y : map.image(x)) {
      if (!used[static_cast<size_t>(y)]) {
        used[static_cast<size_t>(y)] = true;
        forward[static_cast<size_t>(x)] = y;
        self(self, x + 1);
        used[static_cast<size_t>(y)] = false;
      }
    }
  };
  recurse(recurse, 0);
  return out;
}

namespace {

struct CoverSearch {
  int n = 0;
  int pair_count = 0;
  std::vector<std::vector<int>> pair_id;     // pair_id[x][pos in image(x)]
  std::vector<std::pair<int, int>> pairs;    // id -> (x, y)
  std::vector<std::vector<int>> covers;      // selector -> sorted pair ids
  std::vector<std::vector<int>> covered_by;  // pair id -> selector indices
  std::vector<int> cover_count;              // how many chosen selectors hit the pair
  std::vector<int> row_uncovered;            // per x
  std::vector<int> column_uncovered;         // per y
  int uncovered_total = 0;
  std::vector<int> chosen;
  std::vector<int> best;
  // A bijective selector covers at most one pair per row and one per
  // column, so the larger of the two maxima bounds any completion from
  // below.
  int lower_bound() const {
    int bound = 0;
    for (int v : row_uncovered) {
      bound = std::max(bound, v);
    }
    for (int v : column_uncovered) {
      bound = std::max(bound, v);
    }
    return bound;
  }

  void take(int selector) {
    chosen.push_back(selector);
    for (int id : covers[static_cast<size_t>(selector)]) {
      if (cover_count[static_cast<size_t>(id)]++ == 0) {
        auto [x, y] = pairs[static_cast<size_t>(id)];
        --row_uncovered[static_cast<size_t>(x)];
        --column_uncovered[static_cast<size_t>(y)];
        --uncovered_total;
      }
    }
  }

  void drop(int selector) {
    chosen.pop_back();
    for (int id : covers[static_cast<size_t>(selector)]) {
      if (--cover_count[static_cast<size_t>(id)] == 0) {
        auto [x, y] = pairs[static_cast<size_t>(id)];
        ++row_uncovered[static_cast<size_t>(x)];
        ++column_uncovered[static_cast<size_t>(y)];
        ++uncovered_total;
      }
    }
  }

  void search() {
    if (uncovered_total == 0) {
      if (best.empty() || chosen.size() < best.size()) {
        best = chosen;
      }
      return;
    }
    if (!best.empty() &&
        chosen.size() + static_cast<size_t>(lower_bound()) >= best.size()) {
      return;
    }
    // branch on the uncovered pair with the fewest remaining candidates
    int branch = -1;
    size_t fewest = 0;
    for (int id = 0; id < pair_count; ++id) {
      if (cover_count[static_cast<size_t>(id)] == 0) {
        size_t candidates = covered_by[static_cast<size_t>(id)].size();
        if (branch < 0 || candidates < fewest) {
          branch = id;
          fewest = candidates;
        }
      }
    }
    for (int selector : covered_by[static_cast<size_t>(branch)]) {
      take(selector);
      search();
      drop(selector);
    }
  }
};

}  // namespace

MinFamilyResult min_family_oracle(const SetValuedMap& map, int cap) {
  const int n = map.size();
  if (n > cap) {
    throw Error(ErrorKind::CapExceeded,
                "minimum-family search limited to " + std::to_string(cap) +
                    " elements, got " + std::to_string(n));
  }
  std::vector<Permutation> selectors = enumerate_bijective_selectors(map, cap);

  CoverSearch search;
  search.n = n;
  search.pair_id.assign(static_cast<size_t>(n), {});
  for (int x = 0; x < n; ++x) {
    for (int y : map.image(x)) {
      search.pair_id[static_cast<size_t>(x)].push_back(search.pair_count++);
      search.pairs.emplace_back(x, y);
    }
  }
  search.covered_by.assign(static_cast<size_t>(search.pair_count), {});
  search.covers.assign(selectors.size(), {});
  for (size_t s = 0; s < selectors.size(); ++s) {
    for (int x = 0; x < n; ++x) {
      int y = selectors[s].apply(x);
      const auto& image = map.image(x);
      size_t pos = static_cast<size_t>(
          std::lower_bound(image.begin(), image.end(), y) - image.begin());
      int id = search.pair_id[static_cast<size_t>(x)][pos];
      search.covers[s].push_back(id);
      search.covered_by[static_cast<size_t>(id)].push_back(static_cast<int>(s));
    }
  }

  MinFamilyResult result;
  for (int id = 0; id < search.pair_count; ++id) {
    if (search.covered_by[static_cast<size_t>(id)].empty()) {
      result.feasible = false;
      result.uncoverable = search.pairs[static_cast<size_t>(id)];
      return result;
    }
  }
  if (search.pair_count == 0) {
    result.feasible = true;
    result.size = 0;
    return result;
  }

  search.cover_count.assign(static_cast<size_t>(search.pair_count), 0);
  search.row_uncovered.assign(static_cast<size_t>(n), 0);
  search.column_uncovered.assign(static_cast<size_t>(n), 0);
  for (auto [x, y] : search.pairs) {
    ++search.row_uncovered[static_cast<size_t>(x)];
    ++search.column_uncovered[static_cast<size_t>(y)];
  }
  search.uncovered_total = search.pair_count;

  // Greedy warm start keeps the exact search shallow: when it already
  // meets the lower bound the first prune closes the search.
  std::vector<int> greedy;
  {
    std::vector<int> count(static_cast<size_t>(search.pair_count), 0);
    int uncovered = search.pair_count;
    while (uncovered > 0) {
      int pick = -1;
      int gain = -1;
      for (size_t s = 0; s < search.covers.size(); ++s) {
        int fresh = 0;
        for (int id : search.covers[s]) {
          if (count[static_cast<size_t>(id)] == 0) {
            ++fresh;
          }
        }
        if (fresh > gain) {
          gain = fresh;
          pick = static_cast<int>(s);
        }
      }
      for (int id : search.covers[static_cast<size_t>(pick)]) {
        if (count[static_cast<size_t>(id)]++ == 0) {
          --uncovered;
        }
      }
      greedy.push_back(pick);
    }
  }
  search.best = greedy;
  search.search();

  result.feasible = true;
  result.size = static_cast<int>(search.best.size());
  std::sort(search.best.begin(), search.best.end());
  for (int s : search.best) {
    result.family.push_back(selectors[static_cast<size_t>(s)]);
  }
  return result;
}

}  // namespace permsel
