#include "permsel/set_valued_map.hpp"

#include <algorithm>

#include "permsel/error.hpp"

namespace permsel {

namespace {

void sort_unique(std::vector<int>& row) {
  std::sort(row.begin(), row.end());
  row.erase(std::unique(row.begin(), row.end()), row.end());
}

}  // namespace

SetValuedMap SetValuedMap::build(
    GroundPtr ground,
    const std::vector<std::pair<std::string, std::vector<std::string>>>& entries) {
  const int n = ground->size();
  std::vector<std::vector<int>> rows(static_cast<size_t>(n));
  std::vector<bool> seen(static_cast<size_t>(n), false);
  for (const auto& [key, images] : entries) {
    auto x = ground->index_of(key);
    if (!x) {
      throw Error(ErrorKind::UnknownElement, "unknown element '" + key + "'", key);
    }
    if (seen[static_cast<size_t>(*x)]) {
      throw Error(ErrorKind::DuplicateEntry, "duplicate entry for '" + key + "'", key);
    }
    seen[static_cast<size_t>(*x)] = true;
    std::vector<int> row;
    row.reserve(images.size());
    for (const auto& label : images) {
      auto y = ground->index_of(label);
      if (!y) {
        throw Error(ErrorKind::UnknownElement,
                    "unknown element '" + label + "' in the image of '" + key + "'",
                    label);
      }
      row.push_back(*y);
    }
    rows[static_cast<size_t>(*x)] = std::move(row);
  }
  for (int x = 0; x < n; ++x) {
    if (!seen[static_cast<size_t>(x)]) {
      throw Error(ErrorKind::MissingEntry, "no entry for '" + ground->label(x) + "'",
                  ground->label(x));
    }
  }
  return from_rows(std::move(ground), std::move(rows));
}

SetValuedMap SetValuedMap::from_rows(GroundPtr ground, std::vector<std::vector<int>> rows) {
  const int n = ground->size();
  if (static_cast<int>(rows.size()) != n) {
    throw Error(ErrorKind::MissingEntry, "row count does not match the ground size");
  }
  for (int x = 0; x < n; ++x) {
    auto& row = rows[static_cast<size_t>(x)];
    for (int y : row) {
      if (y < 0 || y >= n) {
        throw Error(ErrorKind::UnknownElement,
                    "image index out of range in the image of '" + ground->label(x) + "'");
      }
    }
    sort_unique(row);
    if (!std::binary_search(row.begin(), row.end(), x)) {
      throw Error(ErrorKind::MissingReflexive,
                  "'" + ground->label(x) + "' is missing from its own image",
                  ground->label(x));
    }
  }
  SetValuedMap map;
  map.ground_ = std::move(ground);
  map.rows_ = std::move(rows);
  return map;
}

bool SetValuedMap::contains(int x, int y) const {
  const auto& row = rows_[static_cast<size_t>(x)];
  return std::binary_search(row.begin(), row.end(), y);
}

int SetValuedMap::pair_count() const {
  int count = 0;
  for (const auto& row : rows_) {
    count += static_cast<int>(row.size());
  }
  return count;
}

SetValuedMap SetValuedMap::inverse() const {
  std::vector<std::vector<int>> rows(rows_.size());
  for (int x = 0; x < size(); ++x) {
    for (int y : rows_[static_cast<size_t>(x)]) {
      rows[static_cast<size_t>(y)].push_back(x);
    }
  }
  // rows come out sorted because x runs in ground order
  SetValuedMap map;
  map.ground_ = ground_;
  map.rows_ = std::move(rows);
  return map;
}

DegreeBounds SetValuedMap::degree_bounds() const {
  DegreeBounds bounds;
  std::vector<int> preimage(rows_.size(), 0);
  for (const auto& row : rows_) {
    bounds.max_image = std::max(bounds.max_image, static_cast<int>(row.size()));
    for (int y : row) {
      ++preimage[static_cast<size_t>(y)];
    }
  }
  for (int count : preimage) {
    bounds.max_preimage = std::max(bounds.max_preimage, count);
  }
  bounds.m = std::max(bounds.max_image, bounds.max_preimage) + 1;
  return bounds;
}

std::optional<std::pair<int, int>> SetValuedMap::symmetry_violation() const {
  for (int x = 0; x < size(); ++x) {
    for (int y : rows_[static_cast<size_t>(x)]) {
      if (!contains(y, x)) {
        return std::pair<int, int>{x, y};
      }
    }
  }
  return std::nullopt;
}

SetValuedMap SetValuedMap::symmetrize() const {
  std::vector<std::vector<int>> rows = rows_;
  for (int x = 0; x < size(); ++x) {
    for (int y : rows_[static_cast<size_t>(x)]) {
      rows[static_cast<size_t>(y)].push_back(x);
    }
  }
  for (auto& row : rows) {
    sort_unique(row);
  }
  SetValuedMap map;
  map.ground_ = ground_;
  map.rows_ = std::move(rows);
  return map;
}

ComponentPartition SetValuedMap::components() const {
  const int n = size();
  // undirected adjacency: y in F(x) links x and y both ways
  std::vector<std::vector<int>> adjacency(static_cast<size_t>(n));
  for (int x = 0; x < n; ++x) {
    for (int y : rows_[static_cast<size_t>(x)]) {
      if (y != x) {
        adjacency[static_cast<size_t>(x)].push_back(y);
        adjacency[static_cast<size_t>(y)].push_back(x);
      }
    }
  }
  ComponentPartition partition;
  std::vector<bool> visited(static_cast<size_t>(n), false);
  std::vector<int> queue;
  for (int start = 0; start < n; ++start) {
    if (visited[static_cast<size_t>(start)]) {
      continue;
    }
    std::vector<int> block;
    queue.assign(1, start);
    visited[static_cast<size_t>(start)] = true;
    while (!queue.empty()) {
      int x = queue.back();
      queue.pop_back();
      block.push_back(x);
      for (int y : adjacency[static_cast<size_t>(x)]) {
        if (!visited[static_cast<size_t>(y)]) {
          visited[static_cast<size_t>(y)] = true;
          queue.push_back(y);
        }
      }
    }
    std::sort(block.begin(), block.end());
    partition.blocks.push_back(std::move(block));
  }
  return partition;
}

bool SetValuedMap::operator==(const SetValuedMap& other) const {
  return same_ground(ground_, other.ground_) && rows_ == other.rows_;
}

}  // namespace permsel
