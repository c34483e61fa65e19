#include "permsel/ground_set.hpp"

#include "permsel/error.hpp"

namespace permsel {

GroundSet::GroundSet(std::vector<std::string> labels) : labels_(std::move(labels)) {
  index_.reserve(labels_.size());
  for (size_t i = 0; i < labels_.size(); ++i) {
    auto [it, inserted] = index_.emplace(labels_[i], static_cast<int>(i));
    if (!inserted) {
      throw Error(ErrorKind::DuplicateElement,
                  "duplicate ground element '" + labels_[i] + "'", labels_[i]);
    }
  }
}

std::shared_ptr<const GroundSet> GroundSet::make(std::vector<std::string> labels) {
  return std::shared_ptr<const GroundSet>(new GroundSet(std::move(labels)));
}

std::shared_ptr<const GroundSet> GroundSet::range(int n) {
  std::vector<std::string> labels;
  labels.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    labels.push_back(std::to_string(i));
  }
  return make(std::move(labels));
}

std::optional<int> GroundSet::index_of(std::string_view label) const {
  auto it = index_.find(std::string(label));
  if (it == index_.end()) {
    return std::nullopt;
  }
  return it->second;
}

bool same_ground(const GroundPtr& a, const GroundPtr& b) {
  if (a == b) {
    return true;
  }
  if (!a || !b) {
    return false;
  }
  return a->same_as(*b);
}

}  // namespace permsel
