#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace permsel {

/// Finite ordered universe of distinct element labels. The stored order is
/// the iteration order of every operation built on top of it, which is what
/// makes outputs reproducible. Internally everything runs on dense indices
/// 0..size()-1; labels only matter at the document boundary.
class GroundSet {
public:
  static std::shared_ptr<const GroundSet> make(std::vector<std::string> labels);

  /// Convenience ground "0", "1", ..., "n-1".
  static std::shared_ptr<const GroundSet> range(int n);

  int size() const { return static_cast<int>(labels_.size()); }
  const std::string& label(int i) const { return labels_[static_cast<size_t>(i)]; }
  const std::vector<std::string>& labels() const { return labels_; }

  std::optional<int> index_of(std::string_view label) const;

  bool same_as(const GroundSet& other) const {
    return this == &other || labels_ == other.labels_;
  }

private:
  explicit GroundSet(std::vector<std::string> labels);

  std::vector<std::string> labels_;
  std::unordered_map<std::string, int> index_;
};

using GroundPtr = std::shared_ptr<const GroundSet>;

/// Content comparison; both null counts as matching.
bool same_ground(const GroundPtr& a, const GroundPtr& b);

}  // namespace permsel
