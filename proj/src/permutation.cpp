#include "permsel/permutation.hpp"

#include <numeric>

#include "permsel/error.hpp"

namespace permsel {

Permutation Permutation::identity(GroundPtr ground) {
  std::vector<int> forward(static_cast<size_t>(ground->size()));
  std::iota(forward.begin(), forward.end(), 0);
  return Permutation(std::move(ground), std::move(forward));
}

Permutation Permutation::from_forward(GroundPtr ground, std::vector<int> forward) {
  const int n = ground->size();
  if (static_cast<int>(forward.size()) != n) {
    throw Error(ErrorKind::NotBijective, "mapping size does not match the ground size");
  }
  std::vector<bool> hit(static_cast<size_t>(n), false);
  for (int y : forward) {
    if (y < 0 || y >= n || hit[static_cast<size_t>(y)]) {
      throw Error(ErrorKind::NotBijective, "mapping is not a bijection of the ground set");
    }
    hit[static_cast<size_t>(y)] = true;
  }
  return Permutation(std::move(ground), std::move(forward));
}

Permutation Permutation::transposition(GroundPtr ground, int a, int b) {
  Permutation p = identity(std::move(ground));
  std::swap(p.forward_[static_cast<size_t>(a)], p.forward_[static_cast<size_t>(b)]);
  return p;
}

Permutation Permutation::compose(const Permutation& q) const {
  if (!same_ground(ground_, q.ground_)) {
    throw Error(ErrorKind::GroundMismatch, "composing permutations of different grounds");
  }
  std::vector<int> forward(forward_.size());
  for (size_t x = 0; x < forward.size(); ++x) {
    forward[x] = forward_[static_cast<size_t>(q.forward_[x])];
  }
  return Permutation(ground_, std::move(forward));
}

Permutation Permutation::inverse() const {
  std::vector<int> forward(forward_.size());
  for (size_t x = 0; x < forward_.size(); ++x) {
    forward[static_cast<size_t>(forward_[x])] = static_cast<int>(x);
  }
  return Permutation(ground_, std::move(forward));
}

bool Permutation::is_identity() const {
  for (size_t x = 0; x < forward_.size(); ++x) {
    if (forward_[x] != static_cast<int>(x)) {
      return false;
    }
  }
  return true;
}

bool Permutation::is_involution() const {
  for (size_t x = 0; x < forward_.size(); ++x) {
    if (forward_[static_cast<size_t>(forward_[x])] != static_cast<int>(x)) {
      return false;
    }
  }
  return true;
}

std::string Permutation::one_line() const {
  std::string out;
  for (size_t x = 0; x < forward_.size(); ++x) {
    if (x > 0) {
      out += ' ';
    }
    out += ground_->label(static_cast<int>(x));
    out += "->";
    out += ground_->label(forward_[x]);
  }
  return out;
}

}  // namespace permsel
