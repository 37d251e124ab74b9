#include "moenum/permutation.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

namespace moenum {

Permutation::Permutation(std::vector<std::size_t> sigma) : sigma_(std::move(sigma)) {
  std::vector<bool> seen(sigma_.size(), false);
  for (std::size_t v : sigma_) {
    if (v >= sigma_.size() || seen[v]) {
      throw std::invalid_argument("Permutation: not a bijection on {0,...,k-1}");
    }
    seen[v] = true;
  }
}

Permutation Permutation::identity(std::size_t k) {
  std::vector<std::size_t> sigma(k);
  std::iota(sigma.begin(), sigma.end(), std::size_t{0});
  return Permutation(std::move(sigma));
}

Permutation Permutation::level(std::size_t k, std::size_t r) {
  if (r < 1 || r > k) throw std::invalid_argument("Permutation::level: r out of range");
  std::vector<std::size_t> sigma(k);
  for (std::size_t j = 0; j < k; ++j) {
    sigma[j] = j < k - r ? k - 1 - j : j - (k - r);
  }
  return Permutation(std::move(sigma));
}

Permutation Permutation::inverse() const {
  std::vector<std::size_t> inv(sigma_.size());
  for (std::size_t i = 0; i < sigma_.size(); ++i) inv[sigma_[i]] = i;
  return Permutation(std::move(inv));
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < sigma_.size(); ++i) {
    if (sigma_[i] != i) return false;
  }
  return true;
}

std::string Permutation::to_string() const {
  std::ostringstream oss;
  oss << "(";
  for (std::size_t i = 0; i < sigma_.size(); ++i) {
    if (i > 0) oss << ",";
    oss << sigma_[i] + 1;  // 1-based for display
  }
  oss << ")";
  return oss.str();
}

}  // namespace moenum
