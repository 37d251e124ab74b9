#ifndef MOENUM_PERMUTATION_HPP
#define MOENUM_PERMUTATION_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace moenum {

/// A bijection on objective indices {0, ..., k-1}.
///
/// Applying a permutation to a vector reorders it so that position i of the
/// result holds position sigma(i) of the input. Objective indices are
/// 0-based throughout the library.
class Permutation {
 public:
  /// Validates that `sigma` is a bijection on {0, ..., sigma.size()-1};
  /// throws std::invalid_argument otherwise.
  explicit Permutation(std::vector<std::size_t> sigma);

  static Permutation identity(std::size_t k);

  /// The ordering used at level r (1 <= r <= k) of the feasibility ladder:
  /// sigma = (k-1, k-2, ..., r, 0, 1, ..., r-1) in 0-based indices, so that
  /// level k is the identity and level 1 is the full reversal.
  static Permutation level(std::size_t k, std::size_t r);

  [[nodiscard]] std::size_t size() const { return sigma_.size(); }
  [[nodiscard]] std::size_t operator()(std::size_t i) const { return sigma_[i]; }
  [[nodiscard]] const std::vector<std::size_t>& indices() const { return sigma_; }

  [[nodiscard]] Permutation inverse() const;
  [[nodiscard]] bool is_identity() const;

  /// out[i] = in[sigma(i)]. Throws on dimension mismatch.
  template <typename T>
  [[nodiscard]] std::vector<T> apply(const std::vector<T>& in) const {
    if (in.size() != sigma_.size()) {
      throw std::invalid_argument("Permutation::apply: dimension mismatch");
    }
    std::vector<T> out;
    out.reserve(in.size());
    for (std::size_t i = 0; i < sigma_.size(); ++i) out.push_back(in[sigma_[i]]);
    return out;
  }

  [[nodiscard]] std::string to_string() const;

  friend bool operator==(const Permutation& a, const Permutation& b) {
    return a.sigma_ == b.sigma_;
  }

 private:
  std::vector<std::size_t> sigma_;
};

}  // namespace moenum

#endif  // MOENUM_PERMUTATION_HPP
