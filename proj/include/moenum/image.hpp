#ifndef MOENUM_IMAGE_HPP
#define MOENUM_IMAGE_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "moenum/extended_value.hpp"
#include "moenum/permutation.hpp"

namespace moenum {

/// A point of the k-dimensional image space (k >= 2).
///
/// An image is either real (all coordinates finite) or the dummy with axis t,
/// which has +inf in coordinate t and -inf everywhere else. Dummies stand in
/// for objectives that are still unconstrained. Images are immutable after
/// construction and safe to share across threads.
class Image {
 public:
  static Image real(std::vector<std::int64_t> coords);
  static Image dummy(std::size_t axis, std::size_t k);

  [[nodiscard]] std::size_t dimension() const { return coords_.size(); }
  [[nodiscard]] bool is_real() const { return !dummy_axis_.has_value(); }
  [[nodiscard]] bool is_dummy() const { return dummy_axis_.has_value(); }

  /// The dummy axis t; throws std::logic_error for a real image.
  [[nodiscard]] std::size_t dummy_axis() const;

  [[nodiscard]] const ExtendedValue& operator[](std::size_t i) const { return coords_[i]; }
  [[nodiscard]] const std::vector<ExtendedValue>& coords() const { return coords_; }

  /// All coordinates as plain integers; throws std::logic_error for a dummy.
  [[nodiscard]] std::vector<std::int64_t> finite_coords() const;

  /// out[i] = this[sigma(i)], preserving kind (a dummy with axis t maps to
  /// the dummy with axis sigma^-1(t)).
  [[nodiscard]] Image permuted(const Permutation& sigma) const;

  [[nodiscard]] std::string to_string() const;

  friend bool operator==(const Image& a, const Image& b) {
    return a.dummy_axis_ == b.dummy_axis_ && a.coords_ == b.coords_;
  }
  friend bool operator!=(const Image& a, const Image& b) { return !(a == b); }

 private:
  Image(std::vector<ExtendedValue> coords, std::optional<std::size_t> dummy_axis)
      : coords_(std::move(coords)), dummy_axis_(dummy_axis) {}

  std::vector<ExtendedValue> coords_;
  std::optional<std::size_t> dummy_axis_;
};

/// Upper bounds on objectives 0..k-2; plus_inf marks an unconstrained one.
struct Parameter {
  std::vector<ExtendedValue> bounds;

  friend bool operator==(const Parameter& a, const Parameter& b) { return a.bounds == b.bounds; }
  friend bool operator!=(const Parameter& a, const Parameter& b) { return !(a == b); }

  [[nodiscard]] std::string to_string() const;
};

/// An ordered tuple of k-1 images; member i supplies bound i of the
/// scalarization parameter. The root combination consists of the dummies
/// d^0, ..., d^{k-2}.
class Combination {
 public:
  explicit Combination(std::vector<Image> members);

  /// (d^0, ..., d^{k-2}) for a k-objective problem.
  static Combination root(std::size_t k);

  [[nodiscard]] std::size_t dimension() const { return members_.front().dimension(); }
  [[nodiscard]] std::size_t size() const { return members_.size(); }
  [[nodiscard]] const Image& member(std::size_t i) const { return members_[i]; }
  [[nodiscard]] const std::vector<Image>& members() const { return members_; }

  /// Copy with member `position` replaced by `image`.
  [[nodiscard]] Combination with_member(std::size_t position, Image image) const;

  [[nodiscard]] std::string to_string() const;

  friend bool operator==(const Combination& a, const Combination& b) {
    return a.members_ == b.members_;
  }
  friend bool operator!=(const Combination& a, const Combination& b) { return !(a == b); }

 private:
  std::vector<Image> members_;
};

/// True iff (a[sigma(k-1)], ..., a[sigma(0)]) precedes (b[...]) in the strict
/// lexicographic order. Both images must be real and of dimension sigma.size().
[[nodiscard]] bool lex_less(const Image& a, const Image& b, const Permutation& sigma);

/// lex_less under the identity ordering, i.e. compare (a_{k-1}, ..., a_0).
[[nodiscard]] bool lex_less(const Image& a, const Image& b);

/// Component-wise order: a_i <= b_i for all i and a != b. Both images real.
[[nodiscard]] bool dominates(const Image& a, const Image& b);

/// bounds[i] = c.member(i)[i].
[[nodiscard]] Parameter viable_parameter(const Combination& c);

}  // namespace moenum

#endif  // MOENUM_IMAGE_HPP
