#ifndef MOENUM_EXTENDED_VALUE_HPP
#define MOENUM_EXTENDED_VALUE_HPP

#include <compare>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>

namespace moenum {

/// A scalar extended with +inf/-inf sentinels.
///
/// The sentinels model unconstrained bounds and the coordinates of dummy
/// images. They participate in the total order
///   minus_inf < finite(a) < plus_inf
/// but never in arithmetic: value() on a sentinel throws, which turns any
/// accidental arithmetic on a sentinel into a hard failure instead of a
/// silently wrong number.
template <typename T>
class Ext {
 public:
  constexpr Ext() = default;

  static constexpr Ext finite(T v) { return Ext(Tag::finite, std::move(v)); }
  static constexpr Ext plus_inf() { return Ext(Tag::plus_inf, T{}); }
  static constexpr Ext minus_inf() { return Ext(Tag::minus_inf, T{}); }

  [[nodiscard]] constexpr bool is_finite() const { return tag_ == Tag::finite; }
  [[nodiscard]] constexpr bool is_plus_inf() const { return tag_ == Tag::plus_inf; }
  [[nodiscard]] constexpr bool is_minus_inf() const { return tag_ == Tag::minus_inf; }

  /// The finite payload. Throws std::logic_error on a sentinel.
  [[nodiscard]] const T& value() const {
    if (tag_ != Tag::finite) {
      throw std::logic_error("Ext::value() called on an infinite sentinel");
    }
    return value_;
  }

  friend constexpr bool operator==(const Ext& a, const Ext& b) {
    if (a.tag_ != b.tag_) return false;
    return a.tag_ != Tag::finite || a.value_ == b.value_;
  }

  friend constexpr bool operator!=(const Ext& a, const Ext& b) { return !(a == b); }

  friend constexpr bool operator<(const Ext& a, const Ext& b) {
    if (a.tag_ == Tag::minus_inf) return b.tag_ != Tag::minus_inf;
    if (a.tag_ == Tag::plus_inf) return false;
    if (b.tag_ == Tag::plus_inf) return true;
    if (b.tag_ == Tag::minus_inf) return false;
    return a.value_ < b.value_;
  }

  friend constexpr bool operator>(const Ext& a, const Ext& b) { return b < a; }
  friend constexpr bool operator<=(const Ext& a, const Ext& b) { return !(b < a); }
  friend constexpr bool operator>=(const Ext& a, const Ext& b) { return !(a < b); }

  friend std::ostream& operator<<(std::ostream& os, const Ext& v) {
    switch (v.tag_) {
      case Tag::minus_inf:
        return os << "-inf";
      case Tag::plus_inf:
        return os << "+inf";
      default:
        return os << v.value_;
    }
  }

 private:
  enum class Tag : std::uint8_t { minus_inf, finite, plus_inf };

  constexpr Ext(Tag tag, T v) : tag_(tag), value_(std::move(v)) {}

  Tag tag_ = Tag::finite;
  T value_{};
};

/// Integer objective value with sentinels; the scalar type of the engine.
using ExtendedValue = Ext<std::int64_t>;

}  // namespace moenum

#endif  // MOENUM_EXTENDED_VALUE_HPP
