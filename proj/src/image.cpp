#include "moenum/image.hpp"

#include <sstream>
#include <stdexcept>

namespace moenum {

Image Image::real(std::vector<std::int64_t> coords) {
  if (coords.size() < 2) throw std::invalid_argument("Image: dimension must be >= 2");
  std::vector<ExtendedValue> ext;
  ext.reserve(coords.size());
  for (std::int64_t v : coords) ext.push_back(ExtendedValue::finite(v));
  return Image(std::move(ext), std::nullopt);
}

Image Image::dummy(std::size_t axis, std::size_t k) {
  if (k < 2) throw std::invalid_argument("Image: dimension must be >= 2");
  if (axis >= k) throw std::invalid_argument("Image: dummy axis out of range");
  std::vector<ExtendedValue> ext(k, ExtendedValue::minus_inf());
  ext[axis] = ExtendedValue::plus_inf();
  return Image(std::move(ext), axis);
}

std::size_t Image::dummy_axis() const {
  if (!dummy_axis_) throw std::logic_error("Image::dummy_axis on a real image");
  return *dummy_axis_;
}

std::vector<std::int64_t> Image::finite_coords() const {
  if (is_dummy()) throw std::logic_error("Image::finite_coords on a dummy image");
  std::vector<std::int64_t> out;
  out.reserve(coords_.size());
  for (const auto& c : coords_) out.push_back(c.value());
  return out;
}

Image Image::permuted(const Permutation& sigma) const {
  if (sigma.size() != coords_.size()) {
    throw std::invalid_argument("Image::permuted: dimension mismatch");
  }
  std::optional<std::size_t> axis;
  if (dummy_axis_) axis = sigma.inverse()(*dummy_axis_);
  return Image(sigma.apply(coords_), axis);
}

std::string Image::to_string() const {
  if (is_dummy()) return "d^" + std::to_string(*dummy_axis_ + 1);
  std::ostringstream oss;
  oss << "(";
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (i > 0) oss << ",";
    oss << coords_[i];
  }
  oss << ")";
  return oss.str();
}

std::string Parameter::to_string() const {
  std::ostringstream oss;
  oss << "(";
  for (std::size_t i = 0; i < bounds.size(); ++i) {
    if (i > 0) oss << ",";
    oss << bounds[i];
  }
  oss << ")";
  return oss.str();
}

Combination::Combination(std::vector<Image> members) : members_(std::move(members)) {
  if (members_.empty()) throw std::invalid_argument("Combination: needs k-1 >= 1 members");
  const std::size_t k = members_.front().dimension();
  if (members_.size() != k - 1) {
    throw std::invalid_argument("Combination: expected k-1 members for dimension k");
  }
  for (const auto& m : members_) {
    if (m.dimension() != k) throw std::invalid_argument("Combination: mixed dimensions");
  }
}

Combination Combination::root(std::size_t k) {
  std::vector<Image> members;
  members.reserve(k - 1);
  for (std::size_t i = 0; i + 1 < k; ++i) members.push_back(Image::dummy(i, k));
  return Combination(std::move(members));
}

Combination Combination::with_member(std::size_t position, Image image) const {
  if (position >= members_.size()) {
    throw std::invalid_argument("Combination::with_member: position out of range");
  }
  std::vector<Image> members = members_;
  members[position] = std::move(image);
  return Combination(std::move(members));
}

std::string Combination::to_string() const {
  std::ostringstream oss;
  oss << "(";
  for (std::size_t i = 0; i < members_.size(); ++i) {
    if (i > 0) oss << ",";
    oss << members_[i].to_string();
  }
  oss << ")";
  return oss.str();
}

namespace {

void require_real_pair(const Image& a, const Image& b, std::size_t k, const char* op) {
  if (a.dimension() != k || b.dimension() != k) {
    throw std::invalid_argument(std::string(op) + ": dimension mismatch");
  }
  if (!a.is_real() || !b.is_real()) {
    throw std::invalid_argument(std::string(op) + ": images must be real");
  }
}

}  // namespace

bool lex_less(const Image& a, const Image& b, const Permutation& sigma) {
  require_real_pair(a, b, sigma.size(), "lex_less");
  for (std::size_t j = sigma.size(); j-- > 0;) {
    const std::size_t i = sigma(j);
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return false;
}

bool lex_less(const Image& a, const Image& b) {
  require_real_pair(a, b, a.dimension(), "lex_less");
  for (std::size_t i = a.dimension(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return false;
}

bool dominates(const Image& a, const Image& b) {
  require_real_pair(a, b, a.dimension(), "dominates");
  bool strict = false;
  for (std::size_t i = 0; i < a.dimension(); ++i) {
    if (a[i] > b[i]) return false;
    if (a[i] < b[i]) strict = true;
  }
  return strict;
}

Parameter viable_parameter(const Combination& c) {
  Parameter eps;
  eps.bounds.reserve(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) eps.bounds.push_back(c.member(i)[i]);
  return eps;
}

}  // namespace moenum
