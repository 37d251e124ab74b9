#ifndef MOENUM_ORACLE_HPP
#define MOENUM_ORACLE_HPP

#include <boost/rational.hpp>

#include <cstdint>
#include <optional>
#include <vector>

#include "moenum/image.hpp"
#include "moenum/problem.hpp"

// Brute-force verification machinery, independent of the engine: every
// result here is computed from first principles (dominance filters,
// definition checks over finite grids, breadth-first expansion of the
// perturbed image set). Exact rational arithmetic throughout; no floating
// point. Single-threaded by contract.
namespace moenum::oracle {

using Rational = boost::rational<long long>;
using IntImage = std::vector<std::int64_t>;

/// Instance ceilings for the combination enumeration; larger inputs are
/// refused; beyond them only the dominance filter applies.
inline constexpr std::size_t kMaxImages = 200;
inline constexpr std::size_t kMaxObjectivesForEnumeration = 5;

/// (a_{k-1}, ..., a_0) <_lex (b_{k-1}, ..., b_0).
[[nodiscard]] bool reversed_lex_less(const IntImage& a, const IntImage& b);

/// a <= b component-wise and a != b.
[[nodiscard]] bool dominates(const IntImage& a, const IntImage& b);

/// Pairwise dominance filter, O(m^2 k). Duplicates collapse; the result is
/// sorted by the reversed lexicographic order.
[[nodiscard]] std::vector<IntImage> brute_nondominated(const std::vector<IntImage>& images);

/// No two images share a value in any coordinate.
[[nodiscard]] bool general_position(const std::vector<IntImage>& images);

/// The coordinate nudge that maps a finite nondominated set to one in
/// general position: image number i (1-based, in reversed-lex order) moves
/// coordinate j up by i*delta/(K+1) whenever an earlier image shares that
/// coordinate value. Requires the input sorted ascending by reversed_lex_less
/// (throws std::invalid_argument otherwise) and 0 < delta.
[[nodiscard]] std::vector<std::vector<Rational>> phi_perturb(
    const std::vector<IntImage>& sorted_images, const Rational& delta);

/// A combination member: either the dummy for an axis or an image index.
struct MemberRef {
  bool is_dummy = true;
  std::size_t index = 0;  // dummy axis, or index into CombinationTree::images

  friend bool operator==(const MemberRef& a, const MemberRef& b) {
    return a.is_dummy == b.is_dummy && a.index == b.index;
  }
  friend auto operator<=>(const MemberRef& a, const MemberRef& b) = default;
};

struct TreeNode {
  std::vector<MemberRef> members;      // k-1 members
  std::optional<std::size_t> parent;   // node index; empty for the root
  std::size_t scion_position = 0;      // member replaced to create this node
  std::optional<std::size_t> optimum;  // image index; empty when infeasible
};

/// The scion tree of the nondominated set, enumerated from first principles.
struct CombinationTree {
  std::vector<IntImage> images;  // the nondominated set, reversed-lex sorted
  std::vector<TreeNode> nodes;   // breadth-first order, node 0 is the root

  [[nodiscard]] Combination combination_of(std::size_t node) const;
  [[nodiscard]] Parameter parameter_of(std::size_t node) const;
};

/// Enumerates every true combination of `y_n` exactly once, by breadth-first
/// scion expansion over the perturbed (general-position) set with an
/// exact-rational explicit-set scalarizer; the returned nodes are the
/// preimages. `y_n` must be a mutually nondominated set; `k` may be passed
/// explicitly to allow an empty set. Refuses inputs beyond the ceilings.
[[nodiscard]] CombinationTree enumerate_true_combinations(const std::vector<IntImage>& y_n,
                                                          std::size_t k = 0);

/// A local upper bound with its k defining points.
struct UpperBound {
  std::vector<ExtendedValue> point;
  std::vector<MemberRef> defining;  // one per coordinate
};

/// All local upper bounds of `n_set`, found by checking the definition over
/// the finite candidate grid (per axis: the values taken by the images, plus
/// +inf). `k` may be passed explicitly to allow an empty set.
[[nodiscard]] std::vector<UpperBound> enumerate_upper_bounds(const std::vector<IntImage>& n_set,
                                                             std::size_t k = 0);

/// True iff `y` is the reversed-lex minimum among the members of `y_n` lying
/// strictly below `eps`.
[[nodiscard]] bool epsilon_component_member(const IntImage& y, const Parameter& eps,
                                            const std::vector<IntImage>& y_n);

/// Levels of the feasibility ladder straight from the definition: descend
/// from level k (= y_n) to level r, keeping the images whose first-j prefix
/// no other nondominated image matches-or-beats.
[[nodiscard]] std::vector<IntImage> level_set(const std::vector<IntImage>& y_n, std::size_t r);

/// Every distinct achievable image of a 0-1 knapsack by full 2^n
/// enumeration. Refuses n > max_items.
[[nodiscard]] std::vector<IntImage> enumerate_knapsack_images(const KnapsackProblem& p,
                                                              std::size_t max_items = 20);

}  // namespace moenum::oracle

#endif  // MOENUM_ORACLE_HPP
