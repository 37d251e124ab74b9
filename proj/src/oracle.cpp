#include "moenum/oracle.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "moenum/extended_value.hpp"

namespace moenum::oracle {

namespace {

using RatCoord = Ext<Rational>;

std::size_t infer_k(const std::vector<IntImage>& images, std::size_t k, const char* who) {
  if (!images.empty()) {
    const std::size_t from_data = images.front().size();
    if (k != 0 && k != from_data) throw std::invalid_argument(std::string(who) + ": k mismatch");
    k = from_data;
  }
  if (k < 2) throw std::invalid_argument(std::string(who) + ": k must be >= 2 (pass k for an empty set)");
  for (const auto& img : images) {
    if (img.size() != k) throw std::invalid_argument(std::string(who) + ": ragged image list");
  }
  return k;
}

}  // namespace

bool reversed_lex_less(const IntImage& a, const IntImage& b) {
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return false;
}

bool dominates(const IntImage& a, const IntImage& b) {
  bool strict = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) return false;
    if (a[i] < b[i]) strict = true;
  }
  return strict;
}

std::vector<IntImage> brute_nondominated(const std::vector<IntImage>& images) {
  std::vector<IntImage> distinct = images;
  std::sort(distinct.begin(), distinct.end(), reversed_lex_less);
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());

  std::vector<IntImage> out;
  for (const IntImage& candidate : distinct) {
    bool dominated = false;
    for (const IntImage& other : distinct) {
      if (dominates(other, candidate)) {
        dominated = true;
        break;
      }
    }
    if (!dominated) out.push_back(candidate);
  }
  return out;
}

bool general_position(const std::vector<IntImage>& images) {
  if (images.empty()) return true;
  const std::size_t k = images.front().size();
  for (std::size_t i = 0; i < k; ++i) {
    std::set<std::int64_t> seen;
    for (const auto& img : images) {
      if (!seen.insert(img[i]).second) return false;
    }
  }
  return true;
}

std::vector<std::vector<Rational>> phi_perturb(const std::vector<IntImage>& sorted_images,
                                               const Rational& delta) {
  if (delta <= Rational(0)) throw std::invalid_argument("phi_perturb: delta must be positive");
  for (std::size_t i = 1; i < sorted_images.size(); ++i) {
    if (!reversed_lex_less(sorted_images[i - 1], sorted_images[i])) {
      throw std::invalid_argument("phi_perturb: input not sorted by reversed lexicographic order");
    }
  }
  const long long big_k = static_cast<long long>(sorted_images.size());
  std::vector<std::vector<Rational>> out;
  out.reserve(sorted_images.size());
  for (std::size_t idx = 0; idx < sorted_images.size(); ++idx) {
    const IntImage& img = sorted_images[idx];
    std::vector<Rational> phi;
    phi.reserve(img.size());
    for (std::size_t j = 0; j < img.size(); ++j) {
      bool repeated = false;
      for (std::size_t s = 0; s < idx && !repeated; ++s) {
        repeated = sorted_images[s][j] == img[j];
      }
      Rational v(img[j]);
      if (repeated) {
        v += Rational(static_cast<long long>(idx) + 1) * delta / Rational(big_k + 1);
      }
      phi.push_back(v);
    }
    out.push_back(std::move(phi));
  }
  return out;
}

Combination CombinationTree::combination_of(std::size_t node) const {
  const TreeNode& n = nodes.at(node);
  const std::size_t k = n.members.size() + 1;
  std::vector<Image> members;
  members.reserve(n.members.size());
  for (const MemberRef& m : n.members) {
    members.push_back(m.is_dummy ? Image::dummy(m.index, k) : Image::real(images[m.index]));
  }
  return Combination(std::move(members));
}

Parameter CombinationTree::parameter_of(std::size_t node) const {
  return viable_parameter(combination_of(node));
}

CombinationTree enumerate_true_combinations(const std::vector<IntImage>& y_n, std::size_t k) {
  k = infer_k(y_n, k, "enumerate_true_combinations");
  if (y_n.size() > kMaxImages || k > kMaxObjectivesForEnumeration) {
    throw std::invalid_argument("enumerate_true_combinations: beyond the oracle instance ceiling");
  }

  CombinationTree tree;
  tree.images = y_n;
  std::sort(tree.images.begin(), tree.images.end(), reversed_lex_less);
  for (const IntImage& a : tree.images) {
    for (const IntImage& b : tree.images) {
      if (dominates(a, b)) {
        throw std::invalid_argument("enumerate_true_combinations: input is not a nondominated set");
      }
    }
  }

  const auto phi = phi_perturb(tree.images, Rational(1, 2));
  if (!phi.empty()) {
    // The nudged set must be in general position; anything else is a defect
    // in the construction itself.
    for (std::size_t j = 0; j < k; ++j) {
      std::set<Rational> seen;
      for (const auto& p : phi) {
        if (!seen.insert(p[j]).second) {
          throw std::logic_error("enumerate_true_combinations: perturbed set not in general position");
        }
      }
    }
  }

  const auto member_coord = [&](const MemberRef& m, std::size_t j) -> RatCoord {
    if (m.is_dummy) {
      return m.index == j ? RatCoord::plus_inf() : RatCoord::minus_inf();
    }
    return RatCoord::finite(phi[m.index][j]);
  };

  // Optimal image of the perturbed scalarization at the node's parameter:
  // the reversed-lex minimum among perturbed images strictly below it.
  const auto rev_lex_less_rat = [&](const std::vector<Rational>& a, const std::vector<Rational>& b) {
    for (std::size_t i = k; i-- > 0;) {
      if (a[i] != b[i]) return a[i] < b[i];
    }
    return false;
  };
  const auto solve = [&](const std::vector<MemberRef>& members) -> std::optional<std::size_t> {
    std::optional<std::size_t> best;
    for (std::size_t cand = 0; cand < phi.size(); ++cand) {
      bool feasible = true;
      for (std::size_t i = 0; i + 1 < k && feasible; ++i) {
        feasible = RatCoord::finite(phi[cand][i]) < member_coord(members[i], i);
      }
      if (!feasible) continue;
      if (!best || rev_lex_less_rat(phi[cand], phi[*best])) best = cand;
    }
    return best;
  };

  std::vector<MemberRef> root(k - 1);
  for (std::size_t i = 0; i + 1 < k; ++i) root[i] = MemberRef{true, i};

  std::set<std::vector<MemberRef>> visited;
  tree.nodes.push_back(TreeNode{root, std::nullopt, 0, std::nullopt});
  visited.insert(root);

  for (std::size_t at = 0; at < tree.nodes.size(); ++at) {
    const auto members = tree.nodes[at].members;
    const auto optimum = solve(members);
    tree.nodes[at].optimum = optimum;
    if (!optimum) continue;
    for (std::size_t l = 0; l + 1 < k; ++l) {
      bool qualifies = true;
      for (std::size_t i = 0; i + 1 < k && qualifies; ++i) {
        if (i == l) continue;
        qualifies = RatCoord::finite(phi[*optimum][l]) > member_coord(members[i], l);
      }
      if (!qualifies) continue;
      std::vector<MemberRef> child = members;
      child[l] = MemberRef{false, *optimum};
      if (!visited.insert(child).second) {
        throw std::logic_error("enumerate_true_combinations: scion tree revisited a combination");
      }
      tree.nodes.push_back(TreeNode{std::move(child), at, l, std::nullopt});
    }
  }
  return tree;
}

std::vector<UpperBound> enumerate_upper_bounds(const std::vector<IntImage>& n_set, std::size_t k) {
  k = infer_k(n_set, k, "enumerate_upper_bounds");

  // Per axis: every value taken by an image (with the images taking it),
  // plus +inf (defined by the axis dummy).
  std::vector<std::map<std::int64_t, std::vector<std::size_t>>> by_value(k);
  for (std::size_t idx = 0; idx < n_set.size(); ++idx) {
    for (std::size_t i = 0; i < k; ++i) by_value[i][n_set[idx][i]].push_back(idx);
  }
  std::vector<std::vector<ExtendedValue>> axis_candidates(k);
  for (std::size_t i = 0; i < k; ++i) {
    for (const auto& [v, _] : by_value[i]) axis_candidates[i].push_back(ExtendedValue::finite(v));
    axis_candidates[i].push_back(ExtendedValue::plus_inf());
  }

  std::vector<UpperBound> out;
  std::vector<std::size_t> pick(k, 0);
  std::vector<ExtendedValue> u(k);
  while (true) {
    for (std::size_t i = 0; i < k; ++i) u[i] = axis_candidates[i][pick[i]];

    // Defining points first, then the no-image-strictly-below check.
    std::vector<MemberRef> defining(k);
    bool ok = true;
    for (std::size_t i = 0; i < k && ok; ++i) {
      if (u[i].is_plus_inf()) {
        defining[i] = MemberRef{true, i};
        continue;
      }
      ok = false;
      for (std::size_t idx : by_value[i].at(u[i].value())) {
        bool strictly_below = true;
        for (std::size_t j = 0; j < k && strictly_below; ++j) {
          if (j == i) continue;
          strictly_below = ExtendedValue::finite(n_set[idx][j]) < u[j];
        }
        if (strictly_below) {
          defining[i] = MemberRef{false, idx};
          ok = true;
          break;
        }
      }
    }
    if (ok) {
      for (const IntImage& img : n_set) {
        bool below = true;
        for (std::size_t j = 0; j < k && below; ++j) {
          below = ExtendedValue::finite(img[j]) < u[j];
        }
        if (below) {
          ok = false;
          break;
        }
      }
    }
    if (ok) out.push_back(UpperBound{u, defining});

    std::size_t axis = 0;
    while (axis < k && pick[axis] + 1 == axis_candidates[axis].size()) {
      pick[axis] = 0;
      ++axis;
    }
    if (axis == k) break;
    ++pick[axis];
  }
  return out;
}

bool epsilon_component_member(const IntImage& y, const Parameter& eps,
                              const std::vector<IntImage>& y_n) {
  const std::size_t k = y.size();
  if (eps.bounds.size() + 1 != k) {
    throw std::invalid_argument("epsilon_component_member: parameter dimension mismatch");
  }
  const auto feasible = [&](const IntImage& img) {
    for (std::size_t i = 0; i + 1 < k; ++i) {
      const ExtendedValue& b = eps.bounds[i];
      if (b.is_plus_inf()) continue;
      if (b.is_minus_inf() || img[i] >= b.value()) return false;
    }
    return true;
  };
  std::optional<IntImage> best;
  for (const IntImage& img : y_n) {
    if (!feasible(img)) continue;
    if (!best || reversed_lex_less(img, *best)) best = img;
  }
  return best && *best == y;
}

std::vector<IntImage> level_set(const std::vector<IntImage>& y_n, std::size_t r) {
  if (y_n.empty()) return {};
  const std::size_t k = y_n.front().size();
  if (r < 1 || r > k) throw std::invalid_argument("level_set: level out of range");

  std::vector<IntImage> level = y_n;
  for (std::size_t j = k; j-- > r;) {
    // Drop members whose first-j prefix some nondominated image matches or
    // beats (component-wise <=, not equal).
    std::vector<IntImage> next;
    for (const IntImage& y : level) {
      bool blocked = false;
      for (const IntImage& other : y_n) {
        bool leq = true;
        bool equal = true;
        for (std::size_t i = 0; i < j && leq; ++i) {
          leq = other[i] <= y[i];
          equal = equal && other[i] == y[i];
        }
        if (leq && !equal) {
          blocked = true;
          break;
        }
      }
      if (!blocked) next.push_back(y);
    }
    level = std::move(next);
  }
  return level;
}

std::vector<IntImage> enumerate_knapsack_images(const KnapsackProblem& p, std::size_t max_items) {
  if (p.n > max_items) {
    throw std::invalid_argument(
        "enumerate_knapsack_images: instance exceeds the exhaustive-check threshold");
  }
  std::set<IntImage> images;
  const std::uint64_t limit = std::uint64_t{1} << p.n;
  for (std::uint64_t mask = 0; mask < limit; ++mask) {
    std::int64_t weight = 0;
    for (std::size_t j = 0; j < p.n; ++j) {
      if (mask >> j & 1) weight += p.weight[j];
    }
    if (weight > p.capacity) continue;
    IntImage img(p.k, 0);
    for (std::size_t j = 0; j < p.n; ++j) {
      if (mask >> j & 1) {
        for (std::size_t i = 0; i < p.k; ++i) img[i] += p.cost[i][j];
      }
    }
    images.insert(std::move(img));
  }
  return {images.begin(), images.end()};
}

}  // namespace moenum::oracle
