#include "moenum/problem.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>
#include <stdexcept>

namespace moenum {

namespace {

// Keeps sums of n coefficients and the eps-1 reformulation inside int64.
constexpr std::int64_t kMaxCoefficient = 1'000'000'000;
constexpr std::size_t kMaxVariables = 100'000;

void check_magnitude(std::int64_t v, const char* what) {
  if (v > kMaxCoefficient || v < -kMaxCoefficient) {
    throw std::invalid_argument(std::string(what) + ": coefficient magnitude exceeds 1e9");
  }
}

void validate_explicit(const ExplicitSetProblem& p) {
  if (p.k < 2) throw std::invalid_argument("explicit set: k must be >= 2");
  std::set<std::vector<std::int64_t>> seen;
  for (const auto& img : p.images) {
    if (img.size() != p.k) throw std::invalid_argument("explicit set: image of wrong dimension");
    for (std::int64_t v : img) check_magnitude(v, "explicit set");
    if (!seen.insert(img).second) {
      throw std::invalid_argument("explicit set: images must be pairwise distinct");
    }
  }
}

void validate_knapsack(const KnapsackProblem& p) {
  if (p.k < 2) throw std::invalid_argument("knapsack: k must be >= 2");
  if (p.n == 0) throw std::invalid_argument("knapsack: needs at least one item");
  if (p.n > kMaxVariables) throw std::invalid_argument("knapsack: too many items");
  if (p.cost.size() != p.k) throw std::invalid_argument("knapsack: wrong number of cost rows");
  for (const auto& row : p.cost) {
    if (row.size() != p.n) throw std::invalid_argument("knapsack: cost row of wrong length");
    for (std::int64_t v : row) check_magnitude(v, "knapsack cost");
  }
  if (p.weight.size() != p.n) throw std::invalid_argument("knapsack: wrong number of weights");
  for (std::int64_t w : p.weight) {
    check_magnitude(w, "knapsack weight");
    if (w < 0) throw std::invalid_argument("knapsack: weights must be nonnegative");
  }
  if (p.capacity < 0) throw std::invalid_argument("knapsack: capacity must be nonnegative");
}

void validate_tiny_ilp(const TinyIlpProblem& p) {
  if (p.k < 2) throw std::invalid_argument("ilp: k must be >= 2");
  if (p.n == 0) throw std::invalid_argument("ilp: needs at least one variable");
  if (p.objective.size() != p.k) throw std::invalid_argument("ilp: wrong number of objective rows");
  if (p.constraint.size() != p.m) throw std::invalid_argument("ilp: wrong number of constraint rows");
  if (p.rhs.size() != p.m) throw std::invalid_argument("ilp: wrong number of right-hand sides");
  if (p.lower.size() != p.n || p.upper.size() != p.n) {
    throw std::invalid_argument("ilp: variable bound vectors of wrong length");
  }
  for (const auto& row : p.objective) {
    if (row.size() != p.n) throw std::invalid_argument("ilp: objective row of wrong length");
    for (std::int64_t v : row) check_magnitude(v, "ilp objective");
  }
  for (const auto& row : p.constraint) {
    if (row.size() != p.n) throw std::invalid_argument("ilp: constraint row of wrong length");
    for (std::int64_t v : row) check_magnitude(v, "ilp constraint");
  }
  for (std::int64_t v : p.rhs) check_magnitude(v, "ilp rhs");
  for (std::size_t j = 0; j < p.n; ++j) {
    check_magnitude(p.lower[j], "ilp bound");
    check_magnitude(p.upper[j], "ilp bound");
    if (p.lower[j] > p.upper[j]) throw std::invalid_argument("ilp: empty variable domain");
  }
}

}  // namespace

std::size_t num_objectives(const ProblemInstance& p) {
  return std::visit([](const auto& v) { return v.k; }, p);
}

void validate(const ProblemInstance& p) {
  std::visit(
      [](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, ExplicitSetProblem>) {
          validate_explicit(v);
        } else if constexpr (std::is_same_v<T, KnapsackProblem>) {
          validate_knapsack(v);
        } else {
          validate_tiny_ilp(v);
        }
      },
      p);
}

ProblemInstance permute_problem(const ProblemInstance& p, const Permutation& sigma) {
  if (sigma.size() != num_objectives(p)) {
    throw std::invalid_argument("permute_problem: permutation size mismatch");
  }
  return std::visit(
      [&](const auto& v) -> ProblemInstance {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, ExplicitSetProblem>) {
          ExplicitSetProblem out = v;
          for (auto& img : out.images) img = sigma.apply(img);
          return out;
        } else if constexpr (std::is_same_v<T, KnapsackProblem>) {
          KnapsackProblem out = v;
          out.cost = sigma.apply(v.cost);
          return out;
        } else {
          TinyIlpProblem out = v;
          out.objective = sigma.apply(v.objective);
          return out;
        }
      },
      p);
}

std::vector<std::int64_t> present_image(const ProblemInstance& p,
                                        const std::vector<std::int64_t>& coords) {
  if (const auto* kp = std::get_if<KnapsackProblem>(&p); kp && kp->negated_from_max) {
    std::vector<std::int64_t> out;
    out.reserve(coords.size());
    for (std::int64_t v : coords) out.push_back(-v);
    return out;
  }
  return coords;
}

std::string kind_name(const ProblemInstance& p) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, ExplicitSetProblem>) {
          return "explicit-set";
        } else if constexpr (std::is_same_v<T, KnapsackProblem>) {
          return "knapsack";
        } else {
          return "tiny-ilp";
        }
      },
      p);
}

}  // namespace moenum
