#ifndef MOENUM_PROBLEM_HPP
#define MOENUM_PROBLEM_HPP

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "moenum/image.hpp"
#include "moenum/permutation.hpp"

namespace moenum {

/// A problem given directly by its finite image set. The solver treats the
/// listed points as the feasible images; they need not be mutually
/// nondominated, but they must be pairwise distinct.
struct ExplicitSetProblem {
  std::size_t k = 0;
  std::vector<std::vector<std::int64_t>> images;  // each of size k
};

/// 0-1 knapsack with k linear objectives. Objectives are stored in the
/// internal minimization convention: when an instance is loaded from the
/// maximization benchmark format, profits are negated on input and
/// `negated_from_max` records that the reporter has to un-negate on output.
struct KnapsackProblem {
  std::size_t k = 0;
  std::size_t n = 0;
  std::vector<std::vector<std::int64_t>> cost;  // k rows of n coefficients (minimized)
  std::vector<std::int64_t> weight;             // n, all >= 0
  std::int64_t capacity = 0;                    // >= 0
  bool negated_from_max = false;
};

/// A small integer linear program, minimize Cx subject to Ax <= b and
/// box bounds on the variables. Solved by exhaustive enumeration of the box,
/// so the box volume is capped (see TinyIlpBackend).
struct TinyIlpProblem {
  std::size_t k = 0;
  std::size_t n = 0;
  std::size_t m = 0;
  std::vector<std::vector<std::int64_t>> objective;   // k x n
  std::vector<std::vector<std::int64_t>> constraint;  // m x n
  std::vector<std::int64_t> rhs;                      // m
  std::vector<std::int64_t> lower;                    // n
  std::vector<std::int64_t> upper;                    // n
};

using ProblemInstance = std::variant<ExplicitSetProblem, KnapsackProblem, TinyIlpProblem>;

[[nodiscard]] std::size_t num_objectives(const ProblemInstance& p);

/// Structural validation (dimensions, signs, distinctness, value magnitudes
/// small enough that all internal arithmetic stays exact in 64 bits).
/// Throws std::invalid_argument with a description on violation.
void validate(const ProblemInstance& p);

/// Instance with objective i equal to objective sigma(i) of the input; the
/// inverse permutation un-maps result images. Feasible sets are unchanged.
[[nodiscard]] ProblemInstance permute_problem(const ProblemInstance& p, const Permutation& sigma);

/// Objective vector in the instance's native reporting convention
/// (un-negated profits for maximization knapsacks).
[[nodiscard]] std::vector<std::int64_t> present_image(const ProblemInstance& p,
                                                      const std::vector<std::int64_t>& coords);

[[nodiscard]] std::string kind_name(const ProblemInstance& p);

}  // namespace moenum

#endif  // MOENUM_PROBLEM_HPP
