#ifndef MOENUM_WARMSTART_HPP
#define MOENUM_WARMSTART_HPP

#include <cstdint>
#include <vector>

#include "moenum/engine.hpp"
#include "moenum/problem.hpp"

namespace moenum {

struct CascadeConfig {
  unsigned thread_budget = 1;
  /// Seed backends with incumbents found in the previous level.
  bool warm_start = true;
  /// Force-solve every skipped scalarization afterwards and confirm it is
  /// infeasible (verification instrumentation; costs extra backend calls).
  bool verify_skips = false;
};

/// Result of one level r of the feasibility ladder: the image set containing
/// every nondominated image that no other nondominated image matches or
/// beats on the first r objectives.
struct LevelReport {
  std::size_t level = 0;                 // r, 1-based
  std::vector<StoredImage> members;      // original objective order
  RunReport run;                         // the underlying engine run
  std::uint64_t verified_skips = 0;      // confirmed-infeasible skip count
  std::uint64_t skip_violations = 0;     // skips that force-solved feasible (must be 0)
};

/// The nested sets of levels 1..k; level k is the full nondominated set.
struct FeasibilityLadder {
  std::vector<LevelReport> levels;

  [[nodiscard]] const std::vector<StoredImage>& final_set() const { return levels.back().members; }
};

struct CascadeReport {
  FeasibilityLadder ladder;
  std::uint64_t scalarizations_solved = 0;
  std::uint64_t backend_calls = 0;
  std::uint64_t skipped_infeasible = 0;
  std::uint64_t incumbents_used = 0;
  double total_seconds = 0.0;

  /// Fraction of backend calls that were seeded with an incumbent.
  [[nodiscard]] double incumbent_hit_rate() const {
    return backend_calls == 0 ? 0.0
                              : static_cast<double>(incumbents_used) / static_cast<double>(backend_calls);
  }
};

/// Computes level r from level r-1 (`lower`, empty for r = 1) by running the
/// engine on the level-r reordering of the instance with the leading k-r
/// combination members pinned to dummies. Every scalarization is first
/// checked against `lower`: if no lower-level member satisfies the bounds the
/// query is provably infeasible and skipped; otherwise the member's witness
/// seeds the backend.
[[nodiscard]] LevelReport compute_level(std::size_t r, const std::vector<StoredImage>& lower,
                                        const ProblemInstance& instance, const CascadeConfig& config);

/// Runs levels 1 through k in order; the final level's stored set is the
/// nondominated set.
[[nodiscard]] CascadeReport run_cascade(const ProblemInstance& instance,
                                        const CascadeConfig& config = {});

}  // namespace moenum

#endif  // MOENUM_WARMSTART_HPP
