#ifndef MOENUM_ENGINE_HPP
#define MOENUM_ENGINE_HPP

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "moenum/image.hpp"
#include "moenum/scalarizer.hpp"

namespace moenum {

/// Hook consulted once per scalarization before the backend is called.
/// Implementations must be safe for concurrent calls.
class QueryAdvisor {
 public:
  struct Advice {
    bool skip = false;                 // answer Infeasible without the backend
    std::optional<Witness> incumbent;  // feasible solution to seed the backend
  };

  virtual ~QueryAdvisor() = default;
  [[nodiscard]] virtual Advice advise(const Parameter& bounds) const = 0;
};

struct EngineConfig {
  unsigned thread_budget = 1;
  /// Forward advisor incumbents to the backend. Off, incumbents are dropped;
  /// the answers are identical either way.
  bool warm_start = true;
  /// Record one NodeRecord per explored node (for verification).
  bool record_provenance = false;
  /// Leading combination members that are never replaced when generating
  /// scions. Used by the feasibility ladder; 0 for a plain run.
  std::size_t pinned_prefix = 0;
  const QueryAdvisor* advisor = nullptr;
};

struct StoredImage {
  Image image;
  Witness witness;
};

/// Provenance of one explored node, for verification instrumentation.
struct NodeRecord {
  Combination combination;
  std::optional<Combination> parent;  // empty for the root
  std::size_t scion_position = 0;     // member replaced to create this node
  std::size_t depth = 0;
  std::optional<Image> optimum;  // empty when the scalarization was infeasible
  bool stored = false;
  bool skipped = false;  // answered infeasible by the advisor
};

struct RunReport {
  /// Stored images with witnesses, sorted by the reversed lexicographic
  /// order so the result is identical for every thread budget.
  std::vector<StoredImage> nondominated;

  std::uint64_t scalarizations_solved = 0;  // nodes visited (posed queries)
  std::uint64_t backend_calls = 0;
  std::uint64_t infeasible_count = 0;  // includes advisor skips
  std::uint64_t skipped_infeasible = 0;
  std::uint64_t incumbents_used = 0;

  unsigned thread_budget = 1;
  std::size_t max_depth = 0;
  std::vector<std::uint64_t> per_thread_tasks;
  double setup_seconds = 0.0;
  double solve_seconds = 0.0;

  std::vector<NodeRecord> provenance;  // only when recording was enabled
};

/// Whether the optimum found at combination `c` must be stored: member i may
/// not exceed the optimum in any coordinate j > i. Exactly one explored
/// combination per nondominated image satisfies this across a run, so no
/// duplicate check is ever needed.
[[nodiscard]] bool storage_rule(const Combination& c, const Image& optimum);

/// All scions of `c` given its optimal image, in ascending replacement
/// position. Position l qualifies when optimum[l] >= member_i[l] for every
/// other member i. Positions below `pinned_prefix` are never replaced.
[[nodiscard]] std::vector<std::pair<std::size_t, Combination>> scion_candidates(
    const Combination& c, const Image& optimum, std::size_t pinned_prefix = 0);

/// Depth-first traversal of the scion tree from the root combination,
/// scheduled as work-stealing tasks over at most `config.thread_budget`
/// workers. The set of explored nodes is a fixed tree, so the posed queries
/// and the stored set do not depend on the budget.
[[nodiscard]] RunReport run(const ScalarizationBackend& backend, const EngineConfig& config = {});

/// Full-record entry point: rewrites the instance into the given objective
/// ordering, builds the matching backend, runs, and maps the stored images
/// back to the original ordering. Provenance, when recorded, stays in the
/// rewritten ordering.
[[nodiscard]] RunReport run_ordered(const ProblemInstance& instance, const Permutation& order,
                                    const EngineConfig& config = {});

}  // namespace moenum

#endif  // MOENUM_ENGINE_HPP
