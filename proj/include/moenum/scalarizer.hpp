#ifndef MOENUM_SCALARIZER_HPP
#define MOENUM_SCALARIZER_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "moenum/image.hpp"
#include "moenum/problem.hpp"

namespace moenum {

/// Backend-specific encoding of one feasible solution: the image index for
/// explicit sets, the 0/1 item selection for knapsacks, the variable
/// assignment for tiny ILPs.
struct Witness {
  std::vector<std::int64_t> values;

  friend bool operator==(const Witness& a, const Witness& b) { return a.values == b.values; }
};

/// One lexicographic epsilon-constraint problem: minimize
/// (f_{k-1}, f_{k-2}, ..., f_0) lexicographically subject to f_i < bounds[i]
/// for every finite bound i < k-1. With integer objectives the strict
/// constraints are realized as f_i <= bounds[i] - 1; infinite bounds are
/// dropped. An incumbent, when present, seeds the backend's initial upper
/// bound and never changes the answer.
struct ScalarizationQuery {
  Parameter bounds;
  std::optional<Witness> incumbent;
};

struct Optimum {
  Image image;
  Witness witness;
};

/// Engaged with the unique optimal image and one witness, or empty when no
/// feasible solution satisfies the bounds.
using ScalarizationAnswer = std::optional<Optimum>;

/// A solver for lexicographic epsilon-constraint problems over one fixed
/// instance. Implementations are stateless per query and must be safely
/// callable from many threads at once; per-query scratch memory is local.
class ScalarizationBackend {
 public:
  virtual ~ScalarizationBackend() = default;

  [[nodiscard]] virtual std::size_t num_objectives() const = 0;
  [[nodiscard]] virtual ScalarizationAnswer solve(const ScalarizationQuery& query) const = 0;
};

/// Reference backend: a linear scan over an explicit image set.
/// The witness is the index of the image in the instance list.
class ExplicitSetBackend final : public ScalarizationBackend {
 public:
  explicit ExplicitSetBackend(ExplicitSetProblem problem);

  [[nodiscard]] std::size_t num_objectives() const override { return problem_.k; }
  [[nodiscard]] ScalarizationAnswer solve(const ScalarizationQuery& query) const override;

 private:
  ExplicitSetProblem problem_;
};

/// Exact staged branch-and-bound for 0-1 knapsacks.
///
/// The lexicographic objective is solved one stage at a time, from objective
/// k-1 down to objective 0. Stage t minimizes objective t subject to the
/// capacity, the epsilon bounds, and equality pins on the objectives fixed by
/// earlier stages. The bound is the fractional-relaxation bound on the
/// current stage's scalar objective, evaluated in exact integer arithmetic;
/// correctness never depends on its tightness.
class KnapsackBackend final : public ScalarizationBackend {
 public:
  explicit KnapsackBackend(KnapsackProblem problem);

  [[nodiscard]] std::size_t num_objectives() const override { return problem_.k; }
  [[nodiscard]] ScalarizationAnswer solve(const ScalarizationQuery& query) const override;

 private:
  KnapsackProblem problem_;
  // Per stage: item order by stage-objective density, plus suffix tables of
  // the achievable decrease/increase for every objective along that order.
  struct StageData {
    std::vector<std::size_t> order;
    std::vector<std::vector<std::int64_t>> suffix_min_add;  // k x (n+1)
    std::vector<std::vector<std::int64_t>> suffix_max_add;  // k x (n+1)
  };
  std::vector<StageData> stages_;
};

/// Fallback for small integer linear programs: enumerates the variable box
/// once at construction and answers queries by scanning the distinct
/// achievable images. The witness is a full variable assignment.
class TinyIlpBackend final : public ScalarizationBackend {
 public:
  /// Throws std::invalid_argument if the box has more than `max_points`
  /// lattice points.
  explicit TinyIlpBackend(TinyIlpProblem problem, std::uint64_t max_points = 1u << 22);

  [[nodiscard]] std::size_t num_objectives() const override { return problem_.k; }
  [[nodiscard]] ScalarizationAnswer solve(const ScalarizationQuery& query) const override;

  [[nodiscard]] const std::vector<std::vector<std::int64_t>>& feasible_images() const {
    return images_;
  }

 private:
  TinyIlpProblem problem_;
  std::vector<std::vector<std::int64_t>> images_;  // distinct feasible images
  std::vector<std::vector<std::int64_t>> witnesses_;
};

[[nodiscard]] std::unique_ptr<ScalarizationBackend> make_backend(const ProblemInstance& p);

namespace detail {
/// Index of the lexicographic minimum among the rows that satisfy
/// row[i] < bounds[i] for every finite bound; nullopt if none does.
[[nodiscard]] std::optional<std::size_t> lex_scan(
    const std::vector<std::vector<std::int64_t>>& rows, const Parameter& bounds);
}  // namespace detail

}  // namespace moenum

#endif  // MOENUM_SCALARIZER_HPP
