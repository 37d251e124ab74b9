#include "moenum/warmstart.hpp"

#include <algorithm>
#include <chrono>
#include <mutex>
#include <stdexcept>

#include "moenum/permutation.hpp"

namespace moenum {

namespace {

// Linear scan of the previous level for a member satisfying the bounds.
// Levels are small relative to scalarization counts, so no index structure.
class LevelAdvisor final : public QueryAdvisor {
 public:
  LevelAdvisor(std::vector<std::vector<std::int64_t>> member_coords, std::vector<Witness> witnesses,
               bool collect_skips)
      : member_coords_(std::move(member_coords)),
        witnesses_(std::move(witnesses)),
        collect_skips_(collect_skips) {}

  [[nodiscard]] Advice advise(const Parameter& bounds) const override {
    for (std::size_t m = 0; m < member_coords_.size(); ++m) {
      if (feasible(member_coords_[m], bounds)) return Advice{false, witnesses_[m]};
    }
    if (collect_skips_) {
      std::lock_guard<std::mutex> lock(mu_);
      skipped_.push_back(bounds);
    }
    return Advice{true, std::nullopt};
  }

  [[nodiscard]] std::vector<Parameter> skipped() const {
    std::lock_guard<std::mutex> lock(mu_);
    return skipped_;
  }

 private:
  static bool feasible(const std::vector<std::int64_t>& coords, const Parameter& bounds) {
    for (std::size_t i = 0; i < bounds.bounds.size(); ++i) {
      const ExtendedValue& b = bounds.bounds[i];
      if (b.is_plus_inf()) continue;
      if (b.is_minus_inf() || coords[i] >= b.value()) return false;
    }
    return true;
  }

  std::vector<std::vector<std::int64_t>> member_coords_;  // level-r objective order
  std::vector<Witness> witnesses_;
  bool collect_skips_;
  mutable std::mutex mu_;
  mutable std::vector<Parameter> skipped_;
};

}  // namespace

LevelReport compute_level(std::size_t r, const std::vector<StoredImage>& lower,
                          const ProblemInstance& instance, const CascadeConfig& config) {
  const std::size_t k = num_objectives(instance);
  if (r < 1 || r > k) throw std::invalid_argument("compute_level: level out of range");

  const Permutation sigma = Permutation::level(k, r);
  const ProblemInstance permuted = permute_problem(instance, sigma);
  const auto backend = make_backend(permuted);

  std::unique_ptr<LevelAdvisor> advisor;
  if (r >= 2) {
    std::vector<std::vector<std::int64_t>> coords;
    std::vector<Witness> witnesses;
    coords.reserve(lower.size());
    witnesses.reserve(lower.size());
    for (const StoredImage& member : lower) {
      coords.push_back(sigma.apply(member.image.finite_coords()));
      witnesses.push_back(member.witness);
    }
    advisor = std::make_unique<LevelAdvisor>(std::move(coords), std::move(witnesses),
                                             config.verify_skips);
  }

  EngineConfig engine_config;
  engine_config.thread_budget = config.thread_budget;
  engine_config.warm_start = config.warm_start;
  engine_config.pinned_prefix = k - r;
  engine_config.advisor = advisor.get();

  LevelReport report;
  report.level = r;
  report.run = run(*backend, engine_config);

  const Permutation inv = sigma.inverse();
  report.members.reserve(report.run.nondominated.size());
  for (const StoredImage& stored : report.run.nondominated) {
    report.members.push_back(StoredImage{stored.image.permuted(inv), stored.witness});
  }
  std::sort(report.members.begin(), report.members.end(),
            [](const StoredImage& a, const StoredImage& b) { return lex_less(a.image, b.image); });

  if (advisor && config.verify_skips) {
    for (const Parameter& bounds : advisor->skipped()) {
      if (backend->solve(ScalarizationQuery{bounds, std::nullopt})) {
        ++report.skip_violations;
      } else {
        ++report.verified_skips;
      }
    }
  }
  return report;
}

CascadeReport run_cascade(const ProblemInstance& instance, const CascadeConfig& config) {
  validate(instance);
  const std::size_t k = num_objectives(instance);

  const auto t0 = std::chrono::steady_clock::now();
  CascadeReport report;
  std::vector<StoredImage> lower;
  for (std::size_t r = 1; r <= k; ++r) {
    LevelReport level = compute_level(r, lower, instance, config);
    report.scalarizations_solved += level.run.scalarizations_solved;
    report.backend_calls += level.run.backend_calls;
    report.skipped_infeasible += level.run.skipped_infeasible;
    report.incumbents_used += level.run.incumbents_used;
    lower = level.members;
    report.ladder.levels.push_back(std::move(level));
  }
  report.total_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

}  // namespace moenum
