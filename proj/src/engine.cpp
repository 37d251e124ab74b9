#include "moenum/engine.hpp"

#include <tbb/global_control.h>
#include <tbb/task_arena.h>
#include <tbb/task_group.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <mutex>
#include <stdexcept>

namespace moenum {

bool storage_rule(const Combination& c, const Image& optimum) {
  if (!optimum.is_real() || optimum.dimension() != c.dimension()) {
    throw std::invalid_argument("storage_rule: optimum must be a real image of matching dimension");
  }
  const std::size_t k = c.dimension();
  for (std::size_t i = 0; i + 1 < k; ++i) {
    const Image& member = c.member(i);
    for (std::size_t j = i + 1; j < k; ++j) {
      if (member[j] > optimum[j]) return false;
    }
  }
  return true;
}

std::vector<std::pair<std::size_t, Combination>> scion_candidates(const Combination& c,
                                                                  const Image& optimum,
                                                                  std::size_t pinned_prefix) {
  if (!optimum.is_real() || optimum.dimension() != c.dimension()) {
    throw std::invalid_argument("scion_candidates: optimum must be a real image of matching dimension");
  }
  std::vector<std::pair<std::size_t, Combination>> scions;
  for (std::size_t l = pinned_prefix; l < c.size(); ++l) {
    bool qualifies = true;
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (i == l) continue;
      if (optimum[l] < c.member(i)[l]) {
        qualifies = false;
        break;
      }
    }
    if (qualifies) scions.emplace_back(l, c.with_member(l, optimum));
  }
  return scions;
}

namespace {

struct TraversalState {
  const ScalarizationBackend& backend;
  const EngineConfig& cfg;

  std::mutex stored_mu;
  std::vector<StoredImage> stored;

  std::atomic<std::uint64_t> solved{0};
  std::atomic<std::uint64_t> backend_calls{0};
  std::atomic<std::uint64_t> infeasible{0};
  std::atomic<std::uint64_t> skipped{0};
  std::atomic<std::uint64_t> incumbents{0};
  std::atomic<std::size_t> max_depth{0};

  std::vector<std::atomic<std::uint64_t>> thread_tasks;

  std::mutex provenance_mu;
  std::vector<NodeRecord> provenance;

  TraversalState(const ScalarizationBackend& b, const EngineConfig& c, std::size_t workers)
      : backend(b), cfg(c), thread_tasks(workers) {}

  void bump_thread_counter() {
    int idx = tbb::this_task_arena::current_thread_index();
    if (idx < 0 || static_cast<std::size_t>(idx) >= thread_tasks.size()) idx = 0;
    thread_tasks[static_cast<std::size_t>(idx)].fetch_add(1, std::memory_order_relaxed);
  }

  void record(NodeRecord&& rec) {
    if (!cfg.record_provenance) return;
    std::lock_guard<std::mutex> lock(provenance_mu);
    provenance.push_back(std::move(rec));
  }
};

// Explores the subtree rooted at `c`. The parent combination outlives the
// call: a node's frame stays alive until all of its child tasks finish.
void explore(TraversalState& s, const Combination& c, std::size_t depth, const Combination* parent,
             std::size_t scion_position, bool parallel) {
  s.solved.fetch_add(1, std::memory_order_relaxed);
  s.bump_thread_counter();
  std::size_t seen = s.max_depth.load(std::memory_order_relaxed);
  while (seen < depth && !s.max_depth.compare_exchange_weak(seen, depth)) {
  }

  ScalarizationQuery query{viable_parameter(c), std::nullopt};

  const auto record = [&](std::optional<Image> optimum, bool stored, bool skipped) {
    if (!s.cfg.record_provenance) return;
    s.record(NodeRecord{c, parent ? std::optional<Combination>(*parent) : std::nullopt,
                        scion_position, depth, std::move(optimum), stored, skipped});
  };

  if (s.cfg.advisor != nullptr) {
    QueryAdvisor::Advice advice = s.cfg.advisor->advise(query.bounds);
    if (advice.skip) {
      s.infeasible.fetch_add(1, std::memory_order_relaxed);
      s.skipped.fetch_add(1, std::memory_order_relaxed);
      record(std::nullopt, false, true);
      return;
    }
    if (advice.incumbent && s.cfg.warm_start) {
      query.incumbent = std::move(advice.incumbent);
      s.incumbents.fetch_add(1, std::memory_order_relaxed);
    }
  }

  s.backend_calls.fetch_add(1, std::memory_order_relaxed);
  ScalarizationAnswer answer = s.backend.solve(query);
  if (!answer) {
    s.infeasible.fetch_add(1, std::memory_order_relaxed);
    record(std::nullopt, false, false);
    return;
  }

  const bool stored = storage_rule(c, answer->image);
  if (stored) {
    std::lock_guard<std::mutex> lock(s.stored_mu);
    s.stored.push_back(StoredImage{answer->image, answer->witness});
  }
  record(answer->image, stored, false);

  auto scions = scion_candidates(c, answer->image, s.cfg.pinned_prefix);
  if (scions.empty()) return;

  if (!parallel || scions.size() == 1) {
    for (const auto& [pos, child] : scions) {
      explore(s, child, depth + 1, &c, pos, parallel);
    }
    return;
  }

  // First scion runs inline on the spawning worker; the rest become tasks.
  tbb::task_group group;
  for (std::size_t i = 1; i < scions.size(); ++i) {
    group.run([&s, &c, depth, pos = scions[i].first, child = std::move(scions[i].second)] {
      explore(s, child, depth + 1, &c, pos, true);
    });
  }
  explore(s, scions.front().second, depth + 1, &c, scions.front().first, true);
  group.wait();
}

}  // namespace

RunReport run(const ScalarizationBackend& backend, const EngineConfig& config) {
  const std::size_t k = backend.num_objectives();
  if (k < 2) throw std::invalid_argument("run: needs at least two objectives");
  if (config.thread_budget < 1) throw std::invalid_argument("run: thread budget must be >= 1");
  if (config.pinned_prefix > k - 1) {
    throw std::invalid_argument("run: pinned prefix exceeds combination size");
  }

  const auto t0 = std::chrono::steady_clock::now();
  const Combination root = Combination::root(k);
  TraversalState state(backend, config, std::max(1u, config.thread_budget));
  const auto t1 = std::chrono::steady_clock::now();

  try {
    if (config.thread_budget == 1) {
      explore(state, root, 0, nullptr, 0, /*parallel=*/false);
    } else {
      // Budgets above the core count still get real workers (oversubscription
      // is part of the thread-ladder contract).
      tbb::global_control raise_limit(tbb::global_control::max_allowed_parallelism,
                                      config.thread_budget);
      tbb::task_arena arena(static_cast<int>(config.thread_budget));
      arena.execute([&] { explore(state, root, 0, nullptr, 0, /*parallel=*/true); });
    }
  } catch (const std::exception& e) {
    throw std::runtime_error("run aborted after " + std::to_string(state.solved.load()) +
                             " scalarizations (" + std::to_string(state.stored.size()) +
                             " images stored): " + e.what());
  }
  const auto t2 = std::chrono::steady_clock::now();

  RunReport report;
  report.nondominated = std::move(state.stored);
  std::sort(report.nondominated.begin(), report.nondominated.end(),
            [](const StoredImage& a, const StoredImage& b) { return lex_less(a.image, b.image); });
  report.scalarizations_solved = state.solved.load();
  report.backend_calls = state.backend_calls.load();
  report.infeasible_count = state.infeasible.load();
  report.skipped_infeasible = state.skipped.load();
  report.incumbents_used = state.incumbents.load();
  report.thread_budget = config.thread_budget;
  report.max_depth = state.max_depth.load();
  report.per_thread_tasks.reserve(state.thread_tasks.size());
  for (const auto& counter : state.thread_tasks) report.per_thread_tasks.push_back(counter.load());
  report.setup_seconds = std::chrono::duration<double>(t1 - t0).count();
  report.solve_seconds = std::chrono::duration<double>(t2 - t1).count();
  report.provenance = std::move(state.provenance);
  return report;
}

RunReport run_ordered(const ProblemInstance& instance, const Permutation& order,
                      const EngineConfig& config) {
  const auto t0 = std::chrono::steady_clock::now();
  validate(instance);
  const ProblemInstance working = permute_problem(instance, order);
  const auto backend = make_backend(working);
  const double setup = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  RunReport report = run(*backend, config);
  report.setup_seconds += setup;
  if (!order.is_identity()) {
    const Permutation inverse = order.inverse();
    for (StoredImage& stored : report.nondominated) {
      stored.image = stored.image.permuted(inverse);
    }
    std::sort(report.nondominated.begin(), report.nondominated.end(),
              [](const StoredImage& a, const StoredImage& b) { return lex_less(a.image, b.image); });
  }
  return report;
}

}  // namespace moenum
