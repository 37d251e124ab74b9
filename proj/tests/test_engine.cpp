#include <doctest.h>

#include <atomic>
#include <map>
#include <set>

#include "moenum/engine.hpp"
#include "moenum/io.hpp"
#include "moenum/oracle.hpp"
#include "support.hpp"

using moenum::Combination;
using moenum::EngineConfig;
using moenum::Image;
using moenum::RunReport;
using testsupport::img;
using testsupport::IntImage;

namespace {

std::set<std::string> combination_strings(const RunReport& report) {
  std::set<std::string> out;
  for (const auto& rec : report.provenance) out.insert(rec.combination.to_string());
  return out;
}

std::set<std::string> oracle_combination_strings(const moenum::oracle::CombinationTree& tree) {
  std::set<std::string> out;
  for (std::size_t n = 0; n < tree.nodes.size(); ++n) {
    out.insert(tree.combination_of(n).to_string());
  }
  return out;
}

}  // namespace

TEST_CASE("storage rule: root always stores, members may not exceed the optimum") {
  const Combination root = Combination::root(4);
  CHECK(storage_rule(root, img({4, 1, 2, 1})));

  // four-image tri-objective set: the combination ((6,2,4),(5,4,1)) stores (3,3,5)
  const Combination c({img({6, 2, 4}), img({5, 4, 1})});
  CHECK(storage_rule(c, img({3, 3, 5})));

  // ...but ((2,6,2),(5,4,1)) does not: member 0 has 6 > 3 in coordinate 1
  const Combination c2({img({2, 6, 2}), img({5, 4, 1})});
  CHECK_FALSE(storage_rule(c2, img({3, 3, 5})));
}

TEST_CASE("storage rule fires exactly once per image across the tree") {
  // The independent enumeration lists every explored combination with its
  // optimum; evaluating the rule on each must pick one storer per image.
  for (const auto& problem :
       {testsupport::four_image_example(), testsupport::shared_coords_example()}) {
    const auto frontier = moenum::oracle::brute_nondominated(problem.images);
    const auto tree = moenum::oracle::enumerate_true_combinations(frontier);
    std::map<IntImage, int> storers;
    for (std::size_t n = 0; n < tree.nodes.size(); ++n) {
      if (!tree.nodes[n].optimum) continue;
      const IntImage& y = tree.images[*tree.nodes[n].optimum];
      if (storage_rule(tree.combination_of(n), Image::real(y))) storers[y] += 1;
    }
    REQUIRE(storers.size() == frontier.size());
    for (const auto& [y, count] : storers) CHECK(count == 1);
  }

  // In particular (3,3,5) is stored at ((6,2,4),(5,4,1)) and nowhere else.
  const auto tree =
      moenum::oracle::enumerate_true_combinations(testsupport::four_image_example().images);
  const Combination storer({img({6, 2, 4}), img({5, 4, 1})});
  for (std::size_t n = 0; n < tree.nodes.size(); ++n) {
    if (!tree.nodes[n].optimum) continue;
    const IntImage& y = tree.images[*tree.nodes[n].optimum];
    if (y != IntImage{3, 3, 5}) continue;
    CHECK(storage_rule(tree.combination_of(n), Image::real(y)) ==
          (tree.combination_of(n) == storer));
  }
}

TEST_CASE("scion candidates follow the replacement condition") {
  const Combination root = Combination::root(4);
  const Image y1 = img({4, 1, 2, 1});
  const auto from_root = scion_candidates(root, y1);
  REQUIRE(from_root.size() == 3);
  CHECK(from_root[0].first == 0);
  CHECK(from_root[0].second == root.with_member(0, y1));
  CHECK(from_root[1].second == root.with_member(1, y1));
  CHECK(from_root[2].second == root.with_member(2, y1));

  const Image y2 = img({2, 4, 3, 2});
  const auto second = scion_candidates(root.with_member(0, y1), y2);
  REQUIRE(second.size() == 3);
  CHECK(second[0].second == root.with_member(0, y2));
  CHECK(second[1].second == root.with_member(0, y1).with_member(1, y2));
  CHECK(second[2].second == root.with_member(0, y1).with_member(2, y2));

  // at (y2,d2,d3) the optimum (1,3,4,3) fails position 1: 3 >= 4 is false
  const Image y3 = img({1, 3, 4, 3});
  const auto third = scion_candidates(root.with_member(0, y2), y3);
  REQUIRE(third.size() == 2);
  CHECK(third[0].second == root.with_member(0, y3));
  CHECK(third[1].second == root.with_member(0, y2).with_member(2, y3));

  // a pinned prefix suppresses those positions entirely
  const auto pinned = scion_candidates(root, y1, 2);
  REQUIRE(pinned.size() == 1);
  CHECK(pinned[0].first == 2);
}

TEST_CASE("full run on the four-objective example explores exactly eleven nodes") {
  const moenum::ProblemInstance instance{testsupport::quad_example()};
  const RunReport report = testsupport::plain_run(instance, 1, true);

  CHECK(report.scalarizations_solved == 11);
  CHECK(report.infeasible_count == 7);
  REQUIRE(report.nondominated.size() == 3);
  CHECK(testsupport::to_rows(report.nondominated) ==
        std::vector<IntImage>{{4, 1, 2, 1}, {2, 4, 3, 2}, {1, 3, 4, 3}});

  // the explored node set is exactly the scion tree of the example
  const Combination root = Combination::root(4);
  const Image y1 = img({4, 1, 2, 1});
  const Image y2 = img({2, 4, 3, 2});
  const Image y3 = img({1, 3, 4, 3});
  const std::set<std::string> expected{
      root.to_string(),
      root.with_member(0, y1).to_string(),
      root.with_member(1, y1).to_string(),
      root.with_member(2, y1).to_string(),
      root.with_member(0, y2).to_string(),
      root.with_member(0, y1).with_member(1, y2).to_string(),
      root.with_member(0, y1).with_member(2, y2).to_string(),
      root.with_member(0, y3).to_string(),
      root.with_member(0, y2).with_member(2, y3).to_string(),
      root.with_member(0, y1).with_member(1, y3).to_string(),
      root.with_member(0, y1).with_member(1, y2).with_member(2, y3).to_string(),
  };
  CHECK(combination_strings(report) == expected);
}

TEST_CASE("empty feasible set solves one scalarization and stores nothing") {
  const moenum::ProblemInstance instance{moenum::ExplicitSetProblem{3, {}}};
  const RunReport report = testsupport::plain_run(instance);
  CHECK(report.scalarizations_solved == 1);
  CHECK(report.infeasible_count == 1);
  CHECK(report.nondominated.empty());
}

TEST_CASE("shared-coordinate example: three images, oracle-counted tree, no false node") {
  const moenum::ProblemInstance instance{testsupport::shared_coords_example()};
  const RunReport report = testsupport::plain_run(instance, 1, true);

  REQUIRE(report.nondominated.size() == 3);
  const auto tree = moenum::oracle::enumerate_true_combinations(
      testsupport::shared_coords_example().images);
  CHECK(report.scalarizations_solved == tree.nodes.size());
  CHECK(combination_strings(report) == oracle_combination_strings(tree));

  // the viable-but-not-true combination ((4,2,3),(2,3,4)) is never explored
  const Combination excluded({img({4, 2, 3}), img({2, 3, 4})});
  CHECK(combination_strings(report).count(excluded.to_string()) == 0);
}

TEST_CASE("engine explores exactly the oracle's combination tree on tie-heavy sets") {
  // Narrow coordinate ranges force shared values, exercising the generic
  // (>=) replacement condition against the independent enumeration.
  for (std::uint64_t seed = 100; seed < 112; ++seed) {
    const auto problem = moenum::io::random_explicit_set(3, 15, seed, 0, 6);
    const RunReport report = testsupport::plain_run(moenum::ProblemInstance{problem}, 1, true);
    const auto frontier = moenum::oracle::brute_nondominated(problem.images);
    const auto tree = moenum::oracle::enumerate_true_combinations(frontier, 3);
    CHECK(report.scalarizations_solved == tree.nodes.size());
    CHECK(combination_strings(report) == oracle_combination_strings(tree));
    CHECK(testsupport::to_rows(report.nondominated) == frontier);
  }
  for (std::uint64_t seed = 200; seed < 206; ++seed) {
    const auto problem = moenum::io::random_explicit_set(4, 12, seed, 0, 5);
    const RunReport report = testsupport::plain_run(moenum::ProblemInstance{problem}, 1, true);
    const auto frontier = moenum::oracle::brute_nondominated(problem.images);
    const auto tree = moenum::oracle::enumerate_true_combinations(frontier, 4);
    CHECK(report.scalarizations_solved == tree.nodes.size());
    CHECK(combination_strings(report) == oracle_combination_strings(tree));
  }
}

TEST_CASE("parallel traversal of a large all-nondominated set stays exact") {
  const moenum::ProblemInstance instance{testsupport::constant_sum_set(3, 400, 5)};
  const RunReport base = testsupport::plain_run(instance, 1);
  CHECK(base.nondominated.size() == 400);
  for (unsigned budget : {2u, 8u}) {
    const RunReport other = testsupport::plain_run(instance, budget, true);
    CHECK(other.scalarizations_solved == base.scalarizations_solved);
    CHECK(testsupport::to_rows(other.nondominated) == testsupport::to_rows(base.nondominated));
    CHECK(other.provenance.size() == other.scalarizations_solved);
    CHECK(other.per_thread_tasks.size() == budget);
    std::uint64_t tasks = 0;
    for (auto c : other.per_thread_tasks) tasks += c;
    CHECK(tasks == other.scalarizations_solved);
  }
}

TEST_CASE("thread budgets do not change the result or the work") {
  std::vector<moenum::ProblemInstance> instances;
  instances.emplace_back(moenum::io::random_explicit_set(5, 50, 2024));
  instances.emplace_back(moenum::io::random_explicit_set(3, 80, 7));
  instances.emplace_back(moenum::io::random_knapsack(3, 12, 3));
  for (const auto& instance : instances) {
    const RunReport base = testsupport::plain_run(instance, 1);
    for (unsigned budget : {2u, 4u, 8u}) {
      const RunReport other = testsupport::plain_run(instance, budget);
      CHECK(other.scalarizations_solved == base.scalarizations_solved);
      CHECK(testsupport::to_rows(other.nondominated) == testsupport::to_rows(base.nondominated));
    }
  }
}

TEST_CASE("every non-root node has exactly one parent and no image is stored twice") {
  for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
    const moenum::ProblemInstance instance{moenum::io::random_explicit_set(4, 40, seed)};
    const RunReport report = testsupport::plain_run(instance, 4, true);

    std::map<std::string, int> seen;
    std::size_t roots = 0;
    for (const auto& rec : report.provenance) {
      seen[rec.combination.to_string()] += 1;
      if (!rec.parent) ++roots;
    }
    CHECK(roots == 1);
    for (const auto& [combo, count] : seen) CHECK(count == 1);
    for (const auto& rec : report.provenance) {
      if (rec.parent) CHECK(seen.count(rec.parent->to_string()) == 1);
    }

    std::set<std::string> stored;
    for (const auto& rec : report.provenance) {
      if (rec.stored) CHECK(stored.insert(rec.optimum->to_string()).second);
    }
    CHECK(stored.size() == report.nondominated.size());
  }
}

TEST_CASE("engine equals brute force on explicit sets and knapsacks") {
  for (std::uint64_t seed : {11ull, 12ull}) {
    const auto es = moenum::io::random_explicit_set(4, 60, seed);
    const RunReport report = testsupport::plain_run(moenum::ProblemInstance{es}, 2);
    CHECK(testsupport::to_rows(report.nondominated) ==
          moenum::oracle::brute_nondominated(es.images));
  }
  const auto kp = moenum::io::random_knapsack(3, 12, 21);
  const RunReport report = testsupport::plain_run(moenum::ProblemInstance{kp}, 2);
  CHECK(testsupport::to_rows(report.nondominated) ==
        moenum::oracle::brute_nondominated(moenum::oracle::enumerate_knapsack_images(kp)));
}

TEST_CASE("scalarization count is bounded by the local upper bound count") {
  for (std::uint64_t seed : {5ull, 6ull}) {
    const auto problem = testsupport::general_position_set(3, 25, seed);
    const RunReport report = testsupport::plain_run(moenum::ProblemInstance{problem}, 1);
    const auto frontier = moenum::oracle::brute_nondominated(problem.images);
    const auto bounds = moenum::oracle::enumerate_upper_bounds(frontier, 3);
    CHECK(report.scalarizations_solved <= bounds.size());
  }
}

TEST_CASE("optima strictly increase along root-to-node paths in general position") {
  const auto problem = testsupport::general_position_set(4, 20, 99);
  const RunReport report = testsupport::plain_run(moenum::ProblemInstance{problem}, 1, true);

  std::map<std::string, const moenum::NodeRecord*> by_combination;
  for (const auto& rec : report.provenance) by_combination[rec.combination.to_string()] = &rec;
  int checked = 0;
  for (const auto& rec : report.provenance) {
    if (!rec.parent || !rec.optimum) continue;
    const auto* parent = by_combination.at(rec.parent->to_string());
    REQUIRE(parent->optimum.has_value());
    CHECK(lex_less(*parent->optimum, *rec.optimum));
    ++checked;
  }
  CHECK(checked > 0);
}

TEST_CASE("engine solves tiny ilps through the enumeration backend") {
  const auto ilp = moenum::io::random_tiny_ilp(3, 8, 13);
  const moenum::TinyIlpBackend backend(ilp);
  const RunReport report = testsupport::plain_run(moenum::ProblemInstance{ilp}, 2);
  CHECK(testsupport::to_rows(report.nondominated) ==
        moenum::oracle::brute_nondominated(backend.feasible_images()));
}

namespace {

// Fails every query after a set number of calls.
class FlakyBackend final : public moenum::ScalarizationBackend {
 public:
  FlakyBackend(moenum::ExplicitSetProblem problem, int budget)
      : inner_(std::move(problem)), budget_(budget) {}

  [[nodiscard]] std::size_t num_objectives() const override { return inner_.num_objectives(); }

  [[nodiscard]] moenum::ScalarizationAnswer solve(
      const moenum::ScalarizationQuery& query) const override {
    if (calls_.fetch_add(1) >= budget_) throw std::runtime_error("solver connection lost");
    return inner_.solve(query);
  }

 private:
  moenum::ExplicitSetBackend inner_;
  int budget_;
  mutable std::atomic<int> calls_{0};
};

}  // namespace

TEST_CASE("backend failures abort the run with partial-progress diagnostics") {
  for (unsigned budget : {1u, 4u}) {
    const FlakyBackend backend(testsupport::quad_example(), 5);
    EngineConfig config;
    config.thread_budget = budget;
    try {
      (void)run(backend, config);
      FAIL("expected a propagated backend failure");
    } catch (const std::runtime_error& e) {
      const std::string message = e.what();
      CHECK(message.find("run aborted after") != std::string::npos);
      CHECK(message.find("solver connection lost") != std::string::npos);
    }
  }
}

TEST_CASE("engine configuration errors are reported before solving") {
  const moenum::ExplicitSetBackend backend(moenum::ExplicitSetProblem{3, {{1, 2, 3}}});
  EngineConfig config;
  config.thread_budget = 0;
  CHECK_THROWS_AS((void)run(backend, config), std::invalid_argument);
  config.thread_budget = 1;
  config.pinned_prefix = 3;
  CHECK_THROWS_AS((void)run(backend, config), std::invalid_argument);
}
