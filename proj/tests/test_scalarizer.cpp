#include <doctest.h>

#include <random>

#include "moenum/io.hpp"
#include "moenum/oracle.hpp"
#include "moenum/scalarizer.hpp"
#include "support.hpp"

using moenum::ExplicitSetBackend;
using moenum::ExtendedValue;
using moenum::KnapsackBackend;
using moenum::Parameter;
using moenum::ScalarizationQuery;
using testsupport::img;
using testsupport::IntImage;

namespace {

Parameter bounds(std::vector<ExtendedValue> b) { return Parameter{std::move(b)}; }

ExtendedValue fin(std::int64_t v) { return ExtendedValue::finite(v); }
ExtendedValue inf() { return ExtendedValue::plus_inf(); }

// From-scratch reference: lexicographic minimum of the rows strictly below
// the bounds, by direct enumeration.
std::optional<IntImage> enumerate_best(const std::vector<IntImage>& rows, const Parameter& eps) {
  std::optional<IntImage> best;
  for (const auto& row : rows) {
    bool ok = true;
    for (std::size_t i = 0; i + 1 < row.size() && ok; ++i) {
      if (eps.bounds[i].is_plus_inf()) continue;
      ok = eps.bounds[i].is_finite() && row[i] < eps.bounds[i].value();
    }
    if (!ok) continue;
    if (!best || moenum::oracle::reversed_lex_less(row, *best)) best = row;
  }
  return best;
}

}  // namespace

TEST_CASE("explicit backend returns the lexicographic minimum under the bounds") {
  const ExplicitSetBackend backend(testsupport::quad_example());

  const auto unconstrained = backend.solve({bounds({inf(), inf(), inf()}), std::nullopt});
  REQUIRE(unconstrained.has_value());
  CHECK(unconstrained->image == img({4, 1, 2, 1}));

  // bound f_1 < 4 cuts the first image off
  const auto cut = backend.solve({bounds({fin(4), inf(), inf()}), std::nullopt});
  REQUIRE(cut.has_value());
  CHECK(cut->image == img({2, 4, 3, 2}));

  CHECK_FALSE(backend.solve({bounds({fin(1), fin(1), fin(1)}), std::nullopt}).has_value());
}

TEST_CASE("explicit backend edge cases") {
  const ExplicitSetBackend empty(moenum::ExplicitSetProblem{3, {}});
  CHECK_FALSE(empty.solve({bounds({inf(), inf()}), std::nullopt}).has_value());

  const ExplicitSetBackend single(moenum::ExplicitSetProblem{3, {{5, 6, 7}}});
  const auto hit = single.solve({bounds({fin(6), fin(7)}), std::nullopt});
  REQUIRE(hit.has_value());
  CHECK(hit->image == img({5, 6, 7}));
  CHECK(hit->witness.values == std::vector<std::int64_t>{0});

  // strictness: the image itself never satisfies bounds equal to its coordinates
  CHECK_FALSE(single.solve({bounds({fin(5), fin(6)}), std::nullopt}).has_value());

  const ExplicitSetBackend shared(testsupport::shared_coords_example());
  CHECK_FALSE(shared.solve({bounds({fin(4), fin(3)}), std::nullopt}).has_value());

  CHECK_THROWS_AS((void)shared.solve({bounds({fin(4)}), std::nullopt}), std::invalid_argument);
}

TEST_CASE("knapsack backend: trivial cases") {
  // capacity 0 with positive weights: only the empty knapsack is feasible
  moenum::KnapsackProblem p;
  p.k = 2;
  p.n = 3;
  p.cost = {{-3, -1, -2}, {-1, -3, -2}};
  p.weight = {2, 2, 2};
  p.capacity = 0;
  const KnapsackBackend backend(p);
  const auto res = backend.solve({bounds({inf()}), std::nullopt});
  REQUIRE(res.has_value());
  CHECK(res->image == img({0, 0}));
  CHECK(res->witness.values == std::vector<std::int64_t>{0, 0, 0});

  // a bound at the minimum achievable value of f_0 leaves nothing
  p.capacity = 4;
  const KnapsackBackend roomy(p);
  CHECK_FALSE(roomy.solve({bounds({fin(-6)}), std::nullopt}).has_value());

  // under f_0 < -3 the best second objective is reached by items {0,1}
  const auto pick = roomy.solve({bounds({fin(-3)}), std::nullopt});
  REQUIRE(pick.has_value());
  CHECK(pick->image == img({-4, -4}));
  CHECK(pick->witness.values == std::vector<std::int64_t>{1, 1, 0});
  const auto expect = enumerate_best(moenum::oracle::enumerate_knapsack_images(p),
                                     bounds({fin(-3)}));
  REQUIRE(expect.has_value());
  CHECK(pick->image.finite_coords() == *expect);
}

TEST_CASE("knapsack backend agrees with exhaustive enumeration") {
  std::mt19937_64 gen(515);
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto p = moenum::io::random_knapsack(3, 12, seed);
    const KnapsackBackend backend(p);
    const auto all_images = moenum::oracle::enumerate_knapsack_images(p);
    for (int round = 0; round < 50; ++round) {
      Parameter eps;
      for (int i = 0; i < 2; ++i) {
        if (gen() % 4 == 0) {
          eps.bounds.push_back(inf());
        } else {
          // achievable objective values lie in [-1200, 0]
          eps.bounds.push_back(fin(-static_cast<std::int64_t>(gen() % 700)));
        }
      }
      const auto expect = enumerate_best(all_images, eps);
      const auto got = backend.solve({eps, std::nullopt});
      REQUIRE(got.has_value() == expect.has_value());
      if (expect) CHECK(got->image.finite_coords() == *expect);
    }
  }
}

TEST_CASE("knapsack witnesses are feasible and achieve the image") {
  const auto p = moenum::io::random_knapsack(3, 14, 77);
  const KnapsackBackend backend(p);
  const auto res = backend.solve({bounds({fin(-100), inf()}), std::nullopt});
  REQUIRE(res.has_value());
  std::int64_t weight = 0;
  IntImage obj(p.k, 0);
  for (std::size_t j = 0; j < p.n; ++j) {
    REQUIRE((res->witness.values[j] == 0 || res->witness.values[j] == 1));
    if (res->witness.values[j] == 1) {
      weight += p.weight[j];
      for (std::size_t i = 0; i < p.k; ++i) obj[i] += p.cost[i][j];
    }
  }
  CHECK(weight <= p.capacity);
  CHECK(obj == res->image.finite_coords());
}

TEST_CASE("incumbents never change the knapsack answer") {
  const auto p = moenum::io::random_knapsack(3, 12, 4242);
  const KnapsackBackend backend(p);
  const auto plain = backend.solve({bounds({fin(-200), inf()}), std::nullopt});
  REQUIRE(plain.has_value());

  // seed with the optimal witness itself, with a different feasible witness,
  // and with garbage; the image must be identical every time
  ScalarizationQuery with_opt{bounds({fin(-200), inf()}), moenum::Witness{plain->witness.values}};
  const auto seeded = backend.solve(with_opt);
  REQUIRE(seeded.has_value());
  CHECK(seeded->image == plain->image);

  ScalarizationQuery with_empty{bounds({fin(-200), inf()}),
                                moenum::Witness{std::vector<std::int64_t>(p.n, 0)}};
  const auto seeded_empty = backend.solve(with_empty);
  REQUIRE(seeded_empty.has_value());
  CHECK(seeded_empty->image == plain->image);

  ScalarizationQuery with_garbage{bounds({fin(-200), inf()}),
                                  moenum::Witness{std::vector<std::int64_t>(p.n, 9)}};
  const auto seeded_garbage = backend.solve(with_garbage);
  REQUIRE(seeded_garbage.has_value());
  CHECK(seeded_garbage->image == plain->image);
}

TEST_CASE("tiny-ilp backend agrees with its own enumeration") {
  const auto p = moenum::io::random_tiny_ilp(3, 8, 5);
  const moenum::TinyIlpBackend backend(p);
  std::mt19937_64 gen(9);
  for (int round = 0; round < 60; ++round) {
    Parameter eps;
    for (int i = 0; i < 2; ++i) {
      if (gen() % 4 == 0) {
        eps.bounds.push_back(inf());
      } else {
        eps.bounds.push_back(fin(static_cast<std::int64_t>(gen() % 41) - 20));
      }
    }
    const auto expect = enumerate_best(backend.feasible_images(), eps);
    const auto got = backend.solve({eps, std::nullopt});
    REQUIRE(got.has_value() == expect.has_value());
    if (expect) CHECK(got->image.finite_coords() == *expect);
  }

  moenum::TinyIlpProblem huge = p;
  huge.upper.assign(huge.n, 1'000);
  CHECK_THROWS_AS(moenum::TinyIlpBackend{huge}, std::invalid_argument);
}

TEST_CASE("answers are deterministic and the optimum is nondominated") {
  const auto problem = moenum::io::random_explicit_set(4, 60, 31);
  const ExplicitSetBackend backend(problem);
  const auto frontier = moenum::oracle::brute_nondominated(problem.images);
  std::mt19937_64 gen(13);
  for (int round = 0; round < 100; ++round) {
    Parameter eps;
    for (int i = 0; i < 3; ++i) {
      eps.bounds.push_back(gen() % 5 == 0 ? inf() : fin(static_cast<std::int64_t>(gen() % 120)));
    }
    const auto first = backend.solve({eps, std::nullopt});
    const auto second = backend.solve({eps, std::nullopt});
    REQUIRE(first.has_value() == second.has_value());
    if (!first) continue;
    CHECK(first->image == second->image);
    const auto coords = first->image.finite_coords();
    CHECK(std::find(frontier.begin(), frontier.end(), coords) != frontier.end());
  }
}

TEST_CASE("answers are monotone under bound relaxation") {
  // If y wins at eps and y fits strictly under eps* <= eps, y wins at eps*.
  const auto problem = moenum::io::random_explicit_set(3, 40, 17, 0, 30);
  const ExplicitSetBackend backend(problem);
  std::mt19937_64 gen(23);
  int exercised = 0;
  for (int round = 0; round < 300; ++round) {
    Parameter eps;
    for (int i = 0; i < 2; ++i) {
      eps.bounds.push_back(gen() % 6 == 0 ? inf() : fin(static_cast<std::int64_t>(gen() % 35)));
    }
    const auto answer = backend.solve({eps, std::nullopt});
    if (!answer) continue;
    const auto y = answer->image.finite_coords();
    Parameter tighter;
    bool strict_above = true;
    for (int i = 0; i < 2; ++i) {
      if (eps.bounds[i].is_plus_inf()) {
        // pull an unconstrained bound down to just above y
        tighter.bounds.push_back(fin(y[i] + 1 + static_cast<std::int64_t>(gen() % 3)));
      } else {
        const std::int64_t low = y[i] + 1;
        const std::int64_t high = eps.bounds[i].value();
        if (low > high) {
          strict_above = false;
          break;
        }
        tighter.bounds.push_back(fin(low + static_cast<std::int64_t>(gen() % (high - low + 1))));
      }
    }
    if (!strict_above) continue;
    ++exercised;
    const auto again = backend.solve({tighter, std::nullopt});
    REQUIRE(again.has_value());
    CHECK(again->image.finite_coords() == y);
  }
  CHECK(exercised > 50);
}

TEST_CASE("tightening one bound worsens or kills the answer") {
  const auto problem = moenum::io::random_explicit_set(3, 40, 19, 0, 30);
  const ExplicitSetBackend backend(problem);
  std::mt19937_64 gen(29);
  for (int round = 0; round < 200; ++round) {
    Parameter eps;
    for (int i = 0; i < 2; ++i) {
      eps.bounds.push_back(fin(static_cast<std::int64_t>(gen() % 35)));
    }
    const auto before = backend.solve({eps, std::nullopt});
    if (!before) continue;
    Parameter tighter = eps;
    const std::size_t axis = gen() % 2;
    tighter.bounds[axis] = fin(tighter.bounds[axis].value() - 1 - static_cast<std::int64_t>(gen() % 3));
    const auto after = backend.solve({tighter, std::nullopt});
    if (after) {
      CHECK((after->image == before->image || lex_less(before->image, after->image)));
    }
  }
}
