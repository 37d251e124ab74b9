#ifndef MOENUM_TESTS_SUPPORT_HPP
#define MOENUM_TESTS_SUPPORT_HPP

#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "moenum/engine.hpp"
#include "moenum/io.hpp"
#include "moenum/problem.hpp"

namespace testsupport {

using IntImage = std::vector<std::int64_t>;

inline moenum::Image img(std::vector<std::int64_t> coords) {
  return moenum::Image::real(std::move(coords));
}

inline std::string data_path(const std::string& name) {
  return std::string(MOENUM_DATA_DIR) + "/" + name;
}

inline std::vector<IntImage> to_rows(const std::vector<moenum::StoredImage>& stored) {
  std::vector<IntImage> rows;
  rows.reserve(stored.size());
  for (const auto& s : stored) rows.push_back(s.image.finite_coords());
  return rows;
}

inline moenum::RunReport plain_run(const moenum::ProblemInstance& instance, unsigned threads = 1,
                                   bool provenance = false) {
  const auto backend = moenum::make_backend(instance);
  moenum::EngineConfig config;
  config.thread_budget = threads;
  config.record_provenance = provenance;
  return moenum::run(*backend, config);
}

// The four-objective worked example used throughout: three mutually
// nondominated images whose scion tree has exactly eleven nodes.
inline moenum::ExplicitSetProblem quad_example() {
  return {4, {{4, 1, 2, 1}, {2, 4, 3, 2}, {1, 3, 4, 3}}};
}

// Tri-objective set with shared coordinate values (not in general position).
inline moenum::ExplicitSetProblem shared_coords_example() {
  return {3, {{4, 3, 2}, {4, 2, 3}, {2, 3, 4}}};
}

// Six-image tri-objective set used for the feasibility ladder.
inline moenum::ExplicitSetProblem six_image_example() {
  return {3, {{5, 4, 2}, {2, 6, 3}, {6, 2, 4}, {3, 3, 5}, {2, 5, 5}, {5, 2, 6}}};
}

// Four-image tri-objective general-position set.
inline moenum::ExplicitSetProblem four_image_example() {
  return {3, {{5, 4, 1}, {2, 6, 2}, {6, 2, 4}, {3, 3, 5}}};
}

// All m points share the same coordinate sum, so no point dominates another
// and the frontier is the whole set.
inline moenum::ExplicitSetProblem constant_sum_set(std::size_t k, std::size_t m,
                                                   std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::set<IntImage> seen;
  moenum::ExplicitSetProblem p;
  p.k = k;
  const std::int64_t target = 1000 * static_cast<std::int64_t>(k - 1);
  while (p.images.size() < m) {
    IntImage point(k, 0);
    std::int64_t sum = 0;
    for (std::size_t i = 0; i + 1 < k; ++i) {
      point[i] = static_cast<std::int64_t>(gen() % 1000);
      sum += point[i];
    }
    point[k - 1] = target - sum;
    if (seen.insert(point).second) p.images.push_back(std::move(point));
  }
  return p;
}

// A set in general position: every coordinate value appears exactly once.
// Coordinates are per-axis shuffles of {1..m}.
inline moenum::ExplicitSetProblem general_position_set(std::size_t k, std::size_t m,
                                                       std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  moenum::ExplicitSetProblem p;
  p.k = k;
  p.images.assign(m, IntImage(k, 0));
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<std::int64_t> values(m);
    for (std::size_t j = 0; j < m; ++j) values[j] = static_cast<std::int64_t>(j + 1);
    for (std::size_t j = m; j-- > 1;) {
      std::swap(values[j], values[gen() % (j + 1)]);
    }
    for (std::size_t j = 0; j < m; ++j) p.images[j][i] = values[j];
  }
  return p;
}

}  // namespace testsupport

#endif
