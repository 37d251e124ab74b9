#include <map>
#include <stdexcept>

#include "moenum/scalarizer.hpp"

namespace moenum {

TinyIlpBackend::TinyIlpBackend(TinyIlpProblem problem, std::uint64_t max_points)
    : problem_(std::move(problem)) {
  validate(ProblemInstance(problem_));

  std::uint64_t points = 1;
  for (std::size_t j = 0; j < problem_.n; ++j) {
    const std::uint64_t span = static_cast<std::uint64_t>(problem_.upper[j] - problem_.lower[j]) + 1;
    if (span > max_points / points) {
      throw std::invalid_argument("TinyIlpBackend: variable box too large for exhaustive enumeration");
    }
    points *= span;
  }

  // Odometer over the box; keep the first witness per distinct feasible image.
  std::map<std::vector<std::int64_t>, std::vector<std::int64_t>> by_image;
  std::vector<std::int64_t> x = problem_.lower;
  while (true) {
    bool feasible = true;
    for (std::size_t c = 0; c < problem_.m && feasible; ++c) {
      std::int64_t lhs = 0;
      for (std::size_t j = 0; j < problem_.n; ++j) lhs += problem_.constraint[c][j] * x[j];
      feasible = lhs <= problem_.rhs[c];
    }
    if (feasible) {
      std::vector<std::int64_t> img(problem_.k, 0);
      for (std::size_t i = 0; i < problem_.k; ++i) {
        for (std::size_t j = 0; j < problem_.n; ++j) img[i] += problem_.objective[i][j] * x[j];
      }
      by_image.emplace(std::move(img), x);
    }
    std::size_t j = 0;
    while (j < problem_.n && x[j] == problem_.upper[j]) {
      x[j] = problem_.lower[j];
      ++j;
    }
    if (j == problem_.n) break;
    ++x[j];
  }

  images_.reserve(by_image.size());
  witnesses_.reserve(by_image.size());
  for (auto& [img, wit] : by_image) {
    images_.push_back(img);
    witnesses_.push_back(wit);
  }
}

ScalarizationAnswer TinyIlpBackend::solve(const ScalarizationQuery& query) const {
  if (query.bounds.bounds.size() + 1 != problem_.k) {
    throw std::invalid_argument("TinyIlpBackend: parameter dimension mismatch");
  }
  auto best = detail::lex_scan(images_, query.bounds);
  if (!best) return std::nullopt;
  return Optimum{Image::real(images_[*best]), Witness{witnesses_[*best]}};
}

}  // namespace moenum
