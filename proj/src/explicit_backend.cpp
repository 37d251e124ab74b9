#include <stdexcept>

#include "moenum/scalarizer.hpp"

namespace moenum {

namespace detail {

std::optional<std::size_t> lex_scan(const std::vector<std::vector<std::int64_t>>& rows,
                                    const Parameter& bounds) {
  // Finite bounds lowered to "f_i <= bound - 1"; infinite bounds dropped.
  std::vector<std::pair<std::size_t, std::int64_t>> caps;
  caps.reserve(bounds.bounds.size());
  for (std::size_t i = 0; i < bounds.bounds.size(); ++i) {
    const ExtendedValue& b = bounds.bounds[i];
    if (b.is_plus_inf()) continue;
    if (b.is_minus_inf()) return std::nullopt;  // nothing lies strictly below -inf
    caps.emplace_back(i, b.value() - 1);
  }

  std::optional<std::size_t> best;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto& row = rows[r];
    bool feasible = true;
    for (const auto& [i, cap] : caps) {
      if (row[i] > cap) {
        feasible = false;
        break;
      }
    }
    if (!feasible) continue;
    if (!best) {
      best = r;
      continue;
    }
    const auto& cur = rows[*best];
    for (std::size_t i = row.size(); i-- > 0;) {
      if (row[i] != cur[i]) {
        if (row[i] < cur[i]) best = r;
        break;
      }
    }
  }
  return best;
}

}  // namespace detail

ExplicitSetBackend::ExplicitSetBackend(ExplicitSetProblem problem) : problem_(std::move(problem)) {
  validate(ProblemInstance(problem_));
}

ScalarizationAnswer ExplicitSetBackend::solve(const ScalarizationQuery& query) const {
  if (query.bounds.bounds.size() + 1 != problem_.k) {
    throw std::invalid_argument("ExplicitSetBackend: parameter dimension mismatch");
  }
  auto best = detail::lex_scan(problem_.images, query.bounds);
  if (!best) return std::nullopt;
  return Optimum{Image::real(problem_.images[*best]),
                 Witness{{static_cast<std::int64_t>(*best)}}};
}

std::unique_ptr<ScalarizationBackend> make_backend(const ProblemInstance& p) {
  return std::visit(
      [](const auto& v) -> std::unique_ptr<ScalarizationBackend> {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, ExplicitSetProblem>) {
          return std::make_unique<ExplicitSetBackend>(v);
        } else if constexpr (std::is_same_v<T, KnapsackProblem>) {
          return std::make_unique<KnapsackBackend>(v);
        } else {
          return std::make_unique<TinyIlpBackend>(v);
        }
      },
      p);
}

}  // namespace moenum
