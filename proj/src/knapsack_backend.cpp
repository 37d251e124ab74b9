#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "moenum/scalarizer.hpp"

namespace moenum {

namespace {

using Int128 = __int128;

// Depth-first search for one stage of the lexicographic objective:
// minimize objective `stage` over item subsets subject to the capacity,
// the upper caps, and the equality pins fixed by earlier stages.
struct StageSearch {
  StageSearch(const KnapsackProblem& problem, const std::vector<std::size_t>& item_order,
              const std::vector<std::vector<std::int64_t>>& min_add,
              const std::vector<std::vector<std::int64_t>>& max_add, std::size_t stage_objective,
              const std::vector<std::optional<std::int64_t>>& caps,
              const std::vector<std::optional<std::int64_t>>& pins)
      : p(problem),
        order(item_order),
        suffix_min_add(min_add),
        suffix_max_add(max_add),
        stage(stage_objective),
        cap(caps),
        pin(pins) {}

  const KnapsackProblem& p;
  const std::vector<std::size_t>& order;
  const std::vector<std::vector<std::int64_t>>& suffix_min_add;
  const std::vector<std::vector<std::int64_t>>& suffix_max_add;
  std::size_t stage;
  const std::vector<std::optional<std::int64_t>>& cap;
  const std::vector<std::optional<std::int64_t>>& pin;

  std::vector<std::uint8_t> taken;  // along `order`
  std::vector<std::int64_t> obj;
  std::int64_t weight = 0;

  bool have_best = false;
  std::vector<std::int64_t> best_bits;  // item-indexed 0/1
  std::vector<std::int64_t> best_obj;

  void seed(const std::vector<std::int64_t>& bits, const std::vector<std::int64_t>& objective) {
    have_best = true;
    best_bits = bits;
    best_obj = objective;
  }

  void run() {
    taken.assign(p.n, 0);
    obj.assign(p.k, 0);
    dfs(0);
  }

  // True iff some completion of the current node could have a stage value
  // strictly below the incumbent: fractional-relaxation bound, exact.
  [[nodiscard]] bool can_improve(std::size_t d) const {
    const std::int64_t target = best_obj[stage];
    std::int64_t acc = obj[stage];
    std::int64_t rem = p.capacity - weight;
    for (std::size_t j = d; j < p.n; ++j) {
      if (acc < target) return true;  // further items only decrease the bound
      const std::size_t item = order[j];
      const std::int64_t c = p.cost[stage][item];
      if (c >= 0) continue;
      const std::int64_t w = p.weight[item];
      if (w == 0 || w <= rem) {
        acc += c;
        rem -= w;
      } else {
        // lb = acc + c*rem/w; improvement possible iff lb < target
        return Int128(c) * rem < Int128(target - acc) * w;
      }
    }
    return acc < target;
  }

  void dfs(std::size_t d) {
    for (std::size_t i = 0; i < p.k; ++i) {
      const std::int64_t lo = obj[i] + suffix_min_add[i][d];
      if (cap[i] && lo > *cap[i]) return;
      if (pin[i]) {
        if (lo > *pin[i]) return;
        if (obj[i] + suffix_max_add[i][d] < *pin[i]) return;
      }
    }
    if (have_best && !can_improve(d)) return;
    if (d == p.n) {
      // The suffix checks are exact here, so the solution is feasible.
      if (!have_best || obj[stage] < best_obj[stage]) {
        have_best = true;
        best_obj = obj;
        best_bits.assign(p.n, 0);
        for (std::size_t j = 0; j < p.n; ++j) best_bits[order[j]] = taken[j];
      }
      return;
    }

    const std::size_t item = order[d];
    if (weight + p.weight[item] <= p.capacity) {
      taken[d] = 1;
      weight += p.weight[item];
      for (std::size_t i = 0; i < p.k; ++i) obj[i] += p.cost[i][item];
      dfs(d + 1);
      for (std::size_t i = 0; i < p.k; ++i) obj[i] -= p.cost[i][item];
      weight -= p.weight[item];
      taken[d] = 0;
    }
    dfs(d + 1);
  }
};

}  // namespace

KnapsackBackend::KnapsackBackend(KnapsackProblem problem) : problem_(std::move(problem)) {
  validate(ProblemInstance(problem_));
  const std::size_t k = problem_.k;
  const std::size_t n = problem_.n;
  stages_.resize(k);
  for (std::size_t t = 0; t < k; ++t) {
    StageData& sd = stages_[t];
    sd.order.resize(n);
    std::iota(sd.order.begin(), sd.order.end(), std::size_t{0});
    const auto& cost = problem_.cost[t];
    const auto& w = problem_.weight;
    // Profitable items (negative cost) first, by density; zero-weight ones
    // lead since the relaxation always takes them whole.
    std::sort(sd.order.begin(), sd.order.end(), [&](std::size_t a, std::size_t b) {
      const bool na = cost[a] < 0;
      const bool nb = cost[b] < 0;
      if (na != nb) return na;
      if (!na) return a < b;
      if (w[a] == 0 || w[b] == 0) {
        if ((w[a] == 0) != (w[b] == 0)) return w[a] == 0;
        if (cost[a] != cost[b]) return cost[a] < cost[b];
        return a < b;
      }
      const Int128 l = Int128(cost[a]) * w[b];
      const Int128 r = Int128(cost[b]) * w[a];
      if (l != r) return l < r;
      return a < b;
    });
    sd.suffix_min_add.assign(k, std::vector<std::int64_t>(n + 1, 0));
    sd.suffix_max_add.assign(k, std::vector<std::int64_t>(n + 1, 0));
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t d = n; d-- > 0;) {
        const std::int64_t c = problem_.cost[i][sd.order[d]];
        sd.suffix_min_add[i][d] = sd.suffix_min_add[i][d + 1] + std::min<std::int64_t>(0, c);
        sd.suffix_max_add[i][d] = sd.suffix_max_add[i][d + 1] + std::max<std::int64_t>(0, c);
      }
    }
  }
}

ScalarizationAnswer KnapsackBackend::solve(const ScalarizationQuery& query) const {
  const std::size_t k = problem_.k;
  const std::size_t n = problem_.n;
  if (query.bounds.bounds.size() + 1 != k) {
    throw std::invalid_argument("KnapsackBackend: parameter dimension mismatch");
  }

  std::vector<std::optional<std::int64_t>> cap(k);
  for (std::size_t i = 0; i + 1 < k; ++i) {
    const ExtendedValue& b = query.bounds.bounds[i];
    if (b.is_minus_inf()) return std::nullopt;
    if (b.is_finite()) cap[i] = b.value() - 1;
  }
  std::vector<std::optional<std::int64_t>> pin(k);

  // Current best known feasible solution, carried across stages. An external
  // incumbent is used only if it actually satisfies capacity and caps.
  std::optional<std::pair<std::vector<std::int64_t>, std::vector<std::int64_t>>> cur;
  if (query.incumbent && query.incumbent->values.size() == n) {
    const auto& bits = query.incumbent->values;
    std::int64_t w = 0;
    std::vector<std::int64_t> obj(k, 0);
    bool ok = true;
    for (std::size_t j = 0; j < n && ok; ++j) {
      if (bits[j] != 0 && bits[j] != 1) ok = false;
      if (bits[j] == 1) {
        w += problem_.weight[j];
        for (std::size_t i = 0; i < k; ++i) obj[i] += problem_.cost[i][j];
      }
    }
    if (ok && w <= problem_.capacity) {
      for (std::size_t i = 0; i < k; ++i) {
        if (cap[i] && obj[i] > *cap[i]) ok = false;
      }
      if (ok) cur = std::make_pair(bits, std::move(obj));
    }
  }

  for (std::size_t t = k; t-- > 0;) {
    StageSearch search(problem_, stages_[t].order, stages_[t].suffix_min_add,
                       stages_[t].suffix_max_add, t, cap, pin);
    if (cur) search.seed(cur->first, cur->second);
    search.run();
    if (!search.have_best) return std::nullopt;  // only possible in the first stage
    cur = std::make_pair(search.best_bits, search.best_obj);
    pin[t] = search.best_obj[t];
  }

  return Optimum{Image::real(cur->second), Witness{cur->first}};
}

}  // namespace moenum
