#include "moenum/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

namespace moenum::io {

namespace {

struct TokenRow {
  std::size_t line = 0;
  std::vector<std::int64_t> values;
};

std::vector<TokenRow> tokenize(const std::string& text) {
  std::vector<TokenRow> rows;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    TokenRow row{line_no, {}};
    std::istringstream ls(line);
    std::string tok;
    while (ls >> tok) {
      std::int64_t v = 0;
      const auto* begin = tok.data();
      const auto* end = tok.data() + tok.size();
      const auto [ptr, ec] = std::from_chars(begin, end, v);
      if (ec != std::errc{} || ptr != end) {
        throw ParseError(line_no, "non-integer token '" + tok + "'");
      }
      row.values.push_back(v);
    }
    if (!row.values.empty()) rows.push_back(std::move(row));
  }
  return rows;
}

const TokenRow& expect_row(const std::vector<TokenRow>& rows, std::size_t idx, std::size_t width,
                           const char* what, std::size_t last_line) {
  if (idx >= rows.size()) {
    throw ParseError(last_line, std::string("missing ") + what);
  }
  if (rows[idx].values.size() != width) {
    throw ParseError(rows[idx].line, std::string("row-length mismatch in ") + what + ": expected " +
                                         std::to_string(width) + " values, got " +
                                         std::to_string(rows[idx].values.size()));
  }
  return rows[idx];
}

ProblemInstance parse_explicit(const std::vector<TokenRow>& rows, std::size_t k, std::size_t m,
                               std::size_t last_line) {
  ExplicitSetProblem p;
  p.k = k;
  if (m == 0) return p;  // empty image set: header only
  p.images.assign(m, std::vector<std::int64_t>(k, 0));
  for (std::size_t i = 0; i < k; ++i) {
    const TokenRow& row = expect_row(rows, 1 + i, m, "objective row", last_line);
    for (std::size_t j = 0; j < m; ++j) p.images[j][i] = row.values[j];
  }
  try {
    validate(ProblemInstance(p));
  } catch (const std::invalid_argument& e) {
    throw ParseError(rows.front().line, e.what());
  }
  return p;
}

ProblemInstance parse_knapsack(const std::vector<TokenRow>& rows, std::size_t k, std::size_t n,
                               std::size_t last_line) {
  KnapsackProblem p;
  p.k = k;
  p.n = n;
  p.negated_from_max = true;
  p.cost.assign(k, std::vector<std::int64_t>(n, 0));
  for (std::size_t i = 0; i < k; ++i) {
    const TokenRow& row = expect_row(rows, 1 + i, n, "profit row", last_line);
    for (std::size_t j = 0; j < n; ++j) p.cost[i][j] = -row.values[j];
  }
  const TokenRow& weights = expect_row(rows, 1 + k, n, "weight row", last_line);
  p.weight = weights.values;
  const TokenRow& cap = expect_row(rows, 2 + k, 1, "capacity line", last_line);
  p.capacity = cap.values.front();
  for (std::int64_t w : p.weight) {
    if (w < 0) throw ParseError(weights.line, "negative weight");
  }
  if (p.capacity < 0) throw ParseError(cap.line, "negative capacity");
  try {
    validate(ProblemInstance(p));
  } catch (const std::invalid_argument& e) {
    throw ParseError(rows.front().line, e.what());
  }
  return p;
}

ProblemInstance parse_tiny_ilp(const std::vector<TokenRow>& rows, std::size_t k, std::size_t n,
                               std::size_t m, std::size_t last_line) {
  TinyIlpProblem p;
  p.k = k;
  p.n = n;
  p.m = m;
  for (std::size_t i = 0; i < k; ++i) {
    p.objective.push_back(expect_row(rows, 1 + i, n, "objective row", last_line).values);
  }
  for (std::size_t c = 0; c < m; ++c) {
    const TokenRow& row = expect_row(rows, 1 + k + c, n + 1, "constraint row", last_line);
    p.constraint.emplace_back(row.values.begin(), row.values.end() - 1);
    p.rhs.push_back(row.values.back());
  }
  p.lower = expect_row(rows, 1 + k + m, n, "lower-bound row", last_line).values;
  p.upper = expect_row(rows, 2 + k + m, n, "upper-bound row", last_line).values;
  try {
    validate(ProblemInstance(p));
  } catch (const std::invalid_argument& e) {
    throw ParseError(rows.front().line, e.what());
  }
  return p;
}

}  // namespace

ProblemInstance parse_instance(const std::string& text) {
  const std::vector<TokenRow> rows = tokenize(text);
  if (rows.empty()) throw ParseError(1, "missing header");
  const TokenRow& header = rows.front();
  const std::size_t last_line = rows.back().line;

  std::size_t data_tokens = 0;
  for (std::size_t i = 1; i < rows.size(); ++i) data_tokens += rows[i].values.size();

  if (header.values.size() == 3) {
    const auto [k, n, m] = std::tuple(header.values[0], header.values[1], header.values[2]);
    if (k < 2 || n < 1 || m < 0) throw ParseError(header.line, "malformed header");
    return parse_tiny_ilp(rows, static_cast<std::size_t>(k), static_cast<std::size_t>(n),
                          static_cast<std::size_t>(m), last_line);
  }
  if (header.values.size() != 2) {
    throw ParseError(header.line, "malformed header: expected 'k m', 'k n' or 'k n m'");
  }
  const std::int64_t a = header.values[0];
  const std::int64_t b = header.values[1];
  if (a < 2 || b < 0) throw ParseError(header.line, "malformed header");
  const auto k = static_cast<std::size_t>(a);
  const auto count = static_cast<std::size_t>(b);

  // The two 2-integer-header formats always differ in token count:
  // an explicit set carries k*m values, a knapsack k*n + n + 1.
  if (data_tokens == k * count) {
    return parse_explicit(rows, k, count, last_line);
  }
  if (count >= 1 && data_tokens == k * count + count + 1) {
    return parse_knapsack(rows, k, count, last_line);
  }
  throw ParseError(header.line, "token count matches neither the explicit-set nor knapsack format");
}

ProblemInstance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str());
}

std::string serialize_instance(const ProblemInstance& p) {
  std::ostringstream out;
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, ExplicitSetProblem>) {
          out << "# explicit-set instance\n";
          out << v.k << " " << v.images.size() << "\n";
          for (std::size_t i = 0; i < v.k; ++i) {
            for (std::size_t j = 0; j < v.images.size(); ++j) {
              out << (j ? " " : "") << v.images[j][i];
            }
            out << "\n";
          }
        } else if constexpr (std::is_same_v<T, KnapsackProblem>) {
          out << "# knapsack instance (profits maximized)\n";
          out << v.k << " " << v.n << "\n";
          for (std::size_t i = 0; i < v.k; ++i) {
            for (std::size_t j = 0; j < v.n; ++j) out << (j ? " " : "") << -v.cost[i][j];
            out << "\n";
          }
          for (std::size_t j = 0; j < v.n; ++j) out << (j ? " " : "") << v.weight[j];
          out << "\n" << v.capacity << "\n";
        } else {
          out << "# tiny-ilp instance (objectives minimized, a*x <= rhs)\n";
          out << v.k << " " << v.n << " " << v.m << "\n";
          for (const auto& row : v.objective) {
            for (std::size_t j = 0; j < v.n; ++j) out << (j ? " " : "") << row[j];
            out << "\n";
          }
          for (std::size_t c = 0; c < v.m; ++c) {
            for (std::size_t j = 0; j < v.n; ++j) out << v.constraint[c][j] << " ";
            out << v.rhs[c] << "\n";
          }
          for (std::size_t j = 0; j < v.n; ++j) out << (j ? " " : "") << v.lower[j];
          out << "\n";
          for (std::size_t j = 0; j < v.n; ++j) out << (j ? " " : "") << v.upper[j];
          out << "\n";
        }
      },
      p);
  return out.str();
}

namespace {

// Seeded uniform integers via rejection on mt19937_64, so generated files do
// not depend on the standard library's distribution implementation.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() / span * span;
    std::uint64_t draw = gen_();
    while (draw >= limit) draw = gen_();
    return lo + static_cast<std::int64_t>(draw % span);
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace

ExplicitSetProblem random_explicit_set(std::size_t k, std::size_t m, std::uint64_t seed,
                                       std::int64_t lo, std::int64_t hi) {
  Rng rng(seed);
  ExplicitSetProblem p;
  p.k = k;
  std::set<std::vector<std::int64_t>> seen;
  while (p.images.size() < m) {
    std::vector<std::int64_t> img(k);
    for (auto& v : img) v = rng.uniform(lo, hi);
    if (seen.insert(img).second) p.images.push_back(std::move(img));
  }
  return p;
}

KnapsackProblem random_knapsack(std::size_t k, std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  KnapsackProblem p;
  p.k = k;
  p.n = n;
  p.negated_from_max = true;
  p.cost.assign(k, std::vector<std::int64_t>(n, 0));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < n; ++j) p.cost[i][j] = -rng.uniform(1, 100);
  }
  p.weight.resize(n);
  std::int64_t total = 0;
  for (auto& w : p.weight) {
    w = rng.uniform(1, 100);
    total += w;
  }
  p.capacity = (total + 1) / 2;
  return p;
}

TinyIlpProblem random_tiny_ilp(std::size_t k, std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  TinyIlpProblem p;
  p.k = k;
  p.n = n;
  p.m = std::max<std::size_t>(1, n / 2);
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<std::int64_t> row(n);
    for (auto& v : row) v = rng.uniform(-10, 10);
    p.objective.push_back(std::move(row));
  }
  for (std::size_t c = 0; c < p.m; ++c) {
    std::vector<std::int64_t> row(n);
    std::int64_t positive = 0;
    for (auto& v : row) {
      v = rng.uniform(0, 10);
      positive += v;
    }
    p.constraint.push_back(std::move(row));
    p.rhs.push_back(positive > 0 ? rng.uniform(1, positive) : 0);
  }
  p.lower.assign(n, 0);
  p.upper.assign(n, 1);
  return p;
}

std::string generate_instance(InstanceKind kind, std::size_t k, std::size_t n, std::uint64_t seed) {
  if (k < 2 || n < 1) throw std::invalid_argument("generate_instance: need k >= 2 and n >= 1");
  std::ostringstream out;
  switch (kind) {
    case InstanceKind::knapsack: {
      out << "# seeded knapsack instance: k=" << k << " n=" << n << " seed=" << seed << "\n";
      out << "# profits and weights uniform on [1,100], capacity = ceil(weight sum / 2)\n";
      out << serialize_instance(random_knapsack(k, n, seed));
      break;
    }
    case InstanceKind::explicit_set: {
      out << "# seeded explicit-set instance: k=" << k << " m=" << n << " seed=" << seed << "\n";
      out << "# distinct points with coordinates uniform on [0,100]\n";
      out << serialize_instance(random_explicit_set(k, n, seed));
      break;
    }
    case InstanceKind::tiny_ilp: {
      out << "# seeded tiny-ilp instance: k=" << k << " n=" << n << " seed=" << seed << "\n";
      out << "# 0-1 variables, objective coefficients uniform on [-10,10]\n";
      out << serialize_instance(random_tiny_ilp(k, n, seed));
      break;
    }
  }
  return out.str();
}

std::string format_solution(const ProblemInstance& instance,
                            const std::vector<StoredImage>& nondominated,
                            const std::vector<MetadataEntry>& metadata) {
  const std::size_t k = num_objectives(instance);
  std::ostringstream out;
  for (const MetadataEntry& entry : metadata) {
    out << "# " << entry.key << ": " << entry.value << "\n";
  }
  std::vector<std::vector<std::int64_t>> rows;
  rows.reserve(nondominated.size());
  for (const StoredImage& s : nondominated) {
    rows.push_back(present_image(instance, s.image.finite_coords()));
  }
  out << k << " " << rows.size() << "\n";
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < rows.size(); ++j) out << (j ? " " : "") << rows[j][i];
    out << "\n";
  }
  return out.str();
}

std::string scaling_csv(const std::vector<ScalingRecord>& records) {
  std::ostringstream out;
  // Round-trip precision so the slowdown column recomputes exactly from the
  // time columns.
  out.precision(17);
  out << "instance,k,n,nondominated,scalarizations,threads,wall_seconds,slowdown\n";
  for (const ScalingRecord& r : records) {
    out << r.instance_id << "," << r.k << "," << r.n << "," << r.nondominated << ","
        << r.scalarizations << "," << r.threads << "," << r.wall_seconds << "," << r.slowdown
        << "\n";
  }
  return out.str();
}

}  // namespace moenum::io
