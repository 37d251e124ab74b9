#ifndef MOENUM_IO_HPP
#define MOENUM_IO_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "moenum/engine.hpp"
#include "moenum/problem.hpp"

namespace moenum::io {

/// Instance text formats. All are whitespace-separated integer tables with
/// '#' starting a comment.
///
/// explicit-set:  header "k m", then k rows of m integers; row i lists
///                objective i of every image, so each column is one image.
/// knapsack:      header "k n", then k profit rows of n integers (benchmark
///                maximization convention), one weight row, one capacity
///                line. Profits are negated on load to the internal
///                minimization convention.
/// tiny-ilp:      header "k n m", then k objective rows (minimized), m
///                constraint rows of n coefficients plus a right-hand side
///                (a*x <= rhs), one lower-bound row and one upper-bound row.
enum class InstanceKind { explicit_set, knapsack, tiny_ilp };

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}

  [[nodiscard]] std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Parses instance text, detecting the format structurally (the three
/// formats have distinct token counts for any header). Throws ParseError
/// with a line number on malformed input.
[[nodiscard]] ProblemInstance parse_instance(const std::string& text);

[[nodiscard]] ProblemInstance load_instance(const std::string& path);

/// Inverse of parse_instance up to comments; knapsack costs are written back
/// as maximization profits.
[[nodiscard]] std::string serialize_instance(const ProblemInstance& p);

/// Deterministic seeded generator. Knapsack: profits and weights uniform on
/// [1,100], capacity = ceil(sum of weights / 2). Explicit set: n pairwise
/// distinct points with coordinates uniform on [0,100]. Tiny ILP: a small
/// box-bounded instance with coefficients on [-10,10]. Distribution
/// parameters are recorded in the file header comments.
[[nodiscard]] std::string generate_instance(InstanceKind kind, std::size_t k, std::size_t n,
                                            std::uint64_t seed);

/// In-memory seeded generators used by the text generator and the tests.
[[nodiscard]] ExplicitSetProblem random_explicit_set(std::size_t k, std::size_t m,
                                                     std::uint64_t seed, std::int64_t lo = 0,
                                                     std::int64_t hi = 100);
[[nodiscard]] KnapsackProblem random_knapsack(std::size_t k, std::size_t n, std::uint64_t seed);
[[nodiscard]] TinyIlpProblem random_tiny_ilp(std::size_t k, std::size_t n, std::uint64_t seed);

/// One key/value line of run metadata for the solution header.
struct MetadataEntry {
  std::string key;
  std::string value;
};

/// The nondominated set as explicit-set text (one column per image, values
/// in the instance's reporting convention, reversed-lex order) preceded by
/// '#' metadata lines. The output re-parses as an explicit-set instance.
[[nodiscard]] std::string format_solution(const ProblemInstance& instance,
                                          const std::vector<StoredImage>& nondominated,
                                          const std::vector<MetadataEntry>& metadata);

struct ScalingRecord {
  std::string instance_id;
  std::size_t k = 0;
  std::size_t n = 0;
  std::size_t nondominated = 0;
  std::uint64_t scalarizations = 0;
  unsigned threads = 0;
  double wall_seconds = 0.0;
  double slowdown = 0.0;  // wall_seconds / baseline wall_seconds
};

[[nodiscard]] std::string scaling_csv(const std::vector<ScalingRecord>& records);

}  // namespace moenum::io

#endif  // MOENUM_IO_HPP
