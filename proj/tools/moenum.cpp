// Command-line front end: solve, verify, scale and gen subcommands.
//
// Exit codes: 0 success, 2 usage error, 3 instance parse error,
// 4 verification mismatch, 5 backend or internal failure.

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <thread>

#include "moenum/engine.hpp"
#include "moenum/io.hpp"
#include "moenum/oracle.hpp"
#include "moenum/problem.hpp"
#include "moenum/warmstart.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitParse = 3;
constexpr int kExitMismatch = 4;
constexpr int kExitBackend = 5;

struct Options {
  std::string instance_path;
  std::string out_path;
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  bool cascade = false;
  std::string order;  // 1-based, e.g. "3,1,2"
  unsigned max_threads = 8;
  unsigned baseline = 0;  // 0: largest rung of the ladder
  std::string gen_kind = "kp";
  std::size_t gen_k = 3;
  std::size_t gen_n = 10;
  std::uint64_t gen_seed = 1;
};

moenum::Permutation parse_order(const std::string& text, std::size_t k) {
  if (text.empty()) return moenum::Permutation::identity(k);
  std::vector<std::size_t> sigma;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    const long v = std::stol(tok);
    if (v < 1) throw std::invalid_argument("--order entries are 1-based objective indices");
    sigma.push_back(static_cast<std::size_t>(v - 1));
  }
  if (sigma.size() != k) throw std::invalid_argument("--order must list all k objectives");
  return moenum::Permutation(std::move(sigma));
}

std::size_t instance_size(const moenum::ProblemInstance& p) {
  return std::visit(
      [](const auto& v) -> std::size_t {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, moenum::ExplicitSetProblem>) {
          return v.images.size();
        } else {
          return v.n;
        }
      },
      p);
}

void write_output(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw std::runtime_error("cannot write '" + out_path + "'");
  out << text;
}

std::vector<moenum::StoredImage> unpermute(const std::vector<moenum::StoredImage>& stored,
                                           const moenum::Permutation& sigma) {
  const moenum::Permutation inv = sigma.inverse();
  std::vector<moenum::StoredImage> out;
  out.reserve(stored.size());
  for (const auto& s : stored) out.push_back({s.image.permuted(inv), s.witness});
  std::sort(out.begin(), out.end(), [](const moenum::StoredImage& a, const moenum::StoredImage& b) {
    return lex_less(a.image, b.image);
  });
  return out;
}

std::string fmt_seconds(double s) {
  std::ostringstream oss;
  oss.precision(6);
  oss << std::fixed << s;
  return oss.str();
}

int cmd_solve(const Options& opt) {
  const moenum::ProblemInstance instance = moenum::io::load_instance(opt.instance_path);
  validate(instance);
  const std::size_t k = num_objectives(instance);
  const moenum::Permutation sigma = parse_order(opt.order, k);
  const moenum::ProblemInstance working = permute_problem(instance, sigma);

  std::vector<moenum::io::MetadataEntry> meta;
  meta.push_back({"instance", opt.instance_path});
  meta.push_back({"kind", kind_name(instance)});
  meta.push_back({"k", std::to_string(k)});
  meta.push_back({"size", std::to_string(instance_size(instance))});
  meta.push_back({"threads", std::to_string(opt.threads)});
  meta.push_back({"order", sigma.to_string()});

  std::vector<moenum::StoredImage> images;
  if (opt.cascade) {
    moenum::CascadeConfig config;
    config.thread_budget = opt.threads;
    const moenum::CascadeReport report = run_cascade(working, config);
    images = unpermute(report.ladder.final_set(), sigma);
    meta.push_back({"mode", "warmstart-cascade"});
    meta.push_back({"scalarizations", std::to_string(report.scalarizations_solved)});
    meta.push_back({"backend-calls", std::to_string(report.backend_calls)});
    meta.push_back({"skipped-infeasible", std::to_string(report.skipped_infeasible)});
    meta.push_back({"incumbent-hit-rate", fmt_seconds(report.incumbent_hit_rate())});
    for (const auto& level : report.ladder.levels) {
      std::ostringstream oss;
      oss << "members=" << level.members.size()
          << " scalarizations=" << level.run.scalarizations_solved
          << " skipped=" << level.run.skipped_infeasible;
      meta.push_back({"level-" + std::to_string(level.level), oss.str()});
    }
    meta.push_back({"wall-seconds", fmt_seconds(report.total_seconds)});
  } else {
    moenum::EngineConfig config;
    config.thread_budget = opt.threads;
    const moenum::RunReport report = run_ordered(instance, sigma, config);
    images = report.nondominated;
    meta.push_back({"mode", "plain"});
    meta.push_back({"scalarizations", std::to_string(report.scalarizations_solved)});
    meta.push_back({"backend-calls", std::to_string(report.backend_calls)});
    meta.push_back({"infeasible", std::to_string(report.infeasible_count)});
    meta.push_back({"max-depth", std::to_string(report.max_depth)});
    meta.push_back({"wall-seconds", fmt_seconds(report.setup_seconds + report.solve_seconds)});
  }
  meta.push_back({"nondominated", std::to_string(images.size())});

  write_output(opt.out_path, format_solution(instance, images, meta));
  return 0;
}

struct VerifySummary {
  int failures = 0;

  void check(bool ok, const std::string& what) {
    std::cerr << (ok ? "[ ok ] " : "[FAIL] ") << what << "\n";
    if (!ok) ++failures;
  }
  void note(const std::string& what) { std::cerr << "[note] " << what << "\n"; }
};

int cmd_verify(const Options& opt) {
  const moenum::ProblemInstance instance = moenum::io::load_instance(opt.instance_path);
  validate(instance);
  const std::size_t k = num_objectives(instance);
  VerifySummary summary;

  // Feasible image list for the brute-force reference.
  std::vector<moenum::oracle::IntImage> feasible;
  if (const auto* es = std::get_if<moenum::ExplicitSetProblem>(&instance)) {
    feasible = es->images;
  } else if (const auto* kp = std::get_if<moenum::KnapsackProblem>(&instance)) {
    feasible = moenum::oracle::enumerate_knapsack_images(*kp);  // throws beyond the ceiling
  } else {
    feasible = moenum::TinyIlpBackend(std::get<moenum::TinyIlpProblem>(instance)).feasible_images();
  }
  const auto brute = moenum::oracle::brute_nondominated(feasible);

  const auto backend = make_backend(instance);
  moenum::EngineConfig config;
  config.thread_budget = opt.threads;
  config.record_provenance = true;
  const moenum::RunReport report = run(*backend, config);

  std::vector<moenum::oracle::IntImage> engine_set;
  engine_set.reserve(report.nondominated.size());
  for (const auto& s : report.nondominated) engine_set.push_back(s.image.finite_coords());
  summary.check(engine_set == brute, "engine set equals brute-force nondominated set ("
                                          + std::to_string(brute.size()) + " images)");

  // Tree structure: every explored combination appears once, every non-root
  // node names an explored parent, and no image is stored twice.
  std::set<std::string> combos;
  bool unique_combos = true;
  std::size_t roots = 0;
  for (const auto& rec : report.provenance) {
    unique_combos = combos.insert(rec.combination.to_string()).second && unique_combos;
    if (!rec.parent) ++roots;
  }
  bool parents_explored = true;
  for (const auto& rec : report.provenance) {
    if (rec.parent) parents_explored = parents_explored && combos.count(rec.parent->to_string()) > 0;
  }
  summary.check(report.provenance.size() == report.scalarizations_solved,
                "provenance covers every scalarization");
  summary.check(unique_combos && roots == 1 && parents_explored,
                "explored nodes form a tree with one root");
  std::set<std::string> stored_images;
  bool stored_once = true;
  std::size_t stored_count = 0;
  for (const auto& rec : report.provenance) {
    if (rec.stored) {
      ++stored_count;
      stored_once = stored_images.insert(rec.optimum->to_string()).second && stored_once;
    }
  }
  summary.check(stored_once && stored_count == brute.size(), "each image stored exactly once");

  if (brute.size() <= moenum::oracle::kMaxImages && k <= moenum::oracle::kMaxObjectivesForEnumeration) {
    const auto tree = moenum::oracle::enumerate_true_combinations(brute, k);
    summary.check(tree.nodes.size() == report.scalarizations_solved,
                  "scalarization count equals the independently enumerated combination count ("
                      + std::to_string(tree.nodes.size()) + ")");
    std::set<std::string> oracle_combos;
    for (std::size_t n = 0; n < tree.nodes.size(); ++n) {
      oracle_combos.insert(tree.combination_of(n).to_string());
    }
    summary.check(oracle_combos == combos, "explored node set equals the oracle's combination set");

    double grid = 1.0;
    for (std::size_t i = 0; i < k; ++i) grid *= static_cast<double>(brute.size() + 1);
    if (moenum::oracle::general_position(brute) && grid <= 2.0e7) {
      const auto bounds = moenum::oracle::enumerate_upper_bounds(brute, k);
      std::set<std::string> points;
      for (const auto& u : bounds) {
        std::string key;
        for (const auto& c : u.point) {
          std::ostringstream oss;
          oss << c << "|";
          key += oss.str();
        }
        points.insert(key);
      }
      bool mapped = report.scalarizations_solved <= bounds.size();
      std::set<std::string> used;
      for (const auto& rec : report.provenance) {
        std::string key;
        for (const auto& b : viable_parameter(rec.combination).bounds) {
          std::ostringstream oss;
          oss << b << "|";
          key += oss.str();
        }
        std::ostringstream oss;
        if (rec.optimum) {
          oss << (*rec.optimum)[k - 1] << "|";
        } else {
          oss << moenum::ExtendedValue::plus_inf() << "|";
        }
        key += oss.str();
        mapped = mapped && points.count(key) > 0 && used.insert(key).second;
      }
      summary.check(mapped, "solved parameters map to distinct local upper bounds (|U|="
                                + std::to_string(bounds.size()) + ")");
    } else {
      summary.note("upper-bound injection checked only under general position; count |T|="
                   + std::to_string(tree.nodes.size()));
    }
  } else {
    summary.note("instance beyond the oracle enumeration ceiling; structural checks skipped");
  }

  moenum::CascadeConfig cascade_config;
  cascade_config.thread_budget = opt.threads;
  cascade_config.verify_skips = true;
  const moenum::CascadeReport cascade = run_cascade(instance, cascade_config);
  std::vector<moenum::oracle::IntImage> cascade_set;
  for (const auto& s : cascade.ladder.final_set()) cascade_set.push_back(s.image.finite_coords());
  summary.check(cascade_set == brute, "warmstart cascade reproduces the nondominated set");
  std::uint64_t violations = 0;
  for (const auto& level : cascade.ladder.levels) violations += level.skip_violations;
  summary.check(violations == 0, "all " + std::to_string(cascade.skipped_infeasible)
                                     + " skipped scalarizations confirmed infeasible");

  if (summary.failures > 0) {
    std::cerr << summary.failures << " verification check(s) failed\n";
    return kExitMismatch;
  }
  std::cerr << "verification passed\n";
  return 0;
}

int cmd_scale(const Options& opt) {
  const moenum::ProblemInstance instance = moenum::io::load_instance(opt.instance_path);
  validate(instance);

  std::vector<unsigned> ladder;
  for (unsigned t = 1; t <= opt.max_threads; t *= 2) ladder.push_back(t);
  if (ladder.empty() || ladder.back() != opt.max_threads) ladder.push_back(opt.max_threads);

  const auto backend = make_backend(instance);
  std::vector<moenum::io::ScalingRecord> records;
  for (unsigned t : ladder) {
    moenum::EngineConfig config;
    config.thread_budget = t;
    const auto t0 = std::chrono::steady_clock::now();
    const moenum::RunReport report = run(*backend, config);
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    records.push_back({opt.instance_path, num_objectives(instance), instance_size(instance),
                       report.nondominated.size(), report.scalarizations_solved, t, wall, 0.0});
  }

  const unsigned baseline_threads = opt.baseline == 0 ? ladder.back() : opt.baseline;
  double baseline_wall = records.back().wall_seconds;
  for (const auto& r : records) {
    if (r.threads == baseline_threads) baseline_wall = r.wall_seconds;
  }
  for (auto& r : records) {
    r.slowdown = baseline_wall > 0.0 ? r.wall_seconds / baseline_wall : 1.0;
  }
  write_output(opt.out_path, moenum::io::scaling_csv(records));
  return 0;
}

int cmd_gen(const Options& opt) {
  moenum::io::InstanceKind kind;
  if (opt.gen_kind == "kp") {
    kind = moenum::io::InstanceKind::knapsack;
  } else if (opt.gen_kind == "explicit") {
    kind = moenum::io::InstanceKind::explicit_set;
  } else if (opt.gen_kind == "ilp") {
    kind = moenum::io::InstanceKind::tiny_ilp;
  } else {
    std::cerr << "unknown instance kind '" << opt.gen_kind << "' (kp, explicit, ilp)\n";
    return kExitUsage;
  }
  write_output(opt.out_path, moenum::io::generate_instance(kind, opt.gen_k, opt.gen_n, opt.gen_seed));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact parallel nondominated-set solver for multi-objective integer problems"};
  app.require_subcommand(1);
  Options opt;

  auto* solve = app.add_subcommand("solve", "compute the nondominated set of an instance");
  solve->add_option("instance", opt.instance_path, "instance file")->required();
  solve->add_option("--threads", opt.threads, "worker thread budget")
      ->envname("MOENUM_THREADS");
  solve->add_flag("--warmstart-cascade", opt.cascade,
                  "compute the feasibility ladder level by level, skipping provably "
                  "infeasible scalarizations and warm-starting the backend");
  solve->add_option("--order", opt.order, "objective ordering, 1-based (default identity)");
  solve->add_option("--out", opt.out_path, "output file (default stdout)");

  auto* verify = app.add_subcommand("verify", "solve and cross-check against the brute-force oracle");
  verify->add_option("instance", opt.instance_path, "instance file")->required();
  verify->add_option("--threads", opt.threads, "worker thread budget")->envname("MOENUM_THREADS");

  auto* scale = app.add_subcommand("scale", "run a thread ladder and emit a scaling CSV");
  scale->add_option("instance", opt.instance_path, "instance file")->required();
  scale->add_option("--max-threads", opt.max_threads, "largest thread budget (ladder 1,2,4,...)");
  scale->add_option("--baseline", opt.baseline, "baseline thread count for the slowdown column");
  scale->add_option("--out", opt.out_path, "output file (default stdout)");

  auto* gen = app.add_subcommand("gen", "generate a seeded instance");
  gen->add_option("--kind", opt.gen_kind, "kp, explicit or ilp")->required();
  gen->add_option("-k,--objectives", opt.gen_k, "number of objectives")->required();
  gen->add_option("-n,--size", opt.gen_n, "items / points / variables")->required();
  gen->add_option("--seed", opt.gen_seed, "random seed");
  gen->add_option("--out", opt.out_path, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (solve->parsed()) return cmd_solve(opt);
    if (verify->parsed()) return cmd_verify(opt);
    if (scale->parsed()) return cmd_scale(opt);
    return cmd_gen(opt);
  } catch (const moenum::io::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "backend failure: " << e.what() << "\n";
    return kExitBackend;
  }
}
