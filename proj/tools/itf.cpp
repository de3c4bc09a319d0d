// Command-line front end: instance generation, solvers, sweeps, the [4,4,1]
// exhaustive check and the numeric checks on the reshuffling constant.
//
// Exit codes: 0 success or verified result, 1 solver/check failure,
// 2 input error, 3 internal invariant violation.

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "itf/algorithms.hpp"
#include "itf/analysis.hpp"
#include "itf/constructions.hpp"
#include "itf/exhaustive.hpp"
#include "itf/instance_io.hpp"
#include "itf/report.hpp"
#include "itf/sweep.hpp"

namespace {

using namespace itf;

enum ExitCode : int { kOk = 0, kFailure = 1, kInputError = 2, kInternalError = 3 };

/// Machine output goes to --out when given, else stdout; the human summary
/// then goes to stdout, or stderr when stdout carries the machine output.
struct Output {
  std::string out_path;

  std::ostream& human() const { return out_path.empty() ? std::cerr : std::cout; }
  void machine(const std::string& text) const {
    if (out_path.empty()) {
      std::cout << text;
    } else {
      write_file(out_path, text);
    }
  }
};

SolverParams parse_params(const std::string& spec, SolverParams params) {
  std::stringstream stream(spec);
  std::string item;
  while (std::getline(stream, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw InvalidArgument("--params entries must be key=value, got '" + item + "'");
    const std::string key = item.substr(0, eq);
    const std::string value = item.substr(eq + 1);
    try {
      if (key == "c") {
        params.c = std::stod(value);
      } else if (key == "delta") {
        params.delta = std::stod(value);
      } else if (key == "eta") {
        params.eta = std::stod(value);
      } else if (key == "epsilon") {
        params.epsilon = std::stod(value);
      } else if (key == "restarts") {
        params.restarts = std::stoi(value);
      } else if (key == "greedy_shortcut") {
        params.greedy_shortcut = value == "1" || value == "true";
      } else {
        throw InvalidArgument("unknown parameter '" + key + "'");
      }
    } catch (const std::logic_error&) {
      throw InvalidArgument("bad value for parameter '" + key + "': '" + value + "'");
    }
  }
  return params;
}

template <typename T>
std::vector<T> parse_list(const std::string& text) {
  std::vector<T> out;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    if (item.empty()) continue;
    try {
      if constexpr (std::is_same_v<T, int>) {
        out.push_back(std::stoi(item));
      } else {
        out.push_back(std::stod(item));
      }
    } catch (const std::logic_error&) {
      throw InvalidArgument("bad list entry '" + item + "'");
    }
  }
  if (out.empty()) throw InvalidArgument("empty list '" + text + "'");
  return out;
}

std::string describe(const SparsePartiteGraph& g) {
  std::ostringstream out;
  out << "[" << g.parts() << "," << g.part_size() << ",1]-graph with " << g.edge_count() << " edges";
  return out.str();
}

// gen ------------------------------------------------------------------------

struct GenArgs {
  std::string kind;
  int k = 0;
  int n = 0;
  std::uint64_t seed = 0;
  std::string out;
};

int cmd_gen(const GenArgs& args) {
  const Output output{args.out};
  if (args.kind == "latin-trap") {
    const LatinTrap trap = latin_greedy_trap(args.k);
    const auto m = trap.adjacency.rows();
    std::ostringstream text;
    text << "bip v1 m=" << m << " base=0\n";
    text << "# witness:";
    for (const int v : trap.witness) text << ' ' << v;
    text << '\n' << dump_adjacency(trap.adjacency);
    output.machine(text.str());
    const auto neighbors = neighborhood(trap.adjacency, trap.witness);
    output.human() << "latin-trap k=" << args.k << ": " << m << "x" << m << " stage graph, |W|=" << trap.witness.size()
                   << ", |N(W)|=" << neighbors.size() << ", max matching " << max_matching(trap.adjacency).flagged()
                   << "\n";
    return kOk;
  }

  SparsePartiteGraph g(2, 1);
  std::string extra;
  if (args.kind == "random") {
    if (args.n < 1) throw InvalidArgument("gen random needs k and n");
    Rng rng(args.seed);
    g = random_knd1(args.k, args.n, rng);
  } else if (args.kind == "catlin") {
    g = catlin(args.k);
    if (const auto warning = catlin_warning(args.k)) std::cerr << "warning: " << *warning << "\n";
  } else if (args.kind == "clique") {
    g = first_column_clique(args.k);
  } else if (args.kind == "latin-trap-graph") {
    const TrapInstance trap = latin_trap_instance(args.k);
    g = trap.graph;
    std::ostringstream rows;
    rows << "# forced " << trap.forced.parts() << "-partial factor, one row per line\n";
    for (int j = 0; j < trap.forced.rows(); ++j) {
      rows << "# row " << j << ":";
      for (int part = 0; part < trap.forced.parts(); ++part) rows << ' ' << trap.forced.at(j, part);
      rows << '\n';
    }
    extra = rows.str();
  } else {
    throw InvalidArgument("unknown kind '" + args.kind + "' (random, catlin, clique, latin-trap, latin-trap-graph)");
  }
  g.validate();
  const auto format = args.out.empty() ? InstanceFormat::Text : format_for_path(args.out);
  output.machine(serialize(g, format) + (format == InstanceFormat::Text ? extra : std::string()));
  output.human() << args.kind << ": " << describe(g) << ", valid\n";
  return kOk;
}

// solve ----------------------------------------------------------------------

struct SolveArgs {
  std::string in;
  std::string algorithm = "greedy";
  std::string params;
  std::uint64_t seed = 0;
  std::string out;
  bool timing = false;
  long budget_ms = 0;
};

int cmd_solve(const SolveArgs& args) {
  const Output output{args.out};
  const SparsePartiteGraph g = read_instance(args.in);
  const Algorithm algorithm = parse_algorithm(args.algorithm);
  SolverParams params = parse_params(args.params, SolverParams{});
  params.seed = args.seed;
  params.validate();
  SolveRecord record;
  record.algorithm = to_string(algorithm);
  record.seed = args.seed;
  const auto start = std::chrono::steady_clock::now();
  int code = kOk;

  switch (algorithm) {
    case Algorithm::Greedy: {
      auto result = greedy_hall_factor(g);
      if (auto* factor = std::get_if<PartialFactor>(&result)) {
        record.factor = std::move(*factor);
      } else {
        const auto& failure = std::get<GreedyFailure>(result);
        record.failed_stage = failure.t;
        record.hall_witness = failure.witness.right;
        record.hall_neighbors = failure.witness.neighbors;
      }
      break;
    }
    case Algorithm::Semirandom: {
      record.params = params;
      auto result = semirandom_factor(g, params);
      if (auto* success = std::get_if<SemirandomSuccess>(&result)) {
        record.factor = std::move(success->factor);
        record.stage_reports = std::move(success->reports);
        record.attempts = success->attempts;
      } else {
        auto& failure = std::get<SolverFailure>(result);
        record.stage_reports = std::move(failure.reports);
        record.attempts = failure.attempts;
      }
      break;
    }
    case Algorithm::Brute: {
      BruteForceOptions options;
      if (args.budget_ms > 0) options.time_budget = std::chrono::milliseconds(args.budget_ms);
      try {
        record.factor = brute_force_factor(g, options);
      } catch (const BudgetExceeded& e) {
        output.human() << "brute force: " << e.what() << " after " << e.nodes_explored << " nodes\n";
        return kFailure;
      }
      break;
    }
  }

  if (record.factor) {
    if (!is_factor(g, *record.factor)) throw InvariantViolation("claimed factor failed re-verification");
    record.status = "success";
  } else {
    record.status = algorithm == Algorithm::Brute ? "no-factor-exists" : "failure";
    code = algorithm == Algorithm::Brute ? kOk : kFailure;
  }
  const double elapsed = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  if (args.timing) record.wall_time_ms = elapsed;
  output.machine(to_json(record).dump(2) + "\n");

  auto& human = output.human();
  human << record.algorithm << " on " << describe(g) << ": " << record.status;
  if (record.failed_stage) {
    human << " at stage " << *record.failed_stage << " (Hall witness of size " << record.hall_witness.size()
          << " with " << record.hall_neighbors.size() << " neighbours)";
  }
  if (algorithm == Algorithm::Semirandom) human << " after " << record.attempts << " attempt(s)";
  human << std::fixed << std::setprecision(1) << " in " << elapsed << " ms\n";
  return code;
}

// sweep ----------------------------------------------------------------------

struct SweepArgs {
  std::string ratios = "0.40,0.50,0.5624";
  std::string sizes = "200";
  int trials = 20;
  std::string algorithm = "semirandom";
  std::string params;
  std::uint64_t seed = 0;
  std::string out;
  std::string format = "csv";
  unsigned threads = 1;
  bool timing = false;
};

int cmd_sweep(const SweepArgs& args) {
  const Output output{args.out};
  SweepConfig config;
  config.ratios = parse_list<double>(args.ratios);
  config.sizes = parse_list<int>(args.sizes);
  config.trials = args.trials;
  config.algorithm = parse_algorithm(args.algorithm);
  config.params = parse_params(args.params, SolverParams{});
  config.params.validate();
  config.seed = args.seed;
  config.threads = args.threads;
  if (args.format != "json" && args.format != "csv") throw InvalidArgument("unknown format '" + args.format + "'");
  const auto rows = run_sweep(config);
  if (args.format == "json") {
    output.machine(sweep_json(rows, config.algorithm, args.timing).dump(2) + "\n");
  } else if (args.format == "csv") {
    output.machine(sweep_csv(rows, config.algorithm, args.timing));
  } else {
    throw InvalidArgument("unknown format '" + args.format + "'");
  }
  auto& human = output.human();
  human << std::fixed << std::setprecision(3);
  for (const auto& row : rows) {
    human << "k/n=" << row.ratio << " n=" << row.n << " k=" << row.k << ": " << row.successes << "/" << row.trials
          << " succeeded, mean stages before first failure " << row.mean_stages_before_fallback << "\n";
  }
  return kOk;
}

// f4 -------------------------------------------------------------------------

struct F4Args {
  std::size_t limit = kF4InstanceCount;
  unsigned threads = 1;
  std::uint64_t relabel_seed = 0;
  bool relabel = false;
  std::string out;
  std::string dump_failures;
  bool timing = false;
};

int cmd_f4(const F4Args& args) {
  const Output output{args.out};
  VerifyOptions options;
  options.limit = args.limit;
  options.threads = args.threads;
  if (args.relabel) options.relabel_seed = args.relabel_seed;
  const VerificationReport report = verify_f4(options);
  output.machine(to_json(report, args.timing).dump(2) + "\n");
  if (!args.dump_failures.empty()) {
    std::filesystem::create_directories(args.dump_failures);
    for (const auto index : report.failures) {
      const auto g = options.relabel_seed ? relabeled_f4_instance(index, *options.relabel_seed) : f4_instance(index);
      write_instance(std::filesystem::path(args.dump_failures) / ("f4-" + std::to_string(index) + ".knd1"), g);
    }
  }
  output.human() << report.checked << " instances, " << report.failures.size() << " failures" << std::fixed
                 << std::setprecision(0) << " (" << report.wall_ms << " ms)\n";
  return report.failures.empty() ? kOk : kFailure;
}

// lemma-check ----------------------------------------------------------------

struct LemmaArgs {
  double c = 0.778;
  double grid_step = 1e-4;
  long steps = 1'000'000;
  double epsilon = 0.05;
  std::uint64_t seed = 0;  // deterministic command; accepted for a uniform flag set
  std::string out;
};

int cmd_lemma_check(const LemmaArgs& args) {
  namespace an = itf::analysis;
  const Output output{args.out};
  const double c = args.c;
  OrderedJson doc;
  doc["c"] = c;
  OrderedJson checks = OrderedJson::array();
  bool all_pass = true;
  std::ostringstream table;
  table << std::setprecision(12);
  auto row = [&](const std::string& name, bool pass, const std::string& detail) {
    all_pass = all_pass && pass;
    table << (pass ? "PASS  " : "FAIL  ") << std::left << std::setw(34) << name << detail << "\n";
    checks.push_back({{"check", name}, {"pass", pass}, {"detail", detail}});
  };
  auto str = [](double v) {
    std::ostringstream s;
    s << std::setprecision(12) << v;
    return s.str();
  };

  const double condition = an::c_condition_value(c);
  const bool condition_ok = c > 0 && c <= 1 && an::check_c_condition(c);
  row("2c^2 ln((1+c)/c) >= 1", condition_ok,
      "value " + str(condition) +
          (condition_ok ? "" : " < 1: the integral bound fails near mu = 1/(1+c); need c >= c*"));

  if (condition_ok) {
    const auto report = an::verify_f_nonpositive(c, args.grid_step);
    row("f <= 1e-12 on [0, 1/(1+c)]", report.nonpositive(1e-12),
        "max f " + str(report.max_f) + " at mu " + str(report.argmax_mu) + " over " +
            std::to_string(report.grid_points) + " points");
    row("f(0) = -c", report.f_at_zero == -c, "f(0) " + str(report.f_at_zero));
    row("f increasing on the range", report.range_below_monotone_limit && report.derivative_positive &&
                                         report.strictly_increasing,
        "1/(1+c) " + str(report.mu_max) + " < " + str(report.monotone_limit));
    double worst = 0;
    for (int i = 0; i <= 10; ++i) {
      const double mu = report.mu_max * i / 10.0;
      worst = std::max(worst, std::abs(an::integral_closed_form(c, mu) - an::integral_numeric(c, mu, args.steps)));
    }
    row("closed form = Simpson (1e-9)", worst <= 1e-9, "max gap " + str(worst));
    const double margin = an::integral_margin(c, args.epsilon, args.grid_step);
    row("gap below c mu for mu <= (1-eps)/(1+c)", margin > 0, "min (c mu - I)/mu " + str(margin) + " at eps " +
                                                                  str(args.epsilon));
  } else {
    row("f <= 0 on [0, 1/(1+c)]", false, "skipped: condition on c fails");
  }

  const double c_star = an::min_feasible_c(1e-9);
  table << "      c* = " << c_star << ", 1/(1+c*) = " << 1.0 / (1.0 + c_star) << "\n";
  doc["checks"] = checks;
  doc["c_star"] = c_star;
  doc["k_over_n_bound"] = 1.0 / (1.0 + c_star);
  doc["pass"] = all_pass;
  output.machine(doc.dump(2) + "\n");
  output.human() << table.str() << (all_pass ? "lemma-check: pass\n" : "lemma-check: fail\n");
  return all_pass ? kOk : kFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Factors of independent transversals in [k,n,1]-graphs"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate an instance");
  gen_cmd->add_option("kind", gen.kind, "random | catlin | clique | latin-trap | latin-trap-graph")->required();
  gen_cmd->add_option("k", gen.k, "Number of parts")->required();
  gen_cmd->add_option("n", gen.n, "Part size (random only)");
  gen_cmd->add_option("--seed", gen.seed, "RNG seed");
  gen_cmd->add_option("--out", gen.out, "Output file (.json selects JSON)");

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "Search for a factor of independent transversals");
  solve_cmd->add_option("input", solve.in, "Instance file")->required()->check(CLI::ExistingFile);
  solve_cmd->add_option("--algorithm,-a", solve.algorithm, "greedy | semirandom | brute");
  solve_cmd->add_option("--params", solve.params, "c=,delta=,eta=,epsilon=,restarts=");
  solve_cmd->add_option("--seed", solve.seed, "RNG seed");
  solve_cmd->add_option("--out", solve.out, "Result JSON file");
  solve_cmd->add_option("--budget-ms", solve.budget_ms, "Time budget for brute force");
  solve_cmd->add_flag("--timing", solve.timing, "Record wall time in the JSON result");

  SweepArgs sweep;
  auto* sweep_cmd = app.add_subcommand("sweep", "Success rates on random instances");
  sweep_cmd->add_option("--ratios", sweep.ratios, "Comma-separated k/n ratios");
  sweep_cmd->add_option("--ns", sweep.sizes, "Comma-separated part sizes");
  sweep_cmd->add_option("--trials", sweep.trials, "Trials per cell");
  sweep_cmd->add_option("--algorithm,-a", sweep.algorithm, "greedy | semirandom | brute");
  sweep_cmd->add_option("--params", sweep.params, "c=,delta=,eta=,epsilon=,restarts=");
  sweep_cmd->add_option("--seed", sweep.seed, "RNG seed");
  sweep_cmd->add_option("--out", sweep.out, "Table output file");
  sweep_cmd->add_option("--format", sweep.format, "csv | json");
  sweep_cmd->add_option("--threads", sweep.threads, "Worker threads");
  sweep_cmd->add_flag("--timing", sweep.timing, "Fill the wall-time column");

  F4Args f4;
  auto* f4_cmd = app.add_subcommand("f4", "Check every [4,4,1]-graph of the canonical family");
  f4_cmd->add_option("--limit", f4.limit, "Check only the first N instances");
  f4_cmd->add_option("--threads", f4.threads, "Worker threads");
  auto* relabel = f4_cmd->add_option("--relabel-seed", f4.relabel_seed, "Randomly relabel instances first");
  f4_cmd->add_option("--seed", f4.relabel_seed, "Alias of --relabel-seed");
  f4_cmd->add_option("--out", f4.out, "Report JSON file");
  f4_cmd->add_option("--dump-failures", f4.dump_failures, "Directory for failing instances");
  f4_cmd->add_flag("--timing", f4.timing, "Record wall time in the JSON report");

  LemmaArgs lemma;
  auto* lemma_cmd = app.add_subcommand("lemma-check", "Numeric checks on the reshuffling slope c");
  lemma_cmd->add_option("c", lemma.c, "Slope constant");
  lemma_cmd->add_option("--grid-step", lemma.grid_step, "Grid spacing in mu");
  lemma_cmd->add_option("--steps", lemma.steps, "Simpson steps");
  lemma_cmd->add_option("--epsilon", lemma.epsilon, "Headroom for the gap measurement");
  lemma_cmd->add_option("--out", lemma.out, "Report JSON file");
  lemma_cmd->add_option("--seed", lemma.seed, "Accepted for uniformity; unused");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*gen_cmd) return cmd_gen(gen);
    if (*solve_cmd) return cmd_solve(solve);
    if (*sweep_cmd) return cmd_sweep(sweep);
    if (*f4_cmd) {
      f4.relabel = relabel->count() > 0 || f4_cmd->get_option("--seed")->count() > 0;
      return cmd_f4(f4);
    }
    if (*lemma_cmd) return cmd_lemma_check(lemma);
  } catch (const InvariantViolation& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternalError;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kInputError;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
