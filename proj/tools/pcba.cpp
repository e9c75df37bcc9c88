// pcba: constrained polynomial global optimization from the command line.
//
//   pcba solve problem.pop [--eps E | --eps-auto] [--csv]
//   pcba bench [--out results.csv]
//   pcba scaling --objective Beale [--min 10 --max 200 --step 10 --seed S]
//   pcba export P4 [--out p4.pop]

#include <CLI11.hpp>

#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include "pcba/commands.hpp"

namespace {

struct SolverFlags {
  std::optional<double> eps;
  bool eps_auto = false;
  double eps_eq = 1e-6;
  double delta = 0.0;
  unsigned max_iter = 28;
  std::size_t max_items = 4194304;
  unsigned threads = 0;

  void add_to(CLI::App* app) {
    auto* e = app->add_option("--eps", eps, "optimality tolerance (default: auto from the initial cost patch)");
    app->add_flag("--eps-auto", eps_auto, "optimality tolerance 1e-7 * range of the initial cost patch")
        ->excludes(e);
    app->add_option("--eps-eq", eps_eq, "equality constraint tolerance")->capture_default_str();
    app->add_option("--delta", delta, "step tolerance on box width, 0 disables")->capture_default_str();
    app->add_option("--max-iter", max_iter, "maximum number of direction cycles")->capture_default_str();
    app->add_option("--max-items", max_items, "maximum list length M")->capture_default_str();
    app->add_option("--threads", threads, "worker threads, 0 = hardware concurrency")->capture_default_str();
  }

  pcba::SolverConfig config() const {
    pcba::SolverConfig c;
    c.eps_auto = eps_auto || !eps;
    if (eps) c.eps = *eps;
    c.eps_eq = eps_eq;
    c.delta = delta;
    c.max_iterations = max_iter;
    c.max_items = max_items;
    c.thread_count = threads;
    return c;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bernstein branch-and-bound solver for polynomial optimization problems"};
  app.require_subcommand(1);

  SolverFlags solve_flags, bench_flags, scaling_flags;

  pcba::SolveOptions solve_opts;
  auto* solve = app.add_subcommand("solve", "solve a problem file");
  solve->add_option("file", solve_opts.path, "problem file")->required();
  solve->add_flag("--csv", solve_opts.csv, "print a CSV row instead of the report");
  solve_flags.add_to(solve);

  pcba::BenchOptions bench_opts;
  auto* bench = app.add_subcommand("bench", "run benchmarks P1..P8");
  bench->add_option("--out,--csv", bench_opts.out_path, "CSV output path (default stdout)");
  bench_flags.add_to(bench);

  pcba::ScalingOptions scaling_opts;
  auto* scaling = app.add_subcommand("scaling", "solve with an increasing number of random constraints");
  scaling->add_option("--objective", scaling_opts.objective,
                      "EVD, Powell, Wood, DixonPrice2..4, Beale, Bukin02, DeckkersAarts")
      ->required();
  scaling->add_option("--min", scaling_opts.min_constraints)->capture_default_str();
  scaling->add_option("--max", scaling_opts.max_constraints)->capture_default_str();
  scaling->add_option("--step", scaling_opts.step)->capture_default_str();
  scaling->add_option("--seed", scaling_opts.seed)->capture_default_str();
  scaling->add_option("--out,--csv", scaling_opts.out_path, "CSV output path (default stdout)");
  scaling_flags.add_to(scaling);

  std::string export_name;
  std::optional<std::string> export_out;
  auto* exporter = app.add_subcommand("export", "write a built-in problem as a problem file");
  exporter->add_option("name", export_name, "P1..P8 or a scaling objective name")->required();
  exporter->add_option("--out", export_out, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : pcba::kExitError;
  }

  try {
    if (*solve) {
      solve_opts.config = solve_flags.config();
      return pcba::cmd_solve(solve_opts, std::cout, std::cerr);
    }
    if (*bench) {
      bench_opts.config = bench_flags.config();
      return pcba::cmd_bench(bench_opts, std::cout, std::cerr);
    }
    if (*scaling) {
      scaling_opts.config = scaling_flags.config();
      return pcba::cmd_scaling(scaling_opts, std::cout, std::cerr);
    }
    if (*exporter) return pcba::cmd_export(export_name, export_out, std::cout, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return pcba::kExitError;
  }
  return pcba::kExitError;
}
