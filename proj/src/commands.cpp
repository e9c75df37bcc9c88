#include "pcba/commands.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "pcba/pop_io.hpp"

namespace pcba {

namespace {

std::string format_real(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.10g", value);
  return buffer;
}

std::string format_box(const Box& box) {
  std::string s;
  for (std::size_t i = 0; i < box.dimension(); ++i) {
    if (i) s += " x ";
    s += "[" + format_real(box.lower(i)) + ", " + format_real(box.upper(i)) + "]";
  }
  return s;
}

// Writes to the file when a path is given, else to `fallback`.
bool emit(const std::optional<std::string>& path, const std::string& text,
          std::ostream& fallback, std::ostream& err) {
  if (!path) {
    fallback << text;
    fallback.flush();
    return true;
  }
  std::ofstream file(*path, std::ios::binary);
  file << text;
  if (!file) {
    err << "error: cannot write '" << *path << "'\n";
    return false;
  }
  return true;
}

}  // namespace

ResultRow run_problem(const ProblemSpec& problem, const SolverConfig& config,
                      SolverResult* result) {
  const auto start = std::chrono::steady_clock::now();
  SolverResult solved = solve(problem, config);
  const auto stop = std::chrono::steady_clock::now();

  ResultRow row;
  row.problem = problem.name;
  row.status = solved.status;
  row.p_up = solved.p_up;
  row.p_lo = solved.p_lo;
  if (problem.known_optimum) row.error_vs_known = solved.p_up - *problem.known_optimum;
  row.iterations = solved.iterations;
  row.wall_time_ms = std::chrono::duration<double, std::milli>(stop - start).count();
  row.peak_items = solved.peak_items();
  row.peak_bytes = solved.peak_bytes();
  if (result) *result = std::move(solved);
  return row;
}

std::string csv_header(bool with_constraints) {
  std::string h =
      "problem,status,p_up,p_lo,error_vs_known,iterations,wall_time_ms,peak_items,peak_bytes";
  if (with_constraints) h += ",constraints";
  return h + "\n";
}

std::string csv_row(const ResultRow& row) {
  std::string s = row.problem;
  s += ',';
  s += to_string(row.status);
  s += ',' + format_real(row.p_up);
  s += ',' + format_real(row.p_lo);
  s += ',';
  if (row.error_vs_known) s += format_real(*row.error_vs_known);
  s += ',' + std::to_string(row.iterations);
  s += ',' + format_real(row.wall_time_ms);
  s += ',' + std::to_string(row.peak_items);
  s += ',' + std::to_string(row.peak_bytes);
  if (row.constraints) s += ',' + std::to_string(*row.constraints);
  return s + "\n";
}

int exit_code(SolveStatus status) {
  switch (status) {
    case SolveStatus::Optimal: return kExitOptimal;
    case SolveStatus::Infeasible: return kExitInfeasible;
    case SolveStatus::CapReached: return kExitCapReached;
  }
  return kExitError;
}

int cmd_solve(const SolveOptions& options, std::ostream& out, std::ostream& err) {
  ProblemSpec problem = [&] {
    ProblemSpec p = read_pop_file(options.path);
    const auto slash = options.path.find_last_of('/');
    p.name = slash == std::string::npos ? options.path : options.path.substr(slash + 1);
    return p;
  }();

  SolverResult result;
  const ResultRow row = run_problem(problem, options.config, &result);
  if (options.csv) {
    out << csv_header(false) << csv_row(row);
    return exit_code(row.status);
  }
  out << "status: " << to_string(row.status) << '\n';
  out << "p_up: " << format_real(row.p_up) << '\n';
  out << "p_lo: " << format_real(row.p_lo) << '\n';
  out << "eps: " << format_real(result.eps) << '\n';
  if (row.error_vs_known) out << "error_vs_known: " << format_real(*row.error_vs_known) << '\n';
  out << "solution_box: "
      << (result.solution_box ? format_box(*result.solution_box) : std::string("none")) << '\n';
  out << "iterations: " << row.iterations << '\n';
  out << "peak_items: " << row.peak_items << '\n';
  out << "peak_bytes: " << row.peak_bytes << '\n';
  out << "wall_time_ms: " << format_real(row.wall_time_ms) << '\n';
  (void)err;
  return exit_code(row.status);
}

int cmd_bench(const BenchOptions& options, std::ostream& out, std::ostream& err) {
  std::string csv = csv_header(false);
  for (Benchmark id : kAllBenchmarks) {
    csv += csv_row(run_problem(benchmark(id), options.config));
  }
  return emit(options.out_path, csv, out, err) ? 0 : kExitError;
}

int cmd_scaling(const ScalingOptions& options, std::ostream& out, std::ostream& err) {
  if (options.step < 1 || options.min_constraints < 1 ||
      options.min_constraints > options.max_constraints) {
    err << "error: need 1 <= min <= max and step >= 1\n";
    return kExitError;
  }
  const ProblemSpec base = scaling_objective(options.objective);
  std::string csv = csv_header(true);
  for (std::size_t count = options.min_constraints; count <= options.max_constraints;
       count += options.step) {
    ProblemSpec problem = gen_random_constraints(base, count, options.seed);
    ResultRow row = run_problem(problem, options.config);
    row.constraints = count;
    csv += csv_row(row);
  }
  return emit(options.out_path, csv, out, err) ? 0 : kExitError;
}

int cmd_export(const std::string& name, const std::optional<std::string>& out_path,
               std::ostream& out, std::ostream& err) {
  ProblemSpec problem = [&] {
    if (auto id = parse_benchmark(name)) return benchmark(*id);
    return scaling_objective(name);
  }();
  return emit(out_path, serialize_pop(problem), out, err) ? 0 : kExitError;
}

}  // namespace pcba
