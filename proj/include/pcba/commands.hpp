#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "pcba/problems.hpp"
#include "pcba/solver.hpp"

namespace pcba {

/// One solve, as written to CSV.
struct ResultRow {
  std::string problem;
  SolveStatus status = SolveStatus::CapReached;
  double p_up = kInfinity;
  double p_lo = kInfinity;
  std::optional<double> error_vs_known;  ///< p_up - known optimum
  unsigned iterations = 0;
  double wall_time_ms = 0.0;
  std::size_t peak_items = 0;
  std::uint64_t peak_bytes = 0;
  std::optional<std::size_t> constraints;  ///< scaling runs only
};

/// Solves and times one problem; `result` receives the full solver output.
ResultRow run_problem(const ProblemSpec& problem, const SolverConfig& config,
                      SolverResult* result = nullptr);

std::string csv_header(bool with_constraints);
std::string csv_row(const ResultRow& row);

/// Exit codes of `solve`.
inline constexpr int kExitOptimal = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitInfeasible = 2;
inline constexpr int kExitCapReached = 3;

int exit_code(SolveStatus status);

struct SolveOptions {
  std::string path;
  SolverConfig config;
  bool csv = false;
};

/// Reads a problem file, solves it and prints a report. Returns the exit code.
int cmd_solve(const SolveOptions& options, std::ostream& out, std::ostream& err);

struct BenchOptions {
  SolverConfig config;
  std::optional<std::string> out_path;  ///< stdout when empty
};

/// Runs P1..P8 and writes one CSV row each. Returns 0, or 1 on IO error.
int cmd_bench(const BenchOptions& options, std::ostream& out, std::ostream& err);

struct ScalingOptions {
  std::string objective;
  std::size_t min_constraints = 10;
  std::size_t max_constraints = 200;
  std::size_t step = 10;
  std::uint64_t seed = 0;
  SolverConfig config;
  std::optional<std::string> out_path;
};

/// Solves the objective with min, min+step, ..., max random constraints.
/// Each trial's constraints extend the previous trial's.
int cmd_scaling(const ScalingOptions& options, std::ostream& out, std::ostream& err);

/// Writes a benchmark or scaling objective as a problem file.
int cmd_export(const std::string& name, const std::optional<std::string>& out_path,
               std::ostream& out, std::ostream& err);

}  // namespace pcba
