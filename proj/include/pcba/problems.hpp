#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pcba/polynomial.hpp"

namespace pcba {

/// minimize cost(x) over `domain` subject to ineqs[i](x) <= 0, eqs[j](x) = 0.
struct ProblemSpec {
  std::string name;
  Box domain;
  Polynomial cost;
  std::vector<Polynomial> ineqs;
  std::vector<Polynomial> eqs;
  std::optional<double> known_optimum;
  std::optional<Point> known_minimizer;
  /// Further global minimizers when the optimum is not unique.
  std::vector<Point> other_minimizers;

  std::size_t dimension() const { return domain.dimension(); }

  /// Throws ContractViolation if any polynomial disagrees with the domain's
  /// dimension or the known minimizer has the wrong length.
  void validate() const;

  bool operator==(const ProblemSpec&) const = default;
};

/// Max constraint violation at x: max(g_i(x)^+, |h_j(x)|), 0 when none.
double constraint_violation(const ProblemSpec& problem, std::span<const double> x);

enum class Benchmark { P1, P2, P3, P4, P5, P6, P7, P8 };

inline constexpr Benchmark kAllBenchmarks[] = {Benchmark::P1, Benchmark::P2, Benchmark::P3,
                                               Benchmark::P4, Benchmark::P5, Benchmark::P6,
                                               Benchmark::P7, Benchmark::P8};

std::string to_string(Benchmark id);
std::optional<Benchmark> parse_benchmark(std::string_view name);

/// Constrained benchmark problems in their original domains.
ProblemSpec benchmark(Benchmark id);

enum class ScalingObjective { EVD, Powell, Wood, DixonPrice, Beale, Bukin02, DeckkersAarts };

/// Unconstrained objectives used for the increasing-constraints experiment.
/// `dixon_price_dimension` must be 2, 3 or 4 and is ignored otherwise.
ProblemSpec scaling_objective(ScalingObjective objective, unsigned dixon_price_dimension = 2);

/// Accepts "EVD", "Powell", "Wood", "DixonPrice2".."DixonPrice4" (also "D-P2",
/// "DixonPrice" = 2-D), "Beale", "Bukin02", "DeckkersAarts" (also "D-A").
ProblemSpec scaling_objective(std::string_view name);

/// SplitMix64 generator; bit-identical across platforms.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  /// Uniform in [0, 1) from the top 53 bits.
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::uint64_t state_;
};

/// Monomials of total degree <= `max_degree` in graded lexicographic order:
/// constant first, then degree 1 in variable order, then degree 2, ...
std::vector<MultiIndex> graded_monomials(std::size_t dimension, unsigned max_degree);

/// Appends `count` random quadratic inequality constraints that all vanish at
/// the base problem's known minimizer. Coefficients are drawn in [-5, 5] over
/// unit-box coordinates. When the base has several minimizers one is picked
/// by the first draw of the stream and becomes the known minimizer.
ProblemSpec gen_random_constraints(const ProblemSpec& base, std::size_t count,
                                   std::uint64_t seed);

/// Trajectory-planning problem over Q = [0,1] x [-1,1]: minimize the product
/// over waypoints of squared distance between endpoint(q) and the waypoint.
ProblemSpec gen_planning_pop(std::span<const std::pair<double, double>> waypoints,
                             const std::pair<Polynomial, Polynomial>& endpoint,
                             std::vector<Polynomial> obstacle_constraints);

struct BruteForceResult {
  double value = std::numeric_limits<double>::infinity();
  Point point;
  bool feasible_found = false;
};

/// Grid search over `points_per_dim` points per axis. Inequalities must hold
/// to 1e-9; equalities to `eq_tolerance`.
BruteForceResult brute_force_solve(const ProblemSpec& problem, std::size_t points_per_dim,
                                   double eq_tolerance = 1e-3);

}  // namespace pcba
