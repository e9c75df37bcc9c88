#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "pcba/bernstein.hpp"
#include "pcba/patch.hpp"
#include "pcba/polynomial.hpp"

namespace pcba {

struct ProblemSpec;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Shapes shared by every item of one solve. Inequality patches are padded
/// to a common multi-degree G, equality patches to H.
struct ItemLayout {
  std::size_t dimension = 0;
  Shape cost_shape;
  Shape ineq_shape;
  Shape eq_shape;
  std::size_t ineq_count = 0;
  std::size_t eq_count = 0;

  std::size_t cost_size() const { return shape_volume(cost_shape); }
  std::size_t ineq_size() const { return ineq_count ? shape_volume(ineq_shape) : 0; }
  std::size_t eq_size() const { return eq_count ? shape_volume(eq_shape) : 0; }
  /// Coefficients stored per item (all patches).
  std::size_t coefficient_count() const {
    return cost_size() + ineq_count * ineq_size() + eq_count * eq_size();
  }
  /// Entries per item in the 4-byte memory accounting: 2l box bounds plus
  /// every coefficient.
  std::size_t entries_per_item() const { return 2 * dimension + coefficient_count(); }
};

/// One unit of branch-and-bound work: a subbox of the unit box with the
/// Bernstein patches of the cost and of every constraint over it.
///
/// All patches live in one contiguous buffer laid out as
/// [cost | ineq_1 .. ineq_alpha | eq_1 .. eq_beta].
class Item {
 public:
  Item(Box box, std::vector<double> coefficients, std::shared_ptr<const ItemLayout> layout);
  Item(Box box, const Patch& cost, std::span<const Patch> ineqs, std::span<const Patch> eqs,
       std::shared_ptr<const ItemLayout> layout);

  const Box& box() const { return box_; }
  const ItemLayout& layout() const { return *layout_; }
  std::span<const double> coefficients() const { return coefficients_; }

  PatchView cost_patch() const;
  PatchView ineq_patch(std::size_t i) const;
  PatchView eq_patch(std::size_t j) const;

  /// Turns *this into the left child and returns the right child.
  Item split(std::size_t direction);

 private:
  Box box_;
  std::vector<double> coefficients_;
  std::shared_ptr<const ItemLayout> layout_;
};

struct ItemBounds {
  PatchBounds cost;
  std::vector<PatchBounds> ineq;
  std::vector<PatchBounds> eq;
};

enum class Feasibility { Feasible, Infeasible, Undecided };

struct SolverConfig {
  double eps = 1e-6;                        ///< optimality tolerance
  double eps_eq = 1e-6;                     ///< equality tolerance
  double delta = 0.0;                       ///< step tolerance, 0 disables
  std::size_t max_items = std::size_t{1} << 22;
  unsigned max_iterations = 28;
  unsigned thread_count = 0;                ///< 0 = hardware concurrency
  bool eps_auto = false;                    ///< eps = 1e-7 * range of initial cost patch
};

enum class SolveStatus { Optimal, Infeasible, CapReached };

const char* to_string(SolveStatus status);

/// One pass of the main loop (one subdivision direction).
struct IterationStats {
  unsigned iteration = 0;        ///< n, counts full direction cycles from 1
  std::size_t direction = 0;     ///< zero-based
  std::size_t item_count = 0;    ///< items after subdivision
  std::uint64_t estimated_bytes = 0;
  std::size_t kept_count = 0;
  double p_up = kInfinity;
  double p_lo = kInfinity;
};

struct SolverResult {
  SolveStatus status = SolveStatus::CapReached;
  double p_up = kInfinity;
  double p_lo = kInfinity;
  std::optional<Box> solution_box;  ///< original coordinates
  unsigned iterations = 0;
  double eps = 0.0;                 ///< tolerance actually used
  std::vector<IterationStats> stats;

  std::size_t peak_items() const;
  std::uint64_t peak_bytes() const;
};

/// State handed to an observer after every elimination.
struct IterationSnapshot {
  const IterationStats& stats;
  std::span<const Item> survivors;
};

using SolveObserver = std::function<void(const IterationSnapshot&)>;

/// Feasible / infeasible / undecided classification of one item's bounds.
Feasibility classify(const ItemBounds& bounds, double eps_eq);

/// Splits every item in `direction`: left child of item k lands at k, right
/// child at k + K.
std::vector<Item> subdivide_all(std::vector<Item> items, std::size_t direction,
                                unsigned thread_count = 1);

std::vector<ItemBounds> find_bounds(std::span<const Item> items, unsigned thread_count = 1);

struct CutOffResult {
  double p_up = kInfinity;
  double p_lo = kInfinity;
  std::vector<std::size_t> save;
  std::vector<std::size_t> elim;
};

/// Solution estimate, lower bound and save/eliminate partition.
CutOffResult cut_off_test(std::span<const ItemBounds> bounds);

/// Keeps exactly the items at `save` (in that order).
std::vector<Item> eliminate(std::vector<Item> items, std::span<const std::size_t> save,
                            std::span<const std::size_t> elim);

/// Bytes for `item_count` items at 4 bytes per stored entry.
std::uint64_t estimated_bytes(const ItemLayout& layout, std::size_t item_count);

/// Layout and root item (unit box) for a problem.
std::shared_ptr<const ItemLayout> make_layout(const ProblemSpec& problem);
Item make_root_item(const ProblemSpec& problem, std::shared_ptr<const ItemLayout> layout);

/// Tolerance from the initial cost patch: 1e-7 * (max B - min B).
double auto_eps(const ProblemSpec& problem);

/// Runs the constrained Bernstein branch and bound to completion.
SolverResult solve(const ProblemSpec& problem, const SolverConfig& config,
                   const SolveObserver& observer = {});

/// Maps a point of the unit box into the problem domain and back.
Point to_domain(const Box& domain, std::span<const double> u);
Point to_unit(const Box& domain, std::span<const double> x);
Box box_to_domain(const Box& domain, const Box& unit_box);

}  // namespace pcba
