#pragma once

#include <cstddef>
#include <span>
#include <utility>

#include "pcba/patch.hpp"
#include "pcba/polynomial.hpp"

namespace pcba {

/// Extreme coefficients of a patch. The polynomial's range over the patch's
/// box lies inside [min, max].
struct PatchBounds {
  double min;
  double max;

  bool operator==(const PatchBounds&) const = default;
};

PatchBounds patch_bounds(std::span<const double> coefficients);
inline PatchBounds patch_bounds(const Patch& patch) {
  return patch_bounds(patch.coefficients());
}
inline PatchBounds patch_bounds(PatchView patch) {
  return patch_bounds(patch.coefficients);
}

/// Halves a patch in `direction` (zero-based) with de Casteljau at 1/2.
///
/// On entry `coefficients` holds the parent; on exit it holds the left child
/// and `right` holds the right child. Both spans have the parent's shape.
void subdivide_in_place(std::span<double> coefficients, std::span<double> right,
                        std::span<const std::size_t> shape, std::size_t direction);

/// Left and right Bernstein patches over the two halves of the box in
/// `direction` (zero-based).
std::pair<Patch, Patch> subdivide_patch(const Patch& patch, std::size_t direction);

/// Bisects `box` at the midpoint of `direction` (zero-based).
std::pair<Box, Box> subdivide_box(const Box& box, std::size_t direction);

/// Value of the Bernstein form at a point of the unit box. Used for
/// diagnostics; the solver never evaluates patches pointwise.
double evaluate_bernstein(PatchView patch, std::span<const double> u);

}  // namespace pcba
