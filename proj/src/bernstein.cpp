#include "pcba/bernstein.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <string>

#include "pcba/errors.hpp"

namespace pcba {

std::size_t shape_volume(std::span<const std::size_t> shape) {
  return std::accumulate(shape.begin(), shape.end(), std::size_t{1},
                         std::multiplies<>());
}

std::vector<std::size_t> shape_strides(std::span<const std::size_t> shape) {
  std::vector<std::size_t> strides(shape.size());
  std::size_t s = 1;
  for (std::size_t i = shape.size(); i-- > 0;) {
    strides[i] = s;
    s *= shape[i];
  }
  return strides;
}

Patch::Patch(Shape shape, std::vector<double> coefficients)
    : shape_(std::move(shape)), coefficients_(std::move(coefficients)) {
  if (shape_.empty()) throw ContractViolation("patch needs at least one dimension");
  for (std::size_t extent : shape_) {
    if (extent == 0) throw ContractViolation("patch extent must be >= 1");
  }
  if (coefficients_.size() != shape_volume(shape_)) {
    throw ContractViolation("patch coefficient count " +
                            std::to_string(coefficients_.size()) +
                            " does not match shape volume " +
                            std::to_string(shape_volume(shape_)));
  }
  for (double c : coefficients_) {
    if (!std::isfinite(c)) throw ContractViolation("patch coefficient is not finite");
  }
}

Patch::Patch(Shape shape, double fill)
    : Patch(shape, std::vector<double>(shape_volume(shape), fill)) {}

double Patch::at(std::span<const std::size_t> index) const {
  if (index.size() != shape_.size()) throw ContractViolation("patch index rank mismatch");
  const auto strides = shape_strides(shape_);
  std::size_t flat = 0;
  for (std::size_t i = 0; i < index.size(); ++i) {
    if (index[i] >= shape_[i]) throw ContractViolation("patch index out of range");
    flat += index[i] * strides[i];
  }
  return coefficients_[flat];
}

PatchBounds patch_bounds(std::span<const double> coefficients) {
  if (coefficients.empty()) throw ContractViolation("patch_bounds on empty patch");
  auto [lo, hi] = std::minmax_element(coefficients.begin(), coefficients.end());
  return {*lo, *hi};
}

void subdivide_in_place(std::span<double> coefficients, std::span<double> right,
                        std::span<const std::size_t> shape, std::size_t direction) {
  if (direction >= shape.size()) {
    throw ContractViolation("subdivision direction " + std::to_string(direction + 1) +
                            " out of range 1.." + std::to_string(shape.size()));
  }
  const std::size_t extent = shape[direction];
  std::size_t stride = 1;
  for (std::size_t i = direction + 1; i < shape.size(); ++i) stride *= shape[i];
  const std::size_t block = extent * stride;
  const std::size_t outer = coefficients.size() / block;
  const std::size_t degree = extent - 1;

  // In-place recurrence: after level k, w[k] is final for the left child and
  // w[degree] is right child entry degree - k. Inner loop runs over the
  // contiguous `stride` fibers at once.
  for (std::size_t o = 0; o < outer; ++o) {
    double* w = coefficients.data() + o * block;
    double* r = right.data() + o * block;
    std::copy_n(w + degree * stride, stride, r + degree * stride);
    for (std::size_t k = 1; k <= degree; ++k) {
      for (std::size_t i = degree; i >= k; --i) {
        double* hi = w + i * stride;
        const double* lo = w + (i - 1) * stride;
        for (std::size_t s = 0; s < stride; ++s) hi[s] = 0.5 * (lo[s] + hi[s]);
      }
      std::copy_n(w + degree * stride, stride, r + (degree - k) * stride);
    }
  }
}

std::pair<Patch, Patch> subdivide_patch(const Patch& patch, std::size_t direction) {
  std::vector<double> left(patch.coefficients().begin(), patch.coefficients().end());
  std::vector<double> right(left.size());
  subdivide_in_place(left, right, patch.shape(), direction);
  return {Patch(patch.shape(), std::move(left)), Patch(patch.shape(), std::move(right))};
}

std::pair<Box, Box> subdivide_box(const Box& box, std::size_t direction) {
  if (direction >= box.dimension()) {
    throw ContractViolation("subdivision direction out of range");
  }
  const double mid = 0.5 * (box.lower(direction) + box.upper(direction));
  auto left_upper = box.upper();
  auto right_lower = box.lower();
  left_upper[direction] = mid;
  right_lower[direction] = mid;
  return {Box(box.lower(), std::move(left_upper)), Box(std::move(right_lower), box.upper())};
}

double evaluate_bernstein(PatchView patch, std::span<const double> u) {
  const auto& shape = patch.shape;
  if (u.size() != shape.size()) throw ContractViolation("evaluate_bernstein: rank mismatch");
  // Contract one axis at a time with de Casteljau evaluation, last axis first.
  std::vector<double> data(patch.coefficients.begin(), patch.coefficients.end());
  std::size_t count = data.size();
  for (std::size_t axis = shape.size(); axis-- > 0;) {
    const std::size_t extent = shape[axis];
    const std::size_t outer = count / extent;
    for (std::size_t o = 0; o < outer; ++o) {
      double* w = data.data() + o * extent;
      for (std::size_t k = 1; k < extent; ++k) {
        for (std::size_t i = 0; i + k < extent; ++i) {
          w[i] = (1.0 - u[axis]) * w[i] + u[axis] * w[i + 1];
        }
      }
      data[o] = w[0];
    }
    count = outer;
  }
  return data[0];
}

}  // namespace pcba
