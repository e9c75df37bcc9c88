#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace pcba {

/// Extent of a patch along each dimension (multi-degree + 1).
using Shape = std::vector<std::size_t>;

/// Number of entries in a dense tensor with the given shape.
std::size_t shape_volume(std::span<const std::size_t> shape);

/// Row-major strides; the last dimension is contiguous.
std::vector<std::size_t> shape_strides(std::span<const std::size_t> shape);

/// Non-owning view of a patch living inside some larger buffer.
struct PatchView {
  std::span<const std::size_t> shape;
  std::span<const double> coefficients;
};

/// Dense tensor of Bernstein coefficients of one polynomial over one box.
///
/// Storage is row-major with strides derived from the shape. Every entry is
/// finite; construction rejects NaN and infinities.
class Patch {
 public:
  Patch(Shape shape, std::vector<double> coefficients);
  Patch(Shape shape, double fill);

  const Shape& shape() const { return shape_; }
  std::size_t dimension() const { return shape_.size(); }
  std::size_t size() const { return coefficients_.size(); }

  std::span<const double> coefficients() const { return coefficients_; }

  double at(std::span<const std::size_t> index) const;

  PatchView view() const { return {shape_, coefficients_}; }

  bool operator==(const Patch&) const = default;

 private:
  Shape shape_;
  std::vector<double> coefficients_;
};

}  // namespace pcba
