#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "pcba/patch.hpp"

namespace pcba {

using Point = std::vector<double>;

/// Exponent vector of a monomial, one entry per variable.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::size_t dimension) : exponents_(dimension, 0) {}
  MultiIndex(std::initializer_list<unsigned> exponents) : exponents_(exponents) {}
  explicit MultiIndex(std::vector<unsigned> exponents)
      : exponents_(std::move(exponents)) {}

  std::size_t size() const { return exponents_.size(); }
  unsigned operator[](std::size_t i) const { return exponents_[i]; }
  unsigned& operator[](std::size_t i) { return exponents_[i]; }
  std::span<const unsigned> exponents() const { return exponents_; }

  /// Sum of the exponents.
  unsigned total() const;

  /// Componentwise `*this <= other`; both must have the same length.
  bool dominated_by(const MultiIndex& other) const;

  auto operator<=>(const MultiIndex&) const = default;

 private:
  std::vector<unsigned> exponents_;
};

/// Componentwise maximum.
MultiIndex max(const MultiIndex& a, const MultiIndex& b);

/// Patch shape N + 1 of a multi-degree N.
Shape shape_of(const MultiIndex& multi_degree);

/// Axis-aligned box with finite, strictly ordered bounds in every dimension.
class Box {
 public:
  Box(std::vector<double> lower, std::vector<double> upper);

  /// [0, 1]^dimension.
  static Box unit(std::size_t dimension);

  std::size_t dimension() const { return lower_.size(); }
  const std::vector<double>& lower() const { return lower_; }
  const std::vector<double>& upper() const { return upper_; }
  double lower(std::size_t i) const { return lower_[i]; }
  double upper(std::size_t i) const { return upper_[i]; }
  double extent(std::size_t i) const { return upper_[i] - lower_[i]; }

  /// Largest edge length.
  double width() const;
  Point center() const;
  bool contains(std::span<const double> x) const;

  bool operator==(const Box&) const = default;

 private:
  std::vector<double> lower_;
  std::vector<double> upper_;
};

/// Sparse multivariate polynomial in monomial form.
///
/// Terms with a zero coefficient are never stored, so the zero polynomial has
/// no terms, multi-degree (0, ..., 0) and degree 0.
class Polynomial {
 public:
  using Terms = std::map<MultiIndex, double>;

  explicit Polynomial(std::size_t dimension);
  Polynomial(std::size_t dimension,
             std::initializer_list<std::pair<MultiIndex, double>> terms);

  static Polynomial constant(std::size_t dimension, double value);
  /// The coordinate function x_i (zero-based i).
  static Polynomial variable(std::size_t dimension, std::size_t i);

  std::size_t dimension() const { return dimension_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Coefficient of a monomial, 0 if absent.
  double coefficient(const MultiIndex& exponent) const;

  /// Adds `coefficient * x^exponent`, dropping the term if it cancels.
  void add_term(const MultiIndex& exponent, double coefficient);

  /// Per-variable maximum exponent.
  MultiIndex multi_degree() const;
  /// Maximum total degree over the stored terms.
  unsigned degree() const;

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(double scalar);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, double s) { return a *= s; }
  friend Polynomial operator*(double s, Polynomial a) { return a *= s; }
  friend Polynomial operator+(Polynomial a, double c) {
    return a += constant(a.dimension(), c);
  }
  friend Polynomial operator-(Polynomial a, double c) {
    return a -= constant(a.dimension(), c);
  }
  friend Polynomial operator+(double c, Polynomial a) { return std::move(a) + c; }
  friend Polynomial operator-(double c, Polynomial a) { return -std::move(a) + c; }
  friend Polynomial operator-(Polynomial a) { return a *= -1.0; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);

  bool operator==(const Polynomial&) const = default;

 private:
  void require_same_dimension(const Polynomial& other) const;

  std::size_t dimension_;
  Terms terms_;
};

Polynomial pow(const Polynomial& base, unsigned exponent);

/// Sum of a_J x^J in double precision.
double evaluate(const Polynomial& p, std::span<const double> x);

/// Returns q with q(u) = p(offset + scale ⊙ u).
Polynomial affine_substitute(const Polynomial& p, std::span<const double> offset,
                             std::span<const double> scale);

/// Re-expresses p over the unit box: q(u) = p(lower + u ⊙ (upper - lower)).
Polynomial rescale_to_unit(const Polynomial& p, const Box& domain);

/// Bernstein coefficients over [0,1]^l at the polynomial's own multi-degree.
Patch to_bernstein(const Polynomial& p);

/// Bernstein coefficients over [0,1]^l at a padded shape; every entry of
/// `shape` must be at least the corresponding multi-degree + 1.
Patch to_bernstein(const Polynomial& p, const Shape& shape);

/// Binomial coefficient as a double. Exact for n <= 60; throws CapacityError
/// beyond the supported degree.
double binomial(unsigned n, unsigned k);

inline constexpr unsigned kMaxBinomialDegree = 512;

}  // namespace pcba
