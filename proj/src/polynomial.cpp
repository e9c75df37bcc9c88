#include "pcba/polynomial.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>

#include "pcba/errors.hpp"

namespace pcba {

namespace {

constexpr unsigned kExactBinomialDegree = 60;

struct BinomialTables {
  // exact[n][k] for n <= 60; C(60, 30) < 2^63.
  std::vector<std::vector<std::uint64_t>> exact;
  std::vector<std::vector<double>> approx;

  BinomialTables() {
    exact.resize(kExactBinomialDegree + 1);
    for (unsigned n = 0; n <= kExactBinomialDegree; ++n) {
      exact[n].assign(n + 1, 1);
      for (unsigned k = 1; k < n; ++k) exact[n][k] = exact[n - 1][k - 1] + exact[n - 1][k];
    }
    approx.resize(kMaxBinomialDegree + 1);
    for (unsigned n = 0; n <= kMaxBinomialDegree; ++n) {
      approx[n].assign(n + 1, 1.0);
      for (unsigned k = 1; k < n; ++k) {
        approx[n][k] = n <= kExactBinomialDegree
                           ? static_cast<double>(exact[n][k])
                           : approx[n - 1][k - 1] + approx[n - 1][k];
      }
    }
  }
};

const BinomialTables& tables() {
  static const BinomialTables t;
  return t;
}

// Coefficients of (offset + scale*u)^power in powers of u.
std::vector<double> binomial_expansion(double offset, double scale, unsigned power) {
  std::vector<double> out(power + 1);
  for (unsigned k = 0; k <= power; ++k) {
    out[k] = binomial(power, k) * std::pow(scale, k) * std::pow(offset, power - k);
  }
  return out;
}

// Sparse terms scattered into a dense row-major tensor of the given shape.
std::vector<double> dense_coefficients(const Polynomial& p, const Shape& shape) {
  const auto strides = shape_strides(shape);
  std::vector<double> dense(shape_volume(shape), 0.0);
  for (const auto& [exponent, coefficient] : p.terms()) {
    std::size_t offset = 0;
    for (std::size_t i = 0; i < exponent.size(); ++i) offset += exponent[i] * strides[i];
    dense[offset] += coefficient;
  }
  return dense;
}

Polynomial from_dense(std::size_t dimension, const Shape& shape,
                      std::span<const double> dense) {
  Polynomial out(dimension);
  MultiIndex index(dimension);
  for (std::size_t flat = 0; flat < dense.size(); ++flat) {
    std::size_t rest = flat;
    for (std::size_t i = dimension; i-- > 0;) {
      index[i] = static_cast<unsigned>(rest % shape[i]);
      rest /= shape[i];
    }
    if (dense[flat] != 0.0) out.add_term(index, dense[flat]);
  }
  return out;
}

// Applies a square matrix (row-major, extent x extent) along every fiber in
// direction `axis` of a dense tensor.
void apply_along_axis(std::vector<double>& data, const Shape& shape, std::size_t axis,
                      const std::vector<double>& matrix) {
  const std::size_t extent = shape[axis];
  const auto strides = shape_strides(shape);
  const std::size_t stride = strides[axis];
  const std::size_t outer = data.size() / (extent * stride);
  std::vector<double> fiber(extent);
  for (std::size_t o = 0; o < outer; ++o) {
    for (std::size_t inner = 0; inner < stride; ++inner) {
      const std::size_t base = o * extent * stride + inner;
      for (std::size_t i = 0; i < extent; ++i) fiber[i] = data[base + i * stride];
      for (std::size_t j = 0; j < extent; ++j) {
        double sum = 0.0;
        for (std::size_t i = 0; i < extent; ++i) sum += matrix[j * extent + i] * fiber[i];
        data[base + j * stride] = sum;
      }
    }
  }
}

}  // namespace

double binomial(unsigned n, unsigned k) {
  if (n > kMaxBinomialDegree) {
    throw CapacityError("binomial table supports degree <= " +
                        std::to_string(kMaxBinomialDegree) + ", got " +
                        std::to_string(n));
  }
  if (k > n) return 0.0;
  return tables().approx[n][k];
}

unsigned MultiIndex::total() const {
  return std::accumulate(exponents_.begin(), exponents_.end(), 0u);
}

bool MultiIndex::dominated_by(const MultiIndex& other) const {
  if (size() != other.size()) {
    throw ContractViolation("multi-index comparison needs equal lengths");
  }
  for (std::size_t i = 0; i < size(); ++i) {
    if (exponents_[i] > other.exponents_[i]) return false;
  }
  return true;
}

MultiIndex max(const MultiIndex& a, const MultiIndex& b) {
  if (a.size() != b.size()) throw ContractViolation("multi-index length mismatch");
  MultiIndex out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = std::max(a[i], b[i]);
  return out;
}

Shape shape_of(const MultiIndex& multi_degree) {
  Shape shape(multi_degree.size());
  for (std::size_t i = 0; i < shape.size(); ++i) shape[i] = multi_degree[i] + 1;
  return shape;
}

// ---------------------------------------------------------------------------
// Box

Box::Box(std::vector<double> lower, std::vector<double> upper)
    : lower_(std::move(lower)), upper_(std::move(upper)) {
  if (lower_.empty() || lower_.size() != upper_.size()) {
    throw ContractViolation("box needs matching, non-empty lower/upper bounds");
  }
  for (std::size_t i = 0; i < lower_.size(); ++i) {
    if (!std::isfinite(lower_[i]) || !std::isfinite(upper_[i]) ||
        !(lower_[i] < upper_[i])) {
      throw ContractViolation("box bound " + std::to_string(i + 1) +
                              ": lower must be strictly less than upper");
    }
  }
}

Box Box::unit(std::size_t dimension) {
  return Box(std::vector<double>(dimension, 0.0), std::vector<double>(dimension, 1.0));
}

double Box::width() const {
  double w = 0.0;
  for (std::size_t i = 0; i < dimension(); ++i) w = std::max(w, extent(i));
  return w;
}

Point Box::center() const {
  Point c(dimension());
  for (std::size_t i = 0; i < dimension(); ++i) c[i] = 0.5 * (lower_[i] + upper_[i]);
  return c;
}

bool Box::contains(std::span<const double> x) const {
  if (x.size() != dimension()) throw ContractViolation("point/box dimension mismatch");
  for (std::size_t i = 0; i < dimension(); ++i) {
    if (x[i] < lower_[i] || x[i] > upper_[i]) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Polynomial

Polynomial::Polynomial(std::size_t dimension) : dimension_(dimension) {
  if (dimension == 0) throw ContractViolation("polynomial dimension must be >= 1");
}

Polynomial::Polynomial(std::size_t dimension,
                       std::initializer_list<std::pair<MultiIndex, double>> terms)
    : Polynomial(dimension) {
  for (const auto& [exponent, coefficient] : terms) add_term(exponent, coefficient);
}

Polynomial Polynomial::constant(std::size_t dimension, double value) {
  Polynomial p(dimension);
  p.add_term(MultiIndex(dimension), value);
  return p;
}

Polynomial Polynomial::variable(std::size_t dimension, std::size_t i) {
  if (i >= dimension) throw ContractViolation("variable index out of range");
  Polynomial p(dimension);
  MultiIndex e(dimension);
  e[i] = 1;
  p.add_term(e, 1.0);
  return p;
}

double Polynomial::coefficient(const MultiIndex& exponent) const {
  auto it = terms_.find(exponent);
  return it == terms_.end() ? 0.0 : it->second;
}

void Polynomial::add_term(const MultiIndex& exponent, double coefficient) {
  if (exponent.size() != dimension_) {
    throw ContractViolation("term has " + std::to_string(exponent.size()) +
                            " exponents, polynomial dimension is " +
                            std::to_string(dimension_));
  }
  if (!std::isfinite(coefficient)) throw ContractViolation("non-finite coefficient");
  if (coefficient == 0.0) return;
  auto [it, inserted] = terms_.try_emplace(exponent, coefficient);
  if (!inserted) {
    it->second += coefficient;
    if (it->second == 0.0) terms_.erase(it);
  }
}

MultiIndex Polynomial::multi_degree() const {
  MultiIndex n(dimension_);
  for (const auto& [exponent, _] : terms_) n = max(n, exponent);
  return n;
}

unsigned Polynomial::degree() const {
  unsigned d = 0;
  for (const auto& [exponent, _] : terms_) d = std::max(d, exponent.total());
  return d;
}

void Polynomial::require_same_dimension(const Polynomial& other) const {
  if (other.dimension_ != dimension_) {
    throw ContractViolation("polynomial dimension mismatch");
  }
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  require_same_dimension(other);
  for (const auto& [exponent, coefficient] : other.terms_) add_term(exponent, coefficient);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  require_same_dimension(other);
  for (const auto& [exponent, coefficient] : other.terms_) add_term(exponent, -coefficient);
  return *this;
}

Polynomial& Polynomial::operator*=(double scalar) {
  if (scalar == 0.0) {
    terms_.clear();
    return *this;
  }
  for (auto it = terms_.begin(); it != terms_.end();) {
    it->second *= scalar;
    it = it->second == 0.0 ? terms_.erase(it) : std::next(it);
  }
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  a.require_same_dimension(b);
  Polynomial out(a.dimension());
  MultiIndex sum(a.dimension());
  for (const auto& [ea, ca] : a.terms()) {
    for (const auto& [eb, cb] : b.terms()) {
      for (std::size_t i = 0; i < sum.size(); ++i) sum[i] = ea[i] + eb[i];
      out.add_term(sum, ca * cb);
    }
  }
  return out;
}

Polynomial pow(const Polynomial& base, unsigned exponent) {
  Polynomial result = Polynomial::constant(base.dimension(), 1.0);
  Polynomial square = base;
  while (exponent > 0) {
    if (exponent & 1u) result = result * square;
    exponent >>= 1;
    if (exponent > 0) square = square * square;
  }
  return result;
}

double evaluate(const Polynomial& p, std::span<const double> x) {
  if (x.size() != p.dimension()) {
    throw ContractViolation("evaluate: point has " + std::to_string(x.size()) +
                            " coordinates, polynomial dimension is " +
                            std::to_string(p.dimension()));
  }
  double sum = 0.0;
  for (const auto& [exponent, coefficient] : p.terms()) {
    double term = coefficient;
    for (std::size_t i = 0; i < x.size(); ++i) {
      for (unsigned k = 0; k < exponent[i]; ++k) term *= x[i];
    }
    sum += term;
  }
  return sum;
}

Polynomial affine_substitute(const Polynomial& p, std::span<const double> offset,
                             std::span<const double> scale) {
  const std::size_t l = p.dimension();
  if (offset.size() != l || scale.size() != l) {
    throw ContractViolation("affine_substitute: dimension mismatch");
  }
  const Shape shape = shape_of(p.multi_degree());
  const auto strides = shape_strides(shape);
  std::vector<double> dense(shape_volume(shape), 0.0);

  // Each term expands into a tensor product of per-variable binomial rows.
  std::vector<std::vector<double>> rows(l);
  std::vector<std::size_t> index(l);
  for (const auto& [exponent, coefficient] : p.terms()) {
    for (std::size_t i = 0; i < l; ++i) {
      rows[i] = binomial_expansion(offset[i], scale[i], exponent[i]);
    }
    std::fill(index.begin(), index.end(), 0);
    while (true) {
      double value = coefficient;
      std::size_t flat = 0;
      for (std::size_t i = 0; i < l; ++i) {
        value *= rows[i][index[i]];
        flat += index[i] * strides[i];
      }
      dense[flat] += value;
      std::size_t i = l;
      while (i-- > 0) {
        if (++index[i] <= exponent[i]) break;
        index[i] = 0;
      }
      if (i == static_cast<std::size_t>(-1)) break;
    }
  }
  return from_dense(l, shape, dense);
}

Polynomial rescale_to_unit(const Polynomial& p, const Box& domain) {
  if (domain.dimension() != p.dimension()) {
    throw ContractViolation("rescale_to_unit: box/polynomial dimension mismatch");
  }
  std::vector<double> scale(domain.dimension());
  for (std::size_t i = 0; i < scale.size(); ++i) scale[i] = domain.extent(i);
  return affine_substitute(p, domain.lower(), scale);
}

Patch to_bernstein(const Polynomial& p) {
  return to_bernstein(p, shape_of(p.multi_degree()));
}

Patch to_bernstein(const Polynomial& p, const Shape& shape) {
  const MultiIndex n = p.multi_degree();
  if (shape.size() != p.dimension()) {
    throw ContractViolation("to_bernstein: shape/polynomial dimension mismatch");
  }
  for (std::size_t i = 0; i < shape.size(); ++i) {
    if (shape[i] < n[i] + 1) {
      throw ContractViolation("to_bernstein: shape smaller than multi-degree + 1");
    }
  }
  std::vector<double> data = dense_coefficients(p, shape);

  // B_j = sum_{i <= j} C(j, i) / C(deg, i) a_i, one dimension at a time.
  for (std::size_t axis = 0; axis < shape.size(); ++axis) {
    const std::size_t extent = shape[axis];
    if (extent == 1) continue;
    const auto deg = static_cast<unsigned>(extent - 1);
    std::vector<double> matrix(extent * extent, 0.0);
    for (unsigned j = 0; j <= deg; ++j) {
      for (unsigned i = 0; i <= j; ++i) {
        matrix[j * extent + i] = binomial(j, i) / binomial(deg, i);
      }
    }
    apply_along_axis(data, shape, axis, matrix);
  }
  return Patch(shape, std::move(data));
}

}  // namespace pcba
