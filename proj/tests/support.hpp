// Test-only oracles and generators.
#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "pcba/bernstein.hpp"
#include "pcba/polynomial.hpp"
#include "pcba/problems.hpp"
#include "pcba/solver.hpp"

namespace pcba::testing {

// Sum over J of b_J * prod_i C(n_i, j_i) u_i^j_i (1 - u_i)^(n_i - j_i),
// straight from the basis definition.
inline double bernstein_sum(const Patch& patch, std::span<const double> u) {
  const auto& shape = patch.shape();
  const std::size_t l = shape.size();
  std::vector<std::size_t> index(l, 0);
  double total = 0.0;
  for (double b : patch.coefficients()) {
    double basis = 1.0;
    for (std::size_t i = 0; i < l; ++i) {
      const unsigned n = static_cast<unsigned>(shape[i] - 1);
      const unsigned j = static_cast<unsigned>(index[i]);
      double c = 1.0;
      for (unsigned k = 1; k <= j; ++k) c = c * (n - j + k) / k;
      basis *= c * std::pow(u[i], j) * std::pow(1.0 - u[i], n - j);
    }
    total += b * basis;
    for (std::size_t i = l; i-- > 0;) {
      if (++index[i] < shape[i]) break;
      index[i] = 0;
    }
  }
  return total;
}

inline Point random_point(const Box& box, std::mt19937_64& rng) {
  Point x(box.dimension());
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] = std::uniform_real_distribution<double>(box.lower(i), box.upper(i))(rng);
  }
  return x;
}

// Dense random polynomial of total degree <= degree, coefficients in [-1, 1].
inline Polynomial random_polynomial(std::size_t dim, unsigned degree, std::mt19937_64& rng,
                                    double density = 1.0) {
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Polynomial p(dim);
  for (const auto& m : graded_monomials(dim, degree)) {
    if (unit(rng) <= density) p.add_term(m, coef(rng));
  }
  return p;
}

inline Box random_box(std::size_t dim, std::mt19937_64& rng) {
  std::vector<double> lo(dim), hi(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    lo[i] = std::uniform_real_distribution<double>(-2.0, 1.0)(rng);
    hi[i] = lo[i] + std::uniform_real_distribution<double>(0.5, 3.0)(rng);
  }
  return Box(lo, hi);
}

// Random POP with constraints shifted so that an interior point is strictly
// feasible: g = g_temp - g_temp(x0) - slack.
inline ProblemSpec random_problem(std::uint64_t seed, std::size_t max_dim = 3,
                                  unsigned max_degree = 4, std::size_t max_constraints = 5) {
  std::mt19937_64 rng(seed);
  const std::size_t dim = 1 + seed % max_dim;
  const Box domain = random_box(dim, rng);
  const unsigned degree = 2 + static_cast<unsigned>(rng() % (max_degree - 1));
  ProblemSpec p{"random" + std::to_string(seed), domain,
                random_polynomial(dim, degree, rng), {}, {}, std::nullopt, std::nullopt, {}};
  const Point x0 = random_point(domain, rng);
  const std::size_t count = rng() % (max_constraints + 1);
  for (std::size_t c = 0; c < count; ++c) {
    const unsigned g_degree = 1 + static_cast<unsigned>(rng() % max_degree);
    Polynomial g = random_polynomial(dim, g_degree, rng);
    const double slack = std::uniform_real_distribution<double>(0.05, 0.5)(rng);
    g -= Polynomial::constant(dim, evaluate(g, x0) + slack);
    p.ineqs.push_back(std::move(g));
  }
  return p;
}

// Max gradient norm of p over `samples` random points (central differences).
inline double sampled_lipschitz(const Polynomial& p, const Box& box, std::size_t samples,
                                std::mt19937_64& rng) {
  double best = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    Point x = random_point(box, rng);
    double norm2 = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double h = 1e-6 * box.extent(i);
      Point a = x, b = x;
      a[i] -= h;
      b[i] += h;
      const double d = (evaluate(p, b) - evaluate(p, a)) / (2 * h);
      norm2 += d * d;
    }
    best = std::max(best, std::sqrt(norm2));
  }
  return best;
}

inline bool box_contains(const Box& box, std::span<const double> x, double slack = 0.0) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] < box.lower(i) - slack || x[i] > box.upper(i) + slack) return false;
  }
  return true;
}

}  // namespace pcba::testing
