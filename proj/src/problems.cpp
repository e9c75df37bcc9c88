#include "pcba/problems.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <string>

#include "pcba/errors.hpp"
#include "pcba/solver.hpp"

namespace pcba {

void ProblemSpec::validate() const {
  const std::size_t l = dimension();
  auto check = [l](const Polynomial& p, const char* what) {
    if (p.dimension() != l) {
      throw ContractViolation(std::string(what) + " polynomial has dimension " +
                              std::to_string(p.dimension()) + ", domain has " +
                              std::to_string(l));
    }
  };
  check(cost, "cost");
  for (const auto& g : ineqs) check(g, "inequality");
  for (const auto& h : eqs) check(h, "equality");
  if (known_minimizer && known_minimizer->size() != l) {
    throw ContractViolation("known minimizer has the wrong dimension");
  }
  for (const auto& x : other_minimizers) {
    if (x.size() != l) throw ContractViolation("minimizer has the wrong dimension");
  }
}

double constraint_violation(const ProblemSpec& problem, std::span<const double> x) {
  double worst = 0.0;
  for (const auto& g : problem.ineqs) worst = std::max(worst, evaluate(g, x));
  for (const auto& h : problem.eqs) worst = std::max(worst, std::abs(evaluate(h, x)));
  return worst;
}

// ---------------------------------------------------------------------------
// Benchmarks

namespace {

struct Vars {
  std::size_t dim;
  Polynomial operator[](std::size_t i) const { return Polynomial::variable(dim, i - 1); }
  Polynomial c(double value) const { return Polynomial::constant(dim, value); }
};

ProblemSpec make(std::string name, Box domain, Polynomial cost) {
  return ProblemSpec{std::move(name), std::move(domain), std::move(cost), {}, {},
                     std::nullopt, std::nullopt, {}};
}

Box cube(std::size_t dim, double lo, double hi) {
  return Box(std::vector<double>(dim, lo), std::vector<double>(dim, hi));
}

ProblemSpec p1() {
  const Vars x{2};
  auto p = make("P1", Box({0, 0}, {3, 4}), -x[1] - x[2]);
  p.ineqs = {-2 * pow(x[1], 4) + 8 * pow(x[1], 3) - 8 * pow(x[1], 2) + x[2] - 2.0,
             -4 * pow(x[1], 4) + 32 * pow(x[1], 3) - 88 * pow(x[1], 2) + 96 * x[1] + x[2] -
                 36.0};
  p.known_optimum = -5.5080132636;
  p.known_minimizer = Point{2.3295201981, 3.1784930655};
  return p;
}

ProblemSpec p2() {
  const Vars x{2};
  auto p = make("P2", Box({0, 0}, {1, 1}),
                658500 * pow(x[1], 3) + 68121 * pow(x[1], 2) + 2349 * x[1] +
                    1000000 * pow(x[2], 3) - 600000 * pow(x[2], 2) + 120000 * x[2] - 7973.0);
  p.ineqs = {-7569 * pow(x[1], 2) - 1392 * x[1] - 10000 * pow(x[2], 2) + 1000 * x[2] + 11.0,
             7569 * pow(x[1], 2) + 1218 * x[1] + 10000 * pow(x[2], 2) - 1000 * x[2] - 8.81};
  p.known_optimum = -6961.8138816446;
  p.known_minimizer = Point{0.0125862069, 0.0084296079};
  return p;
}

ProblemSpec p3() {
  const Vars x{2};
  auto p = make("P3", cube(2, -10, 10), x[1]);
  p.ineqs = {pow(x[1], 2) - x[2], x[2] - pow(x[1], 2) * (x[1] - 2.0) + 1e-5};
  p.known_optimum = 3.0000011115;
  p.known_minimizer = Point{3.0000011115, 9.0000066709};
  return p;
}

ProblemSpec p4() {
  const Vars x{3};
  auto p = make("P4", Box({0, 0, 0}, {2, 10, 3}), -2 * x[1] + x[2] - x[3]);
  // -x'A'Ax + 2y'Ax - |y|^2 + |b - z|^2 / 4  ==  -|Ax - y|^2 + |b - z|^2 / 4
  const Polynomial ax[3] = {x[3], -x[2], -2 * x[1] + x[2] - x[3]};
  const double y[3] = {1.5, -0.5, -5};
  const double b[3] = {3, 0, -4};
  const double z[3] = {0, -1, -6};
  Polynomial g3 = x.c(0.0);
  double bz = 0.0;
  for (int k = 0; k < 3; ++k) {
    g3 -= pow(ax[k] - y[k], 2);
    bz += (b[k] - z[k]) * (b[k] - z[k]);
  }
  g3 += x.c(0.25 * bz);
  p.ineqs = {x[1] + x[2] + x[3] - 4.0, 3 * x[2] + x[3] - 6.0, g3};
  p.known_optimum = -4.0;
  p.known_minimizer = Point{0.5, 0.0, 3.0};
  return p;
}

ProblemSpec p5() {
  const Vars x{3};
  auto p = make("P5", cube(3, -5, 5), x[3]);
  const Polynomial f1 =
      2 * pow(x[1], 2) + 4 * x[1] * x[2] - 42 * x[1] + 4 * pow(x[1], 3);
  // Second pair uses the x2 partial-derivative form; with the x1 form the
  // published minimizer is infeasible.
  const Polynomial f2 =
      2 * pow(x[1], 2) + 4 * x[1] * x[2] - 26 * x[2] + 4 * pow(x[2], 3);
  p.ineqs = {f1 - x[3] - 14.0, -f1 - x[3] + 14.0, f2 - x[3] - 22.0, -f2 - x[3] + 22.0};
  p.known_optimum = 0.0;
  p.known_minimizer = Point{-0.3050690380, -0.9133455177, 0.0};
  return p;
}

ProblemSpec p6() {
  const Vars x{4};
  auto p = make("P6", Box({1, 0.625, 47.5, 90}, {1.375, 1, 52.5, 112}),
                0.6224 * x[3] * x[4] + 1.7781 * x[2] * pow(x[3], 2) +
                    3.1661 * pow(x[1], 2) * x[4] + 19.84 * x[1] * x[3]);
  constexpr double pi = std::numbers::pi;
  p.ineqs = {-x[1] + 0.0193 * x[3], -x[2] + 0.00954 * x[3],
             -pi * pow(x[3], 2) * x[4] - (4.0 / 3.0) * pi * pow(x[3], 3) + 750.1728,
             x[4] - 240.0};
  p.known_optimum = 6395.5078;
  p.known_minimizer = Point{1.0, 0.625, 47.5, 90.0};
  return p;
}

ProblemSpec p7() {
  const Vars x{4};
  auto p = make("P7", cube(4, 0, 5), x[4]);
  p.eqs = {pow(x[1], 4) * pow(x[2], 4) - pow(x[1], 4) - pow(x[2], 4) * x[3]};
  p.ineqs = {1.4 - 0.25 * x[4] - x[1], -1.4 - 0.25 * x[4] + x[1],
             1.5 - 0.2 * x[4] - x[2],  -1.5 - 0.2 * x[4] + x[2],
             0.8 - 0.2 * x[4] - x[3],  -0.8 - 0.2 * x[4] + x[3]};
  p.known_optimum = 1.0898639714;
  p.known_minimizer = Point{1.1275340071, 1.2820272057, 1.0179727943, 1.0898639714};
  return p;
}

ProblemSpec p8() {
  const Vars x{4};
  // 27.264 = 54.528 / 2 reproduces the published optimum at the published
  // minimizer.
  auto p = make("P8", Box({3, 2, 0.125, 0.25}, {20, 15, 0.75, 1.25}),
                54.528 * x[2] * x[4] + 27.264 * x[1] * x[3] - 54.528 * x[3] * x[4]);
  const Polynomial i = 6 * pow(x[1], 2) * x[2] * x[3] - 12 * x[1] * x[2] * pow(x[3], 2) +
                       8 * x[2] * pow(x[3], 3) + pow(x[1], 3) * x[4] -
                       6 * pow(x[1], 2) * x[3] * x[4] + 12 * x[1] * pow(x[3], 2) * x[4] -
                       8 * pow(x[3], 3) * x[4];
  p.ineqs = {61.01627586 - i,
             8 * x[1] - i,
             x[1] * x[2] * x[4] - x[2] * pow(x[4], 2) + pow(x[1], 2) * x[3] +
                 x[3] * pow(x[4], 2) - 2 * x[1] * x[3] * x[4] - 3.5 * x[3] * i,
             x[1] - 3 * x[2],
             2 * x[2] - x[1],
             x[3] - 1.5 * x[4],
             0.5 * x[4] - x[3]};
  p.known_optimum = 42.4440570797;
  p.known_minimizer = Point{4.9542421008, 2.0, 0.125, 0.25};
  return p;
}

}  // namespace

std::string to_string(Benchmark id) {
  return "P" + std::to_string(static_cast<int>(id) + 1);
}

std::optional<Benchmark> parse_benchmark(std::string_view name) {
  if (name.size() == 2 && (name[0] == 'P' || name[0] == 'p') && name[1] >= '1' &&
      name[1] <= '8') {
    return static_cast<Benchmark>(name[1] - '1');
  }
  return std::nullopt;
}

ProblemSpec benchmark(Benchmark id) {
  switch (id) {
    case Benchmark::P1: return p1();
    case Benchmark::P2: return p2();
    case Benchmark::P3: return p3();
    case Benchmark::P4: return p4();
    case Benchmark::P5: return p5();
    case Benchmark::P6: return p6();
    case Benchmark::P7: return p7();
    case Benchmark::P8: return p8();
  }
  throw ContractViolation("unknown benchmark");
}

// ---------------------------------------------------------------------------
// Scaling objectives

ProblemSpec scaling_objective(ScalingObjective objective, unsigned dixon_price_dimension) {
  switch (objective) {
    case ScalingObjective::EVD: {
      const Vars x{2};
      auto p = make("EVD", cube(2, -100, 100),
                    pow(pow(x[1], 2) + x[2] - 10.0, 2) + pow(x[1] + pow(x[2], 2) - 7.0, 2) +
                        pow(pow(x[1], 2) + pow(x[2], 3) - 1.0, 2));
      p.known_optimum = 1.712780354862203;
      p.known_minimizer = Point{3.4091868221900611, -2.1714330362840049};
      return p;
    }
    case ScalingObjective::Powell: {
      const Vars x{4};
      auto p = make("Powell", cube(4, -10, 10),
                    pow(x[1] + 10 * x[2], 2) + 5 * pow(x[3] - x[4], 2) +
                        pow(x[2] - 2 * x[3], 4) + 10 * pow(x[1] - x[4], 4));
      p.known_optimum = 0.0;
      p.known_minimizer = Point(4, 0.0);
      return p;
    }
    case ScalingObjective::Wood: {
      const Vars x{4};
      auto p = make("Wood", cube(4, -10, 10),
                    pow(100 * (x[2] - pow(x[1], 2)), 2) + pow(1.0 - x[1], 2) +
                        90 * pow(x[4] - pow(x[3], 2), 2) + pow(1.0 - x[3], 2) +
                        10.1 * (pow(x[2] - 1.0, 2) + pow(x[4] - 1.0, 2)) +
                        19.8 * (x[2] - 1.0) * (x[4] - 1.0));
      p.known_optimum = 0.0;
      p.known_minimizer = Point(4, 1.0);
      return p;
    }
    case ScalingObjective::DixonPrice: {
      const unsigned d = dixon_price_dimension;
      if (d < 2 || d > 4) throw ContractViolation("Dixon-Price dimension must be 2, 3 or 4");
      const Vars x{d};
      Polynomial cost = pow(x[1] - 1.0, 2);
      for (unsigned i = 2; i <= d; ++i) {
        cost += static_cast<double>(i) * pow(2 * pow(x[i], 2) - x[i - 1], 2);
      }
      auto p = make("DixonPrice" + std::to_string(d), cube(d, -10, 10), cost);
      Point xs(d);
      for (unsigned i = 1; i <= d; ++i) {
        const double two_i = std::ldexp(1.0, static_cast<int>(i));
        xs[i - 1] = std::pow(2.0, -(two_i - 2.0) / two_i);
      }
      p.known_optimum = 0.0;
      p.known_minimizer = xs;
      return p;
    }
    case ScalingObjective::Beale: {
      const Vars x{2};
      auto p = make("Beale", cube(2, -10, 10),
                    pow(x[1] * x[2] - x[1] + 1.5, 2) +
                        pow(x[1] * pow(x[2], 2) - x[1] + 2.25, 2) +
                        pow(x[1] * pow(x[2], 3) - x[1] + 2.625, 2));
      p.known_optimum = 0.0;
      p.known_minimizer = Point{3.0, 0.5};
      return p;
    }
    case ScalingObjective::Bukin02: {
      const Vars x{2};
      auto p = make("Bukin02", Box({-15, -3}, {-5, 3}),
                    100 * (pow(x[2], 2) - 0.01 * pow(x[1], 2) + 1.0) +
                        0.01 * pow(x[1] + 10.0, 2));
      p.known_optimum = -124.75;
      p.known_minimizer = Point{-15.0, 0.0};
      return p;
    }
    case ScalingObjective::DeckkersAarts: {
      const Vars x{2};
      const Polynomial r2 = pow(x[1], 2) + pow(x[2], 2);
      auto p = make("DeckkersAarts", cube(2, -20, 20),
                    1e5 * pow(x[1], 2) + pow(x[2], 2) - pow(r2, 2) + 1e-5 * pow(r2, 4));
      // Stationary point of t - t^2 + 1e-5 t^4 at t = x2^2.
      constexpr double x2 = 14.945112151891958;
      p.known_optimum = -24776.51834231769;
      p.known_minimizer = Point{0.0, x2};
      p.other_minimizers = {Point{0.0, -x2}};
      return p;
    }
  }
  throw ContractViolation("unknown scaling objective");
}

ProblemSpec scaling_objective(std::string_view name) {
  std::string key;
  for (char ch : name) {
    if (ch != '-' && ch != '_' && ch != ' ') {
      key += static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    }
  }
  if (key == "evd" || key == "elattarvidyasagardutta") return scaling_objective(ScalingObjective::EVD);
  if (key == "powell") return scaling_objective(ScalingObjective::Powell);
  if (key == "wood") return scaling_objective(ScalingObjective::Wood);
  if (key == "beale") return scaling_objective(ScalingObjective::Beale);
  if (key == "bukin02") return scaling_objective(ScalingObjective::Bukin02);
  if (key == "deckkersaarts" || key == "da") {
    return scaling_objective(ScalingObjective::DeckkersAarts);
  }
  for (const std::string prefix : {"dixonprice", "dp"}) {
    if (key.rfind(prefix, 0) == 0) {
      const std::string rest = key.substr(prefix.size());
      if (rest.empty()) return scaling_objective(ScalingObjective::DixonPrice, 2);
      if (rest.size() == 1 || (rest.size() == 2 && rest[1] == 'd')) {
        return scaling_objective(ScalingObjective::DixonPrice,
                                 static_cast<unsigned>(rest[0] - '0'));
      }
    }
  }
  throw ContractViolation("unknown scaling objective '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------
// Random constraints

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double SplitMix64::uniform() {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

namespace {

void append_with_total(std::vector<MultiIndex>& out, MultiIndex& current, std::size_t var,
                       unsigned remaining) {
  if (var + 1 == current.size()) {
    current[var] = remaining;
    out.push_back(current);
    return;
  }
  for (unsigned e = remaining + 1; e-- > 0;) {
    current[var] = e;
    append_with_total(out, current, var + 1, remaining - e);
  }
  current[var] = 0;
}

}  // namespace

std::vector<MultiIndex> graded_monomials(std::size_t dimension, unsigned max_degree) {
  std::vector<MultiIndex> out;
  MultiIndex current(dimension);
  for (unsigned d = 0; d <= max_degree; ++d) append_with_total(out, current, 0, d);
  return out;
}

ProblemSpec gen_random_constraints(const ProblemSpec& base, std::size_t count,
                                   std::uint64_t seed) {
  if (!base.known_minimizer) {
    throw ContractViolation("gen_random_constraints needs a known minimizer");
  }
  if (count < 1) throw ContractViolation("gen_random_constraints needs count >= 1");
  const std::size_t l = base.dimension();
  SplitMix64 rng(seed);

  ProblemSpec out = base;
  if (!base.other_minimizers.empty()) {
    const std::size_t options = base.other_minimizers.size() + 1;
    const std::size_t pick = rng.next() % options;
    if (pick > 0) {
      out.other_minimizers[pick - 1] = *base.known_minimizer;
      out.known_minimizer = base.other_minimizers[pick - 1];
    }
  }
  const Point& anchor = *out.known_minimizer;

  // u = (x - lower) / extent
  std::vector<double> offset(l), scale(l);
  for (std::size_t i = 0; i < l; ++i) {
    scale[i] = 1.0 / base.domain.extent(i);
    offset[i] = -base.domain.lower(i) * scale[i];
  }
  const auto monomials = graded_monomials(l, 2);
  for (std::size_t c = 0; c < count; ++c) {
    Polynomial unit_g(l);
    for (const auto& m : monomials) unit_g.add_term(m, rng.uniform(-5.0, 5.0));
    Polynomial g = affine_substitute(unit_g, offset, scale);
    g -= Polynomial::constant(l, evaluate(g, anchor));
    out.ineqs.push_back(std::move(g));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Planning POP

ProblemSpec gen_planning_pop(std::span<const std::pair<double, double>> waypoints,
                             const std::pair<Polynomial, Polynomial>& endpoint,
                             std::vector<Polynomial> obstacle_constraints) {
  if (waypoints.empty()) throw ContractViolation("planning POP needs at least one waypoint");
  const auto& [ex, ey] = endpoint;
  if (ex.dimension() != 2 || ey.dimension() != 2) {
    throw ContractViolation("endpoint map must be a polynomial in 2 parameters");
  }
  if (ex.degree() > 10 || ey.degree() > 10) {
    throw ContractViolation("endpoint map degree must be <= 10");
  }
  Polynomial cost = Polynomial::constant(2, 1.0);
  for (const auto& [wx, wy] : waypoints) {
    cost = cost * (pow(ex - wx, 2) + pow(ey - wy, 2));
  }
  ProblemSpec p = make("planning", Box({0.0, -1.0}, {1.0, 1.0}), std::move(cost));
  p.ineqs = std::move(obstacle_constraints);
  p.validate();
  return p;
}

// ---------------------------------------------------------------------------
// Grid oracle

namespace {

// Dense monomial coefficients, evaluated line by line along the last axis.
class GridPolynomial {
 public:
  explicit GridPolynomial(const Polynomial& p) : shape_(shape_of(p.multi_degree())) {
    dense_.assign(shape_volume(shape_), 0.0);
    const auto strides = shape_strides(shape_);
    for (const auto& [e, c] : p.terms()) {
      std::size_t flat = 0;
      for (std::size_t i = 0; i < e.size(); ++i) flat += e[i] * strides[i];
      dense_[flat] = c;
    }
    line_.assign(shape_.back(), 0.0);
  }

  // Fixes every coordinate but the last.
  void set_prefix(std::span<const double> prefix) {
    const std::size_t inner = shape_.back();
    std::fill(line_.begin(), line_.end(), 0.0);
    const std::size_t l = shape_.size();
    std::vector<std::size_t> index(l - 1, 0);
    for (std::size_t block = 0; block * inner < dense_.size(); ++block) {
      double weight = 1.0;
      for (std::size_t i = 0; i + 1 < l; ++i) weight *= std::pow(prefix[i], index[i]);
      if (weight != 0.0) {
        for (std::size_t k = 0; k < inner; ++k) line_[k] += weight * dense_[block * inner + k];
      }
      for (std::size_t i = l - 1; i-- > 0;) {
        if (++index[i] < shape_[i]) break;
        index[i] = 0;
      }
    }
  }

  double at(double last) const {
    double v = 0.0;
    for (std::size_t k = line_.size(); k-- > 0;) v = v * last + line_[k];
    return v;
  }

 private:
  Shape shape_;
  std::vector<double> dense_;
  std::vector<double> line_;
};

}  // namespace

BruteForceResult brute_force_solve(const ProblemSpec& problem, std::size_t points_per_dim,
                                   double eq_tolerance) {
  if (points_per_dim < 2) throw ContractViolation("brute_force_solve needs >= 2 points per axis");
  problem.validate();
  const std::size_t l = problem.dimension();
  std::vector<std::vector<double>> axes(l);
  for (std::size_t i = 0; i < l; ++i) {
    axes[i].resize(points_per_dim);
    for (std::size_t k = 0; k < points_per_dim; ++k) {
      axes[i][k] = problem.domain.lower(i) +
                   problem.domain.extent(i) * static_cast<double>(k) /
                       static_cast<double>(points_per_dim - 1);
    }
    axes[i].back() = problem.domain.upper(i);
  }

  GridPolynomial cost(problem.cost);
  std::vector<GridPolynomial> ineqs, eqs;
  for (const auto& g : problem.ineqs) ineqs.emplace_back(g);
  for (const auto& h : problem.eqs) eqs.emplace_back(h);

  BruteForceResult best;
  std::vector<std::size_t> index(l - 1, 0);
  std::vector<double> prefix(l - 1);
  const auto& last_axis = axes[l - 1];
  while (true) {
    for (std::size_t i = 0; i + 1 < l; ++i) prefix[i] = axes[i][index[i]];
    cost.set_prefix(prefix);
    bool constraints_ready = false;
    for (std::size_t k = 0; k < last_axis.size(); ++k) {
      const double value = cost.at(last_axis[k]);
      if (!(value < best.value)) continue;
      if (!constraints_ready) {
        for (auto& g : ineqs) g.set_prefix(prefix);
        for (auto& h : eqs) h.set_prefix(prefix);
        constraints_ready = true;
      }
      const double t = last_axis[k];
      const bool ok =
          std::all_of(ineqs.begin(), ineqs.end(), [t](const GridPolynomial& g) { return g.at(t) <= 1e-9; }) &&
          std::all_of(eqs.begin(), eqs.end(), [t, eq_tolerance](const GridPolynomial& h) {
            return std::abs(h.at(t)) <= eq_tolerance;
          });
      if (ok) {
        best.value = value;
        best.feasible_found = true;
        best.point = prefix;
        best.point.push_back(t);
      }
    }
    std::size_t i = l - 1;
    while (i-- > 0) {
      if (++index[i] < points_per_dim) break;
      index[i] = 0;
    }
    if (i == static_cast<std::size_t>(-1)) break;
  }
  return best;
}

}  // namespace pcba
