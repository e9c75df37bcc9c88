// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "pcba/bernstein.hpp"
#include "pcba/commands.hpp"
#include "pcba/problems.hpp"
#include "pcba/solver.hpp"
#include "support.hpp"

using namespace pcba;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    pass = false;
    if (!detail.empty()) detail += "; ";
    detail += why;
  }
  void note(const std::string& what) {
    if (!detail.empty()) detail += "; ";
    detail += what;
  }
};

std::string fmt(const char* format, auto... args) {
  char buffer[256];
  std::snprintf(buffer, sizeof buffer, format, args...);
  return buffer;
}

SolverConfig bench_config() {
  SolverConfig c;
  c.eps_auto = true;
  c.eps_eq = 1e-6;
  c.max_iterations = 28;
  c.thread_count = 1;
  return c;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// 1. Benchmark optima.
Verdict benchmark_optima() {
  Verdict v;
  for (Benchmark id : kAllBenchmarks) {
    const ProblemSpec p = benchmark(id);
    const auto start = std::chrono::steady_clock::now();
    const SolverResult r = solve(p, bench_config());
    const double t = seconds_since(start);
    const bool capped_allowed = id == Benchmark::P1 || id == Benchmark::P5;
    const double allowed = capped_allowed ? 2 * r.eps : r.eps;
    const double err = r.p_up - *p.known_optimum;
    const std::string line = fmt("%s %s err=%.4g eps=%.4g it=%u t=%.3fs", p.name.c_str(),
                                 to_string(r.status), err, r.eps, r.iterations, t);
    if (!(err >= 0.0 && err <= allowed) || t >= 5.0) {
      v.fail(line);
    } else {
      v.note(line);
    }
  }
  return v;
}

// 2 and 3. Sandwich at every iteration; a survivor contains x* after every
// elimination.
std::pair<Verdict, Verdict> sandwich_and_soundness() {
  Verdict sandwich, sound;
  std::size_t iterations = 0, snapshots = 0;
  for (Benchmark id : kAllBenchmarks) {
    const ProblemSpec p = benchmark(id);
    const double opt = *p.known_optimum;
    const Point u_star = to_unit(p.domain, *p.known_minimizer);
    std::size_t misses = 0;
    const SolverResult r = solve(p, bench_config(), [&](const IterationSnapshot& s) {
      ++snapshots;
      bool found = false;
      for (const Item& item : s.survivors) {
        if (testing::box_contains(item.box(), u_star, 1e-12)) {
          found = true;
          break;
        }
      }
      if (!found) ++misses;
    });
    if (misses) sound.fail(fmt("%s: %zu eliminations lost x*", p.name.c_str(), misses));
    std::size_t bad = 0;
    double worst_lo = -INFINITY;
    for (const auto& s : r.stats) {
      ++iterations;
      if (!(s.p_lo <= opt && opt <= s.p_up + 1e-12)) ++bad;
      worst_lo = std::max(worst_lo, s.p_lo - opt);
    }
    if (bad) {
      sandwich.fail(fmt("%s: %zu of %zu passes violate p_lo <= p* <= p_up (p_lo - p* up to %.3g)",
                        p.name.c_str(), bad, r.stats.size(), worst_lo));
    }
  }
  sandwich.note(fmt("%zu passes checked", iterations));
  sound.note(fmt("%zu eliminations checked", snapshots));
  return {sandwich, sound};
}

// 4. Grid-oracle equivalence on random problems.
Verdict oracle_equivalence() {
  Verdict v;
  std::size_t checked = 0, skipped_infeasible = 0;
  double worst_ratio = 0.0, max_tie = -INFINITY;
  std::mt19937_64 rng(2024);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const ProblemSpec p = testing::random_problem(1000 + seed);
    SolverConfig config = bench_config();
    const SolverResult r = solve(p, config);
    const BruteForceResult bf = brute_force_solve(p, 401);
    if (!bf.feasible_found) {
      if (r.status != SolveStatus::Infeasible && std::isfinite(r.p_up)) {
        v.fail(fmt("%s: solver found %.6g, grid found nothing", p.name.c_str(), r.p_up));
      }
      ++skipped_infeasible;
      continue;
    }
    ++checked;
    double h = 0.0;
    for (std::size_t i = 0; i < p.dimension(); ++i) h = std::max(h, p.domain.extent(i) / 400.0);
    const double lip = testing::sampled_lipschitz(p.cost, p.domain, 2000, rng);
    const double allowed = r.eps + lip * h;
    const double diff = std::abs(r.p_up - bf.value);
    worst_ratio = std::max(worst_ratio, diff / allowed);
    if (!(diff <= allowed)) {
      const BruteForceResult fine = brute_force_solve(p, 1601);
      v.fail(fmt("%s: |p_up - grid| = %.4g > %.4g (%s; 1601-point grid gives %.4g)",
                 p.name.c_str(), diff, allowed, to_string(r.status),
                 std::abs(r.p_up - fine.value)));
    }
    // Both sides can be the same exact value computed by different arithmetic.
    const double rounding = 1e-12 * std::max(1.0, std::abs(bf.value));
    if (!(r.p_lo <= bf.value + rounding)) {
      v.fail(fmt("%s: p_lo above grid value by %.3g", p.name.c_str(), r.p_lo - bf.value));
    }
    max_tie = std::max(max_tie, r.p_lo - bf.value);
  }
  v.note(fmt("%zu compared, %zu without feasible grid points, worst |diff|/bound = %.3g, "
             "largest p_lo - grid = %.3g",
             checked, skipped_infeasible, worst_ratio, max_tie));
  return v;
}

// 5. Increasing number of random constraints.
Verdict scaling_experiment() {
  Verdict v;
  for (const char* name : {"Beale", "DixonPrice2"}) {
    const ProblemSpec base = scaling_objective(name);
    std::size_t ok = 0, total = 0;
    double slowest = 0.0;
    for (std::size_t count = 10; count <= 200; count += 10) {
      const ProblemSpec p = gen_random_constraints(base, count, 1);
      const auto start = std::chrono::steady_clock::now();
      const SolverResult r = solve(p, bench_config());
      const double t = seconds_since(start);
      slowest = std::max(slowest, t);
      ++total;
      const double err = r.p_up - *p.known_optimum;
      if (err <= r.eps && t < 10.0) {
        ++ok;
      } else if (ok + 1 == total || total == 1) {
        v.note(fmt("%s first miss at %zu constraints: %s p_up=%.6g p_lo=%.6g", name, count,
                   to_string(r.status), r.p_up, r.p_lo));
      }
    }
    if (ok != total) v.pass = false;
    v.note(fmt("%s %zu/%zu trials within eps, slowest %.3fs", name, ok, total, slowest));
  }
  return v;
}

// 6. Memory accounting.
Verdict memory_accounting() {
  Verdict v;
  auto formula = [](const ProblemSpec& p) {
    auto volume = [](const MultiIndex& n) {
      std::uint64_t v = 1;
      for (std::size_t i = 0; i < n.size(); ++i) v *= n[i] + 1;
      return v;
    };
    MultiIndex g(p.dimension()), h(p.dimension());
    for (const auto& q : p.ineqs) g = max(g, q.multi_degree());
    for (const auto& q : p.eqs) h = max(h, q.multi_degree());
    return 2 * p.dimension() + volume(p.cost.multi_degree()) + p.ineqs.size() * volume(g) +
           p.eqs.size() * volume(h);
  };
  std::size_t passes = 0;
  auto check = [&](const ProblemSpec& p, const SolverResult& r) {
    const std::uint64_t per_item = 4 * formula(p);
    std::uint64_t peak = 0;
    for (const auto& s : r.stats) {
      ++passes;
      if (s.estimated_bytes != per_item * s.item_count) {
        v.fail(fmt("%s: pass %u reports %llu bytes, formula %llu", p.name.c_str(), s.iteration,
                   static_cast<unsigned long long>(s.estimated_bytes),
                   static_cast<unsigned long long>(per_item * s.item_count)));
        break;
      }
      peak = std::max(peak, s.estimated_bytes);
    }
    if (peak != r.peak_bytes()) v.fail(p.name + ": peak_bytes is not the per-pass maximum");
  };
  for (Benchmark id : kAllBenchmarks) {
    const ProblemSpec p = benchmark(id);
    check(p, solve(p, bench_config()));
  }
  const ProblemSpec dp4 = gen_random_constraints(scaling_objective("DixonPrice4"), 200, 1);
  const auto start = std::chrono::steady_clock::now();
  const SolverResult r = solve(dp4, bench_config());
  const double t = seconds_since(start);
  check(dp4, r);
  constexpr std::uint64_t kGiB = std::uint64_t{1} << 30;
  if (!(r.peak_bytes() < kGiB)) v.fail("DixonPrice4 with 200 constraints exceeds 1 GiB");
  v.note(fmt("%zu passes match the formula; DixonPrice4/200: %s, peak %llu bytes (%zu items), "
             "%.3fs",
             passes, to_string(r.status), static_cast<unsigned long long>(r.peak_bytes()),
             r.peak_items(), t));
  return v;
}

// 7. Item-count plateau on P4.
Verdict plateau() {
  Verdict v;
  const SolverResult r = solve(benchmark(Benchmark::P4), bench_config());
  std::size_t peak_at = 0;
  for (std::size_t k = 0; k < r.stats.size(); ++k) {
    if (r.stats[k].item_count > r.stats[peak_at].item_count) peak_at = k;
  }
  const std::size_t last = r.stats.size() - 1;
  const std::size_t peak = r.stats[peak_at].item_count;
  const std::size_t final_count = r.stats[last].item_count;
  if (!(peak_at < last && final_count < peak)) v.pass = false;
  v.note(fmt("peak %zu items at pass %zu (cycle %u), final pass %zu has %zu items", peak,
             peak_at + 1, r.stats[peak_at].iteration, last + 1, final_count));
  return v;
}

// 8. Conversion and subdivision micro-oracles.
Verdict micro_oracles() {
  Verdict v;
  auto near = [](const Patch& p, const std::vector<double>& expected) {
    if (p.size() != expected.size()) return false;
    for (std::size_t k = 0; k < p.size(); ++k) {
      if (std::abs(p.coefficients()[k] - expected[k]) > 1e-12) return false;
    }
    return true;
  };
  const Polynomial x1 = Polynomial::variable(1, 0);
  const Polynomial a = Polynomial::variable(2, 0), b = Polynomial::variable(2, 1);
  if (!near(to_bernstein(x1), {0, 1})) v.fail("x patch");
  if (!near(to_bernstein(x1 * x1), {0, 0, 1})) v.fail("x^2 patch");
  if (!near(to_bernstein(a * b), {0, 0, 0, 1})) v.fail("x1 x2 patch");
  auto [l1, r1] = subdivide_patch(Patch({2}, {0, 1}), 0);
  if (!near(l1, {0, 0.5}) || !near(r1, {0.5, 1})) v.fail("halves of x");
  auto [l2, r2] = subdivide_patch(Patch({3}, {0, 0, 1}), 0);
  if (!near(l2, {0, 0, 0.25}) || !near(r2, {0.25, 0.5, 1})) v.fail("halves of x^2");
  const Polynomial q = rescale_to_unit(a * b, Box({0, 0}, {2, 3}));
  if (std::abs(evaluate(q, Point{0.5, 0.5}) - 1.5) > 1e-12) v.fail("rescaled x1 x2");

  std::mt19937_64 rng(99);
  std::size_t violations = 0;
  for (int k = 0; k < 1000; ++k) {
    const std::size_t dim = 1 + k % 3;
    const Polynomial p = testing::random_polynomial(dim, 4, rng);
    const auto bounds = patch_bounds(to_bernstein(p));
    const double value = evaluate(p, testing::random_point(Box::unit(dim), rng));
    const double tol = 8 * 2.220446049250313e-16 *
                       std::max({1.0, std::abs(bounds.min), std::abs(bounds.max)});
    if (value < bounds.min - tol || value > bounds.max + tol) ++violations;
  }
  if (violations) v.fail(fmt("%zu enclosure violations", violations));
  v.note("worked examples exact to 1e-12, 1000 enclosure pairs checked");
  return v;
}

std::string strip_timing(const std::string& csv) {
  std::istringstream in(csv);
  std::string out;
  for (std::string line; std::getline(in, line);) {
    std::vector<std::string> cells;
    std::istringstream cell_in(line);
    for (std::string cell; std::getline(cell_in, cell, ',');) cells.push_back(cell);
    if (cells.size() > 6) cells.erase(cells.begin() + 6);
    for (std::size_t k = 0; k < cells.size(); ++k) out += (k ? "," : "") + cells[k];
    out += '\n';
  }
  return out;
}

// 9. Determinism.
Verdict determinism() {
  Verdict v;
  auto bench = [](unsigned threads) {
    SolverConfig c = bench_config();
    c.thread_count = threads;
    std::ostringstream out, err;
    cmd_bench(BenchOptions{c, std::nullopt}, out, err);
    return strip_timing(out.str());
  };
  auto scaling = [](unsigned threads) {
    ScalingOptions s;
    s.objective = "Beale";
    s.seed = 11;
    s.config = bench_config();
    s.config.thread_count = threads;
    std::ostringstream out, err;
    cmd_scaling(s, out, err);
    return strip_timing(out.str());
  };
  const std::string b1 = bench(1), b1_again = bench(1), b8 = bench(8);
  const std::string s1 = scaling(1), s1_again = scaling(1), s8 = scaling(8);
  if (b1 != b1_again) v.fail("bench CSV differs between identical runs");
  if (s1 != s1_again) v.fail("scaling CSV differs between identical runs");
  if (b1 != b8) v.fail("bench CSV differs between 1 and 8 threads");
  if (s1 != s8) v.fail("scaling CSV differs between 1 and 8 threads");
  for (Benchmark id : kAllBenchmarks) {
    SolverConfig c1 = bench_config(), c8 = bench_config();
    c8.thread_count = 8;
    const auto r1 = solve(benchmark(id), c1), r8 = solve(benchmark(id), c8);
    if (r1.p_up != r8.p_up || r1.p_lo != r8.p_lo) {
      v.fail(to_string(id) + ": p_up/p_lo differ across thread counts");
    }
  }
  v.note("bench and scaling CSVs compared across repeated runs and 1 vs 8 threads");
  return v;
}

}  // namespace

int main() {
  std::vector<std::pair<int, std::function<Verdict()>>> criteria;
  criteria.emplace_back(1, benchmark_optima);
  std::pair<Verdict, Verdict> sandwich_sound;
  bool computed = false;
  auto shared = [&]() -> std::pair<Verdict, Verdict>& {
    if (!computed) sandwich_sound = sandwich_and_soundness();
    computed = true;
    return sandwich_sound;
  };
  criteria.emplace_back(2, [&] { return shared().first; });
  criteria.emplace_back(3, [&] { return shared().second; });
  criteria.emplace_back(4, oracle_equivalence);
  criteria.emplace_back(5, scaling_experiment);
  criteria.emplace_back(6, memory_accounting);
  criteria.emplace_back(7, plateau);
  criteria.emplace_back(8, micro_oracles);
  criteria.emplace_back(9, determinism);

  const char* names[] = {"",
                         "benchmark optima",
                         "sandwich property",
                         "cut-off soundness",
                         "grid-oracle equivalence",
                         "increasing constraints",
                         "memory accounting",
                         "item-count plateau",
                         "conversion/subdivision oracles",
                         "determinism"};
  int failures = 0;
  for (auto& [number, run] : criteria) {
    Verdict v;
    try {
      v = run();
    } catch (const std::exception& e) {
      v.fail(std::string("exception: ") + e.what());
    }
    if (!v.pass) ++failures;
    std::printf("criterion %d (%s): %s: %s\n", number, names[number], v.pass ? "PASS" : "FAIL",
                v.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures ? 1 : 0;
}
