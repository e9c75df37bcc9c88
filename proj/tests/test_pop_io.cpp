#include <doctest.h>

#include "pcba/pop_io.hpp"
#include "pcba/problems.hpp"
#include "support.hpp"

using namespace pcba;

namespace {

Polynomial var(std::size_t dim, std::size_t i) { return Polynomial::variable(dim, i); }

std::size_t error_line(std::string_view text) {
  try {
    parse_pop(text);
  } catch (const PopParseError& e) {
    return e.line();
  }
  return 0;
}

}  // namespace

TEST_CASE("parse minimal file") {
  const ProblemSpec p = parse_pop("dim 1\nbox -1 1\nobjective\n1 2\n");
  CHECK(p.dimension() == 1);
  CHECK(p.domain == Box({-1}, {1}));
  CHECK(p.cost == pow(var(1, 0), 2));
  CHECK(p.ineqs.empty());
  CHECK(p.eqs.empty());
  CHECK_FALSE(p.known_optimum);
}

TEST_CASE("parse blocks, comments and known point") {
  const ProblemSpec p = parse_pop(
      "# circle\n"
      "dim 2\n"
      "box -2 2   # x1\n"
      "box -2 2\n"
      "\n"
      "objective\n"
      "1 1 0\n"
      "1 0 1\n"
      "ineq\n"
      "1 0 0\n"
      "eq\n"
      "1 2 0\n"
      "1 0 2\n"
      "-1 0 0\n"
      "known -1.4142135623730951 -0.70710678118654757 -0.70710678118654757\n");
  CHECK(p.cost == var(2, 0) + var(2, 1));
  REQUIRE(p.ineqs.size() == 1);
  CHECK(p.ineqs[0] == Polynomial::constant(2, 1.0));
  REQUIRE(p.eqs.size() == 1);
  CHECK(p.eqs[0] == pow(var(2, 0), 2) + pow(var(2, 1), 2) - 1.0);
  CHECK(*p.known_optimum == -1.4142135623730951);
  CHECK(p.known_minimizer->size() == 2);
}

TEST_CASE("repeated monomials are summed") {
  const ProblemSpec p = parse_pop("dim 1\nbox 0 1\nobjective\n1 1\n2 1\n");
  CHECK(p.cost == 3.0 * var(1, 0));
}

TEST_CASE("parse errors carry line numbers") {
  CHECK(error_line("box 0 1\n") == 1);
  CHECK(error_line("dim 1\nbox 1 1\nobjective\n") == 2);
  CHECK(error_line("dim 2\nbox 0 1\nobjective\n1 0 0\n") == 3);
  CHECK(error_line("dim 1\nbox 0 1\nobjective\n1 2 3\n") == 4);
  CHECK(error_line("dim 1\nbox 0 1\nobjective\nabc 2\n") == 4);
  CHECK(error_line("dim 1\nbox 0 1\nobjective\n1x 2\n") == 4);
  CHECK(error_line("dim 1\nbox 0 1\nobjective\n1 -2\n") == 4);
  CHECK(error_line("dim 1\nbox 0 1\nobjective\n1 1\nmaximize\n") == 5);
  CHECK(error_line("dim 1\nbox 0 1\n1 1\n") == 3);
  CHECK(error_line("dim 1\nbox 0 1\nbox 0 1\n") == 3);
  CHECK(error_line("dim 1\nbox 0\n") == 2);
  CHECK(error_line("dim 1\nbox 0 1\nobjective\n1 1\nknown 1\n") == 5);
  CHECK(error_line("dim 1\nbox 0 1\n") == 2);
  CHECK(error_line("dim 0\n") == 1);
  CHECK(error_line("") == 1);
  CHECK_THROWS_WITH_AS(parse_pop("dim 1\nbox 1 1\n"),
                       doctest::Contains("lower must be strictly less than upper"), PopParseError);
}

TEST_CASE("round trip through text") {
  for (Benchmark id : kAllBenchmarks) {
    ProblemSpec p = benchmark(id);
    const ProblemSpec back = parse_pop(serialize_pop(p));
    p.name.clear();
    CHECK(back == p);
  }
  std::mt19937_64 rng(2);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    ProblemSpec p = testing::random_problem(seed);
    p.eqs.push_back(testing::random_polynomial(p.dimension(), 3, rng));
    p.name.clear();
    CHECK(parse_pop(serialize_pop(p)) == p);
  }
}
