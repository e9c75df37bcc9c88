#include "pcba/pop_io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <system_error>
#include <vector>

namespace pcba {

PopParseError::PopParseError(std::size_t line, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}

namespace {

std::vector<std::string_view> split_words(std::string_view line) {
  std::vector<std::string_view> words;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) words.push_back(line.substr(start, i - start));
  }
  return words;
}

double parse_real(std::string_view word, std::size_t line) {
  double value = 0.0;
  const char* end = word.data() + word.size();
  auto [ptr, ec] = std::from_chars(word.data(), end, value);
  if (ec != std::errc() || ptr != end || !std::isfinite(value)) {
    throw PopParseError(line, "expected a finite number, got '" + std::string(word) + "'");
  }
  return value;
}

unsigned long parse_natural(std::string_view word, std::size_t line) {
  unsigned long value = 0;
  const char* end = word.data() + word.size();
  auto [ptr, ec] = std::from_chars(word.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw PopParseError(line, "expected a non-negative integer, got '" + std::string(word) + "'");
  }
  return value;
}

enum class Block { None, Objective, Ineq, Eq };

}  // namespace

ProblemSpec parse_pop(std::string_view text) {
  std::optional<std::size_t> dim;
  std::vector<double> lower, upper;
  std::optional<Polynomial> cost;
  std::vector<Polynomial> ineqs, eqs;
  std::optional<double> known_value;
  std::optional<Point> known_point;
  Polynomial* current = nullptr;
  Block block = Block::None;

  std::size_t line_no = 0;
  std::size_t last_line = 1;  // end-of-input errors point at the last non-blank line
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    const auto words = split_words(line);
    if (words.empty()) continue;
    last_line = line_no;
    const std::string_view head = words[0];

    if (head == "dim") {
      if (dim) throw PopParseError(line_no, "duplicate 'dim'");
      if (words.size() != 2) throw PopParseError(line_no, "'dim' takes one argument");
      const auto l = parse_natural(words[1], line_no);
      if (l < 1) throw PopParseError(line_no, "dimension must be at least 1");
      dim = l;
      continue;
    }
    if (!dim) throw PopParseError(line_no, "missing 'dim' before '" + std::string(head) + "'");
    const std::size_t l = *dim;

    if (head == "box") {
      if (cost) throw PopParseError(line_no, "'box' after 'objective'");
      if (lower.size() == l) throw PopParseError(line_no, "more than " + std::to_string(l) + " 'box' lines");
      if (words.size() != 3) throw PopParseError(line_no, "'box' takes two arguments");
      const double lo = parse_real(words[1], line_no);
      const double hi = parse_real(words[2], line_no);
      if (!(lo < hi)) {
        throw PopParseError(line_no, "lower must be strictly less than upper");
      }
      lower.push_back(lo);
      upper.push_back(hi);
      continue;
    }
    if (head == "objective" || head == "ineq" || head == "eq") {
      if (words.size() != 1) {
        throw PopParseError(line_no, "'" + std::string(head) + "' takes no arguments");
      }
      if (lower.size() != l) {
        throw PopParseError(line_no, "expected " + std::to_string(l) + " 'box' lines, got " +
                                         std::to_string(lower.size()));
      }
      if (head == "objective") {
        if (cost) throw PopParseError(line_no, "duplicate 'objective'");
        cost.emplace(l);
        current = &*cost;
        block = Block::Objective;
      } else {
        if (!cost) throw PopParseError(line_no, "'" + std::string(head) + "' before 'objective'");
        auto& list = head == "ineq" ? ineqs : eqs;
        list.emplace_back(l);
        current = &list.back();
        block = head == "ineq" ? Block::Ineq : Block::Eq;
      }
      continue;
    }
    if (head == "known") {
      if (!cost) throw PopParseError(line_no, "'known' before 'objective'");
      if (known_value) throw PopParseError(line_no, "duplicate 'known'");
      if (words.size() != l + 2) {
        throw PopParseError(line_no, "'known' takes a value and " + std::to_string(l) +
                                         " coordinates");
      }
      known_value = parse_real(words[1], line_no);
      Point x(l);
      for (std::size_t i = 0; i < l; ++i) x[i] = parse_real(words[i + 2], line_no);
      known_point = std::move(x);
      current = nullptr;
      block = Block::None;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(head[0]))) {
      throw PopParseError(line_no, "unknown directive '" + std::string(head) + "'");
    }
    // term line
    if (block == Block::None || current == nullptr) {
      throw PopParseError(line_no, "term line outside an objective/ineq/eq block");
    }
    if (words.size() != l + 1) {
      throw PopParseError(line_no, "term needs a coefficient and " + std::to_string(l) +
                                       " exponents, got " + std::to_string(words.size() - 1) +
                                       " exponents");
    }
    const double coefficient = parse_real(words[0], line_no);
    MultiIndex exponent(l);
    for (std::size_t i = 0; i < l; ++i) {
      const auto e = parse_natural(words[i + 1], line_no);
      if (e > kMaxBinomialDegree) throw PopParseError(line_no, "exponent too large");
      exponent[i] = static_cast<unsigned>(e);
    }
    current->add_term(exponent, coefficient);
  }

  if (!dim) throw PopParseError(last_line, "missing 'dim'");
  if (lower.size() != *dim) {
    throw PopParseError(last_line, "expected " + std::to_string(*dim) + " 'box' lines, got " +
                                     std::to_string(lower.size()));
  }
  if (!cost) throw PopParseError(last_line, "missing 'objective'");

  ProblemSpec problem{"", Box(std::move(lower), std::move(upper)), std::move(*cost),
                      std::move(ineqs), std::move(eqs), known_value, known_point, {}};
  return problem;
}

namespace {

void append_real(std::string& out, double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  out += buffer;
}

void append_terms(std::string& out, const Polynomial& p) {
  for (const auto& [exponent, coefficient] : p.terms()) {
    append_real(out, coefficient);
    for (std::size_t i = 0; i < exponent.size(); ++i) {
      out += ' ';
      out += std::to_string(exponent[i]);
    }
    out += '\n';
  }
}

}  // namespace

std::string serialize_pop(const ProblemSpec& problem) {
  problem.validate();
  std::string out;
  if (!problem.name.empty()) out += "# " + problem.name + "\n";
  out += "dim " + std::to_string(problem.dimension()) + "\n";
  for (std::size_t i = 0; i < problem.dimension(); ++i) {
    out += "box ";
    append_real(out, problem.domain.lower(i));
    out += ' ';
    append_real(out, problem.domain.upper(i));
    out += '\n';
  }
  out += "objective\n";
  append_terms(out, problem.cost);
  for (const auto& g : problem.ineqs) {
    out += "ineq\n";
    append_terms(out, g);
  }
  for (const auto& h : problem.eqs) {
    out += "eq\n";
    append_terms(out, h);
  }
  if (problem.known_optimum && problem.known_minimizer) {
    out += "known ";
    append_real(out, *problem.known_optimum);
    for (double x : *problem.known_minimizer) {
      out += ' ';
      append_real(out, x);
    }
    out += '\n';
  }
  return out;
}

ProblemSpec read_pop_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_pop(buffer.str());
}

void write_pop_file(const std::string& path, const ProblemSpec& problem) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << serialize_pop(problem);
  if (!out) throw std::runtime_error("error writing '" + path + "'");
}

}  // namespace pcba
