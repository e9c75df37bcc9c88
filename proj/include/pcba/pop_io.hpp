#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "pcba/problems.hpp"

namespace pcba {

/// Malformed problem text. what() starts with "line N: ".
class PopParseError : public std::runtime_error {
 public:
  PopParseError(std::size_t line, const std::string& message);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Parses the line-oriented problem format:
///
///   dim <l>
///   box <lo> <hi>            (exactly l lines)
///   objective
///   <coeff> <e1> ... <el>    (term lines)
///   ineq | eq                (zero or more blocks of term lines)
///   known <value> <x1> ... <xl>
///
/// '#' starts a comment; blank lines are ignored.
ProblemSpec parse_pop(std::string_view text);

/// Writes `problem` in the same format with round-trip precision.
std::string serialize_pop(const ProblemSpec& problem);

ProblemSpec read_pop_file(const std::string& path);
void write_pop_file(const std::string& path, const ProblemSpec& problem);

}  // namespace pcba
