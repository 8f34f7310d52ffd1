#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace subprob {

// Exact probabilities. Arbitrary precision so that set equality stays
// decidable no matter how long the decimal literals in an input file are.
using Rational = boost::multiprecision::cpp_rational;

// Raised by every text parser in the library. Line and column are 1-based;
// line is 0 when the input was a single expression rather than a file.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what);

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  // The message without the position prefix.
  const std::string& detail() const noexcept { return detail_; }

  // Same error relocated to a line of a file, column shifted by `offset`.
  ParseError relocated(std::size_t line, std::size_t offset) const;

 private:
  std::size_t line_;
  std::size_t column_;
  std::string detail_;
};

// Accepts "3", "0.95", ".5" and "p/q". No sign, no exponent.
// Throws std::invalid_argument on malformed text.
Rational parse_rational(std::string_view text);

// "0", "1", "3/5". Round-trips through parse_rational.
std::string format_rational(const Rational& value);

double to_double(const Rational& value);

}  // namespace subprob
