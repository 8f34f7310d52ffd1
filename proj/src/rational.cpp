#include "subprob/rational.hpp"

#include <cctype>

namespace subprob {

namespace {

using boost::multiprecision::cpp_int;

std::string position_prefix(std::size_t line, std::size_t column) {
  if (line == 0) return "column " + std::to_string(column) + ": ";
  return std::to_string(line) + ":" + std::to_string(column) + ": ";
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

cpp_int digits_to_int(std::string_view s) {
  cpp_int value = 0;
  for (char c : s) value = value * 10 + (c - '0');
  return value;
}

}  // namespace

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& what)
    : std::runtime_error(position_prefix(line, column) + what),
      line_(line),
      column_(column),
      detail_(what) {}

ParseError ParseError::relocated(std::size_t line, std::size_t offset) const {
  return ParseError(line, column_ + offset, detail_);
}

Rational parse_rational(std::string_view text) {
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    auto num = text.substr(0, slash);
    auto den = text.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) {
      throw std::invalid_argument("malformed fraction '" + std::string(text) + "'");
    }
    cpp_int d = digits_to_int(den);
    if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    return Rational(digits_to_int(num), d);
  }
  auto dot = text.find('.');
  auto whole = text.substr(0, dot);
  std::string_view frac = dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
  bool ok = dot == std::string_view::npos ? all_digits(whole)
                                          : (whole.empty() || all_digits(whole)) && all_digits(frac);
  if (!ok) throw std::invalid_argument("malformed number '" + std::string(text) + "'");
  cpp_int scale = 1;
  for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
  cpp_int numerator = (whole.empty() ? cpp_int(0) : digits_to_int(whole)) * scale;
  if (!frac.empty()) numerator += digits_to_int(frac);
  return Rational(numerator, scale);
}

std::string format_rational(const Rational& value) {
  const auto& num = boost::multiprecision::numerator(value);
  const auto& den = boost::multiprecision::denominator(value);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

double to_double(const Rational& value) { return value.convert_to<double>(); }

}  // namespace subprob
