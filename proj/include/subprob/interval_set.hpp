#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "subprob/rational.hpp"

namespace subprob {

struct Interval {
  Rational lo;
  Rational hi;

  friend bool operator==(const Interval&, const Interval&) = default;
};

// A finite union of closed subintervals of [0,1] with exact endpoints.
//
// Always held in canonical form: components sorted by `lo`, pairwise
// disjoint and separated by a gap (two closed intervals that touch are
// merged), a point {c} stored as [c,c], the empty set as no components.
// Two sets are equal as sets iff their canonical forms are equal, so the
// defaulted == is set equality.
//
// Open and half-open intervals are not representable.
class UnitIntervalSet {
 public:
  // The empty set.
  UnitIntervalSet() = default;

  // Throws std::domain_error if any part has lo > hi or leaves [0,1].
  static UnitIntervalSet normalize(std::vector<Interval> parts);
  static UnitIntervalSet point(const Rational& c);
  static UnitIntervalSet closed(const Rational& lo, const Rational& hi);
  // [0,1]
  static UnitIntervalSet unit();

  const std::vector<Interval>& components() const noexcept { return parts_; }
  bool is_empty() const noexcept { return parts_.empty(); }
  // The point c if the set is exactly {c}.
  std::optional<Rational> singleton() const;
  // Requires 0 <= x <= 1 (std::domain_error otherwise).
  bool contains(const Rational& x) const;

  // Throw std::domain_error on the empty set.
  const Rational& min() const;
  const Rational& max() const;

  friend bool operator==(const UnitIntervalSet&, const UnitIntervalSet&) = default;

 private:
  explicit UnitIntervalSet(std::vector<Interval> canonical) : parts_(std::move(canonical)) {}

  friend UnitIntervalSet unite(const UnitIntervalSet&, const UnitIntervalSet&);
  friend UnitIntervalSet intersect(const UnitIntervalSet&, const UnitIntervalSet&);
  friend UnitIntervalSet one_minus(const UnitIntervalSet&);

  std::vector<Interval> parts_;
};

UnitIntervalSet unite(const UnitIntervalSet& v, const UnitIntervalSet& w);
UnitIntervalSet intersect(const UnitIntervalSet& v, const UnitIntervalSet& w);
bool is_subset(const UnitIntervalSet& v, const UnitIntervalSet& w);
// {x in [0,1] : 1 - x in V}
UnitIntervalSet one_minus(const UnitIntervalSet& v);
// [min V, max V]; std::domain_error for the empty set.
UnitIntervalSet convex_hull(const UnitIntervalSet& v);

// Textual form:
//   set  := 'empty' | term (' u ' term)*
//   term := '[' rational ',' rational ']' | '{' rational '}'
// Printing emits canonical components, so parse(to_string(v)) == v.
std::string to_string(const UnitIntervalSet& v);
std::ostream& operator<<(std::ostream& os, const UnitIntervalSet& v);
// Throws ParseError (line 0) on malformed or out-of-range input.
UnitIntervalSet parse_interval_set(std::string_view text);

}  // namespace subprob
