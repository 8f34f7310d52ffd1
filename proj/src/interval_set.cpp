#include "subprob/interval_set.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

#include "text_cursor.hpp"

namespace subprob {

namespace {

void check_part(const Interval& part) {
  if (part.lo < 0 || part.hi > 1 || part.lo > part.hi) {
    throw std::domain_error("interval [" + format_rational(part.lo) + ", " + format_rational(part.hi) +
                            "] is not a closed subinterval of [0,1]");
  }
}

// Sorted input in, canonical output.
std::vector<Interval> merge_sorted(std::vector<Interval> parts) {
  std::vector<Interval> out;
  out.reserve(parts.size());
  for (auto& part : parts) {
    if (!out.empty() && part.lo <= out.back().hi) {
      if (part.hi > out.back().hi) out.back().hi = std::move(part.hi);
    } else {
      out.push_back(std::move(part));
    }
  }
  return out;
}

bool by_lo(const Interval& a, const Interval& b) { return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi); }

}  // namespace

UnitIntervalSet UnitIntervalSet::normalize(std::vector<Interval> parts) {
  for (const auto& part : parts) check_part(part);
  std::sort(parts.begin(), parts.end(), by_lo);
  return UnitIntervalSet(merge_sorted(std::move(parts)));
}

UnitIntervalSet UnitIntervalSet::point(const Rational& c) { return normalize({{c, c}}); }

UnitIntervalSet UnitIntervalSet::closed(const Rational& lo, const Rational& hi) { return normalize({{lo, hi}}); }

UnitIntervalSet UnitIntervalSet::unit() { return UnitIntervalSet({{Rational(0), Rational(1)}}); }

std::optional<Rational> UnitIntervalSet::singleton() const {
  if (parts_.size() == 1 && parts_.front().lo == parts_.front().hi) return parts_.front().lo;
  return std::nullopt;
}

bool UnitIntervalSet::contains(const Rational& x) const {
  if (x < 0 || x > 1) throw std::domain_error("point " + format_rational(x) + " lies outside [0,1]");
  auto it = std::upper_bound(parts_.begin(), parts_.end(), x,
                             [](const Rational& value, const Interval& part) { return value < part.lo; });
  if (it == parts_.begin()) return false;
  return x <= std::prev(it)->hi;
}

const Rational& UnitIntervalSet::min() const {
  if (parts_.empty()) throw std::domain_error("minimum of the empty set");
  return parts_.front().lo;
}

const Rational& UnitIntervalSet::max() const {
  if (parts_.empty()) throw std::domain_error("maximum of the empty set");
  return parts_.back().hi;
}

UnitIntervalSet unite(const UnitIntervalSet& v, const UnitIntervalSet& w) {
  std::vector<Interval> all;
  all.reserve(v.parts_.size() + w.parts_.size());
  std::merge(v.parts_.begin(), v.parts_.end(), w.parts_.begin(), w.parts_.end(), std::back_inserter(all), by_lo);
  return UnitIntervalSet(merge_sorted(std::move(all)));
}

UnitIntervalSet intersect(const UnitIntervalSet& v, const UnitIntervalSet& w) {
  std::vector<Interval> out;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < v.parts_.size() && j < w.parts_.size()) {
    const auto& a = v.parts_[i];
    const auto& b = w.parts_[j];
    const Rational& lo = std::max(a.lo, b.lo);
    const Rational& hi = std::min(a.hi, b.hi);
    if (lo <= hi) out.push_back({lo, hi});
    if (a.hi < b.hi) {
      ++i;
    } else {
      ++j;
    }
  }
  // Pieces come from disjoint, gapped components, so they are already canonical.
  return UnitIntervalSet(std::move(out));
}

bool is_subset(const UnitIntervalSet& v, const UnitIntervalSet& w) {
  // Each component of v is connected, so it must sit inside a single component of w.
  const auto& outer = w.components();
  std::size_t j = 0;
  for (const auto& part : v.components()) {
    while (j < outer.size() && outer[j].hi < part.lo) ++j;
    if (j == outer.size() || outer[j].lo > part.lo || outer[j].hi < part.hi) return false;
  }
  return true;
}

UnitIntervalSet one_minus(const UnitIntervalSet& v) {
  std::vector<Interval> out;
  out.reserve(v.parts_.size());
  for (auto it = v.parts_.rbegin(); it != v.parts_.rend(); ++it) {
    out.push_back({1 - it->hi, 1 - it->lo});
  }
  return UnitIntervalSet(std::move(out));
}

UnitIntervalSet convex_hull(const UnitIntervalSet& v) {
  if (v.is_empty()) throw std::domain_error("convex hull of the empty set is undefined");
  return UnitIntervalSet::closed(v.min(), v.max());
}

std::string to_string(const UnitIntervalSet& v) {
  if (v.is_empty()) return "empty";
  std::string out;
  for (const auto& part : v.components()) {
    if (!out.empty()) out += " u ";
    if (part.lo == part.hi) {
      out += "{" + format_rational(part.lo) + "}";
    } else {
      out += "[" + format_rational(part.lo) + ", " + format_rational(part.hi) + "]";
    }
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const UnitIntervalSet& v) { return os << to_string(v); }

UnitIntervalSet parse_interval_set(std::string_view text) {
  detail::TextCursor cursor(text);
  if (cursor.consume_word("empty")) {
    cursor.expect_end();
    return {};
  }
  std::vector<Interval> parts;
  do {
    std::size_t column = cursor.column();
    Interval part;
    if (cursor.consume('{')) {
      part.lo = cursor.rational();
      part.hi = part.lo;
      cursor.expect('}');
    } else if (cursor.consume('[')) {
      part.lo = cursor.rational();
      cursor.expect(',');
      part.hi = cursor.rational();
      cursor.expect(']');
    } else {
      cursor.fail("expected '[', '{' or 'empty'");
    }
    if (part.lo > part.hi) {
      throw ParseError(0, column, "inverted interval: lower endpoint exceeds upper endpoint");
    }
    if (part.hi > 1) throw ParseError(0, column, "endpoint exceeds 1");
    parts.push_back(std::move(part));
  } while (cursor.consume_word("u"));
  cursor.expect_end();
  return UnitIntervalSet::normalize(std::move(parts));
}

}  // namespace subprob
