#pragma once

#include <ostream>
#include <string_view>

#include "schmidt/error.hpp"
#include "schmidt/rational.hpp"

namespace schmidt {

/// Closed interval [lo, hi] with exact endpoints. Game moves always have
/// lo < hi; a degenerate interval only shows up when reporting outcomes.
struct Interval {
  Rational lo;
  Rational hi;

  Interval() = default;
  Interval(Rational l, Rational h) : lo(std::move(l)), hi(std::move(h)) {}

  Rational length() const { return hi - lo; }
  Rational center() const { return (lo + hi) / 2; }
  bool positive() const { return lo < hi; }

  bool contains(const Rational& x) const { return lo <= x && x <= hi; }
  /// Subset test, closed semantics.
  bool contains(const Interval& other) const { return lo <= other.lo && other.hi <= hi; }
  /// Closed intersection: touching endpoints count.
  bool meets(const Interval& other) const { return !(hi < other.lo || other.hi < lo); }

  friend bool operator==(const Interval&, const Interval&) = default;

  friend std::ostream& operator<<(std::ostream& os, const Interval& i) {
    return os << '[' << i.lo << ", " << i.hi << ']';
  }
};

inline Interval make_interval(const Rational& lo, const Rational& hi) {
  if (hi < lo) throw Error(ErrorKind::InvalidArgument, "interval with hi < lo");
  return Interval(lo, hi);
}

/// Interval of the given length sharing `center`.
inline Interval centered_at(const Rational& center, const Rational& length) {
  Rational half = length / 2;
  return Interval(center - half, center + half);
}

inline Interval shift(const Interval& i, const Rational& q) { return Interval(i.lo + q, i.hi + q); }

/// [a - d(b-a), b + d(b-a)] for I = [a, b].
inline Interval delta_thickening(const Interval& i, const Rational& d) {
  if (d.sign() < 0) throw Error(ErrorKind::InvalidArgument, "negative thickening " + d.str());
  Rational pad = d * i.length();
  return Interval(i.lo - pad, i.hi + pad);
}

enum class Relation { Disjoint, Overlap, FirstWithinSecond, SecondWithinFirst, Equal };

inline std::string_view to_string(Relation r) {
  switch (r) {
    case Relation::Disjoint: return "disjoint";
    case Relation::Overlap: return "overlap";
    case Relation::FirstWithinSecond: return "I_within_J";
    case Relation::SecondWithinFirst: return "J_within_I";
    case Relation::Equal: return "equal";
  }
  return "?";
}

inline Relation relate(const Interval& i, const Interval& j) {
  if (i == j) return Relation::Equal;
  if (!i.meets(j)) return Relation::Disjoint;
  if (j.contains(i)) return Relation::FirstWithinSecond;
  if (i.contains(j)) return Relation::SecondWithinFirst;
  return Relation::Overlap;
}

}  // namespace schmidt
