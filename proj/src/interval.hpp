#pragma once

#include "rational.hpp"

#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

namespace scoreforge {

// Raised by sqrt on an interval that is entirely negative.
struct EmptyDomainError : std::runtime_error {
  EmptyDomainError() : std::runtime_error("interval: square root of a negative domain") {}
};

// Closed interval with exact rational endpoints.
class Interval {
 public:
  Interval() : lo_(0), hi_(0) {}
  Interval(Rational lo, Rational hi);
  static Interval point(Rational v);

  const Rational& lo() const { return lo_; }
  const Rational& hi() const { return hi_; }
  bool is_point() const { return lo_ == hi_; }
  bool contains(const Rational& v) const { return lo_ <= v && v <= hi_; }
  Rational width() const { return hi_ - lo_; }

  std::optional<Interval> intersect(const Interval& other) const;

  friend Interval operator+(const Interval& a, const Interval& b);
  friend Interval operator-(const Interval& a, const Interval& b);
  friend Interval operator*(const Interval& a, const Interval& b);
  friend Interval operator-(const Interval& a);
  friend bool operator==(const Interval& a, const Interval& b) = default;

 private:
  Rational lo_, hi_;
};

// Exact square; tighter than a*a because both factors are the same quantity.
Interval square(const Interval& a);

// Enclosure of {sqrt(x) : x in a, x >= 0}. Endpoints go through double
// precision and are widened outward by a relative 2^-40 slack, so the result
// is a guaranteed superset. Negative parts of the input are clamped to zero.
// Throws EmptyDomainError when a.hi() < 0.
Interval sqrt_widened(const Interval& a);

// Ordered union of pairwise-disjoint, non-adjacent closed intervals.
class IntervalSet {
 public:
  IntervalSet() = default;
  explicit IntervalSet(const Interval& iv) : parts_{iv} {}
  static IntervalSet of(std::vector<Interval> parts);  // normalizes

  bool empty() const { return parts_.empty(); }
  const std::vector<Interval>& parts() const { return parts_; }
  bool contains(const Rational& v) const;

  IntervalSet unite(const IntervalSet& other) const;
  IntervalSet intersect(const IntervalSet& other) const;

  // Smallest integer z with lo <= z <= hi contained in the set, if any.
  std::optional<BigInt> smallest_integer_in(const BigInt& lo, const BigInt& hi) const;

  friend bool operator==(const IntervalSet& a, const IntervalSet& b) = default;

 private:
  std::vector<Interval> parts_;
};

// Evaluation value for inverse score formulas: a finite interval, the whole
// real line (the conservative fallback when a denominator may vanish), or the
// empty set (no real solution on this branch).
class ExtInterval {
 public:
  static ExtInterval empty() { return ExtInterval(Kind::Empty); }
  static ExtInterval line() { return ExtInterval(Kind::Line); }
  static ExtInterval finite(Interval iv) {
    ExtInterval e(Kind::Finite);
    e.iv_ = std::move(iv);
    return e;
  }
  static ExtInterval point(Rational v) { return finite(Interval::point(std::move(v))); }

  bool is_empty() const { return kind_ == Kind::Empty; }
  bool is_line() const { return kind_ == Kind::Line; }
  bool is_finite() const { return kind_ == Kind::Finite; }
  const Interval& interval() const { return iv_; }

  friend ExtInterval operator+(const ExtInterval& a, const ExtInterval& b);
  friend ExtInterval operator-(const ExtInterval& a, const ExtInterval& b);
  friend ExtInterval operator*(const ExtInterval& a, const ExtInterval& b);
  friend ExtInterval operator/(const ExtInterval& a, const ExtInterval& b);
  friend ExtInterval operator-(const ExtInterval& a);

 private:
  enum class Kind { Empty, Finite, Line };
  explicit ExtInterval(Kind k) : kind_(k) {}
  Kind kind_;
  Interval iv_;
};

ExtInterval square(const ExtInterval& a);
// Empty when the argument is entirely negative; otherwise clamps at zero.
ExtInterval sqrt_ext(const ExtInterval& a);

// Quotient with the conservative rule: a denominator interval containing zero
// anywhere yields the whole line, which callers clip to the feasible range.
ExtInterval divide(const Interval& a, const Interval& b);

// Inverse-image result: empty, a union of intervals, or the whole line.
class Region {
 public:
  static Region empty() { return Region(Kind::Set, IntervalSet()); }
  static Region line() { return Region(Kind::Line, IntervalSet()); }
  static Region set(IntervalSet s) { return Region(Kind::Set, std::move(s)); }
  static Region from(const ExtInterval& e);

  bool is_line() const { return kind_ == Kind::Line; }
  bool is_empty() const { return kind_ == Kind::Set && set_.empty(); }
  const IntervalSet& interval_set() const { return set_; }

  Region unite(const Region& other) const;
  Region intersect(const Region& other) const;

  std::optional<BigInt> smallest_integer_in(const BigInt& lo, const BigInt& hi) const;
  // Visits integers in [lo, hi] contained in the region in ascending order;
  // stops early when fn returns false. Returns false iff stopped early.
  bool for_each_integer(const BigInt& lo, const BigInt& hi,
                        const std::function<bool(const BigInt&)>& fn) const;

 private:
  enum class Kind { Set, Line };
  Region(Kind k, IntervalSet s) : kind_(k), set_(std::move(s)) {}
  Kind kind_;
  IntervalSet set_;
};

}  // namespace scoreforge
