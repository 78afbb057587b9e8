#include "interval.hpp"

#include <algorithm>
#include <cmath>

namespace scoreforge {

namespace {
// Outward widening factors for sqrt: relative slack 2^-40.
const Rational& widen_down() {
  static const Rational w = Rational(BigInt(1) << 40) / Rational((BigInt(1) << 40) + 1);
  return w;
}
const Rational& widen_up() {
  static const Rational w = Rational((BigInt(1) << 40) + 1) / Rational(BigInt(1) << 40);
  return w;
}
}  // namespace

Interval::Interval(Rational lo, Rational hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
  if (lo_ > hi_) throw std::invalid_argument("interval: lo > hi");
}

Interval Interval::point(Rational v) { return Interval(v, v); }

std::optional<Interval> Interval::intersect(const Interval& other) const {
  Rational lo = std::max(lo_, other.lo_);
  Rational hi = std::min(hi_, other.hi_);
  if (lo > hi) return std::nullopt;
  return Interval(lo, hi);
}

Interval operator+(const Interval& a, const Interval& b) {
  return Interval(a.lo_ + b.lo_, a.hi_ + b.hi_);
}

Interval operator-(const Interval& a, const Interval& b) {
  return Interval(a.lo_ - b.hi_, a.hi_ - b.lo_);
}

Interval operator-(const Interval& a) { return Interval(-a.hi_, -a.lo_); }

Interval operator*(const Interval& a, const Interval& b) {
  Rational c1 = a.lo_ * b.lo_;
  Rational c2 = a.lo_ * b.hi_;
  Rational c3 = a.hi_ * b.lo_;
  Rational c4 = a.hi_ * b.hi_;
  return Interval(std::min(std::min(c1, c2), std::min(c3, c4)),
                  std::max(std::max(c1, c2), std::max(c3, c4)));
}

Interval square(const Interval& a) {
  Rational lo2 = a.lo() * a.lo();
  Rational hi2 = a.hi() * a.hi();
  if (a.lo() >= 0) return Interval(lo2, hi2);
  if (a.hi() <= 0) return Interval(hi2, lo2);
  return Interval(Rational(0), std::max(lo2, hi2));
}

Interval sqrt_widened(const Interval& a) {
  if (a.hi() < 0) throw EmptyDomainError();
  Rational lo = a.lo() < 0 ? Rational(0) : a.lo();
  const Rational& hi = a.hi();

  Rational out_lo(0);
  if (lo > 0) {
    double d = std::sqrt(rat_to_double(lo));
    out_lo = Rational(d) * widen_down();
    if (out_lo < 0) out_lo = 0;
  }
  Rational out_hi(0);
  if (hi > 0) {
    double d = std::sqrt(rat_to_double(hi));
    out_hi = Rational(d) * widen_up();
  }
  if (out_lo > out_hi) out_lo = out_hi;
  return Interval(out_lo, out_hi);
}

IntervalSet IntervalSet::of(std::vector<Interval> parts) {
  std::sort(parts.begin(), parts.end(), [](const Interval& a, const Interval& b) {
    return a.lo() < b.lo() || (a.lo() == b.lo() && a.hi() < b.hi());
  });
  IntervalSet out;
  for (auto& iv : parts) {
    if (!out.parts_.empty() && out.parts_.back().hi() >= iv.lo()) {
      if (iv.hi() > out.parts_.back().hi()) {
        Interval merged(out.parts_.back().lo(), iv.hi());
        out.parts_.back() = merged;
      }
    } else {
      out.parts_.push_back(iv);
    }
  }
  return out;
}

bool IntervalSet::contains(const Rational& v) const {
  for (const auto& iv : parts_) {
    if (v < iv.lo()) return false;
    if (v <= iv.hi()) return true;
  }
  return false;
}

IntervalSet IntervalSet::unite(const IntervalSet& other) const {
  std::vector<Interval> all = parts_;
  all.insert(all.end(), other.parts_.begin(), other.parts_.end());
  return of(std::move(all));
}

IntervalSet IntervalSet::intersect(const IntervalSet& other) const {
  std::vector<Interval> out;
  size_t i = 0, j = 0;
  while (i < parts_.size() && j < other.parts_.size()) {
    const Interval& a = parts_[i];
    const Interval& b = other.parts_[j];
    if (auto iv = a.intersect(b)) out.push_back(*iv);
    if (a.hi() < b.hi()) {
      ++i;
    } else {
      ++j;
    }
  }
  IntervalSet s;
  s.parts_ = std::move(out);  // already sorted and disjoint
  return s;
}

std::optional<BigInt> IntervalSet::smallest_integer_in(const BigInt& lo, const BigInt& hi) const {
  for (const auto& iv : parts_) {
    Rational plo = std::max(iv.lo(), Rational(lo));
    Rational phi = std::min(iv.hi(), Rational(hi));
    if (plo > phi) continue;
    BigInt z = rat_ceil(plo);
    if (Rational(z) <= phi) return z;
  }
  return std::nullopt;
}

ExtInterval operator+(const ExtInterval& a, const ExtInterval& b) {
  if (a.is_empty() || b.is_empty()) return ExtInterval::empty();
  if (a.is_line() || b.is_line()) return ExtInterval::line();
  return ExtInterval::finite(a.iv_ + b.iv_);
}

ExtInterval operator-(const ExtInterval& a, const ExtInterval& b) {
  if (a.is_empty() || b.is_empty()) return ExtInterval::empty();
  if (a.is_line() || b.is_line()) return ExtInterval::line();
  return ExtInterval::finite(a.iv_ - b.iv_);
}

ExtInterval operator*(const ExtInterval& a, const ExtInterval& b) {
  if (a.is_empty() || b.is_empty()) return ExtInterval::empty();
  if (a.is_line() || b.is_line()) return ExtInterval::line();
  return ExtInterval::finite(a.iv_ * b.iv_);
}

ExtInterval operator/(const ExtInterval& a, const ExtInterval& b) {
  if (a.is_empty() || b.is_empty()) return ExtInterval::empty();
  if (a.is_line() || b.is_line()) return ExtInterval::line();
  return divide(a.interval(), b.interval());
}

ExtInterval operator-(const ExtInterval& a) {
  if (a.is_empty() || a.is_line()) return a;
  return ExtInterval::finite(-a.interval());
}

ExtInterval square(const ExtInterval& a) {
  if (a.is_empty() || a.is_line()) return a;
  return ExtInterval::finite(square(a.interval()));
}

ExtInterval sqrt_ext(const ExtInterval& a) {
  if (a.is_empty() || a.is_line()) return a;
  if (a.interval().hi() < 0) return ExtInterval::empty();
  return ExtInterval::finite(sqrt_widened(a.interval()));
}

ExtInterval divide(const Interval& a, const Interval& b) {
  if (b.lo() <= 0 && b.hi() >= 0) return ExtInterval::line();
  Rational c1 = a.lo() / b.lo();
  Rational c2 = a.lo() / b.hi();
  Rational c3 = a.hi() / b.lo();
  Rational c4 = a.hi() / b.hi();
  return ExtInterval::finite(Interval(std::min(std::min(c1, c2), std::min(c3, c4)),
                                      std::max(std::max(c1, c2), std::max(c3, c4))));
}

Region Region::from(const ExtInterval& e) {
  if (e.is_line()) return line();
  if (e.is_empty()) return empty();
  return set(IntervalSet(e.interval()));
}

Region Region::unite(const Region& other) const {
  if (is_line() || other.is_line()) return line();
  return set(set_.unite(other.set_));
}

Region Region::intersect(const Region& other) const {
  if (is_line()) return other;
  if (other.is_line()) return *this;
  return set(set_.intersect(other.set_));
}

std::optional<BigInt> Region::smallest_integer_in(const BigInt& lo, const BigInt& hi) const {
  if (lo > hi) return std::nullopt;
  if (is_line()) return lo;
  return set_.smallest_integer_in(lo, hi);
}

bool Region::for_each_integer(const BigInt& lo, const BigInt& hi,
                              const std::function<bool(const BigInt&)>& fn) const {
  if (is_line()) {
    for (BigInt z = lo; z <= hi; ++z) {
      if (!fn(z)) return false;
    }
    return true;
  }
  for (const auto& iv : set_.parts()) {
    Rational plo = std::max(iv.lo(), Rational(lo));
    Rational phi = std::min(iv.hi(), Rational(hi));
    if (plo > phi) continue;
    BigInt z = rat_ceil(plo);
    BigInt z_hi = rat_floor(phi);
    for (; z <= z_hi; ++z) {
      if (!fn(z)) return false;
    }
  }
  return true;
}

}  // namespace scoreforge
