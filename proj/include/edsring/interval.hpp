#pragma once

#include <mpfr.h>

#include <string>

#include "edsring/bigint.hpp"

namespace edsring {

// Closed interval [lo, hi] of MPFR floats; every operation rounds outward,
// so the true value of an expression stays inside its enclosure.
class Interval {
 public:
  explicit Interval(mpfr_prec_t prec);
  Interval(const Rational& q, mpfr_prec_t prec);
  Interval(const Interval& other);
  Interval(Interval&& other) noexcept;
  Interval& operator=(Interval other) noexcept;
  ~Interval();

  static Interval pi(mpfr_prec_t prec);
  static Interval hull(const Interval& a, const Interval& b);
  // [lower.lo, upper.hi]
  static Interval span(const Interval& lower, const Interval& upper);

  mpfr_prec_t precision() const { return prec_; }
  const mpfr_t& lo() const { return lo_; }
  const mpfr_t& hi() const { return hi_; }

  Rational lo_rational() const;
  Rational hi_rational() const;
  Rational mid_rational() const;
  double mid() const;
  double width() const;

  bool contains_zero() const;
  bool magnitude_below(long e) const;  // max(|lo|, |hi|) < 2^e
  bool positive() const;  // lo > 0
  bool negative() const;  // hi < 0
  bool certainly_less(const Interval& other) const { return mpfr_less_p(hi_, other.lo_); }
  bool certainly_greater(const Interval& other) const { return mpfr_greater_p(lo_, other.hi_); }

  friend Interval operator+(const Interval& a, const Interval& b);
  friend Interval operator-(const Interval& a, const Interval& b);
  friend Interval operator*(const Interval& a, const Interval& b);
  friend Interval operator/(const Interval& a, const Interval& b);  // b must exclude 0
  Interval operator-() const;

  Interval scaled(long k) const;       // k * this
  Interval ldexp(long e) const;        // this * 2^e, exact
  Interval floor_removed() const;      // this - floor(this); throws if the floor is ambiguous
  Interval sqrt() const;               // lo clipped at 0 when slightly negative
  Interval atan() const;
  Interval sin() const;
  Interval cos() const;

  std::string str(int digits = 20) const;

 private:
  mpfr_prec_t prec_;
  mpfr_t lo_, hi_;
};

}  // namespace edsring
