#include "edsring/interval.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

#include "edsring/errors.hpp"

namespace edsring {
namespace {

// Min and max of the four products/quotients of endpoint pairs, each rounded
// in the direction that keeps it outside.
template <typename Op>
void four_way(mpfr_t lo, mpfr_t hi, const mpfr_t a0, const mpfr_t a1, const mpfr_t b0, const mpfr_t b1, Op op,
              mpfr_prec_t prec) {
  mpfr_t t;
  mpfr_init2(t, prec);
  const mpfr_srcptr as[2] = {a0, a1};
  const mpfr_srcptr bs[2] = {b0, b1};
  bool first = true;
  for (auto x : as)
    for (auto y : bs) {
      op(t, x, y, MPFR_RNDD);
      if (first || mpfr_less_p(t, lo)) mpfr_set(lo, t, MPFR_RNDD);
      op(t, x, y, MPFR_RNDU);
      if (first || mpfr_greater_p(t, hi)) mpfr_set(hi, t, MPFR_RNDU);
      first = false;
    }
  mpfr_clear(t);
}

}  // namespace

Interval::Interval(mpfr_prec_t prec) : prec_(prec) {
  mpfr_init2(lo_, prec);
  mpfr_init2(hi_, prec);
  mpfr_set_zero(lo_, 1);
  mpfr_set_zero(hi_, 1);
}

Interval::Interval(const Rational& q, mpfr_prec_t prec) : Interval(prec) {
  mpfr_set_q(lo_, q.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(hi_, q.get_mpq_t(), MPFR_RNDU);
}

Interval::Interval(const Interval& other) : Interval(other.prec_) {
  mpfr_set(lo_, other.lo_, MPFR_RNDD);
  mpfr_set(hi_, other.hi_, MPFR_RNDU);
}

Interval::Interval(Interval&& other) noexcept : Interval(other.prec_) {
  mpfr_swap(lo_, other.lo_);
  mpfr_swap(hi_, other.hi_);
}

Interval& Interval::operator=(Interval other) noexcept {
  std::swap(prec_, other.prec_);
  mpfr_swap(lo_, other.lo_);
  mpfr_swap(hi_, other.hi_);
  return *this;
}

Interval::~Interval() {
  mpfr_clear(lo_);
  mpfr_clear(hi_);
}

Interval Interval::pi(mpfr_prec_t prec) {
  Interval r(prec);
  mpfr_const_pi(r.lo_, MPFR_RNDD);
  mpfr_const_pi(r.hi_, MPFR_RNDU);
  return r;
}

Interval Interval::hull(const Interval& a, const Interval& b) {
  Interval r(std::max(a.prec_, b.prec_));
  mpfr_min(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_max(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return r;
}

Interval Interval::span(const Interval& lower, const Interval& upper) {
  Interval r(std::max(lower.prec_, upper.prec_));
  mpfr_set(r.lo_, lower.lo_, MPFR_RNDD);
  mpfr_set(r.hi_, upper.hi_, MPFR_RNDU);
  if (mpfr_greater_p(r.lo_, r.hi_)) throw PrecisionFailure("span with crossed endpoints");
  return r;
}

Interval Interval::floor_removed() const {
  mpfr_t fl, fh;
  mpfr_inits2(prec_, fl, fh, static_cast<mpfr_ptr>(nullptr));
  mpfr_floor(fl, lo_);
  mpfr_floor(fh, hi_);
  bool same = mpfr_equal_p(fl, fh);
  Interval r(prec_);
  if (same) {
    mpfr_sub(r.lo_, lo_, fl, MPFR_RNDD);
    mpfr_sub(r.hi_, hi_, fl, MPFR_RNDU);
  }
  mpfr_clears(fl, fh, static_cast<mpfr_ptr>(nullptr));
  if (!same) throw PrecisionFailure("enclosure straddles an integer");
  return r;
}

Rational Interval::lo_rational() const {
  Rational q;
  mpfr_get_q(q.get_mpq_t(), lo_);
  return q;
}

Rational Interval::hi_rational() const {
  Rational q;
  mpfr_get_q(q.get_mpq_t(), hi_);
  return q;
}

Rational Interval::mid_rational() const { return (lo_rational() + hi_rational()) / 2; }

double Interval::mid() const { return (mpfr_get_d(lo_, MPFR_RNDN) + mpfr_get_d(hi_, MPFR_RNDN)) / 2; }

double Interval::width() const {
  mpfr_t w;
  mpfr_init2(w, prec_);
  mpfr_sub(w, hi_, lo_, MPFR_RNDU);
  double d = mpfr_get_d(w, MPFR_RNDU);
  mpfr_clear(w);
  return d;
}

bool Interval::contains_zero() const { return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0; }
bool Interval::magnitude_below(long e) const {
  mpfr_t bound;
  mpfr_init2(bound, 2);
  mpfr_set_ui_2exp(bound, 1, e, MPFR_RNDN);
  bool below = mpfr_cmpabs(lo_, bound) < 0 && mpfr_cmpabs(hi_, bound) < 0;
  mpfr_clear(bound);
  return below;
}

bool Interval::positive() const { return mpfr_sgn(lo_) > 0; }
bool Interval::negative() const { return mpfr_sgn(hi_) < 0; }

Interval operator+(const Interval& a, const Interval& b) {
  Interval r(std::max(a.prec_, b.prec_));
  mpfr_add(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_add(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return r;
}

Interval operator-(const Interval& a, const Interval& b) {
  Interval r(std::max(a.prec_, b.prec_));
  mpfr_sub(r.lo_, a.lo_, b.hi_, MPFR_RNDD);
  mpfr_sub(r.hi_, a.hi_, b.lo_, MPFR_RNDU);
  return r;
}

Interval operator*(const Interval& a, const Interval& b) {
  Interval r(std::max(a.prec_, b.prec_));
  four_way(r.lo_, r.hi_, a.lo_, a.hi_, b.lo_, b.hi_,
           [](mpfr_ptr t, mpfr_srcptr x, mpfr_srcptr y, mpfr_rnd_t rnd) { mpfr_mul(t, x, y, rnd); }, r.prec_);
  return r;
}

Interval operator/(const Interval& a, const Interval& b) {
  if (b.contains_zero()) throw PrecisionFailure("interval division by an enclosure of zero");
  Interval r(std::max(a.prec_, b.prec_));
  four_way(r.lo_, r.hi_, a.lo_, a.hi_, b.lo_, b.hi_,
           [](mpfr_ptr t, mpfr_srcptr x, mpfr_srcptr y, mpfr_rnd_t rnd) { mpfr_div(t, x, y, rnd); }, r.prec_);
  return r;
}

Interval Interval::operator-() const {
  Interval r(prec_);
  mpfr_neg(r.lo_, hi_, MPFR_RNDD);
  mpfr_neg(r.hi_, lo_, MPFR_RNDU);
  return r;
}

Interval Interval::scaled(long k) const {
  Interval r(prec_);
  if (k >= 0) {
    mpfr_mul_si(r.lo_, lo_, k, MPFR_RNDD);
    mpfr_mul_si(r.hi_, hi_, k, MPFR_RNDU);
  } else {
    mpfr_mul_si(r.lo_, hi_, k, MPFR_RNDD);
    mpfr_mul_si(r.hi_, lo_, k, MPFR_RNDU);
  }
  return r;
}

Interval Interval::ldexp(long e) const {
  Interval r(*this);
  mpfr_mul_2si(r.lo_, r.lo_, e, MPFR_RNDD);
  mpfr_mul_2si(r.hi_, r.hi_, e, MPFR_RNDU);
  return r;
}

Interval Interval::sqrt() const {
  if (mpfr_sgn(hi_) < 0) throw PrecisionFailure("square root of a negative enclosure");
  Interval r(prec_);
  if (mpfr_sgn(lo_) < 0) mpfr_set_zero(r.lo_, 1);
  else mpfr_sqrt(r.lo_, lo_, MPFR_RNDD);
  mpfr_sqrt(r.hi_, hi_, MPFR_RNDU);
  return r;
}

Interval Interval::atan() const {
  Interval r(prec_);
  mpfr_atan(r.lo_, lo_, MPFR_RNDD);
  mpfr_atan(r.hi_, hi_, MPFR_RNDU);
  return r;
}

// sin and cos are 1-Lipschitz: f(I) lies within half the width of f(mid).
Interval Interval::sin() const {
  Interval r(prec_);
  mpfr_t m, rad;
  mpfr_inits2(prec_ + 2, m, rad, static_cast<mpfr_ptr>(nullptr));
  mpfr_add(m, lo_, hi_, MPFR_RNDN);
  mpfr_div_2ui(m, m, 1, MPFR_RNDN);
  mpfr_sub(rad, hi_, m, MPFR_RNDU);
  mpfr_t rad2;
  mpfr_init2(rad2, prec_ + 2);
  mpfr_sub(rad2, m, lo_, MPFR_RNDU);
  mpfr_max(rad, rad, rad2, MPFR_RNDU);
  mpfr_sin(r.lo_, m, MPFR_RNDD);
  mpfr_sin(r.hi_, m, MPFR_RNDU);
  mpfr_sub(r.lo_, r.lo_, rad, MPFR_RNDD);
  mpfr_add(r.hi_, r.hi_, rad, MPFR_RNDU);
  if (mpfr_cmp_si(r.lo_, -1) < 0) mpfr_set_si(r.lo_, -1, MPFR_RNDD);
  if (mpfr_cmp_si(r.hi_, 1) > 0) mpfr_set_si(r.hi_, 1, MPFR_RNDU);
  mpfr_clears(m, rad, rad2, static_cast<mpfr_ptr>(nullptr));
  return r;
}

Interval Interval::cos() const {
  Interval r(prec_);
  mpfr_t m, rad, rad2;
  mpfr_inits2(prec_ + 2, m, rad, rad2, static_cast<mpfr_ptr>(nullptr));
  mpfr_add(m, lo_, hi_, MPFR_RNDN);
  mpfr_div_2ui(m, m, 1, MPFR_RNDN);
  mpfr_sub(rad, hi_, m, MPFR_RNDU);
  mpfr_sub(rad2, m, lo_, MPFR_RNDU);
  mpfr_max(rad, rad, rad2, MPFR_RNDU);
  mpfr_cos(r.lo_, m, MPFR_RNDD);
  mpfr_cos(r.hi_, m, MPFR_RNDU);
  mpfr_sub(r.lo_, r.lo_, rad, MPFR_RNDD);
  mpfr_add(r.hi_, r.hi_, rad, MPFR_RNDU);
  if (mpfr_cmp_si(r.lo_, -1) < 0) mpfr_set_si(r.lo_, -1, MPFR_RNDD);
  if (mpfr_cmp_si(r.hi_, 1) > 0) mpfr_set_si(r.hi_, 1, MPFR_RNDU);
  mpfr_clears(m, rad, rad2, static_cast<mpfr_ptr>(nullptr));
  return r;
}

std::string Interval::str(int digits) const {
  std::ostringstream os;
  char* a = nullptr;
  char* b = nullptr;
  mpfr_asprintf(&a, "%.*RDg", digits, lo_);
  mpfr_asprintf(&b, "%.*RUg", digits, hi_);
  os << "[" << a << ", " << b << "]";
  mpfr_free_str(a);
  mpfr_free_str(b);
  return os.str();
}

}  // namespace edsring
