#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "edsring/curve.hpp"
#include "edsring/interval.hpp"
#include "edsring/verdict.hpp"

namespace edsring {

// Closed y-interval; an absent end means infinite.
struct YInterval {
  std::optional<Rational> lo;
  std::optional<Rational> hi;

  bool contains(const Rational& y) const { return (!lo || *lo <= y) && (!hi || y <= *hi); }
};

// E(R) -> R/Z normalised so that t(O) = 0 and t increases from 0 to 1 as y
// runs from +inf down to -inf. Built for one working precision.
class TorusEmbedding {
 public:
  TorusEmbedding(const CurveConfig& config, mpfr_prec_t prec);

  mpfr_prec_t precision() const { return prec_; }
  const Interval& theta() const { return theta_; }  // t(P)
  const Interval& e1() const { return e1_; }        // the real root of x^3 + ax + b
  Interval real_period() const;                     // integral of dx/y over E(R)

  Interval t_of_point(const RationalPoint& q) const;
  Interval t_of_y(const Rational& y) const;
  Interval t_of_multiple(std::int64_t n) const;  // frac(n theta)

  // Pullback of a y-interval: the arc [t(hi), t(lo)].
  struct Arc {
    Interval from, to;
  };
  Arc arc(const YInterval& iv) const;

  // certified_true / certified_false, or unknown when the enclosures overlap an end.
  Truth classify(std::int64_t n, const Arc& arc) const;

  // Incomplete elliptic integral of the first kind with moduli (1, k').
  Interval incomplete_integral(const Interval& psi) const;

 private:
  Interval root_with_square(const Rational& c) const;  // unique real x with x^3 + ax + b = c
  Interval t_from_x(const Interval& x, int y_sign) const;

  mpfr_prec_t prec_;
  Rational a_, b_;
  Interval e1_, s_, kp_, agm_, theta_;
};

// Torus-path membership with precision escalation 128, 256, ... up to a cap.
class TorusPath {
 public:
  explicit TorusPath(CurveConfig config, mpfr_prec_t max_precision = 4096);

  struct Decision {
    Truth truth = Truth::unknown;
    mpfr_prec_t precision = 0;
  };
  Decision member(std::int64_t n, const YInterval& iv) const;
  std::vector<Decision> member_all(const std::vector<std::int64_t>& ns, const YInterval& iv) const;

  const TorusEmbedding& at(mpfr_prec_t prec) const;
  mpfr_prec_t max_precision() const { return max_precision_; }

 private:
  CurveConfig config_;
  mpfr_prec_t max_precision_;
  mutable std::mutex mutex_;
  mutable std::map<mpfr_prec_t, std::unique_ptr<TorusEmbedding>> cache_;
};

}  // namespace edsring
