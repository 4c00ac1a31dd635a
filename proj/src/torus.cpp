#include "edsring/torus.hpp"

#include "edsring/errors.hpp"

namespace edsring {
namespace {

// Sign of x^3 + ax + b - c at the exact value of an MPFR float.
int cubic_sign(mpfr_srcptr x, const Rational& a, const Rational& b, const Rational& c) {
  Rational q;
  mpfr_get_q(q.get_mpq_t(), x);
  Rational v = q * q * q + a * q + b - c;
  return sgn(v);
}

Interval endpoints(mpfr_srcptr lo, mpfr_srcptr hi, mpfr_prec_t prec) {
  Interval r(prec);
  mpfr_set(const_cast<mpfr_ptr>(r.lo()), lo, MPFR_RNDD);
  mpfr_set(const_cast<mpfr_ptr>(r.hi()), hi, MPFR_RNDU);
  return r;
}

}  // namespace

TorusEmbedding::TorusEmbedding(const CurveConfig& config, mpfr_prec_t prec)
    : prec_(prec),
      a_(config.a),
      b_(config.b),
      e1_(prec),
      s_(prec),
      kp_(prec),
      agm_(prec),
      theta_(prec) {
  // One real root of the cubic is what makes E(R) connected.
  if (4 * config.a * config.a * config.a + 27 * config.b * config.b <= 0) {
    throw PreconditionFailed("E(R) has two components; the torus path needs a connected real locus");
  }
  e1_ = root_with_square(0);
  Interval three_e1_sq = (e1_ * e1_).scaled(3) + Interval(a_, prec_);
  // y is monotone in x on the branch x >= e1 exactly when 3x^2 + a > 0 there.
  if (!three_e1_sq.positive()) throw PreconditionFailed("3 e1^2 + a is not positive");
  s_ = three_e1_sq.sqrt();
  Interval kp2 = Interval(Rational(1, 2), prec_) + e1_.scaled(3) / s_.scaled(4);
  if (!kp2.positive()) throw PrecisionFailure("modulus enclosure not positive");
  kp_ = kp2.sqrt();

  Interval A(Rational(1), prec_), B = kp_;
  for (int i = 0; i < 64 && !(A - B).magnitude_below(-static_cast<long>(prec_)); ++i) {
    Interval next_a = (A + B).ldexp(-1);
    B = (A * B).sqrt();
    A = next_a;
  }
  agm_ = Interval::span(B, A);
  theta_ = t_of_point(config.generator);
}

Interval TorusEmbedding::real_period() const {
  return Interval::pi(prec_).scaled(2) / (agm_ * s_.sqrt());
}

Interval TorusEmbedding::root_with_square(const Rational& c) const {
  Rational bound = 1 + std::max<Rational>(abs(a_), abs(Rational(b_ - c)));
  mpfr_prec_t wp = prec_ + 64;
  mpfr_t lo, hi, mid, fx, dfx, tmp;
  mpfr_inits2(wp, lo, hi, mid, fx, dfx, tmp, static_cast<mpfr_ptr>(nullptr));
  mpfr_set_q(hi, bound.get_mpq_t(), MPFR_RNDU);
  mpfr_neg(lo, hi, MPFR_RNDD);
  if (cubic_sign(lo, a_, b_, c) >= 0 || cubic_sign(hi, a_, b_, c) <= 0) {
    mpfr_clears(lo, hi, mid, fx, dfx, tmp, static_cast<mpfr_ptr>(nullptr));
    throw InvariantViolation("root bracket failed");
  }
  auto bisect = [&](int steps) {
    for (int i = 0; i < steps; ++i) {
      mpfr_add(mid, lo, hi, MPFR_RNDN);
      mpfr_div_2ui(mid, mid, 1, MPFR_RNDN);
      int sg = cubic_sign(mid, a_, b_, c);
      if (sg == 0) {
        mpfr_set(lo, mid, MPFR_RNDN);
        mpfr_set(hi, mid, MPFR_RNDN);
        return;
      }
      mpfr_set(sg < 0 ? lo : hi, mid, MPFR_RNDN);
    }
  };
  bisect(64);

  // Newton from the bracket midpoint, then confirm a tight bracket exactly.
  mpfr_t aa, bc;
  mpfr_inits2(wp, aa, bc, static_cast<mpfr_ptr>(nullptr));
  mpfr_set_q(aa, a_.get_mpq_t(), MPFR_RNDN);
  Rational bmc = b_ - c;
  mpfr_set_q(bc, bmc.get_mpq_t(), MPFR_RNDN);
  mpfr_add(mid, lo, hi, MPFR_RNDN);
  mpfr_div_2ui(mid, mid, 1, MPFR_RNDN);
  for (int i = 0; i < 40; ++i) {
    mpfr_mul(fx, mid, mid, MPFR_RNDN);
    mpfr_mul_ui(dfx, fx, 3, MPFR_RNDN);
    mpfr_add(dfx, dfx, aa, MPFR_RNDN);
    mpfr_add(fx, fx, aa, MPFR_RNDN);
    mpfr_mul(fx, fx, mid, MPFR_RNDN);
    mpfr_add(fx, fx, bc, MPFR_RNDN);
    if (mpfr_zero_p(dfx)) break;
    mpfr_div(tmp, fx, dfx, MPFR_RNDN);
    mpfr_sub(mid, mid, tmp, MPFR_RNDN);
    if (mpfr_zero_p(tmp) || mpfr_get_exp(tmp) < mpfr_get_exp(mid) - static_cast<long>(wp) + 4) break;
  }
  bool tight = false;
  if (mpfr_number_p(mid)) {
    long e = mpfr_zero_p(mid) ? 0 : mpfr_get_exp(mid);
    mpfr_set_ui_2exp(tmp, 1, e - static_cast<long>(prec_) - 8, MPFR_RNDN);
    mpfr_t l2, h2;
    mpfr_inits2(wp, l2, h2, static_cast<mpfr_ptr>(nullptr));
    mpfr_sub(l2, mid, tmp, MPFR_RNDD);
    mpfr_add(h2, mid, tmp, MPFR_RNDU);
    if (cubic_sign(l2, a_, b_, c) < 0 && cubic_sign(h2, a_, b_, c) > 0) {
      mpfr_set(lo, l2, MPFR_RNDD);
      mpfr_set(hi, h2, MPFR_RNDU);
      tight = true;
    }
    mpfr_clears(l2, h2, static_cast<mpfr_ptr>(nullptr));
  }
  if (!tight) bisect(static_cast<int>(prec_) + 8);
  Interval r = endpoints(lo, hi, prec_);
  mpfr_clears(lo, hi, mid, fx, dfx, tmp, aa, bc, static_cast<mpfr_ptr>(nullptr));
  return r;
}

Interval TorusEmbedding::incomplete_integral(const Interval& psi) const {
  // Descending Landen steps in the branch-free form
  //   phi' = 2 phi + atan((b - a) sin 2phi / ((a + b) + (a - b) cos 2phi)),
  // after which the integrand is pinned between 1/a and 1/b.
  Interval a(Rational(1), prec_), b = kp_, phi = psi;
  long n = 0;
  for (; n < 64 && !(a - b).magnitude_below(-static_cast<long>(prec_) - 4); ++n) {
    Interval two_phi = phi.scaled(2);
    Interval num = (b - a) * two_phi.sin();
    Interval den = (a + b) + (a - b) * two_phi.cos();
    phi = two_phi + (num / den).atan();
    Interval next_a = (a + b).ldexp(-1);
    b = (a * b).sqrt();
    a = next_a;
  }
  Interval scaled = phi.ldexp(-n);
  return Interval::span(scaled / a, scaled / b);
}

Interval TorusEmbedding::t_from_x(const Interval& x, int y_sign) const {
  if (y_sign == 0) return Interval(Rational(1, 2), prec_);
  Interval d = x - e1_;
  if (!d.positive()) throw PrecisionFailure("x too close to e1 at this precision");
  Interval psi = (s_ / d).sqrt().atan().scaled(2);
  Interval v = incomplete_integral(psi) * agm_ / Interval::pi(prec_).scaled(2);
  return y_sign > 0 ? v : Interval(Rational(1), prec_) - v;
}

Interval TorusEmbedding::t_of_point(const RationalPoint& q) const {
  if (q.is_identity()) return Interval(Rational(0), prec_);
  return t_from_x(Interval(q.x(), prec_), sgn(q.y()));
}

Interval TorusEmbedding::t_of_y(const Rational& y) const {
  if (sgn(y) == 0) return Interval(Rational(1, 2), prec_);
  return t_from_x(root_with_square(y * y), sgn(y));
}

Interval TorusEmbedding::t_of_multiple(std::int64_t n) const { return theta_.scaled(n).floor_removed(); }

TorusEmbedding::Arc TorusEmbedding::arc(const YInterval& iv) const {
  if (iv.lo && iv.hi && *iv.hi < *iv.lo) throw PreconditionFailed("empty y-interval");
  Interval from = iv.hi ? t_of_y(*iv.hi) : Interval(Rational(0), prec_);
  Interval to = iv.lo ? t_of_y(*iv.lo) : Interval(Rational(1), prec_);
  return {from, to};
}

Truth TorusEmbedding::classify(std::int64_t n, const Arc& arc) const {
  if (n == 0) return Truth::unknown;  // O has no y-coordinate
  Interval u = t_of_multiple(n);
  if (mpfr_cmp(u.lo(), arc.from.hi()) >= 0 && mpfr_cmp(u.hi(), arc.to.lo()) <= 0) return Truth::certified_true;
  if (mpfr_cmp(u.hi(), arc.from.lo()) < 0 || mpfr_cmp(u.lo(), arc.to.hi()) > 0) return Truth::certified_false;
  return Truth::unknown;
}

TorusPath::TorusPath(CurveConfig config, mpfr_prec_t max_precision)
    : config_(std::move(config)), max_precision_(max_precision) {}

const TorusEmbedding& TorusPath::at(mpfr_prec_t prec) const {
  std::lock_guard lock(mutex_);
  auto& slot = cache_[prec];
  if (!slot) slot = std::make_unique<TorusEmbedding>(config_, prec);
  return *slot;
}

TorusPath::Decision TorusPath::member(std::int64_t n, const YInterval& iv) const {
  return member_all({n}, iv).front();
}

std::vector<TorusPath::Decision> TorusPath::member_all(const std::vector<std::int64_t>& ns,
                                                       const YInterval& iv) const {
  std::vector<Decision> out(ns.size());
  std::vector<std::size_t> pending(ns.size());
  for (std::size_t i = 0; i < ns.size(); ++i) pending[i] = i;
  for (mpfr_prec_t prec = 128; prec <= max_precision_ && !pending.empty(); prec *= 2) {
    std::vector<std::size_t> still;
    try {
      const TorusEmbedding& emb = at(prec);
      auto arc = emb.arc(iv);
      for (std::size_t i : pending) {
        Truth t = Truth::unknown;
        try {
          t = emb.classify(ns[i], arc);
        } catch (const PrecisionFailure&) {
        }
        out[i] = {t, prec};
        if (t == Truth::unknown) still.push_back(i);
      }
    } catch (const PrecisionFailure&) {
      still = pending;
      for (std::size_t i : pending) out[i] = {Truth::unknown, prec};
    }
    pending.swap(still);
  }
  return out;
}

}  // namespace edsring
