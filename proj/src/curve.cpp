#include "edsring/curve.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "edsring/errors.hpp"

namespace edsring {

RationalPoint::RationalPoint(Rational x, Rational y) : identity_(false), x_(std::move(x)), y_(std::move(y)) {
  x_.canonicalize();
  y_.canonicalize();
}

RationalPoint RationalPoint::operator-() const {
  if (identity_) return *this;
  return RationalPoint(x_, -y_);
}

bool RationalPoint::operator==(const RationalPoint& other) const {
  if (identity_ || other.identity_) return identity_ == other.identity_;
  return x_ == other.x_ && y_ == other.y_;
}

CurveConfig CurveConfig::reference() {
  TrustedHypotheses hyp;
  hyp.provenance =
      "y^2 = x^3 + x + 1: E(Q) = Z generated by (0,1), E(R) connected (discriminant < 0), no CM (j not integral)";
  return from_model(1, 1, RationalPoint(0, 1), hyp);
}

CurveConfig CurveConfig::from_model(Integer a, Integer b, RationalPoint generator, TrustedHypotheses hyp) {
  CurveConfig cfg;
  cfg.a = std::move(a);
  cfg.b = std::move(b);
  cfg.generator = std::move(generator);
  cfg.hypotheses = std::move(hyp);
  cfg.s_bad = derive_bad_primes(cfg.a, cfg.b);
  if (!cfg.generator.is_identity()) {
    FactoringBudget budget;
    for (const Integer* den : {&cfg.generator.x().get_den(), &cfg.generator.y().get_den()}) {
      Factorization f = factor(*den, budget);
      if (!f.complete) throw InvalidConfig("cannot factor the generator's denominator");
      for (auto& pp : f.factors) cfg.s_bad.insert(to_u64(pp.prime));
    }
  }
  cfg.validate();
  return cfg;
}

Integer CurveConfig::discriminant() const { return -16 * (4 * a * a * a + 27 * b * b); }

void CurveConfig::validate() const {
  if (discriminant() == 0) throw SingularCurve("singular curve: 4a^3 + 27b^2 = 0");
  if (!s_bad.count(2)) throw InvalidConfig("s_bad must contain 2");
  for (std::uint64_t p : derive_bad_primes(a, b)) {
    if (!s_bad.count(p)) throw InvalidConfig("discriminant prime " + std::to_string(p) + " missing from s_bad");
  }
  if (generator.is_identity()) throw InvalidConfig("generator must not be the identity");
  const Rational& x = generator.x();
  const Rational& y = generator.y();
  if (y * y != x * x * x + a * x + b) throw NotOnCurve("generator is not on the curve");
  for (const Integer* den : {&x.get_den(), &y.get_den()}) {
    Integer rest = *den;
    for (std::uint64_t p : s_bad) remove_factor(rest, p);
    if (rest != 1) throw InvalidConfig("generator denominators must be supported on s_bad");
  }
}

std::string CurveConfig::fingerprint() const {
  std::ostringstream canon;
  canon << "a=" << a.get_str() << ";b=" << b.get_str() << ";P=" << to_string(generator.x()) << ","
        << to_string(generator.y()) << ";bad=";
  bool first = true;
  for (std::uint64_t p : s_bad) {
    canon << (first ? "" : ",") << p;
    first = false;
  }
  // FNV-1a, 64 bit.
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : canon.str()) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::set<std::uint64_t> derive_bad_primes(const Integer& a, const Integer& b) {
  Integer disc = -16 * (4 * a * a * a + 27 * b * b);
  if (disc == 0) throw SingularCurve("singular curve: 4a^3 + 27b^2 = 0");
  Factorization f = factor(abs(disc), FactoringBudget{});
  if (!f.complete) throw InvalidConfig("cannot factor the discriminant within budget");
  std::set<std::uint64_t> out{2};
  for (auto& pp : f.factors) {
    if (!fits_u64(pp.prime)) throw InvalidConfig("discriminant prime exceeds 64 bits");
    out.insert(to_u64(pp.prime));
  }
  return out;
}

std::vector<Integer> DenomProfile::primes() const {
  std::vector<Integer> out;
  for (auto& pp : support) out.push_back(pp.prime);
  return out;
}

bool DenomProfile::has_prime(const Integer& p) const {
  return std::any_of(support.begin(), support.end(), [&](const PrimePower& pp) { return pp.prime == p; });
}

Curve::Curve(CurveConfig config, ExactCaps caps) : config_(std::move(config)), caps_(caps) { config_.validate(); }

bool Curve::is_bad(const Integer& p) const { return fits_u64(p) && is_bad(to_u64(p)); }

bool Curve::contains(const RationalPoint& pt) const {
  if (pt.is_identity()) return true;
  const Rational& x = pt.x();
  return pt.y() * pt.y() == x * x * x + config_.a * x + config_.b;
}

RationalPoint Curve::add(const RationalPoint& p1, const RationalPoint& p2) const {
  if (!contains(p1) || !contains(p2)) throw NotOnCurve("add_points: point not on curve");
  if (p1.is_identity()) return p2;
  if (p2.is_identity()) return p1;
  Rational lambda;
  if (p1.x() == p2.x()) {
    if (p1.y() == -p2.y()) return RationalPoint::identity();
    return twice(p1);
  }
  lambda = (p2.y() - p1.y()) / (p2.x() - p1.x());
  Rational x3 = lambda * lambda - p1.x() - p2.x();
  Rational y3 = lambda * (p1.x() - x3) - p1.y();
  return RationalPoint(std::move(x3), std::move(y3));
}

RationalPoint Curve::twice(const RationalPoint& pt) const {
  if (pt.is_identity() || pt.y() == 0) return RationalPoint::identity();
  Rational lambda = (3 * pt.x() * pt.x() + config_.a) / (2 * pt.y());
  Rational x3 = lambda * lambda - 2 * pt.x();
  Rational y3 = lambda * (pt.x() - x3) - pt.y();
  return RationalPoint(std::move(x3), std::move(y3));
}

RationalPoint Curve::scalar_mul(std::int64_t n, const RationalPoint& pt) const {
  if (!contains(pt)) throw NotOnCurve("scalar_mul: point not on curve");
  if (n == 0 || pt.is_identity()) return RationalPoint::identity();
  if (n < 0) return -scalar_mul(-n, pt);
  RationalPoint acc;
  for (int bit = 62; bit >= 0; --bit) {
    acc = twice(acc);
    if ((n >> bit) & 1) {
      if (acc.is_identity()) acc = pt;
      else if (acc.x() == pt.x()) acc = add(acc, pt);
      else {
        Rational lambda = (pt.y() - acc.y()) / (pt.x() - acc.x());
        Rational x3 = lambda * lambda - acc.x() - pt.x();
        Rational y3 = lambda * (acc.x() - x3) - acc.y();
        acc = RationalPoint(std::move(x3), std::move(y3));
      }
    }
  }
  return acc;
}

void Curve::check_index(std::int64_t n) const {
  if (n > caps_.index_cap || n < -caps_.index_cap) {
    throw ComputationInfeasible("index " + std::to_string(n) + " exceeds the exact-size cap " +
                                std::to_string(caps_.index_cap));
  }
}

RationalPoint Curve::multiple(std::int64_t n) const {
  if (n == 0) return RationalPoint::identity();
  if (n < 0) return -multiple(-n);
  check_index(n);
  {
    std::lock_guard lock(mutex_);
    auto it = points_.find(n);
    if (it != points_.end()) return it->second;
  }
  RationalPoint result;
  std::optional<RationalPoint> previous;
  {
    std::lock_guard lock(mutex_);
    auto it = points_.find(n - 1);
    if (it != points_.end()) previous = it->second;
  }
  if (previous) result = add(*previous, config_.generator);
  else result = scalar_mul(n, config_.generator);
  if (n < caps_.memo_points_below) {
    std::lock_guard lock(mutex_);
    points_.emplace(n, result);
  }
  return result;
}

Integer Curve::strip_bad(Integer v) const {
  if (v == 0) return v;
  for (std::uint64_t p : config_.s_bad) remove_factor(v, p);
  return v;
}

Integer Curve::d_from_point(std::int64_t n) const {
  if (n == 0) return 0;
  RationalPoint pt = multiple(n);
  if (pt.is_identity()) throw InvariantViolation("generator has finite order");
  return strip_bad(pt.x().get_den());
}

Integer Curve::d(std::int64_t n) const {
  if (n == 0) return 0;
  if (n < 0) n = -n;
  check_index(n);
  {
    std::lock_guard lock(mutex_);
    auto it = denominators_.find(n);
    if (it != denominators_.end()) return it->second;
  }
  Integer result = ladder_denominator(static_cast<std::uint64_t>(n));
  if (n < caps_.memo_denominators_below) {
    std::lock_guard lock(mutex_);
    denominators_.emplace(n, result);
  }
  return result;
}

namespace {

// x = num/den with den > 0; common factors are removed only at s_bad primes.
// Away from s_bad the ladder formulas below never introduce a common factor.
struct XFraction {
  Integer num;
  Integer den;
};

void strip_common(XFraction& f, const std::set<std::uint64_t>& bad) {
  if (f.den < 0) {
    f.num = -f.num;
    f.den = -f.den;
  }
  if (f.num == 0) {
    f.den = 1;
    return;
  }
  for (std::uint64_t p : bad) {
    if (p == 2) {
      mp_bitcnt_t k = std::min(mpz_scan1(f.num.get_mpz_t(), 0), mpz_scan1(f.den.get_mpz_t(), 0));
      if (k > 0) {
        mpz_tdiv_q_2exp(f.num.get_mpz_t(), f.num.get_mpz_t(), k);
        mpz_tdiv_q_2exp(f.den.get_mpz_t(), f.den.get_mpz_t(), k);
      }
      continue;
    }
    while (mpz_divisible_ui_p(f.num.get_mpz_t(), p) && mpz_divisible_ui_p(f.den.get_mpz_t(), p)) {
      mpz_divexact_ui(f.num.get_mpz_t(), f.num.get_mpz_t(), p);
      mpz_divexact_ui(f.den.get_mpz_t(), f.den.get_mpz_t(), p);
    }
  }
}

}  // namespace

Integer Curve::ladder_denominator(std::uint64_t n) const {
  const Integer& a = config_.a;
  const Integer& b = config_.b;
  const XFraction base{config_.generator.x().get_num(), config_.generator.x().get_den()};

  auto dbl = [&](const XFraction& r) {
    Integer u2 = r.num * r.num, v2 = r.den * r.den;
    XFraction out;
    out.num = u2 * u2 - 2 * a * u2 * v2 - 8 * b * r.num * v2 * r.den + a * a * v2 * v2;
    out.den = 4 * r.den * (r.num * u2 + a * r.num * v2 + b * v2 * r.den);
    strip_common(out, config_.s_bad);
    return out;
  };
  // x(R + S) from x(R), x(S) and x(S - R) = x(P).
  auto diff_add = [&](const XFraction& r, const XFraction& s) {
    Integer cross_sum = r.num * s.den + s.num * r.den;
    Integer cross_diff = r.num * s.den - s.num * r.den;
    Integer dd = r.den * s.den;
    Integer num = 2 * cross_sum * (r.num * s.num + a * dd) + 4 * b * dd * dd;
    Integer den = cross_diff * cross_diff;
    XFraction out;
    out.num = num * base.den - base.num * den;
    out.den = den * base.den;
    strip_common(out, config_.s_bad);
    return out;
  };

  XFraction r = base;
  if (n == 1) return strip_bad(r.den);
  XFraction s = dbl(base);
  int top = 63;
  while (!((n >> top) & 1)) --top;
  for (int bit = top - 1; bit >= 0; --bit) {
    if ((n >> bit) & 1) {
      r = diff_add(r, s);
      s = dbl(s);
    } else {
      s = diff_add(r, s);
      r = dbl(r);
    }
  }
  return strip_bad(r.den);
}

DenomProfile Curve::denom_profile(std::int64_t n, const FactoringBudget& budget) const {
  DenomProfile prof;
  prof.n = n;
  if (n == 0) {
    // Every prime divides d_0 = 0; the support is not representable.
    prof.d = 0;
    prof.complete = false;
    prof.cofactor = 0;
    return prof;
  }
  prof.d = d(n);
  if (prof.d == 0) throw InvariantViolation(std::to_string(n) + "P is the identity: the generator has finite order");
  if (!mpz_perfect_square_p(prof.d.get_mpz_t())) throw InvariantViolation("d_n is not a perfect square");
  Integer e = sqrt(prof.d);
  Factorization f = factor(e, budget);
  for (auto& pp : f.factors) {
    if (is_bad(pp.prime)) throw InvariantViolation("s_bad prime left in d_n");
    prof.support.push_back({pp.prime, 2 * pp.exponent});
  }
  prof.cofactor = f.cofactor * f.cofactor;
  prof.complete = f.complete;
  return prof;
}

}  // namespace edsring
