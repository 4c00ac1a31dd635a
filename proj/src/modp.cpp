#include "edsring/modp.hpp"

#include <cmath>
#include <numeric>
#include <unordered_map>

#include "edsring/errors.hpp"
#include "edsring/primes.hpp"

namespace edsring {
namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mul_mod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }
u64 add_mod(u64 a, u64 b, u64 m) {
  u64 s = a + b;
  return (s >= m || s < a) ? s - m : s;
}
u64 sub_mod(u64 a, u64 b, u64 m) { return a >= b ? a - b : a + (m - b); }

u64 pow_mod(u64 b, u64 e, u64 m) {
  u64 r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = mul_mod(r, b, m);
    b = mul_mod(b, b, m);
    e >>= 1;
  }
  return r;
}

u64 inv_mod(u64 a, u64 m) { return pow_mod(a, m - 2, m); }  // m prime

u64 reduce_integer(const Integer& v, u64 p) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), v.get_mpz_t(), to_integer(p).get_mpz_t());
  return to_u64(r);
}

u64 reduce_rational(const Rational& q, u64 p) {
  u64 den = reduce_integer(q.get_den(), p);
  if (den == 0) throw BadPrime("denominator vanishes modulo " + std::to_string(p));
  return mul_mod(reduce_integer(q.get_num(), p), inv_mod(den, p), p);
}

u64 isqrt(u64 n) {
  auto r = static_cast<u64>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

u64 splitmix(u64& state) {
  u64 z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Jacobian coordinates for fast scalar multiplication.
struct Jac {
  u64 X, Y, Z;
};

}  // namespace

ReducedCurve::ReducedCurve(u64 a, u64 b, u64 p) : a_(a % p), b_(b % p), p_(p) {
  if (p < 3) throw BadPrime("reduction requires an odd prime");
  u64 disc = add_mod(mul_mod(4, pow_mod(a_, 3, p), p), mul_mod(27, mul_mod(b_, b_, p), p), p);
  if (disc == 0) throw BadPrime("singular reduction modulo " + std::to_string(p));
}

ReducedCurve ReducedCurve::of(const Curve& curve, u64 p) {
  if (curve.is_bad(p)) throw BadPrime("p = " + std::to_string(p) + " lies in s_bad");
  const CurveConfig& cfg = curve.config();
  ReducedCurve rc(reduce_integer(cfg.a, p), reduce_integer(cfg.b, p), p);
  rc.generator_ = {reduce_rational(cfg.generator.x(), p), reduce_rational(cfg.generator.y(), p), false};
  if (!rc.contains(rc.generator_)) throw InvariantViolation("generator does not reduce onto the curve");
  return rc;
}

bool ReducedCurve::contains(const ModPoint& pt) const {
  if (pt.infinity) return true;
  u64 rhs = add_mod(add_mod(mul_mod(mul_mod(pt.x, pt.x, p_), pt.x, p_), mul_mod(a_, pt.x, p_), p_), b_, p_);
  return mul_mod(pt.y, pt.y, p_) == rhs;
}

ModPoint ReducedCurve::negate(const ModPoint& pt) const {
  if (pt.infinity) return pt;
  return {pt.x, pt.y == 0 ? 0 : p_ - pt.y, false};
}

ModPoint ReducedCurve::add(const ModPoint& lhs, const ModPoint& rhs) const {
  if (lhs.infinity) return rhs;
  if (rhs.infinity) return lhs;
  u64 lambda;
  if (lhs.x == rhs.x) {
    if (add_mod(lhs.y, rhs.y, p_) == 0) return {};
    u64 num = add_mod(mul_mod(3, mul_mod(lhs.x, lhs.x, p_), p_), a_, p_);
    lambda = mul_mod(num, inv_mod(mul_mod(2, lhs.y, p_), p_), p_);
  } else {
    lambda = mul_mod(sub_mod(rhs.y, lhs.y, p_), inv_mod(sub_mod(rhs.x, lhs.x, p_), p_), p_);
  }
  u64 x3 = sub_mod(sub_mod(mul_mod(lambda, lambda, p_), lhs.x, p_), rhs.x, p_);
  u64 y3 = sub_mod(mul_mod(lambda, sub_mod(lhs.x, x3, p_), p_), lhs.y, p_);
  return {x3, y3, false};
}

ModPoint ReducedCurve::mul(u64 n, const ModPoint& pt) const {
  if (pt.infinity || n == 0) return {};
  const u64 p = p_;
  auto dbl = [&](const Jac& q) -> Jac {
    if (q.Z == 0 || q.Y == 0) return {1, 1, 0};
    u64 z2 = mul_mod(q.Z, q.Z, p);
    u64 m = add_mod(mul_mod(3, mul_mod(q.X, q.X, p), p), mul_mod(a_, mul_mod(z2, z2, p), p), p);
    u64 y2 = mul_mod(q.Y, q.Y, p);
    u64 s = mul_mod(4, mul_mod(q.X, y2, p), p);
    Jac r;
    r.X = sub_mod(mul_mod(m, m, p), add_mod(s, s, p), p);
    r.Y = sub_mod(mul_mod(m, sub_mod(s, r.X, p), p), mul_mod(8, mul_mod(y2, y2, p), p), p);
    r.Z = mul_mod(2, mul_mod(q.Y, q.Z, p), p);
    return r;
  };
  // Mixed addition with an affine second operand.
  auto add_affine = [&](const Jac& q, const ModPoint& o) -> Jac {
    if (q.Z == 0) return {o.x, o.y, 1};
    u64 z2 = mul_mod(q.Z, q.Z, p);
    u64 u2 = mul_mod(o.x, z2, p);
    u64 s2 = mul_mod(o.y, mul_mod(z2, q.Z, p), p);
    u64 h = sub_mod(u2, q.X, p);
    u64 r = sub_mod(s2, q.Y, p);
    if (h == 0) {
      if (r == 0) return dbl(q);
      return {1, 1, 0};
    }
    u64 h2 = mul_mod(h, h, p), h3 = mul_mod(h2, h, p);
    u64 xh2 = mul_mod(q.X, h2, p);
    Jac out;
    out.X = sub_mod(sub_mod(mul_mod(r, r, p), h3, p), add_mod(xh2, xh2, p), p);
    out.Y = sub_mod(mul_mod(r, sub_mod(xh2, out.X, p), p), mul_mod(q.Y, h3, p), p);
    out.Z = mul_mod(q.Z, h, p);
    return out;
  };
  Jac acc{1, 1, 0};
  int top = 63;
  while (!((n >> top) & 1)) --top;
  for (int bit = top; bit >= 0; --bit) {
    acc = dbl(acc);
    if ((n >> bit) & 1) acc = add_affine(acc, pt);
  }
  if (acc.Z == 0) return {};
  u64 zi = inv_mod(acc.Z, p);
  u64 zi2 = mul_mod(zi, zi, p);
  return {mul_mod(acc.X, zi2, p), mul_mod(acc.Y, mul_mod(zi2, zi, p), p), false};
}

std::uint64_t ReducedCurve::count_points_enumeration() const {
  std::vector<char> square(p_, 0);
  for (u64 v = 0; v < p_; ++v) square[mul_mod(v, v, p_)] = 1;
  u64 count = 1;
  for (u64 x = 0; x < p_; ++x) {
    u64 f = add_mod(add_mod(mul_mod(mul_mod(x, x, p_), x, p_), mul_mod(a_, x, p_), p_), b_, p_);
    if (f == 0) count += 1;
    else if (square[f]) count += 2;
  }
  return count;
}

std::optional<std::uint64_t> ReducedCurve::sqrt_mod(u64 v) const {
  v %= p_;
  if (v == 0) return 0;
  if (pow_mod(v, (p_ - 1) / 2, p_) != 1) return std::nullopt;
  if (p_ % 4 == 3) return pow_mod(v, (p_ + 1) / 4, p_);
  // Tonelli-Shanks.
  u64 q = p_ - 1;
  unsigned s = 0;
  while ((q & 1) == 0) {
    q >>= 1;
    ++s;
  }
  u64 z = 2;
  while (pow_mod(z, (p_ - 1) / 2, p_) != p_ - 1) ++z;
  u64 m = s, c = pow_mod(z, q, p_), t = pow_mod(v, q, p_), r = pow_mod(v, (q + 1) / 2, p_);
  while (t != 1) {
    u64 i = 0, tt = t;
    while (tt != 1) {
      tt = mul_mod(tt, tt, p_);
      ++i;
    }
    u64 b = c;
    for (u64 j = 0; j + 1 < m - i; ++j) b = mul_mod(b, b, p_);
    m = i;
    c = mul_mod(b, b, p_);
    t = mul_mod(t, c, p_);
    r = mul_mod(r, b, p_);
  }
  return r;
}

ModPoint ReducedCurve::random_point(u64& state) const {
  for (;;) {
    u64 x = splitmix(state) % p_;
    u64 f = add_mod(add_mod(mul_mod(mul_mod(x, x, p_), x, p_), mul_mod(a_, x, p_), p_), b_, p_);
    if (auto y = sqrt_mod(f)) return {x, *y, false};
  }
}

std::uint64_t ReducedCurve::order_of(const ModPoint& pt, u64 multiple) const {
  if (!mul(multiple, pt).infinity) throw InvariantViolation("order_of: multiple does not annihilate the point");
  u64 order = multiple;
  for (auto [q, e] : factor_u64(multiple)) {
    for (unsigned i = 0; i < e && order % q == 0; ++i) {
      if (!mul(order / q, pt).infinity) break;
      order /= q;
    }
  }
  return order;
}

std::optional<std::uint64_t> ReducedCurve::group_order_from_points(int attempts) const {
  const u64 width = isqrt(4 * p_);  // floor(2 sqrt p)
  const u64 lo = p_ + 1 - width, hi = p_ + 1 + width;
  const u64 step = isqrt(hi - lo + 1) + 1;
  u64 state = p_ * 0x2545F4914F6CDD1DULL + a_ * 31 + b_;
  u64 exponent = 1;
  for (int attempt = 0; attempt < attempts; ++attempt) {
    ModPoint q = random_point(state);
    // Baby steps j*q, 0 < j < step, keyed by x.
    std::unordered_map<u64, std::vector<u64>> baby;
    ModPoint cur = q;
    for (u64 j = 1; j < step; ++j) {
      if (cur.infinity) break;
      baby[cur.x].push_back(j);
      cur = add(cur, q);
    }
    const ModPoint giant = mul(step, q);
    ModPoint t = mul(lo, q);
    std::optional<u64> found;
    for (u64 base = lo; base <= hi + step && !found; base += step) {
      if (t.infinity) {
        found = base;
        break;
      }
      auto it = baby.find(t.x);
      if (it != baby.end()) {
        for (u64 j : it->second) {
          for (u64 m : {base + j, base >= j ? base - j : 0}) {
            if (m > 0 && mul(m, q).infinity) {
              found = m;
              break;
            }
          }
          if (found) break;
        }
      }
      t = add(t, giant);
    }
    if (!found) throw InvariantViolation("baby-step giant-step found no annihilator in the Hasse interval");
    u64 ord = order_of(q, *found);
    exponent = std::lcm(exponent, ord);
    u64 first = (lo + exponent - 1) / exponent * exponent;
    if (first <= hi && first + exponent > hi) return first;
  }
  return std::nullopt;
}

std::uint64_t ReducedCurve::count_points_bsgs() const {
  if (auto n = group_order_from_points(24)) return *n;
  // Mestre: for p > 229 either E or its quadratic twist has a point whose
  // order pins the group order inside the Hasse interval.
  u64 d = 2;
  while (pow_mod(d, (p_ - 1) / 2, p_) != p_ - 1) ++d;
  ReducedCurve twist(mul_mod(a_, mul_mod(d, d, p_), p_), mul_mod(b_, mul_mod(d, mul_mod(d, d, p_), p_), p_), p_);
  if (auto n = twist.group_order_from_points(24)) return 2 * p_ + 2 - *n;
  throw ComputationInfeasible("point counting failed to isolate #E(F_p) for p = " + std::to_string(p_));
}

std::uint64_t ReducedCurve::count_points(u64 enumeration_limit) const {
  if (p_ <= enumeration_limit || p_ <= 229) return count_points_enumeration();
  return count_points_bsgs();
}

std::uint64_t count_points(const Curve& curve, u64 p) { return ReducedCurve::of(curve, p).count_points(); }

std::uint64_t point_order(const Curve& curve, u64 p) { return reduce(curve, p).generator_order; }

ReducedCurveData reduce(const Curve& curve, u64 p) {
  ReducedCurve rc = ReducedCurve::of(curve, p);
  ReducedCurveData out;
  out.p = p;
  out.group_order = rc.count_points();
  out.order_factorization = factor_u64(out.group_order);
  out.generator_order = rc.order_of(rc.generator(), out.group_order);
  return out;
}

bool multiple_vanishes_mod(const Curve& curve, u64 n, u64 p) {
  ReducedCurve rc = ReducedCurve::of(curve, p);
  return rc.mul(n, rc.generator()).infinity;
}

void order_sweep(const Curve& curve, u64 p_max, const std::function<void(const ReducedCurveData&)>& sink) {
  if (p_max < 3) return;
  for (u64 p : primes_in_range(3, p_max)) {
    if (curve.is_bad(p)) continue;
    sink(reduce(curve, p));
  }
}

std::vector<ReducedCurveData> order_sweep(const Curve& curve, u64 p_max) {
  std::vector<ReducedCurveData> out;
  order_sweep(curve, p_max, [&](const ReducedCurveData& r) { out.push_back(r); });
  return out;
}

unsigned omega(u64 n) {
  if (n == 0) throw Error("omega(0) is undefined");
  return static_cast<unsigned>(factor_u64(n).size());
}

nlohmann::ordered_json to_json(const ReducedCurveData& r) {
  nlohmann::ordered_json j;
  j["p"] = r.p;
  j["order"] = r.group_order;
  j["n_p"] = r.generator_order;
  nlohmann::ordered_json f = nlohmann::ordered_json::array();
  for (auto [q, e] : r.order_factorization) f.push_back({q, e});
  j["factors"] = f;
  return j;
}

std::uint64_t hasse_floor(std::uint64_t n) {
  double r = std::sqrt(static_cast<double>(n)) - 1.0;
  if (r <= 2.0) return 2;
  auto f = static_cast<std::uint64_t>(r * r);
  return f > 4 ? f - 4 : 2;
}

}  // namespace edsring
