#pragma once
// Test-only reference implementations. They share nothing with the library
// beyond GMP integers, so agreement with the production code means something.

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

namespace oracle {

// Fraction kept as a pair of integers, normalised by hand.
struct Frac {
  mpz_class num = 0, den = 1;
  Frac() = default;
  Frac(mpz_class n, mpz_class d = 1) : num(std::move(n)), den(std::move(d)) { norm(); }
  void norm() {
    if (den < 0) {
      num = -num;
      den = -den;
    }
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }
  friend Frac operator+(const Frac& a, const Frac& b) { return {a.num * b.den + b.num * a.den, a.den * b.den}; }
  friend Frac operator-(const Frac& a, const Frac& b) { return {a.num * b.den - b.num * a.den, a.den * b.den}; }
  friend Frac operator*(const Frac& a, const Frac& b) { return {a.num * b.num, a.den * b.den}; }
  friend Frac operator/(const Frac& a, const Frac& b) { return {a.num * b.den, a.den * b.num}; }
  bool operator==(const Frac& o) const { return num == o.num && den == o.den; }
};

struct Pt {
  bool inf = true;
  Frac x, y;
};

// Chord and tangent on y^2 = x^3 + a x + b, written out from the formulas.
struct NaiveCurve {
  long a, b;
  Pt add(const Pt& p, const Pt& q) const {
    if (p.inf) return q;
    if (q.inf) return p;
    Frac lam;
    if (p.x == q.x) {
      if ((p.y + q.y).num == 0) return {};
      lam = (Frac(3) * p.x * p.x + Frac(a)) / (Frac(2) * p.y);
    } else {
      lam = (q.y - p.y) / (q.x - p.x);
    }
    Pt r;
    r.inf = false;
    r.x = lam * lam - p.x - q.x;
    r.y = lam * (p.x - r.x) - p.y;
    return r;
  }
  // Repeated addition; slow on purpose.
  Pt mul(int n, const Pt& p) const {
    Pt acc;
    for (int i = 0; i < n; ++i) acc = add(acc, p);
    return acc;
  }
};

inline std::map<std::uint64_t, unsigned> trial_factor(mpz_class n) {
  std::map<std::uint64_t, unsigned> out;
  for (std::uint64_t q = 2; mpz_class(q) * q <= n; ++q) {
    while (mpz_divisible_ui_p(n.get_mpz_t(), q)) {
      n /= q;
      ++out[q];
    }
  }
  if (n > 1) out[n.get_ui()]++;
  return out;
}

struct Bounded {
  std::map<std::uint64_t, unsigned> factors;
  bool complete = false;
};
// Trial division by every integer up to bound; complete when the leftover is 1 or prime by size.
inline Bounded trial_factor_bounded(mpz_class n, std::uint64_t bound) {
  Bounded out;
  std::uint64_t q = 2;
  for (; q <= bound && mpz_class(q) * q <= n; ++q) {
    while (mpz_divisible_ui_p(n.get_mpz_t(), q)) {
      n /= q;
      ++out.factors[q];
    }
  }
  if (n == 1) {
    out.complete = true;
  } else if (mpz_class(q) * q > n) {
    out.factors[n.get_ui()]++;
    out.complete = true;
  }
  return out;
}

// #E(F_p) by brute force over all (x, y).
inline std::uint64_t brute_count(long a, long b, std::uint64_t p) {
  std::uint64_t c = 1;
  for (std::uint64_t x = 0; x < p; ++x)
    for (std::uint64_t y = 0; y < p; ++y) {
      __int128 lhs = (__int128)y * y % p;
      __int128 rhs = (((__int128)x * x % p) * x + (__int128)((a % (long)p + (long)p) % (long)p) * x + ((b % (long)p + (long)p) % (long)p)) % p;
      if (lhs == rhs) ++c;
    }
  return c;
}

}  // namespace oracle
