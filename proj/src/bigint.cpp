#include "edsring/bigint.hpp"

#include <cmath>

#include "edsring/errors.hpp"

namespace edsring {

Integer to_integer(std::uint64_t v) {
  Integer r;
  mpz_import(r.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
  return r;
}

Integer to_integer(std::int64_t v) {
  if (v >= 0) return to_integer(static_cast<std::uint64_t>(v));
  return -to_integer(static_cast<std::uint64_t>(-(v + 1)) + 1);
}

unsigned valuation(const Integer& n, const Integer& p) {
  if (n == 0) throw Error("valuation of zero");
  Integer t = n;
  return static_cast<unsigned>(mpz_remove(t.get_mpz_t(), t.get_mpz_t(), p.get_mpz_t()));
}

unsigned valuation(const Integer& n, std::uint64_t p) { return valuation(n, to_integer(p)); }

unsigned remove_factor(Integer& n, std::uint64_t p) {
  if (n == 0) return 0;
  Integer q = to_integer(p);
  return static_cast<unsigned>(mpz_remove(n.get_mpz_t(), n.get_mpz_t(), q.get_mpz_t()));
}

bool fits_u64(const Integer& n) { return n >= 0 && mpz_sizeinbase(n.get_mpz_t(), 2) <= 64; }

std::uint64_t to_u64(const Integer& n) {
  if (!fits_u64(n)) throw Error("integer does not fit in 64 bits: " + n.get_str());
  std::uint64_t v = 0;
  mpz_export(&v, nullptr, 1, sizeof(v), 0, 0, n.get_mpz_t());
  return v;
}

double log_abs(const Integer& n) {
  if (n == 0) throw Error("log of zero");
  long exp = 0;
  double mant = mpz_get_d_2exp(&exp, n.get_mpz_t());
  return std::log(std::fabs(mant)) + static_cast<double>(exp) * std::log(2.0);
}

std::string to_string(const Integer& n) { return n.get_str(); }

std::string to_string(const Rational& q) { return q.get_str(); }

Rational parse_rational(const std::string& s) {
  Rational q;
  if (q.set_str(s, 10) != 0) throw Error("not a rational: " + s);
  if (q.get_den() == 0) throw Error("zero denominator: " + s);
  q.canonicalize();
  return q;
}

Integer parse_integer(const std::string& s) {
  Integer n;
  if (n.set_str(s, 10) != 0) throw Error("not an integer: " + s);
  return n;
}

Rational abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

}  // namespace edsring
