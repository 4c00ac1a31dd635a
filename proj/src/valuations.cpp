#include "edsring/valuations.hpp"

#include <algorithm>

#include "edsring/errors.hpp"
#include "edsring/modp.hpp"
#include "edsring/primes.hpp"

namespace edsring {
namespace {

void require_good_odd(const Curve& curve, std::uint64_t p) {
  if (curve.is_bad(p)) throw BadPrime("p = " + std::to_string(p) + " lies in s_bad");
  if (p < 3 || !is_prime_u64(p)) throw PreconditionFailed("expected an odd prime, got " + std::to_string(p));
}

}  // namespace

std::string to_string(ValuationMethod m) { return m == ValuationMethod::direct ? "direct" : "growth-law"; }

ValuationRecord valuation_direct(const Curve& curve, std::uint64_t p, std::int64_t n) {
  if (curve.is_bad(p)) throw BadPrime("p = " + std::to_string(p) + " lies in s_bad");
  if (n == 0) throw PreconditionFailed("v_p(d_0) is infinite");
  return {p, n, valuation(curve.d(n), p), ValuationMethod::direct};
}

ValuationRecord valuation_growth(const Curve& curve, std::uint64_t p, std::int64_t n) {
  require_good_odd(curve, p);
  if (n == 0) throw PreconditionFailed("v_p(d_0) is infinite");
  std::uint64_t mag = n < 0 ? static_cast<std::uint64_t>(-n) : static_cast<std::uint64_t>(n);
  std::uint64_t np = point_order(curve, p);
  ValuationRecord rec{p, n, 0, ValuationMethod::growth_law};
  if (mag % np != 0) return rec;
  unsigned base = valuation(curve.d(static_cast<std::int64_t>(np)), p);
  if (base == 0) throw InvariantViolation("p does not divide d_{n_p}");
  std::uint64_t k = mag / np;
  unsigned extra = 0;
  while (k % p == 0) {
    k /= p;
    ++extra;
  }
  rec.v = base + 2 * extra;
  return rec;
}

ValuationRecord valuation(const Curve& curve, std::uint64_t p, std::int64_t n) {
  std::int64_t mag = n < 0 ? -n : n;
  if (mag <= curve.caps().index_cap) return valuation_direct(curve, p, n);
  return valuation_growth(curve, p, n);
}

std::optional<std::int64_t> divisibility_modulus(const Curve& curve, const Integer& r, std::int64_t window) {
  if (r < 2) throw PreconditionFailed("modulus must be at least 2");
  for (std::uint64_t q : curve.config().s_bad)
    if (mpz_divisible_ui_p(r.get_mpz_t(), q)) throw PreconditionFailed("modulus shares a prime with s_bad");
  std::optional<std::int64_t> m;
  for (std::int64_t n = 1; n <= window && !m; ++n)
    if (mpz_divisible_p(curve.d(n).get_mpz_t(), r.get_mpz_t())) m = n;
  for (std::int64_t n = -window; n <= window; ++n) {
    // d_0 = 0 is divisible by everything, so 0 always qualifies.
    bool hit = n == 0 || mpz_divisible_p(curve.d(n).get_mpz_t(), r.get_mpz_t());
    bool expected = n == 0 || (m && n % *m == 0);
    if (hit != expected) {
      throw InvariantViolation("divisibility set of " + to_string(r) + " is not a subgroup: n = " + std::to_string(n));
    }
  }
  return m;
}

Verdict growth_law_check(const Curve& curve, std::uint64_t ell, std::int64_t m, std::uint64_t p) {
  if (curve.is_bad(p)) throw BadPrime("p = " + std::to_string(p) + " lies in s_bad");
  if (m == 0) throw PreconditionFailed("m must be nonzero");
  Integer dm = curve.d(m);
  if (!mpz_divisible_ui_p(dm.get_mpz_t(), p)) throw PreconditionFailed("p does not divide d_m");
  unsigned lhs = valuation(curve.d(static_cast<std::int64_t>(ell) * m), p);
  unsigned rhs = 2 * valuation(to_integer(ell), p) + valuation(dm, p);
  nlohmann::json w = {{"ell", ell}, {"m", m}, {"p", p}, {"v_p(d_lm)", lhs}, {"2v_p(l)+v_p(d_m)", rhs}};
  return lhs == rhs ? Verdict::yes(w) : Verdict::no(w);
}

Integer strip_common_primes(Integer v, const Integer& other) {
  Integer g;
  for (;;) {
    mpz_gcd(g.get_mpz_t(), v.get_mpz_t(), other.get_mpz_t());
    if (g == 1) return v;
    v /= g;
  }
}

Integer primitive_part(const Curve& curve, std::uint64_t ell, std::uint64_t m) {
  Integer both = curve.d(static_cast<std::int64_t>(ell)) * curve.d(static_cast<std::int64_t>(m));
  return strip_common_primes(curve.d(static_cast<std::int64_t>(ell * m)), both);
}

Verdict primitive_divisor_witness(const Curve& curve, std::uint64_t ell, std::uint64_t m,
                                  const FactoringBudget& budget) {
  if (!is_prime_u64(ell) || !is_prime_u64(m)) throw PreconditionFailed("ell and m must be prime");
  Integer prim = primitive_part(curve, ell, m);
  if (prim == 1) return Verdict::no({{"index", ell * m}, {"primitive_part", "1"}});
  Factorization f = factor(prim, budget);
  if (f.factors.empty()) {
    return Verdict::unknown_at("factoring budget", {{"index", ell * m}, {"primitive_part_digits", prim.get_str().size()}});
  }
  nlohmann::json primes = nlohmann::json::array();
  for (auto& pp : f.factors) primes.push_back(to_string(pp.prime));
  const Integer& q = f.factors.back().prime;
  nlohmann::json w = {{"index", ell * m}, {"prime", to_string(q)}, {"primes", primes}, {"complete", f.complete}};
  if (fits_u64(q)) {
    std::uint64_t nq = point_order(curve, to_u64(q));
    if (nq != ell * m) throw InvariantViolation("primitive divisor with n_q != ell m");
    w["n_q"] = nq;
  }
  return Verdict::yes(w);
}

DenomProfile profile_by_order_sweep(const Curve& curve, std::int64_t n, std::uint64_t sweep_bound) {
  DenomProfile prof;
  prof.n = n;
  if (n == 0) {
    prof.d = 0;
    prof.complete = false;
    prof.cofactor = 0;
    return prof;
  }
  std::int64_t mag = n < 0 ? -n : n;
  prof.d = curve.d(mag);
  Integer rest = prof.d;
  if (sweep_bound >= 3) {
    for (std::uint64_t q : primes_in_range(3, sweep_bound)) {
      if (curve.is_bad(q)) continue;
      if (!multiple_vanishes_mod(curve, static_cast<std::uint64_t>(mag), q)) continue;
      unsigned v = valuation_growth(curve, q, mag).v;
      for (unsigned i = 0; i < v; ++i) {
        if (!mpz_divisible_ui_p(rest.get_mpz_t(), q)) throw InvariantViolation("growth-law valuation overshoots d_n");
        rest /= q;
      }
      if (mpz_divisible_ui_p(rest.get_mpz_t(), q)) throw InvariantViolation("growth-law valuation undershoots d_n");
      prof.support.push_back({to_integer(q), v});
    }
  }
  if (rest != 1) {
    Integer root = rest;
    unsigned e = 1;
    while (!is_probable_prime(root) && mpz_perfect_square_p(root.get_mpz_t()) && root > 1) {
      root = sqrt(root);
      e *= 2;
    }
    if (is_probable_prime(root) && root > sweep_bound) {
      prof.support.push_back({root, e});
      rest = 1;
    }
  }
  std::sort(prof.support.begin(), prof.support.end(),
            [](const PrimePower& l, const PrimePower& r) { return l.prime < r.prime; });
  prof.cofactor = rest;
  prof.complete = rest == 1;
  return prof;
}

}  // namespace edsring
