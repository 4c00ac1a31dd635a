#include "edsring/factor.hpp"

#include <algorithm>
#include <map>

#include "edsring/errors.hpp"
#include "edsring/primes.hpp"

namespace edsring {

bool is_probable_prime(const Integer& n) {
  if (n < 2) return false;
  return mpz_probab_prime_p(n.get_mpz_t(), 30) != 0;
}

std::vector<PrimePower> peel_small_primes(Integer& n, std::uint64_t bound) {
  std::vector<PrimePower> out;
  if (n == 0) throw Error("cannot peel primes from zero");
  const PrimeTable& table = shared_primes();
  if (bound > table.limit()) bound = table.limit();
  for (std::uint64_t p : table.primes()) {
    if (p > bound || n == 1) break;
    if (!mpz_divisible_ui_p(n.get_mpz_t(), p)) continue;
    unsigned e = remove_factor(n, p);
    out.push_back({to_integer(p), e});
  }
  return out;
}

Integer pollard_rho(const Integer& n, std::uint64_t iterations, unsigned seed) {
  if (n % 2 == 0) return 2;
  // Brent's cycle detection with batched gcds.
  Integer c = 1 + seed;
  Integer y = 2 + seed, x, ys, q = 1, g = 1;
  const std::uint64_t batch = 128;
  std::uint64_t r = 1, done = 0;
  auto step = [&](Integer& v) {
    v = v * v + c;
    mpz_mod(v.get_mpz_t(), v.get_mpz_t(), n.get_mpz_t());
  };
  while (g == 1) {
    x = y;
    for (std::uint64_t i = 0; i < r; ++i) step(y);
    std::uint64_t k = 0;
    while (k < r && g == 1) {
      ys = y;
      const std::uint64_t lim = std::min(batch, r - k);
      for (std::uint64_t i = 0; i < lim; ++i) {
        step(y);
        Integer diff = x - y;
        q *= abs(diff);
        mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
      }
      g = gcd(q, n);
      k += lim;
      done += lim;
      if (done > iterations) break;
    }
    if (done > iterations && g == 1) return 0;
    r *= 2;
  }
  if (g == n) {
    // Batched product overshot; back up one step at a time.
    do {
      step(ys);
      Integer diff = x - ys;
      g = gcd(abs(diff), n);
    } while (g == 1);
  }
  if (g == n) return 0;
  return g;
}

namespace {

// Splits n completely when the budget allows; composites that resist are
// appended to `stuck`.
void split(const Integer& n, const FactoringBudget& budget, std::map<Integer, unsigned>& primes,
           std::vector<Integer>& stuck) {
  if (n == 1) return;
  if (mpz_sizeinbase(n.get_mpz_t(), 2) > budget.max_bits) {
    stuck.push_back(n);
    return;
  }
  if (is_probable_prime(n)) {
    primes[n] += 1;
    return;
  }
  if (mpz_perfect_square_p(n.get_mpz_t())) {
    Integer r = sqrt(n);
    split(r, budget, primes, stuck);
    split(r, budget, primes, stuck);
    return;
  }
  for (unsigned attempt = 0; attempt < budget.rho_attempts; ++attempt) {
    Integer f = pollard_rho(n, budget.rho_iterations, attempt);
    if (f != 0 && f != 1 && f != n) {
      split(f, budget, primes, stuck);
      split(n / f, budget, primes, stuck);
      return;
    }
  }
  stuck.push_back(n);
}

}  // namespace

Factorization factor(const Integer& n, const FactoringBudget& budget) {
  if (n < 1) throw Error("factor: input must be positive");
  Factorization out;
  Integer rest = n;
  std::map<Integer, unsigned> primes;
  for (auto& pp : peel_small_primes(rest, budget.trial_bound)) primes[pp.prime] += pp.exponent;
  std::vector<Integer> stuck;
  split(rest, budget, primes, stuck);
  for (auto& [p, e] : primes) out.factors.push_back({p, e});
  out.cofactor = 1;
  for (auto& s : stuck) out.cofactor *= s;
  out.complete = out.cofactor == 1;
  return out;
}

Integer product(const std::vector<PrimePower>& factors) {
  Integer r = 1;
  for (auto& f : factors) {
    Integer t;
    mpz_pow_ui(t.get_mpz_t(), f.prime.get_mpz_t(), f.exponent);
    r *= t;
  }
  return r;
}

}  // namespace edsring
