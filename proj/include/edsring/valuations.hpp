#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "edsring/curve.hpp"
#include "edsring/verdict.hpp"

namespace edsring {

enum class ValuationMethod { direct, growth_law };

struct ValuationRecord {
  std::uint64_t p = 0;
  std::int64_t n = 0;
  unsigned v = 0;  // v_p(d_n)
  ValuationMethod method = ValuationMethod::direct;
};

std::string to_string(ValuationMethod m);

// v_p(d_n) read off the exact d_n.
ValuationRecord valuation_direct(const Curve& curve, std::uint64_t p, std::int64_t n);

// v_p(d_n) = v_p(d_{n_p}) + 2 v_p(n / n_p) when n_p | n, else 0. Odd good p only.
// Needs d_{n_p} exactly, so n_p must be under the index cap.
ValuationRecord valuation_growth(const Curve& curve, std::uint64_t p, std::int64_t n);

// Direct when n is under the index cap, growth law otherwise.
ValuationRecord valuation(const Curve& curve, std::uint64_t p, std::int64_t n);

// Least m in [1, N] with r | d_m, after checking that the qualifying n in
// [-N, N] are exactly the multiples of m there. Throws InvariantViolation if not.
std::optional<std::int64_t> divisibility_modulus(const Curve& curve, const Integer& r, std::int64_t window);

// v_p(d_{ell m}) == 2 v_p(ell) + v_p(d_m), with p | d_m required.
Verdict growth_law_check(const Curve& curve, std::uint64_t ell, std::int64_t m, std::uint64_t p);

// d_{ell m} with every prime of d_ell * d_m divided out. For primes ell, m
// its prime factors are exactly the q with n_q = ell m.
Integer primitive_part(const Curve& curve, std::uint64_t ell, std::uint64_t m);

// Removes from v every prime that also divides other.
Integer strip_common_primes(Integer v, const Integer& other);

// Certified true with a prime q, n_q = ell m; certified false when the
// primitive part is 1; unknown when it could not be split within budget.
Verdict primitive_divisor_witness(const Curve& curve, std::uint64_t ell, std::uint64_t m, const FactoringBudget& budget);

// Profile of d_n built without generic factoring: every good q <= sweep_bound
// with n_q | n is divided out to its growth-law valuation, and what remains is
// accepted only if it is 1 or a power of a single probable prime.
DenomProfile profile_by_order_sweep(const Curve& curve, std::int64_t n, std::uint64_t sweep_bound);

}  // namespace edsring
