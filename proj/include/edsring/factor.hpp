#pragma once

#include <cstdint>
#include <vector>

#include "edsring/bigint.hpp"

namespace edsring {

struct FactoringBudget {
  std::uint64_t trial_bound = 1'000'000;
  std::uint64_t rho_iterations = 200'000;  // per attempt
  unsigned rho_attempts = 4;
  // Composites wider than this skip primality testing and rho and go
  // straight to the cofactor.
  std::uint64_t max_bits = 4096;
};

struct PrimePower {
  Integer prime;
  unsigned exponent = 0;

  bool operator==(const PrimePower&) const = default;
};

struct Factorization {
  std::vector<PrimePower> factors;  // sorted by prime
  Integer cofactor = 1;             // unfactored composite part, 1 when complete
  bool complete = true;
};

// BPSW-strength probable-prime test.
bool is_probable_prime(const Integer& n);

// Trial division below budget.trial_bound, then Brent's variant of Pollard rho
// on the remainder. Never fails: whatever cannot be split within budget is
// returned as the cofactor. n must be >= 1.
Factorization factor(const Integer& n, const FactoringBudget& budget);

// Splits n by rho; returns a nontrivial factor or 0 when the budget runs out.
Integer pollard_rho(const Integer& n, std::uint64_t iterations, unsigned seed);

// Divides out every prime q <= bound from n, returning them with exponents.
// n is left holding the part with all prime factors above bound.
std::vector<PrimePower> peel_small_primes(Integer& n, std::uint64_t bound);

Integer product(const std::vector<PrimePower>& factors);

}  // namespace edsring
