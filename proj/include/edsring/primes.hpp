#pragma once

#include <cstdint>
#include <vector>

namespace edsring {

// Deterministic Miller-Rabin for 64-bit inputs.
bool is_prime_u64(std::uint64_t n);

std::uint64_t next_prime(std::uint64_t n);  // smallest prime > n

std::vector<std::uint64_t> primes_up_to(std::uint64_t n);
std::vector<std::uint64_t> primes_in_range(std::uint64_t lo, std::uint64_t hi);

// Sorted table of primes with prime counting below its limit.
class PrimeTable {
 public:
  explicit PrimeTable(std::uint64_t limit);

  std::uint64_t limit() const { return limit_; }
  const std::vector<std::uint64_t>& primes() const { return primes_; }
  // pi(x); x may not exceed limit().
  std::uint64_t count_up_to(std::uint64_t x) const;

 private:
  std::uint64_t limit_;
  std::vector<std::uint64_t> primes_;
};

// Shared table of primes up to 10^7, built on first use.
const PrimeTable& shared_primes();

// pi(x) for any x, sieving beyond the shared table when needed.
std::uint64_t prime_pi(std::uint64_t x);

// (prime, exponent) pairs by trial division.
std::vector<std::pair<std::uint64_t, unsigned>> factor_u64(std::uint64_t n);

}  // namespace edsring
