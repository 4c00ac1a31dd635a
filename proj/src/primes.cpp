#include "edsring/primes.hpp"

#include <algorithm>
#include <cmath>

#include "edsring/errors.hpp"

namespace edsring {
namespace {

using u128 = unsigned __int128;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = mul_mod(r, b, m);
    b = mul_mod(b, b, m);
    e >>= 1;
  }
  return r;
}

std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::uint64_t next_prime(std::uint64_t n) {
  std::uint64_t c = n + 1;
  while (!is_prime_u64(c)) ++c;
  return c;
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t n) { return primes_in_range(2, n); }

std::vector<std::uint64_t> primes_in_range(std::uint64_t lo, std::uint64_t hi) {
  std::vector<std::uint64_t> out;
  if (hi < 2 || lo > hi) return out;
  lo = std::max<std::uint64_t>(lo, 2);
  const std::uint64_t root = isqrt(hi);
  std::vector<char> small(root + 1, 1);
  std::vector<std::uint64_t> base;
  for (std::uint64_t i = 2; i <= root; ++i) {
    if (!small[i]) continue;
    base.push_back(i);
    for (std::uint64_t j = i * i; j <= root; j += i) small[j] = 0;
  }
  const std::uint64_t segment = 1 << 20;
  std::vector<char> mark;
  for (std::uint64_t start = lo; start <= hi; start += segment) {
    const std::uint64_t end = std::min(hi, start + segment - 1);
    mark.assign(end - start + 1, 1);
    for (std::uint64_t p : base) {
      std::uint64_t first = std::max(p * p, (start + p - 1) / p * p);
      for (std::uint64_t j = first; j <= end; j += p) mark[j - start] = 0;
    }
    for (std::uint64_t i = start; i <= end; ++i) {
      if (mark[i - start]) out.push_back(i);
    }
    if (end == hi) break;
  }
  return out;
}

PrimeTable::PrimeTable(std::uint64_t limit) : limit_(limit), primes_(primes_up_to(limit)) {}

std::uint64_t PrimeTable::count_up_to(std::uint64_t x) const {
  if (x > limit_) throw Error("prime table too small for pi(" + std::to_string(x) + ")");
  return static_cast<std::uint64_t>(std::upper_bound(primes_.begin(), primes_.end(), x) - primes_.begin());
}

const PrimeTable& shared_primes() {
  static const PrimeTable table(10'000'000);
  return table;
}

std::uint64_t prime_pi(std::uint64_t x) {
  const PrimeTable& t = shared_primes();
  if (x <= t.limit()) return t.count_up_to(x);
  return t.primes().size() + primes_in_range(t.limit() + 1, x).size();
}

std::vector<std::pair<std::uint64_t, unsigned>> factor_u64(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, unsigned>> out;
  if (n < 2) return out;
  for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p) continue;
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

}  // namespace edsring
