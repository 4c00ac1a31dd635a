#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace edsring {

using Integer = mpz_class;
using Rational = mpq_class;

Integer to_integer(std::uint64_t v);
Integer to_integer(std::int64_t v);

// Largest e with p^e | n. n must be nonzero.
unsigned valuation(const Integer& n, const Integer& p);
unsigned valuation(const Integer& n, std::uint64_t p);

// Divides out every factor p from n in place and returns the count.
unsigned remove_factor(Integer& n, std::uint64_t p);

bool fits_u64(const Integer& n);
std::uint64_t to_u64(const Integer& n);

// Natural log of |n| for n != 0, accurate for arbitrarily large n.
double log_abs(const Integer& n);

std::string to_string(const Integer& n);
// "num/den" in lowest terms, or just "num" when the denominator is 1.
std::string to_string(const Rational& q);
Rational parse_rational(const std::string& s);
Integer parse_integer(const std::string& s);

Rational abs(const Rational& q);

}  // namespace edsring
