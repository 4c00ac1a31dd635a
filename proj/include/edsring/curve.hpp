#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "edsring/bigint.hpp"
#include "edsring/factor.hpp"

namespace edsring {

// A point of E(Q) in lowest-terms affine coordinates, or the identity O.
class RationalPoint {
 public:
  RationalPoint() = default;  // identity
  RationalPoint(Rational x, Rational y);

  static RationalPoint identity() { return {}; }

  bool is_identity() const { return identity_; }
  const Rational& x() const { return x_; }
  const Rational& y() const { return y_; }

  RationalPoint operator-() const;
  bool operator==(const RationalPoint& other) const;

 private:
  bool identity_ = true;
  Rational x_;
  Rational y_;
};

// Hypotheses the construction relies on but does not verify.
struct TrustedHypotheses {
  bool rank_one = true;
  bool torsion_free = true;
  bool connected_real_locus = true;
  bool non_cm = true;
  std::string provenance;
};

struct CurveConfig {
  Integer a;
  Integer b;
  RationalPoint generator;
  std::set<std::uint64_t> s_bad;
  TrustedHypotheses hypotheses;

  // y^2 = x^3 + x + 1 with P = (0, 1) and s_bad = {2, 31}.
  static CurveConfig reference();

  // Builds a configuration whose s_bad is the discriminant primes plus the
  // primes of the generator's denominators.
  static CurveConfig from_model(Integer a, Integer b, RationalPoint generator, TrustedHypotheses hyp = {});

  Integer discriminant() const;  // -16(4a^3 + 27b^2)

  // Throws InvalidConfig / SingularCurve / NotOnCurve if an invariant fails.
  void validate() const;

  // Stable hex digest of (a, b, generator, s_bad).
  std::string fingerprint() const;
};

// Primes dividing -16(4a^3 + 27b^2); always contains 2.
std::set<std::uint64_t> derive_bad_primes(const Integer& a, const Integer& b);

struct DenomProfile {
  std::int64_t n = 0;
  Integer d;                         // d_n
  std::vector<PrimePower> support;   // sorted (prime, v_p(d_n))
  bool complete = true;
  Integer cofactor = 1;              // unfactored part of d_n

  std::vector<Integer> primes() const;
  bool has_prime(const Integer& p) const;
};

struct ExactCaps {
  // Largest |n| for which n*P (or d_n) is computed exactly.
  std::int64_t index_cap = 10'000;
  // Coordinates of n*P are only held in memory below this index.
  std::int64_t memo_points_below = 400;
  std::int64_t memo_denominators_below = 1'000;
};

// The configured curve together with memoised multiples of the generator.
// Thread-safe: the memo tables are the only mutable state.
class Curve {
 public:
  explicit Curve(CurveConfig config, ExactCaps caps = {});

  const CurveConfig& config() const { return config_; }
  const ExactCaps& caps() const { return caps_; }

  bool is_bad(std::uint64_t p) const { return config_.s_bad.count(p) != 0; }
  bool is_bad(const Integer& p) const;

  bool contains(const RationalPoint& pt) const;
  RationalPoint add(const RationalPoint& p1, const RationalPoint& p2) const;
  RationalPoint twice(const RationalPoint& pt) const;
  RationalPoint scalar_mul(std::int64_t n, const RationalPoint& pt) const;

  // n*P for the configured generator.
  RationalPoint multiple(std::int64_t n) const;

  // d_n: the prime-to-s_bad part of the denominator of x(nP); d_0 = 0.
  // Uses an x-only Montgomery ladder, so no coordinates of nP are formed.
  Integer d(std::int64_t n) const;

  // d_n from the full affine coordinates of nP (reference path).
  Integer d_from_point(std::int64_t n) const;

  // Prime-to-s_bad part of a positive integer.
  Integer strip_bad(Integer v) const;

  // Exact profile: trial division plus Pollard rho within budget.
  DenomProfile denom_profile(std::int64_t n, const FactoringBudget& budget) const;

  void check_index(std::int64_t n) const;  // throws ComputationInfeasible

 private:
  Integer ladder_denominator(std::uint64_t n) const;

  CurveConfig config_;
  ExactCaps caps_;
  mutable std::mutex mutex_;
  mutable std::map<std::int64_t, RationalPoint> points_;
  mutable std::map<std::int64_t, Integer> denominators_;
};

}  // namespace edsring
