#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include <json.hpp>

#include "edsring/curve.hpp"

namespace edsring {

struct ReducedCurveData {
  std::uint64_t p = 0;
  std::uint64_t group_order = 0;      // #E(F_p)
  std::uint64_t generator_order = 0;  // n_p
  std::vector<std::pair<std::uint64_t, unsigned>> order_factorization;
};

struct ModPoint {
  std::uint64_t x = 0;
  std::uint64_t y = 0;
  bool infinity = true;

  bool operator==(const ModPoint&) const = default;
};

// E: y^2 = x^3 + ax + b over F_p, p an odd prime of good reduction.
class ReducedCurve {
 public:
  ReducedCurve(std::uint64_t a, std::uint64_t b, std::uint64_t p);

  // Reduction of the configured curve and its generator; throws BadPrime for p in s_bad.
  static ReducedCurve of(const Curve& curve, std::uint64_t p);

  std::uint64_t p() const { return p_; }
  const ModPoint& generator() const { return generator_; }

  bool contains(const ModPoint& pt) const;
  ModPoint add(const ModPoint& lhs, const ModPoint& rhs) const;
  ModPoint negate(const ModPoint& pt) const;
  ModPoint mul(std::uint64_t n, const ModPoint& pt) const;

  // Exhaustive Legendre-symbol count below enumeration_limit, baby-step
  // giant-step in the Hasse interval above it.
  std::uint64_t count_points(std::uint64_t enumeration_limit = 1ULL << 16) const;
  std::uint64_t count_points_enumeration() const;
  std::uint64_t count_points_bsgs() const;

  // Exact order of pt given any multiple m of it with m*pt = O.
  std::uint64_t order_of(const ModPoint& pt, std::uint64_t multiple) const;

 private:
  std::optional<std::uint64_t> sqrt_mod(std::uint64_t v) const;
  ModPoint random_point(std::uint64_t& state) const;
  std::optional<std::uint64_t> group_order_from_points(int attempts) const;

  std::uint64_t a_, b_, p_;
  ModPoint generator_;
};

std::uint64_t count_points(const Curve& curve, std::uint64_t p);
std::uint64_t point_order(const Curve& curve, std::uint64_t p);
ReducedCurveData reduce(const Curve& curve, std::uint64_t p);

// True iff n*P reduces to O modulo p, i.e. n_p | n.
bool multiple_vanishes_mod(const Curve& curve, std::uint64_t n, std::uint64_t p);

// Every good prime p <= p_max in increasing order; s_bad primes are skipped.
void order_sweep(const Curve& curve, std::uint64_t p_max, const std::function<void(const ReducedCurveData&)>& sink);
std::vector<ReducedCurveData> order_sweep(const Curve& curve, std::uint64_t p_max);

unsigned omega(std::uint64_t n);

// No prime q below this has n_q = n (Hasse: n_q <= q + 1 + 2 sqrt q).
std::uint64_t hasse_floor(std::uint64_t n);

// {"p":7,"order":5,"n_p":5,"factors":[[5,1]]}
nlohmann::ordered_json to_json(const ReducedCurveData& r);

}  // namespace edsring
