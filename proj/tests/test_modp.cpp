#include <doctest.h>

#include <cmath>

#include "edsring/errors.hpp"
#include "edsring/modp.hpp"
#include "edsring/primes.hpp"
#include "oracle.hpp"

using namespace edsring;

namespace {
const Curve& ref() {
  static Curve c(CurveConfig::reference());
  return c;
}
}  // namespace

TEST_CASE("small point counts and orders") {
  CHECK(count_points(ref(), 3) == 4);
  CHECK(count_points(ref(), 5) == 9);
  CHECK(count_points(ref(), 7) == 5);
  CHECK(point_order(ref(), 3) == 4);
  CHECK(point_order(ref(), 5) == 9);
  CHECK(point_order(ref(), 7) == 5);
  CHECK_THROWS_AS(count_points(ref(), 31), BadPrime);
  CHECK_THROWS_AS(point_order(ref(), 2), BadPrime);
  auto rc = ReducedCurve::of(ref(), 3);
  CHECK(rc.mul(2, rc.generator()) == ModPoint{1, 0, false});
}

TEST_CASE("enumeration matches brute force") {
  for (std::uint64_t p : primes_in_range(3, 200)) {
    if (p == 31) continue;
    CHECK(ReducedCurve(1, 1, p).count_points_enumeration() == oracle::brute_count(1, 1, p));
    if (p != 3) CHECK(ReducedCurve(p - 2, 3 % p, p).count_points_enumeration() == oracle::brute_count(-2, 3, p));
  }
}

TEST_CASE("baby-step giant-step matches enumeration") {
  std::uint64_t checked = 0;
  for (std::uint64_t p : primes_in_range(233, 20000)) {
    if (p % 7 != 1) continue;
    ReducedCurve rc(1, 1, p);
    REQUIRE(rc.count_points_bsgs() == rc.count_points_enumeration());
    ++checked;
  }
  CHECK(checked > 200);
  ReducedCurve big(1, 1, 1000003);
  CHECK(big.count_points(0) == big.count_points_enumeration());
}

TEST_CASE("scalar multiplication matches repeated addition") {
  auto rc = ReducedCurve::of(ref(), 1009);
  ModPoint acc;
  for (std::uint64_t k = 0; k < 300; ++k) {
    REQUIRE(rc.mul(k, rc.generator()) == acc);
    acc = rc.add(acc, rc.generator());
  }
}

TEST_CASE("sweep: Hasse and Lagrange to 10^4") {
  auto recs = order_sweep(ref(), 10000);
  CHECK(recs.size() == 1227);
  std::uint64_t prev = 0;
  for (auto& r : recs) {
    CHECK(r.p > prev);
    prev = r.p;
    double dev = std::abs(static_cast<double>(r.group_order) - static_cast<double>(r.p) - 1.0);
    CHECK(dev * dev <= 4.0 * r.p);
    CHECK(r.group_order % r.generator_order == 0);
    CHECK(r.generator_order != 1);
    std::uint64_t prod = 1;
    for (auto [q, e] : r.order_factorization)
      for (unsigned i = 0; i < e; ++i) prod *= q;
    CHECK(prod == r.group_order);
  }
  CHECK(order_sweep(ref(), 2).empty());
  auto small = order_sweep(ref(), 7);
  REQUIRE(small.size() == 3);
  CHECK(to_json(small[2]).dump() == R"({"p":7,"order":5,"n_p":5,"factors":[[5,1]]})");
}

TEST_CASE("n_p against the denominators") {
  FactoringBudget budget;
  std::vector<DenomProfile> prof(31);
  for (int n = 1; n <= 30; ++n) prof[n] = ref().denom_profile(n, budget);
  for (auto& r : order_sweep(ref(), 1000))
    for (int n = 1; n <= 30; ++n) {
      if (!prof[n].complete) continue;
      bool divides = n % r.generator_order == 0;
      CHECK(prof[n].has_prime(Integer(static_cast<unsigned long>(r.p))) == divides);
      CHECK(multiple_vanishes_mod(ref(), n, r.p) == divides);
    }
  CHECK(ref().denom_profile(5, budget).has_prime(7));
}

TEST_CASE("omega") {
  CHECK(omega(1) == 0);
  CHECK(omega(12) == 2);
  CHECK(omega(9) == 1);
  CHECK_THROWS(omega(0));
}
