#include <doctest.h>

#include <numeric>
#include <random>

#include "edsring/curve.hpp"
#include "edsring/errors.hpp"
#include "oracle.hpp"

using namespace edsring;

namespace {

const Curve& ref() {
  static Curve c(CurveConfig::reference());
  return c;
}

oracle::Pt oracle_P() {
  oracle::Pt p;
  p.inf = false;
  p.x = oracle::Frac(0);
  p.y = oracle::Frac(1);
  return p;
}

void same(const RationalPoint& mine, const oracle::Pt& theirs) {
  REQUIRE(mine.is_identity() == theirs.inf);
  if (theirs.inf) return;
  CHECK(mine.x().get_num() == theirs.x.num);
  CHECK(mine.x().get_den() == theirs.x.den);
  CHECK(mine.y().get_num() == theirs.y.num);
  CHECK(mine.y().get_den() == theirs.y.den);
}

}  // namespace

TEST_CASE("bad primes from the discriminant") {
  CHECK(derive_bad_primes(1, 1) == std::set<std::uint64_t>{2, 31});
  CHECK(derive_bad_primes(0, 1) == std::set<std::uint64_t>{2, 3});
  CHECK_THROWS_AS(derive_bad_primes(0, 0), SingularCurve);
  CHECK(ref().config().discriminant() == -496);
}

TEST_CASE("config validation") {
  CurveConfig c = CurveConfig::reference();
  c.s_bad.erase(31);
  CHECK_THROWS_AS(c.validate(), InvalidConfig);
  c = CurveConfig::reference();
  c.generator = RationalPoint(Rational(0), Rational(2));
  CHECK_THROWS_AS(c.validate(), NotOnCurve);
  c = CurveConfig::reference();
  c.a = 0;
  c.b = 0;
  CHECK_THROWS(c.validate());
  CHECK(CurveConfig::reference().fingerprint() == CurveConfig::reference().fingerprint());
  CHECK(CurveConfig::reference().fingerprint().size() == 16);
}

TEST_CASE("small multiples against the naive oracle") {
  oracle::NaiveCurve nc{1, 1};
  for (int n = 0; n <= 12; ++n) same(ref().multiple(n), nc.mul(n, oracle_P()));
  CHECK(ref().multiple(2) == RationalPoint(Rational(1, 4), Rational(-9, 8)));
  CHECK(ref().multiple(3) == RationalPoint(Rational(72), Rational(611)));
  CHECK(ref().multiple(4) == RationalPoint(Rational(-287, 1296), Rational(40879, 46656)));
  CHECK(ref().multiple(5).x() == Rational(43992, 82369));
  CHECK(ref().multiple(-4) == -ref().multiple(4));
  CHECK(ref().add(ref().multiple(1), RationalPoint::identity()) == ref().multiple(1));
  CHECK(ref().add(ref().multiple(3), ref().multiple(-3)).is_identity());
}

TEST_CASE("scalar_mul agrees with memoised multiples and rejects off-curve input") {
  const RationalPoint P = ref().config().generator;
  for (int n = -15; n <= 15; ++n) CHECK(ref().scalar_mul(n, P) == ref().multiple(n));
  CHECK_THROWS_AS(ref().add(RationalPoint(Rational(1), Rational(1)), P), NotOnCurve);
}

TEST_CASE("multiples lie on the curve with denominators e^2 and e^3") {
  for (int n = 1; n <= 40; ++n) {
    RationalPoint q = ref().multiple(n);
    REQUIRE(ref().contains(q));
    mpz_class e = sqrt(q.x().get_den());
    CHECK(e * e == q.x().get_den());
    CHECK(q.y().get_den() == e * e * e);
  }
}

TEST_CASE("group law is associative and commutative on random triples") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> dist(-12, 12);
  for (int t = 0; t < 50; ++t) {
    int i = dist(rng), j = dist(rng), k = dist(rng);
    auto I = ref().multiple(i), J = ref().multiple(j), K = ref().multiple(k);
    CHECK(ref().add(ref().add(I, J), K) == ref().add(I, ref().add(J, K)));
    CHECK(ref().add(I, J) == ref().add(J, I));
    CHECK(ref().add(I, J) == ref().multiple(i + j));
  }
}

TEST_CASE("ladder denominators match the affine path") {
  for (int n = 1; n <= 300; ++n) {
    INFO("n = " << n);
    REQUIRE(ref().d(n) == ref().d_from_point(n));
  }
}

TEST_CASE("ladder on a second curve with a non-integral generator") {
  // y^2 = x^3 + 17 through (1/4, 33/8).
  Curve c(CurveConfig::from_model(0, 17, RationalPoint(Rational(1, 4), Rational(33, 8)), {}));
  CHECK(c.config().s_bad == std::set<std::uint64_t>{2, 3, 17});
  oracle::NaiveCurve nc{0, 17};
  oracle::Pt g;
  g.inf = false;
  g.x = oracle::Frac(1, 4);
  g.y = oracle::Frac(33, 8);
  for (int n = 1; n <= 8; ++n) same(c.multiple(n), nc.mul(n, g));
  for (int n = 1; n <= 80; ++n) REQUIRE(c.d(n) == c.d_from_point(n));
}

TEST_CASE("denominator profiles") {
  FactoringBudget budget;
  auto p0 = ref().denom_profile(0, budget);
  CHECK(p0.d == 0);
  CHECK_FALSE(p0.complete);
  auto p1 = ref().denom_profile(1, budget);
  CHECK(p1.d == 1);
  CHECK(p1.support.empty());
  CHECK(p1.complete);
  auto p4 = ref().denom_profile(4, budget);
  CHECK(p4.d == 81);
  CHECK(p4.support == std::vector<PrimePower>{{3, 4}});
  auto p6 = ref().denom_profile(6, budget);
  CHECK(p6.d == 373321);
  CHECK(p6.support == std::vector<PrimePower>{{13, 2}, {47, 2}});
  CHECK(ref().denom_profile(5, budget).d == 82369);
  for (int n = 1; n <= 50; ++n) CHECK(ref().d(-n) == ref().d(n));
}

TEST_CASE("profile product identity against trial division") {
  FactoringBudget budget;
  for (int n = 1; n <= 14; ++n) {
    auto prof = ref().denom_profile(n, budget);
    REQUIRE(prof.complete);
    CHECK(product(prof.support) * prof.cofactor == prof.d);
    for (auto& pp : prof.support) CHECK_FALSE(ref().is_bad(pp.prime));
    if (n <= 7) {
      auto tf = oracle::trial_factor(prof.d);
      REQUIRE(tf.size() == prof.support.size());
      std::size_t i = 0;
      for (auto [q, e] : tf) {
        CHECK(prof.support[i].prime == q);
        CHECK(prof.support[i].exponent == e);
        ++i;
      }
    }
  }
}

TEST_CASE("gcd law for supports") {
  FactoringBudget budget;
  std::vector<DenomProfile> prof(21);
  for (int n = 1; n <= 20; ++n) prof[n] = ref().denom_profile(n, budget);
  for (int m = 1; m <= 20; ++m)
    for (int n = 1; n <= 20; ++n) {
      if (!prof[m].complete || !prof[n].complete) continue;
      std::set<Integer> both;
      for (auto& q : prof[m].primes())
        if (prof[n].has_prime(q)) both.insert(q);
      auto g = prof[std::gcd(m, n)].primes();
      CHECK(std::set<Integer>(g.begin(), g.end()) == both);
    }
}

TEST_CASE("index cap is enforced") {
  Curve small(CurveConfig::reference(), ExactCaps{50, 10, 10});
  CHECK_THROWS_AS(small.d(51), ComputationInfeasible);
  CHECK_NOTHROW(small.d(50));
}
