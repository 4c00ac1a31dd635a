#include <doctest.h>

#include <algorithm>

#include "edsring/errors.hpp"
#include "edsring/modp.hpp"
#include "edsring/oracles.hpp"
#include "edsring/primes.hpp"
#include "edsring/valuations.hpp"
#include "fixtures.hpp"

using namespace edsring;
using fixtures::ref;
using fixtures::seq1;

namespace {
const Oracles& orc() {
  static Oracles o(ref(), seq1());
  return o;
}
}  // namespace

TEST_CASE("T1 membership") {
  CHECK(orc().member_T1(2).is_true());
  CHECK(orc().member_T1(31).is_true());
  Verdict v7 = orc().member_T1(7);
  CHECK(v7.is_false());
  CHECK(v7.witness["n_p"] == 5);
  Verdict v97 = orc().member_T1(97);  // 97 divides d_97
  CHECK(v97.is_true());
  CHECK(v97.witness["ell"] == 97);
  CHECK_THROWS_AS(orc().member_T1(91), PreconditionFailed);
}

TEST_CASE("T2 membership") {
  Verdict v3 = orc().member_T2a(3);
  REQUIRE(v3.is_true());
  CHECK(v3.witness == nlohmann::json{{"ell", 2}, {"a", 2}, {"p_ell", 3}});
  CHECK(orc().member_T2a(41).is_true());
  CHECK(orc().member_T2a(7).is_false());  // n_7 = 5 but p_5 = 41
  CHECK_THROWS_AS(orc().member_T2a(31), BadPrime);
  CHECK(orc().member_T2b(3).is_false());
  CHECK(orc().member_T2c(3).is_false());
  CHECK(orc().member_T2b(2).is_false());
  CHECK(orc().member_T2(3).is_true());

  // p = 47 is p_{2*3}, but neither 2 nor 3 is an ell_i
  CHECK(orc().member_T2b(47).is_false());
  CHECK(orc().member_T2c(47).is_false());

  // largest-prime test on d_10 = 7^2 41^2 30699397^2, primitive part 30699397^2
  Integer prim = primitive_part(ref(), 2, 5);
  CHECK(orc().is_largest(30699397, 10, prim) == Truth::certified_true);
  CHECK(orc().is_largest(7, 5, ref().d(5)) == Truth::certified_false);
  CHECK(orc().is_largest(41, 5, ref().d(5)) == Truth::certified_true);
}

TEST_CASE("oracles agree with the assembled window") {
  SequenceOracle so(ref(), seq1());
  TWindow w = assemble_T(so, 200);
  int compared = 0;
  for (std::size_t k = 0; k < w.primes.size(); ++k) {
    std::uint64_t p = w.primes[k];
    Verdict t1 = orc().member_T1(p);
    Verdict t2a = ref().is_bad(p) ? Verdict::no() : orc().member_T2a(p);
    Verdict t2b = orc().member_T2b(p);
    Verdict t2c = orc().member_T2c(p);
    const std::pair<const Verdict*, const Verdict*> pairs[] = {
        {&t1, &w.t1[k]}, {&t2a, &w.t2a[k]}, {&t2b, &w.t2b[k]}, {&t2c, &w.t2c[k]}};
    for (auto& [o, a] : pairs) {
      if (o->is_unknown() || a->is_unknown()) continue;
      CHECK_MESSAGE(o->state == a->state, "p = " << p);
      ++compared;
    }
    CHECK_FALSE((t1.is_true() && (t2a.is_true() || t2b.is_true() || t2c.is_true())));
  }
  CHECK(compared == 4 * static_cast<int>(w.primes.size()));
}

TEST_CASE("never in both T1 and T2") {
  for (std::uint64_t p : primes_up_to(3000)) {
    Verdict t1 = orc().member_T1(p);
    Verdict t2 = orc().member_T2(p);
    CHECK_FALSE((t1.is_true() && t2.is_true()));
    if (t2.is_true() && t2.witness.contains("p_ell")) {
      std::uint64_t ell = t2.witness["ell"].get<std::uint64_t>();
      CHECK(count_points(ref(), p) % ell == 0);
    }
  }
}

TEST_CASE("certified answers survive a larger budget") {
  // a shorter search leaves a frontier at 61 with no terms
  LSequence weak_seq = construct_sequence(ref(), 1, 60, ConstructionBudget{});
  REQUIRE(weak_seq.witnesses.empty());
  Oracles weak(ref(), weak_seq);
  int decided = 0;
  for (std::uint64_t p : primes_up_to(400)) {
    Verdict a = weak.member_T1(p), b = orc().member_T1(p);
    if (!a.is_unknown()) {
      CHECK(a.state == b.state);
      ++decided;
    }
    Verdict c = weak.member_T2(p), d = orc().member_T2(p);
    if (!c.is_unknown()) CHECK(c.state == d.state);
  }
  CHECK(decided > 0);
}

TEST_CASE("ring membership") {
  for (auto pol : {SPolicy::minimal, SPolicy::maximal}) {
    CHECK(orc().ring_membership(1, pol).is_true());
    CHECK(orc().ring_membership(97, pol).is_true());
    CHECK(orc().ring_membership(-97, pol).is_true());
  }
  Verdict v4 = orc().ring_membership(4, SPolicy::maximal);
  CHECK(v4.is_false());
  CHECK(v4.witness["set"] == "T2a");
  CHECK(orc().ring_membership(6, SPolicy::maximal).is_true());
  CHECK(orc().ring_membership(6, SPolicy::minimal).is_false());
  CHECK_THROWS_AS(orc().ring_membership(0, SPolicy::minimal), PreconditionFailed);
  CHECK(parse_policy("max") == SPolicy::maximal);
  CHECK_THROWS_AS(parse_policy("median"), PreconditionFailed);

  // against the prime-by-prime definition on fully factored d_n
  for (std::int64_t n = 1; n <= 14; ++n) {
    DenomProfile prof = ref().denom_profile(n, FactoringBudget{});
    REQUIRE(prof.complete);
    bool all_t1 = true, none_t2 = true;
    for (auto& pp : prof.support) {
      std::uint64_t q = to_u64(pp.prime);
      Verdict t1 = orc().member_T1(q), t2 = orc().member_T2(q);
      REQUIRE_FALSE(t1.is_unknown());
      REQUIRE_FALSE(t2.is_unknown());
      all_t1 = all_t1 && t1.is_true();
      none_t2 = none_t2 && t2.is_false();
    }
    CHECK_MESSAGE(orc().ring_membership(n, SPolicy::minimal).is_true() == all_t1, "n = " << n);
    CHECK_MESSAGE(orc().ring_membership(n, SPolicy::maximal).is_true() == none_t2, "n = " << n);
  }
}

TEST_CASE("integral multiples at desk scale") {
  // Outside +-ell_i and the divisors of prod ell^(a_ell - 1), S_n meets T2.
  Integer exceptional = 1;
  for (std::uint64_t ell : seq1().L) {
    if (ell > 30) break;
    AEll a = compute_a_ell(ref(), ell, 8);
    REQUIRE(a.a > 0);
    for (unsigned k = 1; k < a.a; ++k) exceptional *= static_cast<unsigned long>(ell);
  }
  int witnessed = 0;
  for (std::int64_t n = 1; n <= 30; ++n) {
    bool excluded = mpz_divisible_ui_p(exceptional.get_mpz_t(), static_cast<unsigned long>(n));
    Verdict ring = orc().ring_membership(n, SPolicy::maximal);
    if (excluded) continue;
    CHECK_MESSAGE(ring.is_false(), "n = " << n);
    // find p_ell for some ell^{a_ell} | n and check it is a certified T2a prime of d_n
    for (auto [ell, e] : factor_u64(static_cast<std::uint64_t>(n))) {
      AEll a = compute_a_ell(ref(), ell, 8);
      if (a.a > e) continue;
      Marker m = compute_p_ell(ref(), ell, ConstructionBudget{});
      if (!m.prime || !fits_u64(*m.prime)) continue;
      Integer d = ref().d(n);
      CHECK(mpz_divisible_p(d.get_mpz_t(), m.prime->get_mpz_t()));
      CHECK(orc().member_T2a(to_u64(*m.prime)).is_true());
      ++witnessed;
      break;
    }
  }
  CHECK(witnessed >= 15);
}

TEST_CASE("closure report") {
  ClosureReport low = orc().closure_report(50, SPolicy::maximal);
  for (auto& m : low.members) CHECK(m.n <= 6);
  CHECK(low.undecided.empty());
  ClosureReport r = orc().closure_report(100, SPolicy::minimal);
  bool has97 = false;
  for (auto& m : r.members) {
    if (m.n == 97) {
      has97 = true;
      CHECK(abs(Rational(m.y - 1)) <= Rational(1, 10));
    }
  }
  CHECK(has97);
  REQUIRE(r.min_gap);
  CHECK(*r.min_gap > 0);
  CHECK_FALSE(r.cluster_gap);
}
