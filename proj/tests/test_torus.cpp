#include <doctest.h>

#include <cmath>

#include "edsring/errors.hpp"
#include "edsring/primes.hpp"
#include "edsring/torus.hpp"

using namespace edsring;

namespace {

const Curve& ref() {
  static Curve c(CurveConfig::reference());
  return c;
}

bool overlap(const Interval& u, const Interval& v) {
  return mpfr_cmp(u.lo(), v.hi()) <= 0 && mpfr_cmp(v.lo(), u.hi()) <= 0;
}

// Real period by plain composite Simpson after x = e1 + tan(phi)^2.
double simpson_period(double a, double e1) {
  auto g = [&](double phi) {
    double t = std::tan(phi);
    double x = e1 + t * t;
    double sec2 = 1 + t * t;
    return 2.0 * sec2 / std::sqrt(x * x + e1 * x + e1 * e1 + a);
  };
  const int n = 200000;
  const double h = (M_PI / 2) / n;
  double s = g(0);
  for (int i = 1; i < n; ++i) s += g(i * h) * (i % 2 ? 4 : 2);
  // the integrand decays like 2 sec^2 / tan^2 near pi/2, i.e. stays bounded
  s += 2.0;
  return 2.0 * s * h / 3.0;
}

}  // namespace

TEST_CASE("elliptic logarithm of P") {
  TorusEmbedding emb(ref().config(), 128);
  CHECK(emb.theta().mid() == doctest::Approx(0.34380894457658).epsilon(1e-12));
  CHECK(emb.theta().width() < 1e-30);
  CHECK(emb.e1().mid() == doctest::Approx(-0.6823278038280193));
  CHECK(emb.real_period().mid() == doctest::Approx(simpson_period(1.0, emb.e1().mid())).epsilon(1e-6));
  Interval t1 = emb.t_of_y(1), tm1 = emb.t_of_y(-1);
  CHECK(overlap(t1, emb.theta()));
  CHECK(overlap(tm1, Interval(Rational(1), 128) - emb.theta()));
}

TEST_CASE("multiples land where the group law says") {
  TorusEmbedding emb(ref().config(), 256);
  for (int n = -30; n <= 30; ++n) {
    if (n == 0) continue;
    INFO("n = " << n);
    CHECK(overlap(emb.t_of_point(ref().multiple(n)), emb.t_of_multiple(n)));
  }
}

TEST_CASE("t decreases in y") {
  TorusEmbedding emb(ref().config(), 128);
  Rational prev = -1000;
  Interval tprev = emb.t_of_y(prev);
  for (int k = -999; k <= 1000; k += 37) {
    Interval t = emb.t_of_y(Rational(k));
    CHECK(t.certainly_less(tprev));
    tprev = t;
  }
  auto arc = emb.arc({Rational(9, 10), Rational(11, 10)});
  Interval len = arc.to - arc.from;
  CHECK(len.positive());
  CHECK(len.certainly_less(Interval(Rational(1), 128)));
}

TEST_CASE("torus membership agrees with exact y for small primes") {
  TorusPath path(ref().config());
  YInterval win{Rational(9, 10), Rational(11, 10)};
  int hits = 0;
  for (std::uint64_t l : primes_up_to(80)) {
    bool exact = win.contains(ref().multiple(static_cast<std::int64_t>(l)).y());
    auto d = path.member(static_cast<std::int64_t>(l), win);
    REQUIRE(d.truth != Truth::unknown);
    CHECK((d.truth == Truth::certified_true) == exact);
    hits += exact;
  }
  CHECK(path.member(1, win).truth == Truth::certified_true);
  CHECK(path.member(1, {std::nullopt, std::nullopt}).truth == Truth::certified_true);
  // y(P) = 1 is exactly an endpoint; only precision exhaustion answers that.
  TorusPath shallow(ref().config(), 256);
  CHECK(shallow.member(1, {Rational(1), Rational(2)}).truth == Truth::unknown);
}

TEST_CASE("a disconnected real locus is rejected") {
  // y^2 = x^3 - x has three real 2-torsion points.
  CurveConfig c = CurveConfig::reference();
  c.a = -1;
  c.b = 0;
  CHECK_THROWS_AS(TorusEmbedding(c, 128), PreconditionFailed);
}
