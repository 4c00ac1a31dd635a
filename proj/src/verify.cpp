#include "edsring/verify.hpp"

#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>

#include "edsring/analytics.hpp"
#include "edsring/dio_model.hpp"
#include "edsring/errors.hpp"
#include "edsring/modp.hpp"
#include "edsring/primes.hpp"
#include "edsring/valuations.hpp"

namespace edsring {
namespace {

// Runs body; it returns an empty string on success or a description of the
// first violation. Exceptions count as failures.
CheckResult run(const std::string& name, const std::function<std::string(std::string&)>& body) {
  CheckResult r{name, false, {}};
  try {
    std::string note;
    std::string bad = body(note);
    r.passed = bad.empty();
    r.detail = r.passed ? note : bad;
  } catch (const std::exception& e) {
    r.detail = std::string("exception: ") + e.what();
  }
  return r;
}

std::string n_str(std::int64_t n) { return std::to_string(n); }

}  // namespace

std::vector<CheckResult> run_invariant_suite(const Curve& curve, const ConstructionBudget& budget) {
  std::vector<CheckResult> out;

  out.push_back(run("group law: (m+n)P = mP + nP, m,n <= 8", [&](std::string& note) -> std::string {
    for (std::int64_t m = -8; m <= 8; ++m)
      for (std::int64_t n = -8; n <= 8; ++n)
        if (!(curve.add(curve.multiple(m), curve.multiple(n)) == curve.multiple(m + n)))
          return "fails at m = " + n_str(m) + ", n = " + n_str(n);
    for (std::int64_t n = 1; n <= 12; ++n)
      if (!curve.contains(curve.multiple(n))) return n_str(n) + "P is off the curve";
    note = "289 sums";
    return {};
  }));

  out.push_back(run("ladder d_n matches affine d_n, n <= 30", [&](std::string& note) -> std::string {
    if (curve.d(0) != 0 || curve.d(1) != curve.strip_bad(curve.config().generator.x().get_den()))
      return "d_0 or d_1 is wrong";
    for (std::int64_t n = 1; n <= 30; ++n) {
      if (curve.d(n) != curve.d_from_point(n)) return "n = " + n_str(n);
      if (curve.d(-n) != curve.d(n)) return "d_-n != d_n at " + n_str(n);
    }
    note = "30 indices";
    return {};
  }));

  out.push_back(run("d_n is a square with a consistent profile, n <= 12", [&](std::string& note) -> std::string {
    for (std::int64_t n = 1; n <= 12; ++n) {
      DenomProfile p = curve.denom_profile(n, budget.factoring);
      if (product(p.support) * p.cofactor != p.d) return "profile of d_" + n_str(n) + " does not multiply back";
      for (auto& pp : p.support)
        if (pp.exponent % 2) return "odd exponent in d_" + n_str(n);
    }
    note = "12 profiles";
    return {};
  }));

  out.push_back(run("p | d_n iff n_p | n, good p < 100, n <= 30", [&](std::string& note) -> std::string {
    unsigned checked = 0;
    for (std::uint64_t p : primes_up_to(100)) {
      if (curve.is_bad(p)) continue;
      std::uint64_t np = point_order(curve, p);
      for (std::int64_t n = 1; n <= 30; ++n) {
        bool divides = curve.d(n) % p == 0;
        if (divides != (static_cast<std::uint64_t>(n) % np == 0))
          return "p = " + std::to_string(p) + ", n = " + n_str(n);
        ++checked;
      }
    }
    note = std::to_string(checked) + " pairs";
    return {};
  }));

  out.push_back(run("gcd(d_m, d_n) = d_gcd(m,n), m,n <= 20", [&](std::string& note) -> std::string {
    for (std::int64_t m = 1; m <= 20; ++m)
      for (std::int64_t n = 1; n <= 20; ++n) {
        Integer g;
        mpz_gcd(g.get_mpz_t(), curve.d(m).get_mpz_t(), curve.d(n).get_mpz_t());
        if (g != curve.d(std::gcd(m, n))) return "m = " + n_str(m) + ", n = " + n_str(n);
      }
    note = "400 pairs";
    return {};
  }));

  out.push_back(run("growth law v_p(d_lm) = 2 v_p(l) + v_p(d_m), lm <= 30", [&](std::string& note) -> std::string {
    unsigned checked = 0;
    for (std::uint64_t ell : primes_up_to(30))
      for (std::int64_t m = 1; static_cast<std::uint64_t>(m) * ell <= 30; ++m) {
        DenomProfile prof = curve.denom_profile(m, budget.factoring);
        for (auto& pp : prof.support) {
          if (!fits_u64(pp.prime)) continue;
          Verdict v = growth_law_check(curve, ell, m, to_u64(pp.prime));
          if (!v.is_true()) return "l = " + std::to_string(ell) + ", m = " + n_str(m) + ", p = " + pp.prime.get_str();
          ++checked;
        }
      }
    note = std::to_string(checked) + " triples";
    return {};
  }));

  out.push_back(run("Hasse bound and n_p | #E(F_p), good p <= 10^4", [&](std::string& note) -> std::string {
    std::string bad;
    unsigned checked = 0;
    order_sweep(curve, 10'000, [&](const ReducedCurveData& r) {
      if (!bad.empty()) return;
      double dev = std::abs(static_cast<double>(r.group_order) - static_cast<double>(r.p) - 1.0);
      if (dev > 2 * std::sqrt(static_cast<double>(r.p))) bad = "Hasse fails at " + std::to_string(r.p);
      else if (r.group_order % r.generator_order) bad = "n_p does not divide #E at " + std::to_string(r.p);
      else if (!multiple_vanishes_mod(curve, r.generator_order, r.p)) bad = "n_p P != O at " + std::to_string(r.p);
      ++checked;
    });
    note = std::to_string(checked) + " primes";
    return bad;
  }));

  out.push_back(run("torus and exact y agree on [9/10, 11/10], prime l <= 60", [&](std::string& note) -> std::string {
    YInterval iv{Rational(9, 10), Rational(11, 10)};
    TorusPath torus(curve.config(), budget.max_precision);
    for (std::uint64_t ell : primes_up_to(60)) {
      auto n = static_cast<std::int64_t>(ell);
      TorusPath::Decision d = torus.member(n, iv);
      bool exact = iv.contains(curve.multiple(n).y());
      if (d.truth == Truth::unknown) return "torus undecided at " + n_str(n);
      if ((d.truth == Truth::certified_true) != exact) return "disagree at " + n_str(n);
    }
    note = "17 primes";
    return {};
  }));

  out.push_back(run("GL2 fixed-vector fraction, l <= 7", [&](std::string&) -> std::string {
    for (std::uint64_t ell : {2, 3, 5, 7})
      if (gl2_fixed_fraction(ell) != gl2_fixed_fraction_enumerated(ell)) return "l = " + std::to_string(ell);
    return {};
  }));

  out.push_back(run("rounding model: extremal embeddings, N = 20", [&](std::string&) -> std::string {
    for (int sign : {1, -1, 0}) {
      ModelReport r = model_check(20, AdmissibleEmbedding::extremal(20, sign));
      if (!r.counterexamples.empty()) return r.embedding + " has counterexamples";
    }
    for (std::int64_t n = 0; n <= 1000; ++n) {
      auto z = four_squares(n);
      if (z[0] * z[0] + z[1] * z[1] + z[2] * z[2] + z[3] * z[3] != n) return "four_squares(" + n_str(n) + ")";
    }
    return {};
  }));

  if (curve.config().fingerprint() == CurveConfig::reference().fingerprint()) {
    out.push_back(run("reference values", [&](std::string& note) -> std::string {
      if (curve.d(4) != 81 || curve.d(5) != 82369 || curve.d(6) != 373321) return "d_4, d_5 or d_6";
      if (point_order(curve, 7) != 5) return "n_7 != 5";
      Marker p2 = compute_p_ell(curve, 2, budget);
      if (!p2.prime || *p2.prime != 3) return "p_2 != 3";
      Marker p5 = compute_p_ell(curve, 5, budget);
      if (!p5.prime || *p5.prime != 41) return "p_5 != 41";
      Marker p23 = compute_p_ellm(curve, 2, 3, budget);
      if (!p23.prime || *p23.prime != 47) return "p_6 != 47";
      MuResult mu = compute_mu(curve, 5, 100'000, budget.factoring);
      if (!mu.verdict.is_true() || mu.mu != Rational(1, 4)) return "mu_5 != 1/4";
      note = "d_4, d_5, d_6, n_7, p_2, p_5, p_6, mu_5";
      return {};
    }));
  }
  return out;
}

std::string format_table(const std::vector<CheckResult>& results) {
  std::size_t w = 5;
  for (auto& r : results) w = std::max(w, r.name.size());
  std::ostringstream os;
  os << "check" << std::string(w - 5 + 2, ' ') << "result  detail\n";
  for (auto& r : results)
    os << r.name << std::string(w - r.name.size() + 2, ' ') << (r.passed ? "pass  " : "FAIL  ") << "  " << r.detail
       << '\n';
  return os.str();
}

}  // namespace edsring
