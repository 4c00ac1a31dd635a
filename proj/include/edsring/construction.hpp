#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "edsring/curve.hpp"
#include "edsring/torus.hpp"
#include "edsring/verdict.hpp"

namespace edsring {

struct ConstructionBudget {
  FactoringBudget factoring;
  std::uint64_t peel_bound = 100'000;  // order-sweep bound B for marker primes
  std::uint64_t mu_sweep_max = 10'000'000;
  unsigned a_max = 8;
  std::uint64_t sweep_limit = 2'000'000;  // upward q sweep when ell*m is past the index cap
  std::uint64_t L_window = 500;           // L is computed as {ell <= L_window : d_ell = 1}
  std::int64_t y_exact_cap = 400;         // y(ell P) exactly below this, torus enclosures above
  mpfr_prec_t max_precision = 4096;
};

struct AEll {
  unsigned a = 0;  // 0 when unknown
  Verdict verdict;
};
AEll compute_a_ell(const Curve& curve, std::uint64_t ell, unsigned a_max);

struct ExceptionalSet {
  std::set<std::uint64_t> L;
  std::uint64_t window = 0;
  Verdict verdict;  // unknown: this is L intersected with the window only
};
ExceptionalSet compute_exceptional_L(const Curve& curve, std::uint64_t ell_max);

struct Marker {
  std::optional<Integer> prime;  // set when certified
  Integer lower_bound = 0;       // p > lower_bound is certain
  Verdict verdict;
};
// Largest prime of S_{ell^{a_ell}}.
Marker compute_p_ell(const Curve& curve, std::uint64_t ell, const ConstructionBudget& budget);
// Largest prime q with n_q = ell m. Throws EmptyPrimitiveSet if there is none.
Marker compute_p_ellm(const Curve& curve, std::uint64_t ell, std::uint64_t m, const ConstructionBudget& budget);

struct MuResult {
  Rational mu;                         // exact when certified, else a lower bound
  Rational upper;                      // equals mu when certified
  std::optional<Integer> attained_at;  // X realising mu
  Verdict verdict;
};
// Finds S_ell below sweep_bound by orders (q in S_ell iff n_q = ell), divides
// those primes out of d_ell and factors what is left within budget.
MuResult compute_mu(const Curve& curve, std::uint64_t ell, std::uint64_t sweep_bound,
                    const FactoringBudget& budget = {});
// Sorted known primes of S_ell; every other prime of S_ell exceeds T and the
// unexplained part of d_ell is `rest` (1 when the support is complete).
MuResult mu_from_support(const std::vector<Integer>& known, const Integer& rest, std::uint64_t T);

// y(nP) tests: exact coordinates below a cap, torus enclosures above it.
class YLocator {
 public:
  YLocator(const Curve& curve, std::int64_t exact_cap, mpfr_prec_t max_precision);
  Truth in(std::int64_t n, const YInterval& iv) const;
  std::optional<Rational> exact_y(std::int64_t n) const;
  const TorusPath& torus() const { return torus_; }

 private:
  const Curve& curve_;
  TorusPath torus_;
  std::int64_t exact_cap_;
};

YInterval condition_window(int i);  // [i - 1/(10i), i + 1/(10i)]

struct SequenceWitness {
  int i = 0;
  std::uint64_t ell = 0;
  std::array<Verdict, 5> conditions;
  std::optional<Rational> y;  // exact y(ell P) when under the exact cap
};

struct SequenceEvent {
  std::uint64_t candidate = 0;
  int i = 0;
  std::string note;
};

struct LSequence {
  int requested = 0;
  std::vector<SequenceWitness> witnesses;
  std::set<std::uint64_t> L;
  std::uint64_t L_window = 0;
  std::uint64_t frontier = 2;  // every prime below it is decided
  std::string stop_reason;
  std::vector<SequenceEvent> events;

  std::vector<std::uint64_t> ells() const;
  bool complete() const { return static_cast<int>(witnesses.size()) == requested; }
};

// Condition checks for a candidate ell as the i-th term. They never return
// certified answers they cannot back with a witness.
Verdict condition_mu(const Curve& curve, std::uint64_t ell, int i, const ConstructionBudget& budget);
Verdict condition_marker(const Curve& curve, std::uint64_t ell, std::uint64_t m, int i,
                         const ConstructionBudget& budget);  // p_{ell m} > 2^i; may throw EmptyPrimitiveSet
Verdict condition_y(const YLocator& loc, std::uint64_t ell, int i);

LSequence construct_sequence(const Curve& curve, int count, std::uint64_t prime_bound,
                             const ConstructionBudget& budget);

// Re-checks conditions (2) and (5) of a witness from scratch.
bool reverify_witness(const Curve& curve, const SequenceWitness& w, const ConstructionBudget& budget);

// Membership in the ell-sequence, honest about the frontier.
class SequenceOracle {
 public:
  SequenceOracle(const Curve& curve, LSequence seq, const ConstructionBudget& budget = {});

  const LSequence& sequence() const { return seq_; }
  const Curve& curve() const { return curve_; }
  const ConstructionBudget& budget() const { return budget_; }
  Truth contains(std::uint64_t ell) const;
  Truth in_L(std::uint64_t ell) const;
  // Index i with ell = ell_i, when ell is a witness.
  std::optional<int> index_of(std::uint64_t ell) const;

 private:
  const Curve& curve_;
  LSequence seq_;
  ConstructionBudget budget_;
  YLocator locator_;
};

struct TWindow {
  std::uint64_t X = 0;
  std::vector<std::uint64_t> primes;  // all primes <= X
  std::vector<Verdict> t1, t2a, t2b, t2c;

  std::vector<std::uint64_t> certified(const std::vector<Verdict>& part) const;
  std::vector<std::uint64_t> undecided(const std::vector<Verdict>& part) const;
};

// Builds the windows from the ell side: S_ell for every prime ell that can
// contribute a prime <= X, never by querying n_p.
TWindow assemble_T(const SequenceOracle& seq, std::uint64_t X);

nlohmann::json to_json(const SequenceWitness& w);
nlohmann::json to_json(const LSequence& s);
LSequence sequence_from_json(const nlohmann::json& j);
nlohmann::json to_json(const TWindow& w);

}  // namespace edsring
