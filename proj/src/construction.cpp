#include "edsring/construction.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "edsring/errors.hpp"
#include "edsring/modp.hpp"
#include "edsring/primes.hpp"
#include "edsring/valuations.hpp"

namespace edsring {
namespace {

bool checked_mul(std::uint64_t a, std::uint64_t b, std::uint64_t& out) {
  return !__builtin_mul_overflow(a, b, &out);
}

// Divides out of rest every good q <= bound that passes keep(q); returns them.
template <typename Keep>
std::vector<PrimePower> peel_by_orders(const Curve& curve, Integer& rest, std::uint64_t lo, std::uint64_t bound,
                                       Keep keep) {
  std::vector<PrimePower> out;
  if (bound < 3 || lo > bound) return out;
  for (std::uint64_t q : primes_in_range(std::max<std::uint64_t>(lo, 3), bound)) {
    if (curve.is_bad(q) || !keep(q)) continue;
    unsigned v = remove_factor(rest, q);
    if (v == 0) throw InvariantViolation("order sweep found q = " + std::to_string(q) + " not dividing the denominator");
    out.push_back({to_integer(q), v});
  }
  return out;
}

// Finishes a marker computation once the sweep has peeled what it can.
Marker finish_marker(const Curve& curve, const std::vector<PrimePower>& peeled, Integer rest,
                     const ConstructionBudget& budget, nlohmann::json witness) {
  Marker out;
  Integer best = 0;
  for (auto& pp : peeled) best = std::max(best, pp.prime);
  if (rest != 1) {
    Factorization f = factor(rest, budget.factoring);
    for (auto& pp : f.factors) best = std::max(best, pp.prime);
    if (!f.complete) {
      out.lower_bound = std::max(best, to_integer(budget.peel_bound));
      witness["lower_bound"] = to_string(out.lower_bound);
      witness["cofactor_bits"] = mpz_sizeinbase(f.cofactor.get_mpz_t(), 2);
      out.verdict = Verdict::unknown_at("peel bound " + std::to_string(budget.peel_bound), witness);
      return out;
    }
  }
  if (best == 0) throw InvariantViolation("marker computation found no prime");
  out.prime = best;
  out.lower_bound = best - 1;
  witness["prime"] = to_string(best);
  if (fits_u64(best)) witness["n_p"] = point_order(curve, to_u64(best));
  out.verdict = Verdict::yes(witness);
  return out;
}

}  // namespace

AEll compute_a_ell(const Curve& curve, std::uint64_t ell, unsigned a_max) {
  if (!is_prime_u64(ell)) throw PreconditionFailed("ell must be prime");
  std::uint64_t n = 1;
  for (unsigned a = 1; a <= a_max; ++a) {
    if (!checked_mul(n, ell, n) || n > static_cast<std::uint64_t>(curve.caps().index_cap)) {
      return {0, Verdict::unknown_at("index cap", {{"ell", ell}, {"a_tried", a}})};
    }
    Integer d = curve.d(static_cast<std::int64_t>(n));
    if (d > 1) return {a, Verdict::yes({{"ell", ell}, {"a", a}, {"d_digits", d.get_str().size()}})};
  }
  return {0, Verdict::unknown_at("a_max " + std::to_string(a_max), {{"ell", ell}})};
}

ExceptionalSet compute_exceptional_L(const Curve& curve, std::uint64_t ell_max) {
  ExceptionalSet out;
  out.window = std::min<std::uint64_t>(ell_max, static_cast<std::uint64_t>(curve.caps().index_cap));
  for (std::uint64_t ell : primes_up_to(out.window))
    if (curve.d(static_cast<std::int64_t>(ell)) == 1) out.L.insert(ell);
  out.verdict = Verdict::yes({{"L", out.L}, {"window", out.window}});
  return out;
}

Marker compute_p_ell(const Curve& curve, std::uint64_t ell, const ConstructionBudget& budget) {
  AEll a = compute_a_ell(curve, ell, budget.a_max);
  if (a.a == 0) return {std::nullopt, 0, a.verdict};
  std::uint64_t n = 1;
  for (unsigned i = 0; i < a.a; ++i) n *= ell;
  Integer rest = curve.d(static_cast<std::int64_t>(n));
  auto peeled = peel_by_orders(curve, rest, hasse_floor(n), budget.peel_bound,
                               [&](std::uint64_t q) { return multiple_vanishes_mod(curve, n, q); });
  Marker m = finish_marker(curve, peeled, rest, budget, {{"ell", ell}, {"a", a.a}});
  if (m.prime && fits_u64(*m.prime)) {
    std::uint64_t p = to_u64(*m.prime);
    if (count_points(curve, p) % ell != 0) throw InvariantViolation("ell does not divide #E(F_{p_ell})");
  }
  return m;
}

Marker compute_p_ellm(const Curve& curve, std::uint64_t ell, std::uint64_t m, const ConstructionBudget& budget) {
  if (!is_prime_u64(ell) || !is_prime_u64(m)) throw PreconditionFailed("ell and m must be prime");
  std::uint64_t n = ell * m;
  curve.check_index(static_cast<std::int64_t>(n));
  Integer rest = primitive_part(curve, ell, m);
  if (rest == 1) {
    throw EmptyPrimitiveSet("S_" + std::to_string(n) + " has no prime outside S_" + std::to_string(ell) + " and S_" +
                            std::to_string(m));
  }
  auto peeled = peel_by_orders(curve, rest, hasse_floor(n), budget.peel_bound, [&](std::uint64_t q) {
    return multiple_vanishes_mod(curve, n, q) && !multiple_vanishes_mod(curve, ell, q) &&
           !multiple_vanishes_mod(curve, m, q);
  });
  return finish_marker(curve, peeled, rest, budget, {{"ell", ell}, {"m", m}});
}

MuResult mu_from_support(const std::vector<Integer>& known, const Integer& rest, std::uint64_t T) {
  MuResult out;
  out.mu = 0;
  const std::uint64_t table = shared_primes().limit();
  T = std::min(std::max<std::uint64_t>(T, 2), table);
  bool tail_needed = rest != 1;
  std::uint64_t c = 0;
  for (const Integer& q : known) {
    ++c;
    if (fits_u64(q) && to_u64(q) <= table) {
      Rational r(static_cast<unsigned long>(c), static_cast<unsigned long>(prime_pi(to_u64(q))));
      r.canonicalize();
      if (r > out.mu) {
        out.mu = r;
        out.attained_at = q;
      }
    } else {
      tail_needed = true;  // pi(q) out of reach; covered by the tail estimate
    }
  }
  Rational tail = 0;
  if (tail_needed) {
    // For X >= T the count is at most |known| + u, where u bounds the number
    // of distinct primes above T in rest.
    std::uint64_t u = 0;
    if (rest > 1) {
      Integer e = mpz_perfect_square_p(rest.get_mpz_t()) ? Integer(sqrt(rest)) : rest;
      u = static_cast<std::uint64_t>(std::floor(log_abs(e) / std::log(static_cast<double>(T)))) + 1;
    }
    tail = Rational(static_cast<unsigned long>(c + u), static_cast<unsigned long>(prime_pi(T)));
    tail.canonicalize();
  }
  if (tail <= out.mu) {
    // The supremum is attained below T at a known prime.
    out.upper = out.mu;
    nlohmann::json w = {{"mu", to_string(out.mu)}};
    if (out.attained_at) w["attained_at"] = to_string(*out.attained_at);
    out.verdict = Verdict::yes(w);
    return out;
  }
  out.upper = tail;
  out.verdict = Verdict::unknown_at("support known below " + std::to_string(T),
                                    {{"lower", to_string(out.mu)}, {"upper", to_string(out.upper)}});
  return out;
}

MuResult compute_mu(const Curve& curve, std::uint64_t ell, std::uint64_t sweep_bound, const FactoringBudget& budget) {
  if (!is_prime_u64(ell)) throw PreconditionFailed("ell must be prime");
  sweep_bound = std::min<std::uint64_t>(std::max<std::uint64_t>(sweep_bound, 3), shared_primes().limit());
  Integer rest = curve.d(static_cast<std::int64_t>(ell));
  std::vector<Integer> known;
  if (rest > 1) {
    for (auto& pp : peel_by_orders(curve, rest, hasse_floor(ell), sweep_bound,
                                   [&](std::uint64_t q) { return multiple_vanishes_mod(curve, ell, q); }))
      known.push_back(pp.prime);
  }
  if (rest > 1 && budget.rho_attempts > 0) {
    FactoringBudget fb = budget;
    fb.trial_bound = 2;  // nothing below the sweep bound is left
    Factorization f = factor(rest, fb);
    for (auto& pp : f.factors) known.push_back(pp.prime);
    rest = f.cofactor;
  }
  std::sort(known.begin(), known.end());
  return mu_from_support(known, rest, sweep_bound);
}

YLocator::YLocator(const Curve& curve, std::int64_t exact_cap, mpfr_prec_t max_precision)
    : curve_(curve), torus_(curve.config(), max_precision), exact_cap_(exact_cap) {}

std::optional<Rational> YLocator::exact_y(std::int64_t n) const {
  std::int64_t mag = n < 0 ? -n : n;
  if (n == 0 || mag > exact_cap_) return std::nullopt;
  return curve_.multiple(n).y();
}

Truth YLocator::in(std::int64_t n, const YInterval& iv) const {
  if (n == 0) return Truth::certified_false;
  if (auto y = exact_y(n)) return iv.contains(*y) ? Truth::certified_true : Truth::certified_false;
  return torus_.member(n, iv).truth;
}

YInterval condition_window(int i) {
  Rational r(1, 10 * i);
  return {Rational(i) - r, Rational(i) + r};
}

Verdict condition_mu(const Curve& curve, std::uint64_t ell, int i, const ConstructionBudget& budget) {
  if (static_cast<std::int64_t>(ell) > curve.caps().index_cap) return Verdict::unknown_at("index cap");
  Rational thr(1);
  mpq_div_2exp(thr.get_mpq_t(), thr.get_mpq_t(), static_cast<unsigned long>(i));
  FactoringBudget none = budget.factoring;
  none.rho_attempts = 0;
  nlohmann::json w;
  for (std::uint64_t y = 100'000;; y *= 10) {
    y = std::min(y, budget.mu_sweep_max);
    bool last = y >= budget.mu_sweep_max;
    MuResult r = compute_mu(curve, ell, y, last ? budget.factoring : none);
    w = {{"ell", ell},
         {"i", i},
         {"mu_lower", to_string(r.mu)},
         {"mu_upper", to_string(r.upper)},
         {"threshold", to_string(thr)},
         {"sweep_bound", y}};
    if (r.upper <= thr) return Verdict::yes(w);
    if (r.mu > thr) return Verdict::no(w);
    if (last) break;
  }
  return Verdict::unknown_at("mu sweep to " + std::to_string(budget.mu_sweep_max), w);
}

Verdict condition_marker(const Curve& curve, std::uint64_t ell, std::uint64_t m, int i,
                         const ConstructionBudget& budget) {
  const std::uint64_t n = ell * m;
  const std::uint64_t thr = std::uint64_t{1} << i;
  nlohmann::json w = {{"index", n}, {"threshold", thr}};
  if (static_cast<std::int64_t>(n) <= curve.caps().index_cap) {
    Integer rest = primitive_part(curve, ell, m);
    if (rest == 1) throw EmptyPrimitiveSet("no primitive prime of index " + std::to_string(n));
    if (thr > shared_primes().limit()) return Verdict::unknown_at("threshold above trial range", w);
    auto small = peel_small_primes(rest, thr);
    if (rest > 1) {
      // Some prime of the primitive part exceeds 2^i, hence so does its max.
      w["rest_bits"] = mpz_sizeinbase(rest.get_mpz_t(), 2);
      return Verdict::yes(w);
    }
    w["max_prime"] = to_string(small.back().prime);
    return Verdict::no(w);
  }
  const std::uint64_t lo = std::max(thr + 1, hasse_floor(n));
  if (lo <= budget.sweep_limit) {
    for (std::uint64_t q : primes_in_range(std::max<std::uint64_t>(lo, 3), budget.sweep_limit)) {
      if (curve.is_bad(q)) continue;
      ReducedCurve rc = ReducedCurve::of(curve, q);
      const ModPoint& g = rc.generator();
      if (!rc.mul(n, g).infinity) continue;
      if (rc.mul(ell, g).infinity || rc.mul(m, g).infinity) continue;
      w["q"] = q;
      w["n_q"] = n;
      return Verdict::yes(w);
    }
  }
  return Verdict::unknown_at("q sweep to " + std::to_string(budget.sweep_limit), w);
}

Verdict condition_y(const YLocator& loc, std::uint64_t ell, int i) {
  nlohmann::json w = {{"ell", ell}, {"i", i}};
  auto y = loc.exact_y(static_cast<std::int64_t>(ell));
  if (y) {
    w["method"] = "exact";
    w["y_approx"] = y->get_d();
  } else {
    w["method"] = "torus";
  }
  Truth t = loc.in(static_cast<std::int64_t>(ell), condition_window(i));
  if (t == Truth::certified_true) return Verdict::yes(w);
  if (t == Truth::certified_false) return Verdict::no(w);
  return Verdict::unknown_at("precision " + std::to_string(loc.torus().max_precision()), w);
}

std::vector<std::uint64_t> LSequence::ells() const {
  std::vector<std::uint64_t> out;
  for (auto& w : witnesses) out.push_back(w.ell);
  return out;
}

LSequence construct_sequence(const Curve& curve, int count, std::uint64_t prime_bound,
                             const ConstructionBudget& budget) {
  LSequence seq;
  seq.requested = std::max(count, 0);
  ExceptionalSet ex = compute_exceptional_L(curve, budget.L_window);
  seq.L = ex.L;
  seq.L_window = ex.window;
  if (seq.requested == 0) {
    seq.stop_reason = "count reached";
    return seq;
  }
  YLocator loc(curve, budget.y_exact_cap, budget.max_precision);
  const auto cap = static_cast<std::uint64_t>(curve.caps().index_cap);
  std::uint64_t prev = 1;
  int i = 1;
  auto stop = [&](std::uint64_t ell, const std::string& why) {
    seq.frontier = ell;
    seq.stop_reason = why;
    return seq;
  };
  for (std::uint64_t ell = 2; ell <= prime_bound; ell = next_prime(ell)) {
    if (ell <= prev) continue;
    Verdict v5 = condition_y(loc, ell, i);
    if (v5.is_false()) continue;
    if (v5.is_unknown()) return stop(ell, "condition (5) undecided at ell = " + std::to_string(ell));
    if (seq.L.count(ell)) continue;
    if (ell > seq.L_window) {
      if (ell > cap) return stop(ell, "d_ell past the index cap at ell = " + std::to_string(ell));
      if (curve.d(static_cast<std::int64_t>(ell)) == 1) {
        seq.events.push_back({ell, i, "d_ell = 1 beyond the L window; candidate is in L"});
        continue;
      }
    }
    Verdict v2 = condition_mu(curve, ell, i, budget);
    if (v2.is_false()) continue;
    if (v2.is_unknown()) return stop(ell, "condition (2) undecided at ell = " + std::to_string(ell));

    Verdict v3 = Verdict::yes(nlohmann::json::array()), v4 = Verdict::yes(nlohmann::json::array());
    bool empty = false;
    try {
      for (std::uint64_t l : seq.L) {
        Verdict v = condition_marker(curve, l, ell, i, budget);
        nlohmann::json acc = v4.witness;
        v4 = conjunction(v4, v);
        if (v4.is_true()) {
          acc.push_back(v.witness);
          v4.witness = acc;
        }
      }
      std::vector<std::uint64_t> partners = seq.ells();
      partners.push_back(ell);
      for (std::uint64_t m : partners) {
        Verdict v = condition_marker(curve, ell, m, i, budget);
        nlohmann::json acc = v3.witness;
        v3 = conjunction(v3, v);
        if (v3.is_true()) {
          acc.push_back(v.witness);
          v3.witness = acc;
        }
      }
    } catch (const EmptyPrimitiveSet& e) {
      seq.events.push_back({ell, i, std::string("disqualified: ") + e.what()});
      empty = true;
    }
    if (empty || v4.is_false() || v3.is_false()) continue;
    if (v4.is_unknown()) return stop(ell, "condition (4) undecided at ell = " + std::to_string(ell));
    if (v3.is_unknown()) return stop(ell, "condition (3) undecided at ell = " + std::to_string(ell));

    SequenceWitness w;
    w.i = i;
    w.ell = ell;
    w.conditions = {Verdict::yes({{"previous", prev}}), v2, v3, v4, v5};
    w.y = loc.exact_y(static_cast<std::int64_t>(ell));
    seq.witnesses.push_back(std::move(w));
    prev = ell;
    if (++i > seq.requested) return stop(ell + 1, "count reached");
  }
  return stop(prime_bound + 1, "prime bound " + std::to_string(prime_bound) + " exhausted");
}

bool reverify_witness(const Curve& curve, const SequenceWitness& w, const ConstructionBudget& budget) {
  if (w.i < 1) return false;
  const Rational tol(1, 10 * w.i);
  if (static_cast<std::int64_t>(w.ell) <= budget.y_exact_cap) {
    Rational y = curve.multiple(static_cast<std::int64_t>(w.ell)).y();
    if (w.y && *w.y != y) return false;
    if (abs(Rational(y - w.i)) > tol) return false;
  } else {
    TorusPath path(curve.config(), budget.max_precision);
    if (path.member(static_cast<std::int64_t>(w.ell), condition_window(w.i)).truth != Truth::certified_true) {
      return false;
    }
  }
  Rational thr(1);
  mpq_div_2exp(thr.get_mpq_t(), thr.get_mpq_t(), static_cast<unsigned long>(w.i));
  MuResult mu = compute_mu(curve, w.ell, budget.mu_sweep_max, budget.factoring);
  return mu.upper <= thr;
}

SequenceOracle::SequenceOracle(const Curve& curve, LSequence seq, const ConstructionBudget& budget)
    : curve_(curve), seq_(std::move(seq)), budget_(budget), locator_(curve, budget.y_exact_cap, budget.max_precision) {
  for (std::size_t k = 1; k < seq_.witnesses.size(); ++k)
    if (seq_.witnesses[k].ell <= seq_.witnesses[k - 1].ell) throw InvalidConfig("ell-sequence is not increasing");
}

std::optional<int> SequenceOracle::index_of(std::uint64_t ell) const {
  for (auto& w : seq_.witnesses)
    if (w.ell == ell) return w.i;
  return std::nullopt;
}

Truth SequenceOracle::in_L(std::uint64_t ell) const {
  if (!is_prime_u64(ell)) return Truth::certified_false;
  if (ell <= seq_.L_window) return seq_.L.count(ell) ? Truth::certified_true : Truth::certified_false;
  if (static_cast<std::int64_t>(ell) > curve_.caps().index_cap) return Truth::unknown;
  return curve_.d(static_cast<std::int64_t>(ell)) == 1 ? Truth::certified_true : Truth::certified_false;
}

Truth SequenceOracle::contains(std::uint64_t ell) const {
  if (!is_prime_u64(ell)) return Truth::certified_false;
  if (index_of(ell)) return Truth::certified_true;
  if (ell < seq_.frontier) return Truth::certified_false;
  if (in_L(ell) == Truth::certified_true) return Truth::certified_false;
  // Past the frontier ell could only be some ell_i with i > k, which needs y(ell P) >= i - 1/(10i).
  const int next = static_cast<int>(seq_.witnesses.size()) + 1;
  YInterval tail{Rational(next) - Rational(1, 10 * next), std::nullopt};
  if (locator_.in(static_cast<std::int64_t>(ell), tail) == Truth::certified_false) return Truth::certified_false;
  return Truth::unknown;
}

std::vector<std::uint64_t> TWindow::certified(const std::vector<Verdict>& part) const {
  std::vector<std::uint64_t> out;
  for (std::size_t k = 0; k < primes.size(); ++k)
    if (part[k].is_true()) out.push_back(primes[k]);
  return out;
}

std::vector<std::uint64_t> TWindow::undecided(const std::vector<Verdict>& part) const {
  std::vector<std::uint64_t> out;
  for (std::size_t k = 0; k < primes.size(); ++k)
    if (part[k].is_unknown()) out.push_back(primes[k]);
  return out;
}

TWindow assemble_T(const SequenceOracle& seq, std::uint64_t X) {
  const Curve& curve = seq.curve();
  TWindow w;
  w.X = X;
  w.primes = primes_up_to(X);
  const std::size_t np = w.primes.size();
  w.t1.assign(np, Verdict::no());
  w.t2a.assign(np, Verdict::no());
  w.t2b.assign(np, Verdict::no());
  w.t2c.assign(np, Verdict::no());
  std::map<std::uint64_t, std::size_t> pos;
  for (std::size_t k = 0; k < np; ++k) pos[w.primes[k]] = k;

  // Any q <= X in S_n has n_q = n <= X + 1 + 2 sqrt(X).
  const std::uint64_t reach = X + 2 + 2 * static_cast<std::uint64_t>(std::sqrt(static_cast<double>(X)));
  curve.check_index(static_cast<std::int64_t>(reach));

  auto mark = [](Verdict& slot, Truth t, nlohmann::json why) {
    if (slot.is_true()) return;
    if (t == Truth::certified_true) slot = Verdict::yes(std::move(why));
    else if (t == Truth::unknown) slot = Verdict::unknown_at("sequence frontier", std::move(why));
  };
  // Primes <= X dividing v, all removed from v.
  auto small_support = [&](Integer& v) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t q : w.primes) {
      if (curve.is_bad(q)) continue;
      if (remove_factor(v, q) > 0) out.push_back(q);
    }
    return out;
  };

  for (std::uint64_t q : curve.config().s_bad)
    if (pos.count(q)) w.t1[pos[q]] = Verdict::yes({{"s_bad", true}});

  const std::vector<std::uint64_t> ells = primes_up_to(reach);
  std::map<std::uint64_t, Truth> member;
  for (std::uint64_t ell : ells) member[ell] = seq.contains(ell);

  for (std::uint64_t ell : ells) {
    Truth st = member[ell];
    if (st == Truth::certified_false) continue;
    Integer d = curve.d(static_cast<std::int64_t>(ell));
    for (std::uint64_t q : small_support(d)) mark(w.t1[pos[q]], st, {{"ell", ell}});
  }

  for (std::uint64_t ell : ells) {
    Truth st = member[ell];
    if (st == Truth::certified_true) continue;
    Truth not_in = st == Truth::certified_false ? Truth::certified_true : Truth::unknown;
    std::uint64_t n = 1;
    for (unsigned a = 1;; ++a) {
      if (!checked_mul(n, ell, n) || n > reach) break;
      Integer d = curve.d(static_cast<std::int64_t>(n));
      if (d == 1) continue;
      auto sup = small_support(d);
      if (d == 1 && !sup.empty()) {
        mark(w.t2a[pos[sup.back()]], not_in, {{"ell", ell}, {"a", a}, {"p_ell", sup.back()}});
      }
      break;
    }
  }

  auto pair_marker = [&](std::uint64_t l, std::uint64_t m, Truth st, std::vector<Verdict>& part) {
    if (st == Truth::certified_false) return;
    Integer prim = primitive_part(curve, l, m);
    if (prim == 1) return;
    auto sup = small_support(prim);
    if (prim == 1 && !sup.empty()) mark(part[pos[sup.back()]], st, {{"ell", l}, {"m", m}, {"p_ellm", sup.back()}});
  };
  auto both = [](Truth x, Truth y) {
    if (x == Truth::certified_false || y == Truth::certified_false) return Truth::certified_false;
    if (x == Truth::certified_true && y == Truth::certified_true) return Truth::certified_true;
    return Truth::unknown;
  };
  for (std::uint64_t l : ells) {
    if (l * l > reach) break;
    for (std::uint64_t m : ells) {
      if (m < l) continue;
      if (l * m > reach) break;
      pair_marker(l, m, both(member[l], member[m]), w.t2b);
      if (l != m) {
        pair_marker(l, m, both(seq.in_L(l), member[m]), w.t2c);
        pair_marker(m, l, both(seq.in_L(m), member[l]), w.t2c);
      }
    }
  }
  return w;
}

nlohmann::json to_json(const SequenceWitness& w) {
  nlohmann::json conds = nlohmann::json::array();
  for (auto& v : w.conditions) conds.push_back(to_json(v));
  nlohmann::json j = {{"i", w.i}, {"ell", w.ell}, {"conditions", conds}};
  j["y"] = w.y ? nlohmann::json(to_string(*w.y)) : nlohmann::json(nullptr);
  return j;
}

nlohmann::json to_json(const LSequence& s) {
  nlohmann::json wit = nlohmann::json::array();
  for (auto& w : s.witnesses) wit.push_back(to_json(w));
  nlohmann::json ev = nlohmann::json::array();
  for (auto& e : s.events) ev.push_back({{"candidate", e.candidate}, {"i", e.i}, {"note", e.note}});
  return {{"requested", s.requested}, {"witnesses", wit}, {"L", s.L},           {"L_window", s.L_window},
          {"frontier", s.frontier},   {"stop_reason", s.stop_reason}, {"events", ev}};
}

LSequence sequence_from_json(const nlohmann::json& j) {
  LSequence s;
  s.requested = j.at("requested").get<int>();
  for (auto& wj : j.at("witnesses")) {
    SequenceWitness w;
    w.i = wj.at("i").get<int>();
    w.ell = wj.at("ell").get<std::uint64_t>();
    const auto& conds = wj.at("conditions");
    if (conds.size() != 5) throw InvalidConfig("witness must carry five condition verdicts");
    for (std::size_t k = 0; k < 5; ++k) w.conditions[k] = verdict_from_json(conds[k]);
    if (!wj.at("y").is_null()) w.y = parse_rational(wj["y"].get<std::string>());
    s.witnesses.push_back(std::move(w));
  }
  s.L = j.at("L").get<std::set<std::uint64_t>>();
  s.L_window = j.at("L_window").get<std::uint64_t>();
  s.frontier = j.at("frontier").get<std::uint64_t>();
  s.stop_reason = j.at("stop_reason").get<std::string>();
  for (auto& e : j.at("events"))
    s.events.push_back({e.at("candidate").get<std::uint64_t>(), e.at("i").get<int>(), e.at("note").get<std::string>()});
  return s;
}

nlohmann::json to_json(const TWindow& w) {
  nlohmann::json j = {{"X", w.X}};
  nlohmann::json unk;
  const std::pair<const char*, const std::vector<Verdict>*> parts[] = {
      {"T1", &w.t1}, {"T2a", &w.t2a}, {"T2b", &w.t2b}, {"T2c", &w.t2c}};
  for (auto& [name, part] : parts) {
    j[name] = w.certified(*part);
    unk[name] = w.undecided(*part);
  }
  j["unknown"] = unk;
  return j;
}

}  // namespace edsring
