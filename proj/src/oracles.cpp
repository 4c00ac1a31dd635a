#include "edsring/oracles.hpp"

#include <algorithm>

#include "edsring/errors.hpp"
#include "edsring/modp.hpp"
#include "edsring/primes.hpp"
#include "edsring/valuations.hpp"

namespace edsring {
namespace {

// Above this the sweep in is_largest costs more than it is worth.
constexpr std::uint64_t kLargestSweepMax = 100'000'000;

Truth both(Truth x, Truth y) {
  if (x == Truth::certified_false || y == Truth::certified_false) return Truth::certified_false;
  if (x == Truth::certified_true && y == Truth::certified_true) return Truth::certified_true;
  return Truth::unknown;
}

Truth either(Truth x, Truth y) {
  if (x == Truth::certified_true || y == Truth::certified_true) return Truth::certified_true;
  if (x == Truth::certified_false && y == Truth::certified_false) return Truth::certified_false;
  return Truth::unknown;
}

Truth flip(Truth t) {
  if (t == Truth::certified_true) return Truth::certified_false;
  if (t == Truth::certified_false) return Truth::certified_true;
  return t;
}

void require_prime(std::uint64_t p) {
  if (!is_prime_u64(p)) throw PreconditionFailed(std::to_string(p) + " is not prime");
}

// ell when n = ell^b, else 0.
std::uint64_t prime_power_base(std::uint64_t n, unsigned& b) {
  auto f = factor_u64(n);
  if (f.size() != 1) return 0;
  b = f[0].second;
  return f[0].first;
}

std::vector<std::uint64_t> divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out{1};
  for (auto [q, e] : factor_u64(n)) {
    std::size_t k = out.size();
    std::uint64_t pw = 1;
    for (unsigned j = 0; j < e; ++j) {
      pw *= q;
      for (std::size_t t = 0; t < k; ++t) out.push_back(out[t] * pw);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

SPolicy parse_policy(const std::string& s) {
  if (s == "min" || s == "minimal") return SPolicy::minimal;
  if (s == "max" || s == "maximal") return SPolicy::maximal;
  throw PreconditionFailed("policy must be min or max, got '" + s + "'");
}

std::string to_string(SPolicy p) { return p == SPolicy::minimal ? "min" : "max"; }

Oracles::Oracles(const Curve& curve, LSequence seq, ConstructionBudget budget)
    : curve_(curve), seq_(curve, std::move(seq), budget), budget_(budget) {}

Truth Oracles::is_largest(std::uint64_t p, std::uint64_t n, Integer base) const {
  if (remove_factor(base, p) == 0) throw InvariantViolation(std::to_string(p) + " does not divide the base");
  if (base == 1) return Truth::certified_true;
  if (mpz_sizeinbase(base.get_mpz_t(), 2) <= 256) {
    Factorization f = factor(base, budget_.factoring);
    for (auto& pp : f.factors)
      if (pp.prime > p) return Truth::certified_false;
    if (f.complete) return Truth::certified_true;
    // what rho could not split has no factor below the trial bound
    if (f.cofactor > 1 && budget_.factoring.trial_bound >= p) return Truth::certified_false;
  }
  if (p > kLargestSweepMax) return Truth::unknown;
  // Every prime of base has order n, so sweeping that order below p clears
  // everything that is not larger than p.
  for (std::uint64_t q : primes_in_range(std::max<std::uint64_t>(3, hasse_floor(n)), p - 1)) {
    if (curve_.is_bad(q) || !multiple_vanishes_mod(curve_, n, q)) continue;
    remove_factor(base, q);
    if (base == 1) return Truth::certified_true;
  }
  return base == 1 ? Truth::certified_true : Truth::certified_false;
}

Verdict Oracles::member_T1(std::uint64_t p) const {
  require_prime(p);
  if (curve_.is_bad(p)) return Verdict::yes({{"s_bad", true}});
  std::uint64_t n = point_order(curve_, p);
  Truth t = seq_.contains(n);
  if (t == Truth::certified_true) return Verdict::yes({{"n_p", n}, {"ell", n}, {"i", *seq_.index_of(n)}});
  if (t == Truth::certified_false) return Verdict::no({{"n_p", n}});
  return Verdict::unknown_at("sequence frontier " + std::to_string(seq_.sequence().frontier), {{"n_p", n}});
}

Verdict Oracles::member_T2a(std::uint64_t p) const {
  require_prime(p);
  if (curve_.is_bad(p)) throw BadPrime(std::to_string(p) + " is in s_bad");
  // p = p_ell forces n_p = ell^{a_ell}; only that one ell can qualify.
  std::uint64_t n = point_order(curve_, p);
  unsigned b = 0;
  std::uint64_t ell = prime_power_base(n, b);
  if (ell == 0) return Verdict::no({{"n_p", n}});
  if (count_points(curve_, p) % ell != 0) throw InvariantViolation("ell does not divide #E(F_p)");
  Truth outside = flip(seq_.contains(ell));
  if (outside == Truth::certified_false) return Verdict::no({{"n_p", n}, {"ell", ell}, {"in_sequence", true}});
  if (static_cast<std::int64_t>(n) > curve_.caps().index_cap) {
    return Verdict::unknown_at("index cap", {{"n_p", n}, {"ell", ell}});
  }
  AEll a = compute_a_ell(curve_, ell, b);
  if (a.a == 0) throw InvariantViolation("p divides d_{ell^b} but no a <= b has d_{ell^a} > 1");
  if (a.a != b) return Verdict::no({{"n_p", n}, {"ell", ell}, {"a", a.a}});
  Truth t = both(outside, is_largest(p, n, curve_.d(static_cast<std::int64_t>(n))));
  nlohmann::json w = {{"ell", ell}, {"a", a.a}, {"p_ell", p}};
  if (t == Truth::certified_true) return Verdict::yes(w);
  if (t == Truth::certified_false) return Verdict::no({{"n_p", n}, {"ell", ell}, {"a", a.a}, {"largest", false}});
  return Verdict::unknown_at("sequence frontier " + std::to_string(seq_.sequence().frontier), w);
}

Verdict Oracles::member_T2b(std::uint64_t p) const {
  require_prime(p);
  if (curve_.is_bad(p)) return Verdict::no({{"s_bad", true}});
  std::uint64_t n = point_order(curve_, p);
  auto f = factor_u64(n);
  unsigned parts = 0;
  for (auto& [q, e] : f) parts += e;
  if (parts != 2) return Verdict::no({{"n_p", n}});
  std::uint64_t l = f[0].first, m = f.back().first;
  Truth t = both(seq_.contains(l), seq_.contains(m));
  if (t == Truth::certified_false) return Verdict::no({{"n_p", n}});
  if (static_cast<std::int64_t>(n) > curve_.caps().index_cap) return Verdict::unknown_at("index cap", {{"n_p", n}});
  t = both(t, is_largest(p, n, primitive_part(curve_, l, m)));
  if (t == Truth::certified_true) {
    return Verdict::yes({{"ell_i", m}, {"i", *seq_.index_of(m)}, {"ell_j", l}, {"j", *seq_.index_of(l)}, {"p_ellm", p}});
  }
  if (t == Truth::certified_false) return Verdict::no({{"n_p", n}, {"largest", false}});
  return Verdict::unknown_at("sequence frontier " + std::to_string(seq_.sequence().frontier), {{"n_p", n}});
}

Verdict Oracles::member_T2c(std::uint64_t p) const {
  require_prime(p);
  if (curve_.is_bad(p)) return Verdict::no({{"s_bad", true}});
  std::uint64_t n = point_order(curve_, p);
  auto f = factor_u64(n);
  if (f.size() != 2 || f[0].second != 1 || f[1].second != 1) return Verdict::no({{"n_p", n}});
  std::uint64_t l = f[0].first, m = f[1].first;
  Truth lm = both(seq_.in_L(l), seq_.contains(m));
  Truth ml = both(seq_.in_L(m), seq_.contains(l));
  Truth t = either(lm, ml);
  if (t == Truth::certified_false) return Verdict::no({{"n_p", n}});
  if (static_cast<std::int64_t>(n) > curve_.caps().index_cap) return Verdict::unknown_at("index cap", {{"n_p", n}});
  t = both(t, is_largest(p, n, primitive_part(curve_, l, m)));
  if (t == Truth::certified_true) {
    std::uint64_t in_l = lm == Truth::certified_true ? l : m;
    std::uint64_t ell_i = in_l == l ? m : l;
    return Verdict::yes({{"ell", in_l}, {"ell_i", ell_i}, {"i", *seq_.index_of(ell_i)}, {"p_ellm", p}});
  }
  if (t == Truth::certified_false) return Verdict::no({{"n_p", n}, {"largest", false}});
  return Verdict::unknown_at("sequence frontier " + std::to_string(seq_.sequence().frontier), {{"n_p", n}});
}

Verdict Oracles::member_T2(std::uint64_t p) const {
  require_prime(p);
  if (curve_.is_bad(p)) return Verdict::no({{"s_bad", true}});
  Verdict v = member_T2a(p);
  if (v.is_true()) return v;
  v = disjunction(v, member_T2b(p));
  if (v.is_true()) return v;
  return disjunction(v, member_T2c(p));
}

bool Oracles::has_primitive(std::uint64_t m) const {
  if (m <= 1) return false;
  Integer v = curve_.d(static_cast<std::int64_t>(m));
  for (auto [r, e] : factor_u64(m)) {
    if (v == 1) break;
    v = strip_common_primes(v, curve_.d(static_cast<std::int64_t>(m / r)));
  }
  return v > 1;
}

// Whether S_m holds a T2 prime that is pinned to index m: p_ell for
// m = ell^{a_ell}, or p_{ell m'} for m = ell m'.
Truth Oracles::hits_T2(std::uint64_t m, std::string& which) const {
  Truth ta = Truth::certified_false;
  unsigned b = 0;
  if (std::uint64_t ell = prime_power_base(m, b)) {
    if (compute_a_ell(curve_, ell, b).a == b) ta = flip(seq_.contains(ell));
  }
  if (ta == Truth::certified_true) {
    which = "T2a";
    return ta;
  }
  Truth tp = Truth::certified_false;
  auto f = factor_u64(m);
  unsigned parts = 0;
  for (auto& [q, e] : f) parts += e;
  if (parts == 2) {
    std::uint64_t l = f[0].first, k = f.back().first;
    Truth tb = both(seq_.contains(l), seq_.contains(k));
    Truth tc = Truth::certified_false;
    if (l != k) tc = either(both(seq_.in_L(l), seq_.contains(k)), both(seq_.in_L(k), seq_.contains(l)));
    tp = either(tb, tc);
    if (tp != Truth::certified_false && !has_primitive(m)) tp = Truth::certified_false;
    if (tp == Truth::certified_true) which = tb == Truth::certified_true ? "T2b" : "T2c";
  }
  return either(ta, tp);
}

Verdict Oracles::ring_membership(std::int64_t n, SPolicy policy) const {
  if (n == 0) throw PreconditionFailed("0P is the point at infinity, not an affine point");
  const std::uint64_t N = static_cast<std::uint64_t>(n < 0 ? -n : n);
  curve_.check_index(static_cast<std::int64_t>(N));
  nlohmann::json base = {{"n", n}, {"policy", to_string(policy)}};
  Truth acc = Truth::certified_true;
  nlohmann::json used = nlohmann::json::array();
  for (std::uint64_t m : divisors(N)) {
    if (m == 1) continue;
    if (policy == SPolicy::minimal) {
      // a prime with n_q = m is in T1 iff m is some ell_i
      if (!has_primitive(m)) continue;
      Truth t = seq_.contains(m);
      if (t == Truth::certified_false) {
        base["divisor"] = m;
        return Verdict::no(base);
      }
      if (t == Truth::certified_true) used.push_back(m);
      acc = both(acc, t);
    } else {
      std::string which;
      Truth t = hits_T2(m, which);
      if (t == Truth::certified_true) {
        base["divisor"] = m;
        base["set"] = which;
        return Verdict::no(base);
      }
      acc = both(acc, flip(t));
    }
  }
  if (acc == Truth::unknown) {
    return Verdict::unknown_at("sequence frontier " + std::to_string(seq_.sequence().frontier), base);
  }
  if (policy == SPolicy::minimal) base["sequence_divisors"] = used;
  return Verdict::yes(base);
}

ClosureReport Oracles::closure_report(std::int64_t N, SPolicy policy) const {
  if (N < 1) throw PreconditionFailed("N must be positive");
  ClosureReport r;
  r.N = N;
  r.policy = policy;
  std::vector<Rational> ys;
  for (std::int64_t n = 1; n <= N; ++n) {
    Verdict v = ring_membership(n, policy);
    if (v.is_unknown()) r.undecided.push_back(n);
    if (!v.is_true()) continue;
    Rational y = curve_.multiple(n).y();
    r.members.push_back({n, y});
    ys.push_back(y);
    ys.push_back(-y);
  }
  std::sort(ys.begin(), ys.end());
  for (std::size_t k = 1; k < ys.size(); ++k) {
    Rational g = ys[k] - ys[k - 1];
    if (!r.min_gap || g < *r.min_gap) r.min_gap = g;
  }
  const auto& wit = seq_.sequence().witnesses;
  for (std::size_t k = 1; k < wit.size(); ++k) {
    if (static_cast<std::int64_t>(wit[k].ell) > N) break;
    Rational g = curve_.multiple(static_cast<std::int64_t>(wit[k].ell)).y() -
                 curve_.multiple(static_cast<std::int64_t>(wit[k - 1].ell)).y();
    if (!r.cluster_gap || g < *r.cluster_gap) r.cluster_gap = g;
  }
  return r;
}

nlohmann::json to_json(const ClosureReport& r) {
  nlohmann::json members = nlohmann::json::array();
  for (auto& m : r.members) members.push_back({{"n", m.n}, {"y", to_string(m.y)}, {"y_approx", m.y.get_d()}});
  nlohmann::json j = {{"N", r.N}, {"policy", to_string(r.policy)}, {"members", members}, {"undecided", r.undecided}};
  j["min_gap"] = r.min_gap ? nlohmann::json(to_string(*r.min_gap)) : nlohmann::json(nullptr);
  j["cluster_gap"] = r.cluster_gap ? nlohmann::json(to_string(*r.cluster_gap)) : nlohmann::json(nullptr);
  return j;
}

}  // namespace edsring
