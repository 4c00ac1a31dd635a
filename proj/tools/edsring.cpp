// edsring: command-line front end for the library.
//
// Exit codes: 0 ok, 1 usage or bad input, 2 computation infeasible within
// the configured caps, 3 invariant violation.

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "edsring/analytics.hpp"
#include "edsring/cache.hpp"
#include "edsring/config.hpp"
#include "edsring/dio_model.hpp"
#include "edsring/errors.hpp"
#include "edsring/modp.hpp"
#include "edsring/oracles.hpp"
#include "edsring/primes.hpp"
#include "edsring/verify.hpp"

using namespace edsring;
using ojson = nlohmann::ordered_json;

namespace {

constexpr int kOk = 0, kUsage = 1, kInfeasible = 2, kInvariant = 3;

struct Options {
  std::string config_path;
  std::string cache_dir;
  std::string sequence_path;
  bool timing = false;
  std::optional<std::int64_t> index_cap;
  std::optional<std::uint64_t> trial_bound, rho_iterations, peel_bound, sweep_limit, mu_sweep_max;
  std::optional<std::int64_t> y_exact_cap;
};

// Everything a subcommand needs, built once after parsing.
struct Context {
  AppConfig cfg;
  std::unique_ptr<Curve> curve;
  std::unique_ptr<Cache> cache;
  std::string sequence_path;

  const ConstructionBudget& budget() const { return cfg.budget; }

  LSequence sequence(int count, std::uint64_t prime_bound) {
    if (!sequence_path.empty()) {
      std::ifstream in(sequence_path);
      if (!in) throw InvalidConfig("cannot open " + sequence_path);
      nlohmann::json j = nlohmann::json::parse(in);
      return sequence_from_json(j.contains("sequence") ? j.at("sequence") : j);
    }
    if (cache)
      if (auto s = cache->load_sequence(count, prime_bound)) return *s;
    LSequence s = construct_sequence(*curve, count, prime_bound, cfg.budget);
    if (cache) cache->store_sequence(s, prime_bound);
    return s;
  }
  LSequence sequence() { return sequence(cfg.construct_count, cfg.construct_prime_bound); }
};

// Small integers as JSON numbers, anything wider as a decimal string.
ojson integer_json(const Integer& v) {
  if (fits_u64(v)) return to_u64(v);
  return v.get_str();
}

void emit(const ojson& j) { std::cout << j.dump() << '\n'; }

ojson verdict_json(const Verdict& v) {
  ojson j;
  j["verdict"] = to_string(v.state);
  if (!v.bound.empty()) j["bound"] = v.bound;
  if (!v.witness.is_null()) j["witness"] = ojson::parse(v.witness.dump());
  return j;
}

ojson point_json(std::int64_t n, const RationalPoint& pt) {
  ojson j;
  j["n"] = n;
  j["identity"] = pt.is_identity();
  if (!pt.is_identity()) {
    j["x"] = to_string(pt.x());
    j["y"] = to_string(pt.y());
  }
  return j;
}

CacheRecord record_for(Context& ctx, std::int64_t n) {
  if (ctx.cache)
    if (auto r = ctx.cache->find(n)) return *r;
  CacheRecord r = make_record(*ctx.curve, n, ctx.curve->denom_profile(n, ctx.budget().factoring));
  if (ctx.cache) ctx.cache->append(r);
  return r;
}

int cmd_curve_info(Context& ctx) {
  const CurveConfig& c = ctx.curve->config();
  ojson j;
  j["a"] = c.a.get_str();
  j["b"] = c.b.get_str();
  j["generator"] = {to_string(c.generator.x()), to_string(c.generator.y())};
  j["discriminant"] = c.discriminant().get_str();
  j["s_bad"] = c.s_bad;
  j["fingerprint"] = c.fingerprint();
  j["hypotheses"] = {{"rank_one", c.hypotheses.rank_one},
                     {"torsion_free", c.hypotheses.torsion_free},
                     {"connected_real_locus", c.hypotheses.connected_real_locus},
                     {"non_cm", c.hypotheses.non_cm},
                     {"provenance", c.hypotheses.provenance}};
  emit(j);
  return kOk;
}

int cmd_mul(Context& ctx, std::int64_t n) {
  ctx.curve->check_index(n);
  if (n != 0 && ctx.cache) {
    CacheRecord r = record_for(ctx, std::abs(n));
    emit(point_json(n, n > 0 ? r.point : -r.point));
    return kOk;
  }
  emit(point_json(n, ctx.curve->multiple(n)));
  return kOk;
}

int cmd_denom(Context& ctx, std::int64_t n) {
  ctx.curve->check_index(n);
  ojson j;
  j["n"] = n;
  if (n == 0) {
    j["x"] = nullptr;
    j["d_n"] = "0";
    j["S_n"] = ojson::array();
    j["complete"] = false;
    emit(j);
    return kOk;
  }
  CacheRecord r = record_for(ctx, std::abs(n));
  j["x"] = to_string(r.point.x());
  j["d_n"] = r.d.get_str();
  ojson s = ojson::array();
  for (auto& pp : r.support) s.push_back({integer_json(pp.prime), pp.exponent});
  j["S_n"] = s;
  j["complete"] = r.complete;
  if (!r.complete) j["cofactor"] = r.cofactor.get_str();
  emit(j);
  return kOk;
}

int cmd_orders(Context& ctx, std::uint64_t max_p) {
  if (max_p < 2) throw PreconditionFailed("--max-p must be at least 2");
  order_sweep(*ctx.curve, max_p, [](const ReducedCurveData& r) { std::cout << to_json(r).dump() << '\n'; });
  return kOk;
}

int cmd_a_ell(Context& ctx, std::uint64_t ell) {
  AEll a = compute_a_ell(*ctx.curve, ell, ctx.budget().a_max);
  ojson j;
  j["ell"] = ell;
  j["a_ell"] = a.a ? ojson(a.a) : ojson(nullptr);
  j.update(verdict_json(a.verdict));
  emit(j);
  return kOk;
}

ojson marker_json(const Marker& m) {
  ojson j;
  j["prime"] = m.prime ? ojson(m.prime->get_str()) : ojson(nullptr);
  if (!m.prime) j["lower_bound"] = m.lower_bound.get_str();
  j.update(verdict_json(m.verdict));
  return j;
}

int cmd_p_ell(Context& ctx, std::uint64_t ell) {
  ojson j;
  j["ell"] = ell;
  j.update(marker_json(compute_p_ell(*ctx.curve, ell, ctx.budget())));
  emit(j);
  return kOk;
}

int cmd_p_ellm(Context& ctx, std::uint64_t ell, std::uint64_t m) {
  ojson j;
  j["ell"] = ell;
  j["m"] = m;
  try {
    j.update(marker_json(compute_p_ellm(*ctx.curve, ell, m, ctx.budget())));
  } catch (const EmptyPrimitiveSet& e) {
    j["prime"] = nullptr;
    j["verdict"] = "empty";
    j["detail"] = e.what();
  }
  emit(j);
  return kOk;
}

int cmd_mu(Context& ctx, std::uint64_t ell) {
  if (!is_prime_u64(ell)) throw PreconditionFailed("ell must be prime");
  // widen the sweep until the tail bound certifies the maximum
  MuResult m;
  for (std::uint64_t Y = 100'000;; Y *= 10) {
    Y = std::min(Y, ctx.budget().mu_sweep_max);
    FactoringBudget f = ctx.budget().factoring;
    if (Y < ctx.budget().mu_sweep_max) f.rho_attempts = 0;
    m = compute_mu(*ctx.curve, ell, Y, f);
    if (m.verdict.is_true() || Y >= ctx.budget().mu_sweep_max) break;
  }
  ojson j;
  j["ell"] = ell;
  j["mu"] = to_string(m.mu);
  j["attained_at"] = m.attained_at ? integer_json(*m.attained_at) : ojson(nullptr);
  if (!m.verdict.is_true()) {
    j["upper"] = to_string(m.upper);
    j.update(verdict_json(m.verdict));
  }
  emit(j);
  return kOk;
}

int cmd_construct(Context& ctx) {
  LSequence s = ctx.sequence();
  emit(ojson::parse(to_json(s).dump()));
  return kOk;
}

int cmd_member(Context& ctx, const std::string& set, std::uint64_t p) {
  if (!is_prime_u64(p)) throw PreconditionFailed("p must be prime");
  Oracles o(*ctx.curve, ctx.sequence(), ctx.budget());
  ojson j;
  j["p"] = p;
  if (set == "t1") {
    Verdict v = o.member_T1(p);
    j["verdict"] = to_string(v.state);
    if (!v.bound.empty()) j["bound"] = v.bound;
    if (v.witness.is_object())
      for (auto& [k, val] : v.witness.items()) j[k] = ojson::parse(val.dump());
    emit(j);
    return kOk;
  }
  Verdict v = set == "t2a" ? o.member_T2a(p) : set == "t2b" ? o.member_T2b(p) : o.member_T2c(p);
  j["set"] = set == "t2a" ? "T2a" : set == "t2b" ? "T2b" : "T2c";
  j.update(verdict_json(v));
  emit(j);
  return kOk;
}

// No built-in default: the flag or the configuration file must pick one.
SPolicy policy_of(const Context& ctx, const std::string& flag) {
  if (!flag.empty()) return parse_policy(flag);
  if (ctx.cfg.policy) return *ctx.cfg.policy;
  throw PreconditionFailed("--policy is required (min or max) unless the configuration sets one");
}

int cmd_ring_member(Context& ctx, std::int64_t n, const std::string& policy) {
  SPolicy pol = policy_of(ctx, policy);
  Oracles o(*ctx.curve, ctx.sequence(), ctx.budget());
  ojson j;
  j["n"] = n;
  j["policy"] = to_string(pol);
  j.update(verdict_json(o.ring_membership(n, pol)));
  emit(j);
  return kOk;
}

int cmd_closure(Context& ctx, std::int64_t N, const std::string& policy) {
  SPolicy pol = policy_of(ctx, policy);
  Oracles o(*ctx.curve, ctx.sequence(), ctx.budget());
  emit(ojson::parse(to_json(o.closure_report(N, pol)).dump()));
  return kOk;
}

struct DensityOptions {
  std::string report;
  std::uint64_t max = 10'000;
  std::int64_t n_min = 15, n_max = 25;
  std::uint64_t ell = 2;
  std::string alpha, beta, eps = "1/10";
  std::uint64_t sweep_bound = 100'000;
  bool csv = false;
  std::string plot;
};

void write_file(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::trunc);
  if (!out || !(out << body)) throw InvalidConfig("cannot write " + path);
}

int emit_density(const DensityOptions& d, const DensityReport& r) {
  if (!d.plot.empty()) write_file(d.plot, to_gnuplot(r));
  if (d.csv) std::cout << to_csv(r);
  else emit(ojson::parse(to_json(r).dump()));
  return kOk;
}

int cmd_density(Context& ctx, const DensityOptions& d) {
  const Curve& c = *ctx.curve;
  if (d.report == "height") {
    HeightSlope h = height_slope(c, d.n_min, d.n_max);
    std::ostringstream data;
    data << "n,log_d,ratio\n";
    data.precision(12);
    for (auto& r : h.rows) data << r.n << ',' << r.log_d << ',' << r.ratio << '\n';
    if (!d.plot.empty()) {
      std::string g = "# n log_d ratio\n" + data.str().substr(data.str().find('\n') + 1);
      for (auto& ch : g)
        if (ch == ',') ch = ' ';
      write_file(d.plot, g);
    }
    if (d.csv) std::cout << data.str();
    else emit(ojson::parse(to_json(h).dump()));
    return kOk;
  }
  if (d.report == "equidistribution") {
    YInterval iv;
    if (!d.alpha.empty()) iv.lo = parse_rational(d.alpha);
    if (!d.beta.empty()) iv.hi = parse_rational(d.beta);
    return emit_density(d, equidistribution_report(c, iv, d.max, ctx.budget()));
  }
  if (d.report == "gl2") {
    ojson j;
    j["ell"] = d.ell;
    j["closed_form"] = to_string(gl2_fixed_fraction(d.ell));
    if (d.ell <= 7) j["enumerated"] = to_string(gl2_fixed_fraction_enumerated(d.ell));
    emit(j);
    return kOk;
  }
  if (d.report == "divisibility") return emit_density(d, factor_divisibility_frequency(c, d.ell, d.max));
  if (d.report == "mu-eps")
    return emit_density(d, mu_epsilon_report(c, parse_rational(d.eps), d.max, d.sweep_bound));
  if (d.report == "omega") {
    OmegaReport r = omega_distribution(c, d.max);
    std::ostringstream data;
    data << "checkpoint,total,below_1,below_2,below_3,below_4\n";
    for (auto& cp : r.trend) {
      data << cp.X << ',' << cp.total;
      for (auto& q : cp.below) data << ',' << to_string(q);
      data << '\n';
    }
    if (!d.plot.empty()) {
      std::ostringstream g;
      g << "# X total below_1 below_2 below_3 below_4\n";
      g.precision(10);
      for (auto& cp : r.trend) {
        g << cp.X << ' ' << cp.total;
        for (auto& q : cp.below) g << ' ' << q.get_d();
        g << '\n';
      }
      write_file(d.plot, g.str());
    }
    if (d.csv) std::cout << data.str();
    else emit(ojson::parse(to_json(r).dump()));
    return kOk;
  }
  if (d.report == "t-window") {
    SequenceOracle seq(c, ctx.sequence(), ctx.budget());
    TWindow w = assemble_T(seq, d.max);
    TDensity t = T_window_density(c, w, seq.sequence());
    if (!d.plot.empty()) write_file(d.plot, to_gnuplot(t.t1) + "\n\n" + to_gnuplot(t.t2));
    if (d.csv) std::cout << "# T1\n" << to_csv(t.t1) << "# T2\n" << to_csv(t.t2);
    else emit(ojson::parse(to_json(t).dump()));
    return kOk;
  }
  throw PreconditionFailed("unknown density report '" + d.report + "'");
}

int cmd_model_check(Context& ctx, std::int64_t N, const std::string& embedding, std::uint64_t seed,
                    const std::string& extremal, bool timing) {
  if (N < 1) throw PreconditionFailed("--max must be positive");
  std::optional<AdmissibleEmbedding> e;
  if (embedding == "curve") {
    e = AdmissibleEmbedding::from_sequence(*ctx.curve, ctx.sequence());
  } else if (!extremal.empty()) {
    int sign = extremal == "+" ? 1 : extremal == "-" ? -1 : 0;
    e = AdmissibleEmbedding::extremal(N, sign);
  } else {
    e = AdmissibleEmbedding::random(N, seed);
  }
  ModelReport r = model_check(N, *e);
  emit(ojson::parse(to_json(r, timing).dump()));
  return r.counterexamples.empty() ? kOk : kInvariant;
}

int cmd_verify(Context& ctx, bool json) {
  auto results = run_invariant_suite(*ctx.curve, ctx.budget());
  bool ok = true;
  for (auto& r : results) ok = ok && r.passed;
  if (json) {
    ojson arr = ojson::array();
    for (auto& r : results) arr.push_back({{"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
    emit({{"passed", ok}, {"checks", arr}});
  } else {
    std::cout << format_table(results);
  }
  return ok ? kOk : kInvariant;
}

Context make_context(const Options& o) {
  Context ctx;
  if (!o.config_path.empty()) ctx.cfg = load_config(o.config_path);
  AppConfig& c = ctx.cfg;
  if (o.index_cap) c.caps.index_cap = *o.index_cap;
  if (o.trial_bound) c.budget.factoring.trial_bound = *o.trial_bound;
  if (o.rho_iterations) c.budget.factoring.rho_iterations = *o.rho_iterations;
  if (o.peel_bound) c.budget.peel_bound = *o.peel_bound;
  if (o.sweep_limit) c.budget.sweep_limit = *o.sweep_limit;
  if (o.mu_sweep_max) c.budget.mu_sweep_max = *o.mu_sweep_max;
  if (o.y_exact_cap) c.budget.y_exact_cap = *o.y_exact_cap;
  ctx.curve = std::make_unique<Curve>(c.curve, c.caps);
  std::optional<std::string> dir = o.cache_dir.empty() ? Cache::dir_from_env() : o.cache_dir;
  if (dir) ctx.cache = std::make_unique<Cache>(*dir, *ctx.curve);
  ctx.sequence_path = o.sequence_path;
  return ctx;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact arithmetic on multiples of a rational point, the prime sets built from them, and their densities"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--config", o.config_path, "JSON configuration file")->check(CLI::ExistingFile);
  app.add_option("--cache-dir", o.cache_dir, "cache directory (default: $EDSRING_CACHE_DIR)");
  app.add_option("--sequence", o.sequence_path, "read the ell-sequence from this JSON file instead of constructing it")
      ->check(CLI::ExistingFile);
  app.add_flag("--timing", o.timing, "report elapsed time on stderr");
  app.add_option("--index-cap", o.index_cap, "largest |n| computed exactly");
  app.add_option("--trial-bound", o.trial_bound, "trial division bound");
  app.add_option("--rho-iterations", o.rho_iterations, "Pollard rho iterations per attempt");
  app.add_option("--peel-bound", o.peel_bound, "order-sweep bound for marker primes");
  app.add_option("--sweep-limit", o.sweep_limit, "upward sweep limit past the index cap");
  app.add_option("--mu-sweep-max", o.mu_sweep_max, "largest sweep used to certify mu");
  app.add_option("--y-exact-cap", o.y_exact_cap, "exact y(nP) below this index, enclosures above");

  std::function<int(Context&)> action;

  auto* curve_cmd = app.add_subcommand("curve", "curve data")->require_subcommand(1);
  curve_cmd->add_subcommand("info", "coefficients, generator, s_bad, fingerprint")->callback([&] {
    action = cmd_curve_info;
  });

  std::int64_t n = 0;
  auto* mul = app.add_subcommand("mul", "exact nP");
  mul->add_option("n", n)->required()->allow_extra_args(false);
  mul->callback([&] { action = [&](Context& c) { return cmd_mul(c, n); }; });

  auto* denom = app.add_subcommand("denom", "d_n and its support");
  denom->add_option("n", n)->required();
  denom->callback([&] { action = [&](Context& c) { return cmd_denom(c, n); }; });

  std::uint64_t max_p = 0;
  auto* orders = app.add_subcommand("orders", "#E(F_p) and n_p for good p, one JSON line each");
  orders->add_option("--max-p", max_p)->required();
  orders->callback([&] { action = [&](Context& c) { return cmd_orders(c, max_p); }; });

  std::uint64_t ell = 0, m = 0;
  auto* a_ell = app.add_subcommand("a-ell", "least a with d_{ell^a} > 1");
  a_ell->add_option("ell", ell)->required();
  a_ell->callback([&] { action = [&](Context& c) { return cmd_a_ell(c, ell); }; });

  auto* p_ell = app.add_subcommand("p-ell", "largest prime of d_{ell^a_ell}");
  p_ell->add_option("ell", ell)->required();
  p_ell->callback([&] { action = [&](Context& c) { return cmd_p_ell(c, ell); }; });

  auto* p_ellm = app.add_subcommand("p-ellm", "largest primitive prime of index ell*m");
  p_ellm->add_option("ell", ell)->required();
  p_ellm->add_option("m", m)->required();
  p_ellm->callback([&] { action = [&](Context& c) { return cmd_p_ellm(c, ell, m); }; });

  auto* mu = app.add_subcommand("mu", "sup over X of the share of primes <= X dividing d_ell");
  mu->add_option("ell", ell)->required();
  mu->callback([&] { action = [&](Context& c) { return cmd_mu(c, ell); }; });

  auto* construct = app.add_subcommand("construct", "build the ell-sequence");
  std::optional<int> count;
  std::optional<std::uint64_t> prime_bound;
  construct->add_option("--count", count, "number of terms");
  construct->add_option("--prime-bound", prime_bound, "largest candidate prime");
  construct->callback([&] { action = cmd_construct; });

  std::string set;
  std::uint64_t p = 0;
  auto* member = app.add_subcommand("member", "membership of a prime in T1, T2a, T2b or T2c");
  member->add_option("set", set)->required()->check(CLI::IsMember({"t1", "t2a", "t2b", "t2c"}));
  member->add_option("p", p)->required();
  member->callback([&] { action = [&](Context& c) { return cmd_member(c, set, p); }; });

  std::string policy;
  auto* ring = app.add_subcommand("ring-member", "is nP integral away from the chosen S");
  ring->add_option("n", n)->required();
  ring->add_option("--policy", policy)->check(CLI::IsMember({"min", "max"}));
  ring->callback([&] { action = [&](Context& c) { return cmd_ring_member(c, n, policy); }; });

  std::int64_t max_n = 0;
  auto* closure = app.add_subcommand("closure", "members nP with |n| <= N and their y-gaps");
  closure->add_option("--max-n", max_n)->required();
  closure->add_option("--policy", policy)->check(CLI::IsMember({"min", "max"}));
  closure->callback([&] { action = [&](Context& c) { return cmd_closure(c, max_n, policy); }; });

  DensityOptions dopt;
  auto* density = app.add_subcommand("density", "empirical density reports")->require_subcommand(1);
  density->add_flag("--csv", dopt.csv, "CSV on stdout instead of JSON");
  density->add_option("--plot", dopt.plot, "also write gnuplot data to this file");
  auto add_report = [&](const char* name, const char* help) {
    auto* s = density->add_subcommand(name, help);
    s->callback([&, name] {
      dopt.report = name;
      action = [&](Context& c) { return cmd_density(c, dopt); };
    });
    return s;
  };
  auto* height = add_report("height", "log d_n / n^2 and its fitted slope");
  height->add_option("--n-min", dopt.n_min);
  height->add_option("--n-max", dopt.n_max);
  auto* equi = add_report("equidistribution", "share of primes ell with y(ell P) in [alpha, beta]");
  equi->add_option("--alpha", dopt.alpha, "lower end (omit for -inf)");
  equi->add_option("--beta", dopt.beta, "upper end (omit for +inf)");
  equi->add_option("--max", dopt.max);
  auto* gl2 = add_report("gl2", "share of GL2(F_ell) fixing a nonzero vector");
  gl2->add_option("--ell", dopt.ell)->required();
  auto* divis = add_report("divisibility", "share of good p with ell | #E(F_p)");
  divis->add_option("--ell", dopt.ell)->required();
  divis->add_option("--max", dopt.max);
  auto* omega = add_report("omega", "distinct prime factors of #E(F_p)");
  omega->add_option("--max", dopt.max);
  auto* mueps = add_report("mu-eps", "share of primes ell with mu_ell > eps");
  mueps->add_option("--eps", dopt.eps);
  mueps->add_option("--max", dopt.max);
  mueps->add_option("--sweep-bound", dopt.sweep_bound);
  auto* twin = add_report("t-window", "certified shares of T1 and T2 below X");
  twin->add_option("--max", dopt.max);

  std::int64_t model_max = 0;
  std::string embedding = "synthetic", extremal;
  std::uint64_t seed = 1;
  auto* model = app.add_subcommand("model-check", "rounding predicates against integer arithmetic");
  model->add_option("--max", model_max)->required();
  model->add_option("--embedding", embedding)->check(CLI::IsMember({"synthetic", "curve"}));
  model->add_option("--seed", seed, "seed for the random synthetic embedding");
  model->add_option("--extremal", extremal, "use y_i = i + s/(10i) with s = +, - or alt")
      ->check(CLI::IsMember({"+", "-", "alt"}));
  model->callback([&] {
    action = [&](Context& c) { return cmd_model_check(c, model_max, embedding, seed, extremal, o.timing); };
  });

  bool verify_json = false;
  auto* verify = app.add_subcommand("verify", "run the invariant suite");
  verify->add_flag("--json", verify_json);
  verify->callback([&] { action = [&](Context& c) { return cmd_verify(c, verify_json); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  auto start = std::chrono::steady_clock::now();
  int status = kOk;
  try {
    Context ctx = make_context(o);
    if (count) ctx.cfg.construct_count = *count;
    if (prime_bound) ctx.cfg.construct_prime_bound = *prime_bound;
    status = action(ctx);
  } catch (const ComputationInfeasible& e) {
    std::cerr << "error: computation infeasible: " << e.what() << '\n';
    status = kInfeasible;
  } catch (const PrecisionFailure& e) {
    std::cerr << "error: precision: " << e.what() << '\n';
    status = kInfeasible;
  } catch (const InvariantViolation& e) {
    std::cerr << "error: invariant violated: " << e.what() << '\n';
    status = kInvariant;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    status = kUsage;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: malformed JSON input: " << e.what() << '\n';
    status = kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: internal: " << e.what() << '\n';
    status = kInvariant;
  }
  if (o.timing) {
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cerr << "elapsed: " << s << " s\n";
  }
  return status;
}
