#include "edsring/analytics.hpp"

#include <cmath>
#include <sstream>

#include "edsring/errors.hpp"
#include "edsring/modp.hpp"
#include "edsring/primes.hpp"

namespace edsring {
namespace {

Rational ratio_of(std::uint64_t hits, std::uint64_t total) {
  if (total == 0) return 0;
  Rational r(static_cast<unsigned long>(hits), static_cast<unsigned long>(total));
  r.canonicalize();
  return r;
}

std::uint64_t mod_det(std::uint64_t a, std::uint64_t b, std::uint64_t c, std::uint64_t d, std::uint64_t l) {
  return (a * d % l + l - b * c % l) % l;
}

}  // namespace

std::vector<std::uint64_t> geometric_checkpoints(std::uint64_t X, unsigned count, std::uint64_t floor) {
  std::vector<std::uint64_t> out;
  for (unsigned k = 0; k < count; ++k) {
    std::uint64_t x = X >> k;
    if (x < floor && k > 0) break;
    if (!out.empty() && out.back() == x) break;
    out.push_back(x);
  }
  return {out.rbegin(), out.rend()};
}

DensityCounter::DensityCounter(std::string predicate, std::uint64_t X) : marks_(geometric_checkpoints(X)) {
  report_.predicate = std::move(predicate);
  report_.X = X;
}

void DensityCounter::flush_through(std::uint64_t key) {
  while (next_ < marks_.size() && marks_[next_] < key) {
    report_.trend.push_back({marks_[next_], report_.hits, report_.total, ratio_of(report_.hits, report_.total)});
    ++next_;
  }
}

void DensityCounter::add(std::uint64_t key, bool hit) {
  flush_through(key);
  ++report_.total;
  if (hit) ++report_.hits;
}

DensityReport DensityCounter::finish() {
  flush_through(report_.X + 1);
  report_.ratio = ratio_of(report_.hits, report_.total);
  return report_;
}

nlohmann::json to_json(const DensityReport& r) {
  nlohmann::json trend = nlohmann::json::array();
  for (auto& c : r.trend) trend.push_back({{"X", c.X}, {"hits", c.hits}, {"total", c.total}, {"ratio", to_string(c.ratio)}});
  return {{"predicate", r.predicate}, {"X", r.X},         {"hits", r.hits},         {"total", r.total},
          {"ratio", to_string(r.ratio)}, {"ratio_approx", r.ratio.get_d()}, {"excluded", r.excluded}, {"trend", trend}};
}

std::string to_csv(const DensityReport& r) {
  std::ostringstream os;
  os << "checkpoint,hits,total\n";
  for (auto& c : r.trend) os << c.X << ',' << c.hits << ',' << c.total << '\n';
  return os.str();
}

std::string to_gnuplot(const DensityReport& r) {
  std::ostringstream os;
  os << "# " << r.predicate << "\n# X hits total ratio\n";
  os.precision(10);
  for (auto& c : r.trend) os << c.X << ' ' << c.hits << ' ' << c.total << ' ' << c.ratio.get_d() << '\n';
  return os.str();
}

HeightSlope height_slope(const Curve& curve, std::int64_t n_min, std::int64_t n_max) {
  if (n_min < 1 || n_max <= n_min) throw PreconditionFailed("need 1 <= n_min < n_max");
  curve.check_index(n_max);
  HeightSlope out;
  double sxy = 0, sxx = 0;
  bool any = false;
  for (std::int64_t n = n_min; n <= n_max; ++n) {
    Integer d = curve.d(n);
    double ld = d > 1 ? log_abs(d) : 0.0;
    any = any || d > 1;
    double n2 = static_cast<double>(n) * static_cast<double>(n);
    out.rows.push_back({n, ld, ld / n2});
    sxy += n2 * ld;
    sxx += n2 * n2;
  }
  if (!any) throw PreconditionFailed("every d_n in the range is 1");
  out.slope = sxy / sxx;
  return out;
}

nlohmann::json to_json(const HeightSlope& h) {
  nlohmann::json rows = nlohmann::json::array();
  for (auto& r : h.rows) rows.push_back({{"n", r.n}, {"log_d", r.log_d}, {"ratio", r.ratio}});
  return {{"slope", h.slope}, {"rows", rows}};
}

DensityReport equidistribution_report(const Curve& curve, const YInterval& iv, std::uint64_t X,
                                      const ConstructionBudget& budget) {
  if (iv.lo && iv.hi && !(*iv.lo < *iv.hi)) throw PreconditionFailed("need alpha < beta");
  std::string desc = "y(ell P) in [" + (iv.lo ? to_string(*iv.lo) : std::string("-inf")) + ", " +
                     (iv.hi ? to_string(*iv.hi) : std::string("inf")) + "]";
  DensityCounter counter(desc, X);
  YLocator loc(curve, budget.y_exact_cap, budget.max_precision);
  std::vector<std::uint64_t> ells = primes_up_to(X);
  std::vector<std::int64_t> far;
  for (std::uint64_t ell : ells)
    if (static_cast<std::int64_t>(ell) > budget.y_exact_cap) far.push_back(static_cast<std::int64_t>(ell));
  std::vector<TorusPath::Decision> far_dec;
  if (!far.empty()) far_dec = loc.torus().member_all(far, iv);
  std::size_t k = 0;
  for (std::uint64_t ell : ells) {
    Truth t;
    if (static_cast<std::int64_t>(ell) > budget.y_exact_cap) t = far_dec[k++].truth;
    else t = loc.in(static_cast<std::int64_t>(ell), iv);
    if (t == Truth::unknown) counter.exclude();
    else counter.add(ell, t == Truth::certified_true);
  }
  return counter.finish();
}

Rational gl2_fixed_fraction(std::uint64_t ell) {
  if (!is_prime_u64(ell)) throw PreconditionFailed("ell must be prime");
  Integer l = to_integer(ell);
  Rational r(l * l * l - 2 * l, (l * l - 1) * (l * l - l));
  r.canonicalize();
  return r;
}

Rational gl2_fixed_fraction_enumerated(std::uint64_t ell) {
  if (!is_prime_u64(ell) || ell > 7) throw PreconditionFailed("enumeration is for primes ell <= 7");
  std::uint64_t invertible = 0, fixing = 0;
  for (std::uint64_t a = 0; a < ell; ++a)
    for (std::uint64_t b = 0; b < ell; ++b)
      for (std::uint64_t c = 0; c < ell; ++c)
        for (std::uint64_t d = 0; d < ell; ++d) {
          if (mod_det(a, b, c, d, ell) == 0) continue;
          ++invertible;
          // M v = v for some v != 0 iff det(M - I) = 0
          if (mod_det((a + ell - 1) % ell, b, c, (d + ell - 1) % ell, ell) == 0) ++fixing;
        }
  return ratio_of(fixing, invertible);
}

DensityReport factor_divisibility_frequency(const Curve& curve, std::uint64_t ell, std::uint64_t X) {
  if (!is_prime_u64(ell)) throw PreconditionFailed("ell must be prime");
  if (X < 3) throw PreconditionFailed("X must be at least 3");
  DensityCounter counter(std::to_string(ell) + " | #E(F_p)", X);
  order_sweep(curve, X, [&](const ReducedCurveData& r) { counter.add(r.p, r.group_order % ell == 0); });
  return counter.finish();
}

OmegaReport omega_distribution(const Curve& curve, std::uint64_t X) {
  if (X < 3) throw PreconditionFailed("X must be at least 3");
  OmegaReport out;
  out.X = X;
  std::vector<std::uint64_t> marks = geometric_checkpoints(X);
  std::size_t next = 0;
  std::uint64_t total = 0;
  std::array<std::uint64_t, 4> below{};
  auto snap = [&](std::uint64_t x) {
    OmegaCheckpoint c;
    c.X = x;
    c.total = total;
    for (int t = 0; t < 4; ++t) c.below[t] = ratio_of(below[t], total);
    out.trend.push_back(c);
  };
  order_sweep(curve, X, [&](const ReducedCurveData& r) {
    while (next < marks.size() && marks[next] < r.p) snap(marks[next++]);
    unsigned w = static_cast<unsigned>(r.order_factorization.size());
    ++out.histogram[w];
    ++total;
    for (unsigned t = 1; t <= 4; ++t)
      if (w < t) ++below[t - 1];
  });
  while (next < marks.size()) snap(marks[next++]);
  return out;
}

nlohmann::json to_json(const OmegaReport& r) {
  nlohmann::json hist = nlohmann::json::object();
  for (auto& [w, c] : r.histogram) hist[std::to_string(w)] = c;
  nlohmann::json trend = nlohmann::json::array();
  for (auto& c : r.trend) {
    nlohmann::json b = nlohmann::json::array();
    for (auto& q : c.below) b.push_back(to_string(q));
    trend.push_back({{"X", c.X}, {"total", c.total}, {"omega_below_1_to_4", b}});
  }
  return {{"X", r.X}, {"histogram", hist}, {"trend", trend}};
}

DensityReport mu_epsilon_report(const Curve& curve, const Rational& eps, std::uint64_t Y, std::uint64_t sweep_bound) {
  if (!(eps > 0 && eps <= 1)) throw PreconditionFailed("need 0 < eps <= 1");
  curve.check_index(static_cast<std::int64_t>(Y));
  DensityCounter counter("mu_ell > " + to_string(eps), Y);
  FactoringBudget none;
  none.rho_attempts = 0;
  for (std::uint64_t ell : primes_up_to(Y)) {
    MuResult m = compute_mu(curve, ell, sweep_bound, none);
    if (m.mu > eps) counter.add(ell, true);
    else if (m.upper <= eps) counter.add(ell, false);
    else counter.exclude();
  }
  return counter.finish();
}

TDensity T_window_density(const Curve& curve, const TWindow& w, const LSequence& seq) {
  TDensity out;
  DensityCounter c1("certified T1 members", w.X), c2("certified T2 members", w.X);
  std::uint64_t bad = 0;
  for (std::size_t k = 0; k < w.primes.size(); ++k) {
    std::uint64_t p = w.primes[k];
    c1.add(p, w.t1[k].is_true());
    c2.add(p, w.t2a[k].is_true() || w.t2b[k].is_true() || w.t2c[k].is_true());
    if (curve.is_bad(p)) ++bad;
    if (w.t2b[k].is_true()) ++out.t2b_count;
  }
  out.t1 = c1.finish();
  out.t2 = c2.finish();
  out.r = static_cast<unsigned>(seq.witnesses.size());
  out.tail_bound = 1;
  mpq_div_2exp(out.tail_bound.get_mpq_t(), out.tail_bound.get_mpq_t(), out.r);
  out.t1_ceiling = ratio_of(bad, w.primes.size());
  for (auto& wit : seq.witnesses) {
    const auto& mu = wit.conditions[1].witness;
    if (mu.contains("mu_upper")) out.t1_ceiling += parse_rational(mu["mu_upper"].get<std::string>());
    else out.t1_ceiling += compute_mu(curve, wit.ell, shared_primes().limit()).upper;
  }
  double lg = std::log2(static_cast<double>(std::max<std::uint64_t>(w.X, 2)));
  out.t2b_limit = lg * lg;
  return out;
}

nlohmann::json to_json(const TDensity& d) {
  return {{"T1", to_json(d.t1)},
          {"T2", to_json(d.t2)},
          {"r", d.r},
          {"tail_bound", to_string(d.tail_bound)},
          {"T1_ceiling", to_string(d.t1_ceiling)},
          {"T2b_count", d.t2b_count},
          {"T2b_limit", d.t2b_limit}};
}

}  // namespace edsring
