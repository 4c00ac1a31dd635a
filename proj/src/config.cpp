#include "edsring/config.hpp"

#include <fstream>

#include "edsring/errors.hpp"

namespace edsring {
namespace {

using nlohmann::json;

// Integers may be written as JSON numbers or decimal strings.
Integer integer_field(const json& v, const char* what) {
  if (v.is_number_integer()) return to_integer(v.get<std::int64_t>());
  if (v.is_string()) return parse_integer(v.get<std::string>());
  throw InvalidConfig(std::string(what) + " must be an integer or a decimal string");
}

Rational rational_field(const json& v, const char* what) {
  if (v.is_number_integer()) return Rational(to_integer(v.get<std::int64_t>()));
  if (v.is_string()) return parse_rational(v.get<std::string>());
  throw InvalidConfig(std::string(what) + " must be an integer or a \"num/den\" string");
}

template <typename T>
void read(const json& obj, const char* key, T& out) {
  if (!obj.contains(key)) return;
  const json& v = obj.at(key);
  if constexpr (std::is_same_v<T, bool>) {
    if (!v.is_boolean()) throw InvalidConfig(std::string(key) + " must be a boolean");
  } else {
    if (!v.is_number_integer()) throw InvalidConfig(std::string(key) + " must be an integer");
    if constexpr (std::is_unsigned_v<T>)
      if (v.get<std::int64_t>() < 0) throw InvalidConfig(std::string(key) + " must be non-negative");
  }
  out = v.get<T>();
}

CurveConfig curve_from_json(const json& j) {
  if (!j.is_object()) throw InvalidConfig("curve must be an object");
  if (!j.contains("a") || !j.contains("b") || !j.contains("generator"))
    throw InvalidConfig("curve needs a, b and generator");
  const json& g = j.at("generator");
  if (!g.is_array() || g.size() != 2) throw InvalidConfig("generator must be [x, y]");
  Integer a = integer_field(j.at("a"), "a");
  Integer b = integer_field(j.at("b"), "b");
  RationalPoint P(rational_field(g[0], "generator x"), rational_field(g[1], "generator y"));
  TrustedHypotheses hyp;
  if (j.contains("hypotheses")) {
    const json& h = j.at("hypotheses");
    read(h, "rank_one", hyp.rank_one);
    read(h, "torsion_free", hyp.torsion_free);
    read(h, "connected_real_locus", hyp.connected_real_locus);
    read(h, "non_cm", hyp.non_cm);
    if (h.contains("provenance")) hyp.provenance = h.at("provenance").get<std::string>();
  }
  if (!j.contains("s_bad")) return CurveConfig::from_model(a, b, P, hyp);
  CurveConfig c;
  c.a = a;
  c.b = b;
  c.generator = P;
  c.hypotheses = hyp;
  for (auto& p : j.at("s_bad")) {
    if (!p.is_number_unsigned()) throw InvalidConfig("s_bad entries must be positive integers");
    c.s_bad.insert(p.get<std::uint64_t>());
  }
  c.validate();
  return c;
}

}  // namespace

AppConfig config_from_json(const json& j) {
  if (!j.is_object()) throw InvalidConfig("configuration must be a JSON object");
  AppConfig c;
  try {
    if (j.contains("curve")) c.curve = curve_from_json(j.at("curve"));
    if (j.contains("caps")) {
      const json& k = j.at("caps");
      read(k, "index_cap", c.caps.index_cap);
      read(k, "memo_points_below", c.caps.memo_points_below);
      read(k, "memo_denominators_below", c.caps.memo_denominators_below);
    }
    if (j.contains("budget")) {
      const json& b = j.at("budget");
      read(b, "trial_bound", c.budget.factoring.trial_bound);
      read(b, "rho_iterations", c.budget.factoring.rho_iterations);
      read(b, "rho_attempts", c.budget.factoring.rho_attempts);
      read(b, "max_bits", c.budget.factoring.max_bits);
      read(b, "peel_bound", c.budget.peel_bound);
      read(b, "mu_sweep_max", c.budget.mu_sweep_max);
      read(b, "a_max", c.budget.a_max);
      read(b, "sweep_limit", c.budget.sweep_limit);
      read(b, "L_window", c.budget.L_window);
      read(b, "y_exact_cap", c.budget.y_exact_cap);
      long prec = c.budget.max_precision;
      read(b, "max_precision", prec);
      c.budget.max_precision = static_cast<mpfr_prec_t>(prec);
    }
    if (j.contains("construct")) {
      const json& k = j.at("construct");
      read(k, "count", c.construct_count);
      read(k, "prime_bound", c.construct_prime_bound);
    }
    if (j.contains("policy")) c.policy = parse_policy(j.at("policy").get<std::string>());
  } catch (const json::exception& e) {
    throw InvalidConfig(std::string("configuration: ") + e.what());
  }
  if (c.caps.index_cap < 1) throw InvalidConfig("index_cap must be positive");
  if (c.construct_count < 0) throw InvalidConfig("construct count must be non-negative");
  return c;
}

AppConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidConfig("cannot open configuration file " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw InvalidConfig("configuration file " + path + ": " + e.what());
  }
  return config_from_json(j);
}

json to_json(const AppConfig& c) {
  json bad = json::array();
  for (auto p : c.curve.s_bad) bad.push_back(p);
  const auto& h = c.curve.hypotheses;
  json out = {
      {"curve",
       {{"a", c.curve.a.get_str()},
        {"b", c.curve.b.get_str()},
        {"generator", {to_string(c.curve.generator.x()), to_string(c.curve.generator.y())}},
        {"s_bad", bad},
        {"hypotheses",
         {{"rank_one", h.rank_one},
          {"torsion_free", h.torsion_free},
          {"connected_real_locus", h.connected_real_locus},
          {"non_cm", h.non_cm},
          {"provenance", h.provenance}}}}},
      {"caps",
       {{"index_cap", c.caps.index_cap},
        {"memo_points_below", c.caps.memo_points_below},
        {"memo_denominators_below", c.caps.memo_denominators_below}}},
      {"budget",
       {{"trial_bound", c.budget.factoring.trial_bound},
        {"rho_iterations", c.budget.factoring.rho_iterations},
        {"rho_attempts", c.budget.factoring.rho_attempts},
        {"max_bits", c.budget.factoring.max_bits},
        {"peel_bound", c.budget.peel_bound},
        {"mu_sweep_max", c.budget.mu_sweep_max},
        {"a_max", c.budget.a_max},
        {"sweep_limit", c.budget.sweep_limit},
        {"L_window", c.budget.L_window},
        {"y_exact_cap", c.budget.y_exact_cap},
        {"max_precision", static_cast<long>(c.budget.max_precision)}}},
      {"construct", {{"count", c.construct_count}, {"prime_bound", c.construct_prime_bound}}}};
  if (c.policy) out["policy"] = to_string(*c.policy);
  return out;
}

}  // namespace edsring
