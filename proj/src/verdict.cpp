#include "edsring/verdict.hpp"

#include "edsring/errors.hpp"

namespace edsring {

Verdict conjunction(const Verdict& lhs, const Verdict& rhs) {
  if (lhs.is_false()) return lhs;
  if (rhs.is_false()) return rhs;
  if (lhs.is_unknown()) return lhs;
  if (rhs.is_unknown()) return rhs;
  nlohmann::json w = nlohmann::json::array({lhs.witness, rhs.witness});
  return Verdict::yes(std::move(w));
}

Verdict disjunction(const Verdict& lhs, const Verdict& rhs) {
  if (lhs.is_true()) return lhs;
  if (rhs.is_true()) return rhs;
  if (lhs.is_unknown()) return lhs;
  if (rhs.is_unknown()) return rhs;
  nlohmann::json w = nlohmann::json::array({lhs.witness, rhs.witness});
  return Verdict::no(std::move(w));
}

Verdict negation(const Verdict& v) {
  Verdict r = v;
  if (v.is_true()) r.state = Truth::certified_false;
  else if (v.is_false()) r.state = Truth::certified_true;
  return r;
}

std::string to_string(Truth t) {
  switch (t) {
    case Truth::certified_true: return "true";
    case Truth::certified_false: return "false";
    case Truth::unknown: break;
  }
  return "unknown";
}

nlohmann::json to_json(const Verdict& v) {
  nlohmann::json j;
  j["verdict"] = to_string(v.state);
  if (!v.bound.empty()) j["bound"] = v.bound;
  if (!v.witness.is_null()) j["witness"] = v.witness;
  return j;
}

Verdict verdict_from_json(const nlohmann::json& j) {
  Verdict v;
  const std::string s = j.at("verdict").get<std::string>();
  if (s == "true") v.state = Truth::certified_true;
  else if (s == "false") v.state = Truth::certified_false;
  else if (s == "unknown") v.state = Truth::unknown;
  else throw Error("unrecognised verdict '" + s + "'");
  if (j.contains("bound")) v.bound = j["bound"].get<std::string>();
  if (j.contains("witness")) v.witness = j["witness"];
  return v;
}

}  // namespace edsring
