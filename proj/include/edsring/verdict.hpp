#pragma once

#include <json.hpp>

#include <string>

namespace edsring {

enum class Truth { certified_true, certified_false, unknown };

// Resource-bounded answer. Certified states carry a witness that another
// operation can re-check; unknown records the bound at which the search gave up.
struct Verdict {
  Truth state = Truth::unknown;
  std::string bound;
  nlohmann::json witness;

  static Verdict yes(nlohmann::json witness = {}) { return {Truth::certified_true, {}, std::move(witness)}; }
  static Verdict no(nlohmann::json witness = {}) { return {Truth::certified_false, {}, std::move(witness)}; }
  static Verdict unknown_at(std::string bound, nlohmann::json detail = {}) {
    return {Truth::unknown, std::move(bound), std::move(detail)};
  }

  bool is_true() const { return state == Truth::certified_true; }
  bool is_false() const { return state == Truth::certified_false; }
  bool is_unknown() const { return state == Truth::unknown; }
};

// Kleene conjunction / disjunction over the three states.
Verdict conjunction(const Verdict& lhs, const Verdict& rhs);
Verdict disjunction(const Verdict& lhs, const Verdict& rhs);
Verdict negation(const Verdict& v);

std::string to_string(Truth t);  // "true" | "false" | "unknown"
nlohmann::json to_json(const Verdict& v);
Verdict verdict_from_json(const nlohmann::json& j);

}  // namespace edsring
