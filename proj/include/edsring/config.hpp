#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include <optional>

#include "edsring/construction.hpp"
#include "edsring/oracles.hpp"

namespace edsring {

// Everything a run depends on. Loaded from a JSON file; command-line flags
// override individual fields afterwards.
struct AppConfig {
  CurveConfig curve = CurveConfig::reference();
  ExactCaps caps;
  ConstructionBudget budget;
  int construct_count = 1;
  std::uint64_t construct_prime_bound = 1000;
  std::optional<SPolicy> policy;  // default for ring-member and closure
};

// Missing keys keep their defaults. Throws InvalidConfig on malformed input.
AppConfig config_from_json(const nlohmann::json& j);
AppConfig load_config(const std::string& path);
nlohmann::json to_json(const AppConfig& c);

}  // namespace edsring
