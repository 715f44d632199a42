#ifndef RADARNET_SCENARIO_CONFIG_HPP
#define RADARNET_SCENARIO_CONFIG_HPP

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include "radarnet/traffic_sim.hpp"

namespace radarnet {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// "key = value" config file; unknown keys are rejected.
ScenarioConfig parse_scenario_config(std::istream& is);
ScenarioConfig load_scenario_config(const std::string& path);

// Canonical serialization (every field, fixed order, full precision).
std::string serialize_config(const ScenarioConfig& cfg);

// FNV-1a over the canonical serialization.
std::uint64_t config_hash(const ScenarioConfig& cfg);

std::uint64_t fnv1a(const std::string& bytes);

}  // namespace radarnet

#endif  // RADARNET_SCENARIO_CONFIG_HPP
