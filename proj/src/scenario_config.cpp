#include "radarnet/scenario_config.hpp"

#include <istream>
#include <fstream>
#include <sstream>

namespace radarnet {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

ScenarioConfig parse_scenario_config(std::istream& is) {
  ScenarioConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      // blank or comment-only line
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
    }
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      if (b == std::string::npos) return std::string();
      const auto e = s.find_last_not_of(" \t\r");
      return s.substr(b, e - b + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw ConfigError("config line " + std::to_string(lineno) + ": empty key or value");

    auto num = [&]() {
      try {
        return std::stod(value);
      } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "': bad number '" + value + "'");
      }
    };

    if (key == "scenario") {
      if (value == "crossroad")
        cfg.kind = ScenarioKind::Crossroad;
      else if (value == "freeway_bridge")
        cfg.kind = ScenarioKind::FreewayBridge;
      else
        throw ConfigError("unknown scenario kind '" + value + "'");
    } else if (key == "road_length") cfg.road_length = num();
    else if (key == "speed_limit") cfg.speed_limit = num();
    else if (key == "arrival_rate") cfg.arrival_rate = num();
    else if (key == "sim_duration") cfg.sim_duration = num();
    else if (key == "chirp.f0") cfg.chirp.f0 = num();
    else if (key == "chirp.slope") cfg.chirp.slope_S = num();
    else if (key == "chirp.t_c") cfg.chirp.T_c = num();
    else if (key == "chirp.t_p") cfg.chirp.T_p = num();
    else if (key == "chirp.t_min") cfg.chirp.T_min = num();
    else if (key == "chirp.amplitude") cfg.chirp.amplitude_A = num();
    else if (key == "if.passband") cfg.ifc.passband_B = num();
    else if (key == "if.fs") cfg.ifc.fs = num();
    else if (key == "if.n_samples") cfg.ifc.n_samples_M = static_cast<int>(num());
    else if (key == "n_array_elements") cfg.n_array_elements = static_cast<int>(num());
    else if (key == "tx_power_dbw") cfg.tx_power_dbw = num();
    else if (key == "max_range") cfg.max_range = num();
    else if (key == "diversity.period_lo") cfg.diversity.period_lo = num();
    else if (key == "diversity.period_hi") cfg.diversity.period_hi = num();
    else if (key == "diversity.slope_sigma") cfg.diversity.slope_sigma = num();
    else if (key == "diversity.duration_gate") cfg.diversity.duration_gate = num();
    else if (key == "distance_uncertainty") cfg.distance_uncertainty = num();
    else if (key == "seed") cfg.seed = std::stoull(value);
    else if (key == "lane_width") cfg.lane_width = num();
    else if (key == "accel") cfg.accel = num();
    else if (key == "decel") cfg.decel = num();
    else if (key == "tick") cfg.tick = num();
    else if (key == "radar_eval_period") cfg.radar_eval_period = num();
    else if (key == "noise_floor_dbw") cfg.noise_floor_dbw = num();
    else if (key == "right_of_way_period") cfg.right_of_way_period = num();
    else throw ConfigError("unknown config key '" + key + "'");
  }
  cfg.validate();
  return cfg;
}

ScenarioConfig load_scenario_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open config file '" + path + "'");
  return parse_scenario_config(f);
}

std::string serialize_config(const ScenarioConfig& cfg) {
  std::ostringstream os;
  os << "scenario = "
     << (cfg.kind == ScenarioKind::Crossroad ? "crossroad" : "freeway_bridge") << '\n'
     << "road_length = " << fmt(cfg.road_length) << '\n'
     << "speed_limit = " << fmt(cfg.speed_limit) << '\n'
     << "arrival_rate = " << fmt(cfg.arrival_rate) << '\n'
     << "sim_duration = " << fmt(cfg.sim_duration) << '\n'
     << "chirp.f0 = " << fmt(cfg.chirp.f0) << '\n'
     << "chirp.slope = " << fmt(cfg.chirp.slope_S) << '\n'
     << "chirp.t_c = " << fmt(cfg.chirp.T_c) << '\n'
     << "chirp.t_p = " << fmt(cfg.chirp.T_p) << '\n'
     << "chirp.t_min = " << fmt(cfg.chirp.T_min) << '\n'
     << "chirp.amplitude = " << fmt(cfg.chirp.amplitude_A) << '\n'
     << "if.passband = " << fmt(cfg.ifc.passband_B) << '\n'
     << "if.fs = " << fmt(cfg.ifc.fs) << '\n'
     << "if.n_samples = " << cfg.ifc.n_samples_M << '\n'
     << "n_array_elements = " << cfg.n_array_elements << '\n'
     << "tx_power_dbw = " << fmt(cfg.tx_power_dbw) << '\n'
     << "max_range = " << fmt(cfg.max_range) << '\n'
     << "diversity.period_lo = " << fmt(cfg.diversity.period_lo) << '\n'
     << "diversity.period_hi = " << fmt(cfg.diversity.period_hi) << '\n'
     << "diversity.slope_sigma = " << fmt(cfg.diversity.slope_sigma) << '\n'
     << "diversity.duration_gate = " << fmt(cfg.diversity.duration_gate) << '\n'
     << "distance_uncertainty = " << fmt(cfg.distance_uncertainty) << '\n'
     << "seed = " << cfg.seed << '\n'
     << "lane_width = " << fmt(cfg.lane_width) << '\n'
     << "accel = " << fmt(cfg.accel) << '\n'
     << "decel = " << fmt(cfg.decel) << '\n'
     << "tick = " << fmt(cfg.tick) << '\n'
     << "radar_eval_period = " << fmt(cfg.radar_eval_period) << '\n'
     << "noise_floor_dbw = " << fmt(cfg.noise_floor_dbw) << '\n'
     << "right_of_way_period = " << fmt(cfg.right_of_way_period) << '\n';
  return os.str();
}

std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t config_hash(const ScenarioConfig& cfg) {
  return fnv1a(serialize_config(cfg));
}

}  // namespace radarnet
