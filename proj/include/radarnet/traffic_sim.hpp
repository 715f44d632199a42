#ifndef RADARNET_TRAFFIC_SIM_HPP
#define RADARNET_TRAFFIC_SIM_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "radarnet/diversity.hpp"
#include "radarnet/rx_chain.hpp"
#include "radarnet/worldline.hpp"

namespace radarnet {

enum class ScenarioKind { Crossroad, FreewayBridge };

struct ScenarioConfig {
  ScenarioKind kind = ScenarioKind::Crossroad;
  double road_length = 600.0;     // m
  double speed_limit = 13.41;     // m/s (30 mph)
  double arrival_rate = 0.64;     // vehicles/s per approach
  double sim_duration = 60.0;     // s
  ChirpConfig chirp;
  IFConfig ifc;
  int n_array_elements = 16;
  double tx_power_dbw = 0.0;
  double max_range = 600.0;       // m
  DiversityPolicy diversity{1.0, 1.0, 0.0, 0.8};  // no diversity by default
  double distance_uncertainty = 0.3;  // relative half-width of D intervals
  std::uint64_t seed = 1;

  // exposed kinematics / evaluation knobs
  double lane_width = 3.5;        // m
  double accel = 2.0;             // m/s^2
  double decel = 2.0;             // m/s^2
  double tick = 0.01;             // s, kinematics step
  double radar_eval_period = 0.1; // s, interference evaluation cadence
  double noise_floor_dbw = -120.0;
  double right_of_way_period = 15.0;  // s, crossroad alternation

  void validate() const;
};

struct InterferenceEvent {
  double time = 0.0;         // s
  int victim_id = 0;
  int interferer_id = 0;
  double amplitude_dbw = 0.0;
  InterferenceStage stage = InterferenceStage::IF;
  double if_duration = 0.0;  // s, per-pulse IF interference duration
  double bearing = 0.0;      // rad, absolute bearing victim -> interferer
  Interval distance_estimate;  // m
};

struct EventLog {
  std::uint64_t config_hash = 0;
  std::uint64_t seed = 0;
  std::vector<InterferenceEvent> events;
};

struct ScenarioResult {
  EventLog log;
  std::vector<UncertaintyCloud> clouds;  // one per logged event
  std::vector<TruthSample> truth;        // vehicle positions per eval step
  long vehicles_spawned = 0;
  long vehicles_finished = 0;
  std::vector<int> interfered_vehicles;  // distinct victim ids, any stage
};

// Normalized uniform-linear-array power pattern, half-wavelength spacing.
double array_gain(double angle_off_boresight, int n_elements);

// Friis direct-path received power in dBW.
double link_budget(double tx_power_dbw, double gain_tx, double gain_rx,
                   double distance, double wavelength);

// Deterministic scenario run; the event log is a pure function of the
// config (including its seed).
ScenarioResult run_scenario(const ScenarioConfig& cfg);

// Per-pulse timing predicate with per-radar periods; reduces to
// is_interfered when the two periods are equal.
bool pulse_interfered(double victim_pulse_start, double tau_u, double T_p_u,
                      double prop_delay, double window);

// EventLog text round trip (header carries config hash and seed).
void write_event_log(std::ostream& os, const EventLog& log);
EventLog read_event_log(std::istream& is);

void write_truth(std::ostream& os, const std::vector<TruthSample>& truth);
std::vector<TruthSample> read_truth(std::istream& is);

std::string stage_name(InterferenceStage s);

}  // namespace radarnet

#endif  // RADARNET_TRAFFIC_SIM_HPP
