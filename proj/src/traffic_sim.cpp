#include "radarnet/traffic_sim.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "radarnet/rng.hpp"
#include "radarnet/scenario_config.hpp"
#include "radarnet/waveform.hpp"

namespace radarnet {

void ScenarioConfig::validate() const {
  chirp.validate();
  ifc.validate();
  diversity.validate();
  if (!(road_length > 0.0) || !(speed_limit > 0.0) || !(arrival_rate >= 0.0) ||
      !(sim_duration > 0.0))
    throw std::invalid_argument("ScenarioConfig: non-positive scenario parameter");
  if (n_array_elements < 1)
    throw std::invalid_argument("ScenarioConfig: need n_array_elements >= 1");
  if (!(max_range > 0.0))
    throw std::invalid_argument("ScenarioConfig: need max_range > 0");
  if (!(distance_uncertainty >= 0.0 && distance_uncertainty < 1.0))
    throw std::invalid_argument("ScenarioConfig: distance_uncertainty in [0,1)");
  if (!(lane_width > 0.0) || !(accel > 0.0) || !(decel > 0.0) || !(tick > 0.0) ||
      !(radar_eval_period >= tick) || !(right_of_way_period > 0.0))
    throw std::invalid_argument("ScenarioConfig: bad kinematics parameter");
}

double array_gain(double angle_off_boresight, int n_elements) {
  if (n_elements < 1) throw std::invalid_argument("array_gain: n_elements >= 1");
  if (n_elements == 1) return 1.0;
  const double psi = M_PI * std::sin(angle_off_boresight);
  const double den = n_elements * std::sin(0.5 * psi);
  if (std::abs(den) < 1e-12) return 1.0;  // boresight limit
  const double af = std::sin(0.5 * n_elements * psi) / den;
  return af * af;
}

double link_budget(double tx_power_dbw, double gain_tx, double gain_rx,
                   double distance, double wavelength) {
  if (!(distance > 0.0)) throw std::invalid_argument("link_budget: distance > 0");
  const double factor = gain_tx * gain_rx * wavelength * wavelength /
                        (16.0 * M_PI * M_PI * distance * distance);
  return tx_power_dbw + 10.0 * std::log10(factor);
}

bool pulse_interfered(double victim_pulse_start, double tau_u, double T_p_u,
                      double prop_delay, double window) {
  double delta = std::fmod(tau_u + prop_delay - victim_pulse_start, T_p_u);
  if (delta < 0.0) delta += T_p_u;
  return delta <= window;
}

namespace {

struct Vehicle {
  int id;
  int lane;        // approach index
  double s;        // m along the lane
  double v;        // m/s
  double desired;  // m/s
  double tau;      // s, pulse timing offset
  double T_p;      // s
  double S;        // Hz/s
};

struct Lane {
  int road;            // 0 or 1
  Eigen::Vector2d origin;    // position at s = 0
  Eigen::Vector2d direction; // unit
  double heading;
  int opposite;        // lane index of the opposing direction on the same road
};

constexpr double kVehicleLength = 5.0;
constexpr double kMinHeadway = 2.0;
constexpr double kIntersectionHalf = 10.0;

double wrap_angle(double a) {
  while (a > M_PI) a -= 2.0 * M_PI;
  while (a <= -M_PI) a += 2.0 * M_PI;
  return a;
}

}  // namespace

ScenarioResult run_scenario(const ScenarioConfig& cfg) {
  cfg.validate();

  const double L = cfg.road_length;
  const double half_lane = 0.5 * cfg.lane_width;
  // road 0 along x, road 1 along y; two opposing lanes per road
  const std::vector<Lane> lanes = {
      {0, {-L / 2.0, -half_lane}, {1.0, 0.0}, 0.0, 1},
      {0, {L / 2.0, half_lane}, {-1.0, 0.0}, M_PI, 0},
      {1, {half_lane, -L / 2.0}, {0.0, 1.0}, M_PI / 2.0, 3},
      {1, {-half_lane, L / 2.0}, {0.0, -1.0}, -M_PI / 2.0, 2},
  };

  ScenarioResult result;
  result.log.seed = cfg.seed;
  result.log.config_hash = config_hash(cfg);

  const bool crossroad = cfg.kind == ScenarioKind::Crossroad;
  const double wavelength = cfg.chirp.wavelength();
  const double beam_half = std::asin(std::min(1.0, 2.0 / cfg.n_array_elements));
  const double stop_line = L / 2.0 - kIntersectionHalf - kMinHeadway;

  std::vector<std::vector<Vehicle>> lane_vehicles(lanes.size());
  std::vector<double> next_arrival(lanes.size());
  std::vector<int> pending(lanes.size(), 0);  // arrivals waiting for entry room
  std::vector<char> interfered_flag;

  Rng arrivals_rng(mix_seed(cfg.seed, 0xa221));
  for (std::size_t a = 0; a < lanes.size(); ++a)
    next_arrival[a] = cfg.arrival_rate > 0.0
                          ? arrivals_rng.exponential(cfg.arrival_rate)
                          : 2.0 * cfg.sim_duration;

  int next_id = 0;
  auto spawn = [&](std::size_t a) {
    Vehicle veh;
    veh.id = next_id++;
    veh.lane = static_cast<int>(a);
    veh.s = 0.0;
    Rng rng(mix_seed(cfg.seed, 0x7e11 + static_cast<std::uint64_t>(veh.id)));
    // slight per-driver speed preference, never above the limit
    veh.desired = cfg.speed_limit * (0.9 + 0.1 * rng.uniform());
    const auto& lv = lane_vehicles[a];
    double safe = veh.desired;
    if (!lv.empty()) {
      const Vehicle& lead = lv.back();
      const double gap = lead.s - kVehicleLength - veh.s;
      safe = std::sqrt(std::max(
          0.0, lead.v * lead.v +
                   2.0 * cfg.decel * std::max(0.0, gap - kMinHeadway)));
    }
    veh.v = std::min(veh.desired, safe);
    veh.tau = rng.uniform(0.0, cfg.chirp.T_p);
    veh.T_p = assign_periods(1, cfg.chirp.T_p, cfg.diversity,
                             mix_seed(cfg.seed, 0x9a0 + veh.id))[0];
    veh.S = assign_slopes(1, cfg.chirp.slope_S, cfg.diversity,
                          mix_seed(cfg.seed, 0x33d + veh.id))[0];
    lane_vehicles[a].push_back(veh);
    result.vehicles_spawned++;
    interfered_flag.push_back(0);
  };

  const long n_ticks = static_cast<long>(std::llround(cfg.sim_duration / cfg.tick));
  const long eval_every =
      std::max<long>(1, static_cast<long>(std::llround(cfg.radar_eval_period / cfg.tick)));
  const long truth_every =
      std::max(eval_every, static_cast<long>(std::llround(1.0 / cfg.tick)));

  auto log_pair = [&](double t, const Vehicle& victim, const Lane& vlane,
                      const Vehicle& intf, const Lane& ilane) {
    const Eigen::Vector2d pv = vlane.origin + victim.s * vlane.direction;
    const Eigen::Vector2d pu = ilane.origin + intf.s * ilane.direction;
    const Eigen::Vector2d r = pu - pv;
    const double dist = r.norm();
    if (dist <= 0.0 || dist > 2.0 * cfg.max_range) return;

    const double bearing = std::atan2(r.y(), r.x());
    const double off_v = wrap_angle(bearing - vlane.heading);
    const double off_u = wrap_angle(std::atan2(-r.y(), -r.x()) - ilane.heading);
    if (std::abs(off_v) >= M_PI / 2.0 || std::abs(off_u) >= M_PI / 2.0) return;

    const double p_rx =
        link_budget(cfg.tx_power_dbw, array_gain(off_u, cfg.n_array_elements),
                    array_gain(off_v, cfg.n_array_elements), dist, wavelength);
    if (p_rx < cfg.noise_floor_dbw) return;  // below the RF noise floor

    // timing: the victim pulse containing t
    const double k = std::floor((t - victim.tau) / victim.T_p);
    const double pulse_start = victim.tau + k * victim.T_p;
    const double prop = dist / kLightSpeed;
    const double win = victim.T_p - cfg.chirp.T_min;
    if (win <= 0.0) return;
    if (!pulse_interfered(pulse_start, intf.tau, intf.T_p, prop, win)) return;

    double delta = std::fmod(intf.tau + prop - pulse_start, intf.T_p);
    if (delta < 0.0) delta += intf.T_p;
    const double overlap = std::min(cfg.chirp.T_c - delta, cfg.chirp.T_c);
    if (overlap <= 0.0) return;

    // Time the interferer's beat f(t) = dS*t - S_u*delta (t local to the
    // victim chirp) actually spends inside the two-sided IF passband over
    // the chirp overlap [delta, T_c]; capped by if_interference_duration.
    const double dS = intf.S - victim.S;
    const double B = cfg.ifc.passband_B;
    double duration = 0.0;
    if (dS == 0.0) {
      if (std::abs(victim.S) * delta <= B) duration = overlap;
    } else {
      const double t1 = (intf.S * delta - B) / dS;
      const double t2 = (intf.S * delta + B) / dS;
      const double lo = std::max(delta, std::min(t1, t2));
      const double hi = std::min(cfg.chirp.T_c, std::max(t1, t2));
      duration = std::max(0.0, hi - lo);
    }
    duration = std::min(
        duration,
        if_interference_duration(dS, B, overlap));
    if (duration <= 0.0) return;  // never enters the IF passband
    InterferenceStage stage =
        gate_by_duration(duration, cfg.chirp.T_c, cfg.diversity);
    if (stage == InterferenceStage::Decision) {
      const double implied = 0.5 * kLightSpeed * delta;
      if (implied < 0.0 || implied > cfg.max_range)
        stage = InterferenceStage::IF;  // discarded by the decision maker
    }

    InterferenceEvent ev;
    ev.time = t;
    ev.victim_id = victim.id;
    ev.interferer_id = intf.id;
    ev.amplitude_dbw = p_rx;
    ev.stage = stage;
    ev.if_duration = duration;
    ev.bearing = bearing;
    ev.distance_estimate = {dist * (1.0 - cfg.distance_uncertainty),
                            dist * (1.0 + cfg.distance_uncertainty)};
    result.log.events.push_back(ev);
    interfered_flag[static_cast<std::size_t>(victim.id)] = 1;

    UncertaintyCloud cloud = make_cloud(
        {off_v - beam_half, off_v + beam_half}, ev.distance_estimate,
        {t - 0.5 * cfg.radar_eval_period, t + 0.5 * cfg.radar_eval_period},
        {pv.x(), pv.y(), vlane.heading},
        static_cast<int>(result.clouds.size()));
    result.clouds.push_back(cloud);
  };

  for (long step = 0; step <= n_ticks; ++step) {
    const double t = step * cfg.tick;

    // arrivals
    for (std::size_t a = 0; a < lanes.size(); ++a) {
      while (cfg.arrival_rate > 0.0 && next_arrival[a] <= t) {
        pending[a]++;
        next_arrival[a] += arrivals_rng.exponential(cfg.arrival_rate);
      }
      while (pending[a] > 0) {
        const auto& lv = lane_vehicles[a];
        const bool room =
            lv.empty() || lv.back().s > kVehicleLength + kMinHeadway;
        if (!room) break;
        spawn(a);
        pending[a]--;
      }
    }

    // kinematics
    const bool road0_green =
        std::fmod(t, 2.0 * cfg.right_of_way_period) < cfg.right_of_way_period;
    for (std::size_t a = 0; a < lanes.size(); ++a) {
      auto& lv = lane_vehicles[a];
      const bool green = !crossroad || (lanes[a].road == 0 ? road0_green : !road0_green);
      for (std::size_t i = 0; i < lv.size(); ++i) {
        Vehicle& veh = lv[i];
        double accel_cmd = cfg.accel;
        // follow the leader (vehicles keep lane order; i-1 is the leader)
        if (i > 0) {
          const Vehicle& lead = lv[i - 1];
          const double gap = lead.s - veh.s - kVehicleLength;
          const double needed = kMinHeadway + veh.v * veh.v / (2.0 * cfg.decel) -
                                lead.v * lead.v / (2.0 * cfg.decel);
          if (gap < needed) accel_cmd = -cfg.decel;
        }
        // red light: brake for the stop line unless already past it
        if (crossroad && !green && veh.s < stop_line) {
          const double gap = stop_line - veh.s;
          if (gap < kMinHeadway + veh.v * veh.v / (2.0 * cfg.decel))
            accel_cmd = -cfg.decel;
        }
        veh.v = std::clamp(veh.v + accel_cmd * cfg.tick, 0.0, veh.desired);
        veh.s += veh.v * cfg.tick;
      }
      // despawn past the end of the road
      while (!lv.empty() && lv.front().s > L) {
        lv.erase(lv.begin());
        result.vehicles_finished++;
      }
    }

    // radar evaluation
    if (step % truth_every == 0) {
      for (std::size_t a = 0; a < lanes.size(); ++a)
        for (const Vehicle& veh : lane_vehicles[a])
          result.truth.push_back({t, veh.id,
                                  lanes[a].origin.x() + veh.s * lanes[a].direction.x(),
                                  lanes[a].origin.y() + veh.s * lanes[a].direction.y()});
    }
    if (step % eval_every == 0) {
      for (std::size_t a = 0; a < lanes.size(); ++a) {
        const std::size_t b = static_cast<std::size_t>(lanes[a].opposite);
        for (const Vehicle& victim : lane_vehicles[a])
          for (const Vehicle& intf : lane_vehicles[b])
            log_pair(t, victim, lanes[a], intf, lanes[b]);
      }
    }
  }

  for (std::size_t id = 0; id < interfered_flag.size(); ++id)
    if (interfered_flag[id]) result.interfered_vehicles.push_back(static_cast<int>(id));
  return result;
}

std::string stage_name(InterferenceStage s) {
  switch (s) {
    case InterferenceStage::RF: return "RF";
    case InterferenceStage::IF: return "IF";
    case InterferenceStage::Decision: return "Decision";
  }
  return "?";
}

namespace {

InterferenceStage stage_from_name(const std::string& s) {
  if (s == "RF") return InterferenceStage::RF;
  if (s == "IF") return InterferenceStage::IF;
  if (s == "Decision") return InterferenceStage::Decision;
  throw std::runtime_error("unknown interference stage '" + s + "'");
}

}  // namespace

void write_event_log(std::ostream& os, const EventLog& log) {
  os << "# radarnet eventlog config_hash=" << std::hex << log.config_hash
     << std::dec << " seed=" << log.seed << '\n';
  os << "time_s victim_id interferer_id amplitude_dBW stage if_duration_s "
        "bearing_rad dist_lo_m dist_hi_m\n";
  os.precision(17);
  for (const auto& e : log.events) {
    os << e.time << ' ' << e.victim_id << ' ' << e.interferer_id << ' '
       << e.amplitude_dbw << ' ' << stage_name(e.stage) << ' ' << e.if_duration
       << ' ' << e.bearing << ' ' << e.distance_estimate.lo << ' '
       << e.distance_estimate.hi << '\n';
  }
}

EventLog read_event_log(std::istream& is) {
  EventLog log;
  std::string line;
  if (!std::getline(is, line) || line.rfind("# radarnet eventlog", 0) != 0)
    throw std::runtime_error("read_event_log: bad header");
  {
    std::istringstream hs(line);
    std::string tok;
    while (hs >> tok) {
      if (tok.rfind("config_hash=", 0) == 0)
        log.config_hash = std::stoull(tok.substr(12), nullptr, 16);
      if (tok.rfind("seed=", 0) == 0) log.seed = std::stoull(tok.substr(5));
    }
  }
  std::getline(is, line);  // column header
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    InterferenceEvent e;
    std::string stage;
    if (!(ls >> e.time >> e.victim_id >> e.interferer_id >> e.amplitude_dbw >>
          stage >> e.if_duration >> e.bearing >> e.distance_estimate.lo >>
          e.distance_estimate.hi))
      throw std::runtime_error("read_event_log: bad row");
    e.stage = stage_from_name(stage);
    log.events.push_back(e);
  }
  return log;
}

void write_truth(std::ostream& os, const std::vector<TruthSample>& truth) {
  os << "# radarnet truth\n";
  os << "time_s vehicle_id x_m y_m\n";
  os.precision(17);
  for (const auto& s : truth)
    os << s.t << ' ' << s.vehicle_id << ' ' << s.x << ' ' << s.y << '\n';
}

std::vector<TruthSample> read_truth(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line.rfind("# radarnet truth", 0) != 0)
    throw std::runtime_error("read_truth: bad header");
  std::getline(is, line);
  std::vector<TruthSample> out;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    TruthSample s;
    if (!(ls >> s.t >> s.vehicle_id >> s.x >> s.y))
      throw std::runtime_error("read_truth: bad row");
    out.push_back(s);
  }
  return out;
}

}  // namespace radarnet
