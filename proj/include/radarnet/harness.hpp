#ifndef RADARNET_HARNESS_HPP
#define RADARNET_HARNESS_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "radarnet/stats.hpp"
#include "radarnet/traffic_sim.hpp"

namespace radarnet {

// Event-log statistics. Events are merged per victim into episodes when the
// gap between successive events is at most merge_gap. Episode onsets are
// known only up to the evaluation cadence; when time_quantum > 0 each onset
// is dequantized by a seeded uniform draw over its preceding quantum before
// the network-wide onset intervals are formed.
struct LogAnalysis {
  long n_events = 0;
  long n_decision_events = 0;
  long n_if_events = 0;
  long n_victims = 0;
  std::vector<double> episode_intervals;  // network-wide onset spacings
  std::vector<double> episode_durations;  // per-victim episode lengths
  std::vector<double> impulse_intervals;  // per-victim raw event spacings
  std::vector<double> amplitudes_dbw;
  double amplitude_mode_dbw = 0.0;
};

LogAnalysis analyze_log(const EventLog& log, double merge_gap,
                        double time_quantum = 0.0);

// One row of the formula-vs-oracle compatibility report.
struct CompatEntry {
  std::string name;
  double paper_value = 0.0;
  double oracle_value = 0.0;
  double relative_deviation = 0.0;
  std::string note;
};

struct CompatReport {
  std::vector<CompatEntry> entries;
  std::vector<std::string> notes;  // prose-only deviations and policies
};

// Runs the interference-model oracles (quadrature, Monte Carlo) and collects
// every formula-vs-oracle comparison plus recorded policy deviations.
CompatReport build_compat_report(long mc_trials, std::uint64_t seed);

void write_compat_report(std::ostream& os, const CompatReport& rep);

void write_histogram_json(std::ostream& os, const std::string& name,
                          const Histogram& h);

}  // namespace radarnet

#endif  // RADARNET_HARNESS_HPP
