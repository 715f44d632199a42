#ifndef RADARNET_WAVEFORM_HPP
#define RADARNET_WAVEFORM_HPP

#include <Eigen/Dense>

namespace radarnet {

inline constexpr double kLightSpeed = 299792458.0;  // m/s

// FMCW waveform parameters. One chirp of duration T_c is sent every T_p
// seconds; the instantaneous frequency ramps from f0 with slope slope_S.
// T_min is the minimum usable IF overlap for the receiver's ranging chain.
struct ChirpConfig {
  double f0 = 77e9;           // Hz
  double slope_S = 2.9982e13; // Hz/s
  double T_c = 60e-6;         // s
  double T_p = 100e-6;        // s
  double T_min = 60e-6;       // s
  double amplitude_A = 1.0;   // linear

  double bandwidth() const { return slope_S * T_c; }
  double wavelength() const { return kLightSpeed / f0; }
  void validate() const;  // throws std::invalid_argument on bad parameters
};

// Complex baseband sample sequence.
struct SampledSignal {
  double fs = 0.0;          // Hz
  double start_time = 0.0;  // s
  Eigen::VectorXcd samples;

  void validate() const;
};

// One chirp sampled at fs over [0, duration); samples outside [0, T_c) are
// zero. Analytic-signal (complex exponential) representation.
SampledSignal synth_chirp(const ChirpConfig& cfg, double fs,
                          double pulse_phase, double duration);

// f0 + S*t for t within the chirp window; throws std::domain_error outside.
double instantaneous_frequency(const ChirpConfig& cfg, double t);

// c / (2 * S * T_c)
double range_resolution(const ChirpConfig& cfg);

}  // namespace radarnet

#endif  // RADARNET_WAVEFORM_HPP
