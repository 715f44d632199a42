#ifndef RADARNET_RX_CHAIN_HPP
#define RADARNET_RX_CHAIN_HPP

#include <optional>
#include <vector>

#include "radarnet/waveform.hpp"

namespace radarnet {

struct TargetEcho {
  double delay_tau = 0.0;    // s, round-trip delay
  double amp_A1 = 1.0;       // linear
  double phase_theta = 0.0;  // rad
};

struct InterfererTone {
  double offset_tau_prime = 0.0;  // s, timing offset vs local oscillation
  double slope_delta = 0.0;       // Hz/s, S_victim - S_interferer
  double amp_A2 = 1.0;            // linear
  double phase_theta_prime = 0.0; // rad
  double start_t0 = 0.0;          // s, beginning of the interference
};

// Dechirped (post-mixer) scene over one chirp window.
struct DechirpScene {
  std::optional<TargetEcho> target;
  std::vector<InterfererTone> interferers;

  void validate(const ChirpConfig& cfg) const;
};

struct IFConfig {
  double passband_B = 4e6;  // Hz, one-sided brick-wall IF bandwidth
  double fs = 10e6;         // Hz, ADC rate
  int n_samples_M = 1024;   // DFT length, power of two

  void validate() const;
};

// Analytic IF-output synthesis: the legitimate target contributes a tone at
// beat frequency S*tau, each interferer a chirped tone whose instantaneous
// frequency is slope_delta*(t - t0) + S*offset_tau_prime. Samples whose
// component frequency magnitude exceeds passband_B are zeroed per component.
// The high-frequency mixing product is modeled as perfectly filtered.
SampledSignal synth_if_output(const DechirpScene& scene,
                              const ChirpConfig& cfg, const IFConfig& ifc);

// Zero-padded length-M DFT of the signal.
Eigen::VectorXcd spectrum(const SampledSignal& sig, int M);

struct RangeEstimate {
  bool found = false;
  double distance = 0.0;    // m
  int peak_bin = -1;
  double peak_power = 0.0;  // linear, |X_k|^2
};

// Peak over positive-frequency (lower-half) bins; ties break to the lower
// bin. All-zero input yields found == false.
RangeEstimate estimate_range(const SampledSignal& sig, const ChirpConfig& cfg,
                             const IFConfig& ifc);

// wrap into (-pi, pi]
double wrap_phase(double phi);

// Per-step velocities from successive peak-bin phases:
//   v_k = wavelength * wrap(phi_k - phi_{k-1}) / (4 * pi * T_c)
std::vector<double> estimate_velocity(const std::vector<double>& chirp_phases,
                                      double wavelength, double T_c);

}  // namespace radarnet

#endif  // RADARNET_RX_CHAIN_HPP
