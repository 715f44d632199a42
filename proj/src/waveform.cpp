#include "radarnet/waveform.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace radarnet {

void ChirpConfig::validate() const {
  if (!(std::isfinite(f0) && std::isfinite(slope_S) && std::isfinite(T_c) &&
        std::isfinite(T_p) && std::isfinite(T_min) &&
        std::isfinite(amplitude_A)))
    throw std::invalid_argument("ChirpConfig: non-finite parameter");
  if (!(T_c > 0.0 && T_c <= T_p))
    throw std::invalid_argument("ChirpConfig: need 0 < T_c <= T_p");
  if (!(T_min > 0.0 && T_min < T_p))
    throw std::invalid_argument("ChirpConfig: need 0 < T_min < T_p");
  if (!(slope_S > 0.0))
    throw std::invalid_argument("ChirpConfig: need slope_S > 0");
}

void SampledSignal::validate() const {
  if (!(fs > 0.0) || !std::isfinite(fs))
    throw std::invalid_argument("SampledSignal: need fs > 0");
  if (!samples.allFinite())
    throw std::invalid_argument("SampledSignal: non-finite sample");
}

SampledSignal synth_chirp(const ChirpConfig& cfg, double fs,
                          double pulse_phase, double duration) {
  cfg.validate();
  if (!(fs > 0.0) || !std::isfinite(fs))
    throw std::invalid_argument("synth_chirp: need fs > 0");
  if (!(duration > 0.0) || !std::isfinite(duration))
    throw std::invalid_argument("synth_chirp: need duration > 0");

  const auto n = static_cast<Eigen::Index>(std::ceil(duration * fs));
  SampledSignal out;
  out.fs = fs;
  out.start_time = 0.0;
  out.samples = Eigen::VectorXcd::Zero(n);
  const double two_pi = 2.0 * M_PI;
  for (Eigen::Index k = 0; k < n; ++k) {
    const double t = static_cast<double>(k) / fs;
    if (t >= cfg.T_c) continue;
    const double phase =
        two_pi * (cfg.f0 * t + 0.5 * cfg.slope_S * t * t) + pulse_phase;
    out.samples[k] = cfg.amplitude_A * std::polar(1.0, phase);
  }
  return out;
}

double instantaneous_frequency(const ChirpConfig& cfg, double t) {
  cfg.validate();
  if (t < 0.0 || t > cfg.T_c)
    throw std::domain_error("instantaneous_frequency: t outside chirp window");
  return cfg.f0 + cfg.slope_S * t;
}

double range_resolution(const ChirpConfig& cfg) {
  cfg.validate();
  return kLightSpeed / (2.0 * cfg.slope_S * cfg.T_c);
}

}  // namespace radarnet
