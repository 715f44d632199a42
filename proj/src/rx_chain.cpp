#include "radarnet/rx_chain.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

#include <unsupported/Eigen/FFT>

namespace radarnet {

void DechirpScene::validate(const ChirpConfig& cfg) const {
  if (target) {
    if (!(target->delay_tau >= 0.0 && target->delay_tau < cfg.T_p))
      throw std::invalid_argument("DechirpScene: target delay out of [0,T_p)");
    if (!(target->amp_A1 >= 0.0))
      throw std::invalid_argument("DechirpScene: negative target amplitude");
  }
  for (const auto& it : interferers) {
    if (!(it.amp_A2 >= 0.0))
      throw std::invalid_argument("DechirpScene: negative interferer amplitude");
    if (!std::isfinite(it.offset_tau_prime) || !std::isfinite(it.slope_delta))
      throw std::invalid_argument("DechirpScene: non-finite interferer");
  }
}

void IFConfig::validate() const {
  if (!(fs > 0.0) || !(passband_B > 0.0) || passband_B > fs / 2.0)
    throw std::invalid_argument("IFConfig: need 0 < passband_B <= fs/2");
  if (n_samples_M < 2 || (n_samples_M & (n_samples_M - 1)) != 0)
    throw std::invalid_argument("IFConfig: n_samples_M must be a power of two");
}

SampledSignal synth_if_output(const DechirpScene& scene,
                              const ChirpConfig& cfg, const IFConfig& ifc) {
  cfg.validate();
  ifc.validate();
  scene.validate(cfg);

  const auto n = static_cast<Eigen::Index>(ifc.n_samples_M);
  SampledSignal out;
  out.fs = ifc.fs;
  out.start_time = 0.0;
  out.samples = Eigen::VectorXcd::Zero(n);
  const double two_pi = 2.0 * M_PI;

  for (Eigen::Index k = 0; k < n; ++k) {
    const double t = static_cast<double>(k) / ifc.fs;
    if (t >= cfg.T_c) break;  // one chirp window
    std::complex<double> acc(0.0, 0.0);
    if (scene.target) {
      const double f_beat = cfg.slope_S * scene.target->delay_tau;
      if (std::abs(f_beat) <= ifc.passband_B) {
        acc += scene.target->amp_A1 *
               std::polar(1.0, two_pi * f_beat * t + scene.target->phase_theta);
      }
    }
    for (const auto& it : scene.interferers) {
      const double dt = t - it.start_t0;
      const double f_inst = it.slope_delta * dt + cfg.slope_S * it.offset_tau_prime;
      if (std::abs(f_inst) > ifc.passband_B) continue;  // brick-wall IF
      const double phase = two_pi * (cfg.slope_S * it.offset_tau_prime * dt +
                                     0.5 * it.slope_delta * dt * dt) +
                           it.phase_theta_prime;
      acc += it.amp_A2 * std::polar(1.0, phase);
    }
    out.samples[k] = acc;
  }
  return out;
}

Eigen::VectorXcd spectrum(const SampledSignal& sig, int M) {
  if (M < 2) throw std::invalid_argument("spectrum: need M >= 2");
  Eigen::VectorXcd padded = Eigen::VectorXcd::Zero(M);
  const Eigen::Index n = std::min<Eigen::Index>(sig.samples.size(), M);
  padded.head(n) = sig.samples.head(n);
  Eigen::FFT<double> fft;
  Eigen::VectorXcd out(M);
  fft.fwd(out, padded);
  return out;
}

RangeEstimate estimate_range(const SampledSignal& sig, const ChirpConfig& cfg,
                             const IFConfig& ifc) {
  cfg.validate();
  ifc.validate();
  RangeEstimate est;
  if (sig.samples.size() == 0) return est;

  const Eigen::VectorXcd spec = spectrum(sig, ifc.n_samples_M);
  const int half = ifc.n_samples_M / 2;
  double best = 0.0;
  int best_bin = -1;
  for (int k = 0; k < half; ++k) {
    const double p = std::norm(spec[k]);
    if (p > best) {  // strict: ties break toward the lower bin
      best = p;
      best_bin = k;
    }
  }
  if (best_bin < 0 || best <= 0.0) return est;  // all-zero: no target

  const double f_beat = best_bin * ifc.fs / ifc.n_samples_M;
  est.found = true;
  est.peak_bin = best_bin;
  est.peak_power = best;
  est.distance = kLightSpeed * f_beat / (2.0 * cfg.slope_S);
  return est;
}

double wrap_phase(double phi) {
  double w = std::fmod(phi, 2.0 * M_PI);
  if (w <= -M_PI) w += 2.0 * M_PI;
  if (w > M_PI) w -= 2.0 * M_PI;
  return w;
}

std::vector<double> estimate_velocity(const std::vector<double>& chirp_phases,
                                      double wavelength, double T_c) {
  if (chirp_phases.size() < 2)
    throw std::domain_error("estimate_velocity: need >= 2 phases");
  if (!(wavelength > 0.0) || !(T_c > 0.0))
    throw std::invalid_argument("estimate_velocity: bad wavelength/T_c");
  std::vector<double> v;
  v.reserve(chirp_phases.size() - 1);
  for (std::size_t k = 1; k < chirp_phases.size(); ++k) {
    const double dphi = wrap_phase(chirp_phases[k] - chirp_phases[k - 1]);
    v.push_back(wavelength * dphi / (4.0 * M_PI * T_c));
  }
  return v;
}

}  // namespace radarnet
