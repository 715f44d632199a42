#include "radarnet/diversity.hpp"

#include <cmath>
#include <stdexcept>

#include "radarnet/rng.hpp"

namespace radarnet {

void DiversityPolicy::validate() const {
  if (!(period_lo > 0.0 && period_lo <= period_hi))
    throw std::invalid_argument("DiversityPolicy: need 0 < lo <= hi");
  if (!(slope_sigma >= 0.0))
    throw std::invalid_argument("DiversityPolicy: need slope_sigma >= 0");
  if (!(duration_gate > 0.0 && duration_gate <= 1.0))
    throw std::invalid_argument("DiversityPolicy: need 0 < duration_gate <= 1");
}

std::vector<double> assign_periods(int n, double base_T_p,
                                   const DiversityPolicy& policy,
                                   std::uint64_t seed) {
  policy.validate();
  if (n < 1) throw std::invalid_argument("assign_periods: need n >= 1");
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) {
    Rng rng(mix_seed(seed, static_cast<std::uint64_t>(i)));
    out[i] = base_T_p * rng.uniform(policy.period_lo, policy.period_hi);
  }
  return out;
}

std::vector<double> assign_slopes(int n, double base_S,
                                  const DiversityPolicy& policy,
                                  std::uint64_t seed) {
  policy.validate();
  if (n < 1) throw std::invalid_argument("assign_slopes: need n >= 1");
  const double half_width = policy.slope_sigma * std::sqrt(3.0);
  if (half_width >= 1.0)
    throw std::invalid_argument("assign_slopes: sigma*sqrt(3) >= 1 allows non-positive slope");
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) {
    Rng rng(mix_seed(seed ^ 0x5107a5e3u, static_cast<std::uint64_t>(i)));
    out[i] = base_S * rng.uniform(1.0 - half_width, 1.0 + half_width);
  }
  return out;
}

double if_interference_duration(double delta_S, double passband_B,
                                double overlap) {
  if (!(overlap >= 0.0)) throw std::invalid_argument("if_interference_duration: overlap >= 0");
  if (!(passband_B > 0.0)) throw std::invalid_argument("if_interference_duration: passband_B > 0");
  if (delta_S == 0.0) return overlap;
  return std::min(overlap, 2.0 * passband_B / std::abs(delta_S));
}

InterferenceStage gate_by_duration(double duration, double T_c,
                                   const DiversityPolicy& policy) {
  policy.validate();
  if (!(duration >= 0.0)) throw std::invalid_argument("gate_by_duration: duration >= 0");
  return duration < policy.duration_gate * T_c ? InterferenceStage::IF
                                               : InterferenceStage::Decision;
}

}  // namespace radarnet
