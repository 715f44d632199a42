#ifndef RADARNET_DIVERSITY_HPP
#define RADARNET_DIVERSITY_HPP

#include <cstdint>
#include <vector>

#include "radarnet/interference_model.hpp"

namespace radarnet {

struct DiversityPolicy {
  double period_lo = 0.9;      // multiplicative factors on the base period
  double period_hi = 1.1;
  double slope_sigma = 0.0;    // relative standard deviation of the slope
  double duration_gate = 0.8;  // fraction of T_c

  void validate() const;
};

// n pulse periods drawn i.i.d. uniform on [lo*base, hi*base].
std::vector<double> assign_periods(int n, double base_T_p,
                                   const DiversityPolicy& policy,
                                   std::uint64_t seed);

// n slopes uniform on [base*(1 - sigma*sqrt(3)), base*(1 + sigma*sqrt(3))],
// so the relative standard deviation equals slope_sigma.
std::vector<double> assign_slopes(int n, double base_S,
                                  const DiversityPolicy& policy,
                                  std::uint64_t seed);

// Time an interfering chirp's beat spends inside the two-sided IF passband:
// overlap when slopes are equal, else min(overlap, 2B/|delta_S|).
double if_interference_duration(double delta_S, double passband_B,
                                double overlap);

// Durations below duration_gate * T_c stop at the IF stage; the boundary is
// inclusive toward Decision.
InterferenceStage gate_by_duration(double duration, double T_c,
                                   const DiversityPolicy& policy);

}  // namespace radarnet

#endif  // RADARNET_DIVERSITY_HPP
