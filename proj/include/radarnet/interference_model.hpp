#ifndef RADARNET_INTERFERENCE_MODEL_HPP
#define RADARNET_INTERFERENCE_MODEL_HPP

#include <cstdint>

namespace radarnet {

struct TimingModel {
  double T_p = 100e-6;   // s
  double T_min = 60e-6;  // s

  double window_ratio() const { return (T_p - T_min) / T_p; }
  void validate() const;
};

struct NetworkGeometry {
  double density_lambda = 0.0;  // nodes per m^2
  double d_s = 50.0;            // sensing radius, m

  void validate() const;
};

enum class InterferenceStage { RF, IF, Decision };

struct MCReport {
  long trials = 0;
  double hit_fraction = 0.0;
  double mean_interferer_count = 0.0;
  double uniformity_p_value = 1.0;
  std::uint64_t seed = 0;
};

// Timing predicate: radar i (pulse offset tau_i) is interfered by radar j
// (offset tau_j, propagation delay tau_ji) iff an integer k exists with
//   (tau_i - tau_j - tau_ji)/T_p <= k <= (T_p - T_min + tau_i - tau_j - tau_ji)/T_p.
bool is_interfered(double tau_i, double tau_j, double tau_ji,
                   const TimingModel& tm);

// (N-1)(T_p - T_min)/T_p clipped to [0,1]
double prob_bound_single(int N, const TimingModel& tm);

// 1 - exp(-((T_p - T_min)/T_p) * lambda * pi * d_s^2)
double prob_bound_poisson(const NetworkGeometry& geo, const TimingModel& tm);

// (1/2) * lambda * d_s^2 * (T_p - T_min)/T_p
double expected_count(const NetworkGeometry& geo, const TimingModel& tm);

// Monte-Carlo experiment over the radius-2*d_s disk model: Poisson
// transmitters, each illuminating a reflector uniform in its own d_s disk; a
// reflector within d_s of the victim relays interference subject to the
// timing predicate with uniform pulse phase. Trials are independently seeded
// from (seed, trial), so results do not depend on partitioning.
MCReport mc_experiment(const NetworkGeometry& geo, const TimingModel& tm,
                       long trials, std::uint64_t seed);

struct LensIntegralResult {
  double value = 0.0;
  bool matches_paper = false;  // |value - 1/(4*pi)| <= 1e-6
};

// Adaptive quadrature of
//   int_0^{2 d_s} [2 d_s^2 acos(r/(2 d_s)) - (r/2) sqrt(d_s^2 - r^2/4)]
//                 * r / (pi d_s^2)^2 dr
// converged to rel_tol.
LensIntegralResult lens_integral_check(double rel_tol, double d_s = 1.0);

}  // namespace radarnet

#endif  // RADARNET_INTERFERENCE_MODEL_HPP
