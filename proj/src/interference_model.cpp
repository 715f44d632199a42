#include "radarnet/interference_model.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "radarnet/rng.hpp"
#include "radarnet/stats.hpp"
#include "radarnet/waveform.hpp"

namespace radarnet {

void TimingModel::validate() const {
  if (!(T_min > 0.0 && T_min < T_p))
    throw std::invalid_argument("TimingModel: need 0 < T_min < T_p");
}

void NetworkGeometry::validate() const {
  if (!(density_lambda >= 0.0))
    throw std::invalid_argument("NetworkGeometry: need density >= 0");
  if (!(d_s > 0.0))
    throw std::invalid_argument("NetworkGeometry: need d_s > 0");
}

bool is_interfered(double tau_i, double tau_j, double tau_ji,
                   const TimingModel& tm) {
  tm.validate();
  if (!(tau_ji >= 0.0) || !std::isfinite(tau_i) || !std::isfinite(tau_j))
    throw std::invalid_argument("is_interfered: bad offsets");
  const double base = tau_i - tau_j - tau_ji;
  const double lower = base / tm.T_p;
  const double upper = (tm.T_p - tm.T_min + base) / tm.T_p;
  return std::ceil(lower) <= std::floor(upper);
}

double prob_bound_single(int N, const TimingModel& tm) {
  tm.validate();
  if (N < 1) throw std::invalid_argument("prob_bound_single: need N >= 1");
  const double p = (N - 1) * tm.window_ratio();
  return p > 1.0 ? 1.0 : (p < 0.0 ? 0.0 : p);
}

double prob_bound_poisson(const NetworkGeometry& geo, const TimingModel& tm) {
  geo.validate();
  tm.validate();
  return 1.0 -
         std::exp(-tm.window_ratio() * geo.density_lambda * M_PI * geo.d_s * geo.d_s);
}

double expected_count(const NetworkGeometry& geo, const TimingModel& tm) {
  geo.validate();
  tm.validate();
  return 0.5 * geo.density_lambda * geo.d_s * geo.d_s * tm.window_ratio();
}

MCReport mc_experiment(const NetworkGeometry& geo, const TimingModel& tm,
                       long trials, std::uint64_t seed) {
  geo.validate();
  tm.validate();
  if (trials < 1) throw std::invalid_argument("mc_experiment: need trials >= 1");

  const double d = geo.d_s;
  const double mean_tx = geo.density_lambda * M_PI * (2.0 * d) * (2.0 * d);
  long hits = 0;
  long total_interferers = 0;
  std::vector<double> phases;  // arrival phases of pulses reaching the victim

  for (long trial = 0; trial < trials; ++trial) {
    Rng rng(mix_seed(seed, static_cast<std::uint64_t>(trial)));
    const int m = rng.poisson(mean_tx);
    int n_interfering = 0;
    for (int i = 0; i < m; ++i) {
      // transmitter uniform in the radius-2d disk around the victim (origin)
      const double rt = 2.0 * d * std::sqrt(rng.uniform());
      const double at = rng.uniform(0.0, 2.0 * M_PI);
      const double tx_x = rt * std::cos(at), tx_y = rt * std::sin(at);
      // its reflector uniform in the transmitter's own d_s disk
      const double rr = d * std::sqrt(rng.uniform());
      const double ar = rng.uniform(0.0, 2.0 * M_PI);
      const double rf_x = tx_x + rr * std::cos(ar), rf_y = tx_y + rr * std::sin(ar);
      const double refl_to_victim = std::hypot(rf_x, rf_y);
      if (refl_to_victim > d) continue;  // pulse never reaches the victim

      const double tau_prop = (rr + refl_to_victim) / kLightSpeed;
      const double tau_j = rng.uniform(0.0, tm.T_p);
      const double arrival = std::fmod(tau_j + tau_prop, tm.T_p);
      phases.push_back(arrival / tm.T_p);
      if (is_interfered(0.0, tau_j, tau_prop, tm)) ++n_interfering;
    }
    if (n_interfering > 0) ++hits;
    total_interferers += n_interfering;
  }

  MCReport rep;
  rep.trials = trials;
  rep.seed = seed;
  rep.hit_fraction = static_cast<double>(hits) / static_cast<double>(trials);
  rep.mean_interferer_count =
      static_cast<double>(total_interferers) / static_cast<double>(trials);
  rep.uniformity_p_value =
      phases.empty() ? 1.0
                     : ks_pvalue(ks_statistic_uniform(phases), phases.size());
  return rep;
}

namespace {

double lens_integrand(double r, double d) {
  // the paper's Appendix B integrand, verbatim
  const double x = std::min(1.0, r / (2.0 * d));
  return (2.0 * d * d * std::acos(x) -
          0.5 * r * std::sqrt(std::max(0.0, d * d - 0.25 * r * r))) *
         r / ((M_PI * d * d) * (M_PI * d * d));
}

double simpson(double (*f)(double, double), double d, double a, double b) {
  return (b - a) / 6.0 * (f(a, d) + 4.0 * f(0.5 * (a + b), d) + f(b, d));
}

double adaptive(double (*f)(double, double), double d, double a, double b,
                double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double left = simpson(f, d, a, m);
  const double right = simpson(f, d, m, b);
  if (depth > 50) throw std::runtime_error("lens_integral_check: no convergence");
  if (std::abs(left + right - whole) <= 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return adaptive(f, d, a, m, left, 0.5 * tol, depth + 1) +
         adaptive(f, d, m, b, right, 0.5 * tol, depth + 1);
}

}  // namespace

LensIntegralResult lens_integral_check(double rel_tol, double d_s) {
  if (!(rel_tol > 0.0))
    throw std::invalid_argument("lens_integral_check: need rel_tol > 0");
  const double a = 0.0, b = 2.0 * d_s;
  const double whole = simpson(lens_integrand, d_s, a, b);
  // scale-invariant integrand: magnitude is O(0.1), so rel_tol ~ abs tol here
  const double value = adaptive(lens_integrand, d_s, a, b, whole,
                                rel_tol * 0.25, 0);
  LensIntegralResult res;
  res.value = value;
  res.matches_paper = std::abs(value - 1.0 / (4.0 * M_PI)) <= 1e-6;
  return res;
}

}  // namespace radarnet
