#include "radarnet/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "radarnet/rng.hpp"

namespace radarnet {

std::pair<Histogram, std::vector<EcdfPoint>> empirical_distribution(
    const std::vector<double>& data, int n_bins) {
  if (data.empty()) throw std::invalid_argument("empirical_distribution: empty data");
  if (n_bins < 1) throw std::invalid_argument("empirical_distribution: n_bins >= 1");

  const auto [mn_it, mx_it] = std::minmax_element(data.begin(), data.end());
  const double lo = *mn_it, hi = *mx_it;
  const double width = (hi > lo) ? (hi - lo) / n_bins : 1.0;

  Histogram h;
  h.edges.resize(n_bins + 1);
  for (int i = 0; i <= n_bins; ++i) h.edges[i] = lo + i * width;
  h.counts.assign(n_bins, 0);
  for (double x : data) {
    int b = static_cast<int>((x - lo) / width);
    if (b >= n_bins) b = n_bins - 1;
    if (b < 0) b = 0;
    ++h.counts[b];
  }
  h.total = static_cast<long>(data.size());

  std::vector<double> sorted = data;
  std::sort(sorted.begin(), sorted.end());
  std::vector<EcdfPoint> ecdf(sorted.size());
  const double n = static_cast<double>(sorted.size());
  for (std::size_t i = 0; i < sorted.size(); ++i)
    ecdf[i] = {sorted[i], static_cast<double>(i + 1) / n};
  return {h, ecdf};
}

double ks_statistic_uniform(std::vector<double> data) {
  if (data.empty()) throw std::invalid_argument("ks_statistic_uniform: empty");
  std::sort(data.begin(), data.end());
  const double n = static_cast<double>(data.size());
  double d = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const double f = data[i];
    d = std::max(d, (i + 1) / n - f);
    d = std::max(d, f - i / n);
  }
  return d;
}

double ks_pvalue(double statistic, std::size_t n) {
  const double sn = std::sqrt(static_cast<double>(n));
  const double lambda = (sn + 0.12 + 0.11 / sn) * statistic;
  if (lambda < 1e-3) return 1.0;
  double p = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = 2.0 * ((k % 2) ? 1.0 : -1.0) *
                        std::exp(-2.0 * k * k * lambda * lambda);
    p += term;
    if (std::abs(term) < 1e-12) break;
  }
  return std::clamp(p, 0.0, 1.0);
}

namespace {

// KS distance of sorted data against Exp(rate)
double ks_exp(const std::vector<double>& sorted, double rate) {
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = 1.0 - std::exp(-rate * sorted[i]);
    d = std::max(d, (i + 1) / n - f);
    d = std::max(d, f - i / n);
  }
  return d;
}

}  // namespace

std::pair<double, TestResult> exponential_fit_test(
    const std::vector<double>& data, double alpha, long mc_reps,
    std::uint64_t seed) {
  if (data.size() < 10)
    throw std::invalid_argument("exponential_fit_test: need >= 10 samples");
  if (!(alpha > 0.0 && alpha <= 0.5))
    throw std::invalid_argument("exponential_fit_test: alpha in (0, 0.5]");
  if (mc_reps < 1)
    throw std::invalid_argument("exponential_fit_test: mc_reps >= 1");
  for (double x : data)
    if (!(x > 0.0))
      throw std::invalid_argument("exponential_fit_test: non-positive value");

  std::vector<double> sorted = data;
  std::sort(sorted.begin(), sorted.end());
  const double m = mean(sorted);
  const double rate = 1.0 / m;
  const double stat = ks_exp(sorted, rate);

  // Lilliefors correction: replicate the statistic under the fitted null,
  // re-estimating the rate each replication.
  const std::size_t n = sorted.size();
  std::vector<double> stats(mc_reps);
  std::vector<double> sample(n);
  for (long r = 0; r < mc_reps; ++r) {
    Rng rng(mix_seed(seed, static_cast<std::uint64_t>(r)));
    for (std::size_t i = 0; i < n; ++i) sample[i] = rng.exponential(1.0);
    std::sort(sample.begin(), sample.end());
    const double rhat = 1.0 / mean(sample);
    stats[r] = ks_exp(sample, rhat);
  }
  std::sort(stats.begin(), stats.end());
  auto idx = static_cast<std::size_t>(
      std::ceil((1.0 - alpha) * static_cast<double>(mc_reps)) - 1);
  idx = std::min(idx, stats.size() - 1);
  TestResult res;
  res.statistic = stat;
  res.critical_value = stats[idx];
  res.alpha = alpha;
  res.mc_reps = mc_reps;
  res.reject = stat > res.critical_value;
  return {rate, res};
}

double mann_whitney_greater_pvalue(const std::vector<double>& xs,
                                   const std::vector<double>& ys) {
  if (xs.empty() || ys.empty())
    throw std::invalid_argument("mann_whitney: empty sample");
  const std::size_t n1 = xs.size(), n2 = ys.size();
  std::vector<std::pair<double, int>> all;
  all.reserve(n1 + n2);
  for (double x : xs) all.emplace_back(x, 0);
  for (double y : ys) all.emplace_back(y, 1);
  std::sort(all.begin(), all.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  // midranks with tie correction
  double rank_sum_x = 0.0;
  double tie_term = 0.0;
  std::size_t i = 0;
  std::size_t rank0 = 1;
  while (i < all.size()) {
    std::size_t j = i;
    while (j < all.size() && all[j].first == all[i].first) ++j;
    const double t = static_cast<double>(j - i);
    const double midrank = rank0 + (t - 1.0) / 2.0;
    for (std::size_t k = i; k < j; ++k)
      if (all[k].second == 0) rank_sum_x += midrank;
    tie_term += t * (t * t - 1.0);
    rank0 += (j - i);
    i = j;
  }
  const double u = rank_sum_x - n1 * (n1 + 1.0) / 2.0;
  const double mu = n1 * static_cast<double>(n2) / 2.0;
  const double ntot = static_cast<double>(n1 + n2);
  double var = n1 * static_cast<double>(n2) / 12.0 *
               (ntot + 1.0 - tie_term / (ntot * (ntot - 1.0)));
  if (var <= 0.0) return 1.0;
  const double z = (u - mu - 0.5) / std::sqrt(var);  // continuity correction
  return 0.5 * std::erfc(z / std::sqrt(2.0));
}

double median(std::vector<double> v) {
  if (v.empty()) throw std::invalid_argument("median: empty");
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return (n % 2) ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double mean(const std::vector<double>& v) {
  if (v.empty()) throw std::invalid_argument("mean: empty");
  return std::accumulate(v.begin(), v.end(), 0.0) /
         static_cast<double>(v.size());
}

}  // namespace radarnet
