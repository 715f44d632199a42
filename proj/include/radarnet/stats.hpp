#ifndef RADARNET_STATS_HPP
#define RADARNET_STATS_HPP

#include <cstdint>
#include <utility>
#include <vector>

namespace radarnet {

struct Histogram {
  std::vector<double> edges;   // uniform, strictly increasing, size bins+1
  std::vector<long> counts;    // size bins
  long total = 0;
};

struct EcdfPoint {
  double value;
  double prob;  // rank / n
};

// Uniform-width histogram over [min, max] plus the ECDF of the data.
std::pair<Histogram, std::vector<EcdfPoint>> empirical_distribution(
    const std::vector<double>& data, int n_bins);

// Kolmogorov-Smirnov statistic of data against the uniform [0,1] CDF.
double ks_statistic_uniform(std::vector<double> data);

// Asymptotic two-sided KS p-value (Kolmogorov distribution with the
// small-sample correction factor).
double ks_pvalue(double statistic, std::size_t n);

struct TestResult {
  double statistic = 0.0;
  double critical_value = 0.0;
  double alpha = 0.05;
  bool reject = false;
  long mc_reps = 0;
};

// Lilliefors-style exponentiality test: rate fitted by 1/mean, KS distance
// against the fitted CDF, critical value from seeded Monte Carlo replication
// of the statistic under the fitted-parameter null.
std::pair<double, TestResult> exponential_fit_test(
    const std::vector<double>& data, double alpha, long mc_reps,
    std::uint64_t seed);

// One-sided Mann-Whitney U: p-value for the alternative "xs stochastically
// larger than ys" (normal approximation with tie correction).
double mann_whitney_greater_pvalue(const std::vector<double>& xs,
                                   const std::vector<double>& ys);

double median(std::vector<double> v);
double mean(const std::vector<double>& v);

}  // namespace radarnet

#endif  // RADARNET_STATS_HPP
