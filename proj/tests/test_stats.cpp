#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "radarnet/rng.hpp"
#include "radarnet/stats.hpp"

using namespace radarnet;

TEST_CASE("histogram of {1,2,3,4} with 2 bins") {
  auto [hist, ecdf] = empirical_distribution({1.0, 2.0, 3.0, 4.0}, 2);
  REQUIRE(hist.counts.size() == 2);
  CHECK(hist.counts[0] == 2);
  CHECK(hist.counts[1] == 2);
  CHECK(hist.total == 4);
  REQUIRE_FALSE(ecdf.empty());
  CHECK(ecdf.back().prob == doctest::Approx(1.0));
}

TEST_CASE("histogram masses of exponential draws match analytic bin probabilities") {
  Rng rng(77);
  const double rate = 1.3;
  std::vector<double> data(100000);
  for (double& d : data) d = rng.exponential(rate);
  const int n_bins = 20;
  auto [hist, ecdf] = empirical_distribution(data, n_bins);
  const auto n = static_cast<double>(data.size());
  for (int b = 0; b < n_bins; ++b) {
    const double lo = hist.edges[b], hi = hist.edges[b + 1];
    double p = std::exp(-rate * lo) - std::exp(-rate * hi);
    if (b == n_bins - 1) p += std::exp(-rate * hi);  // max lands in last bin
    const double sigma = std::sqrt(n * p * (1.0 - p));
    CHECK(std::abs(hist.counts[b] - n * p) <= 3.0 * sigma + 3.0);
  }
}

TEST_CASE("KS uniform statistic on hand-computable samples") {
  // single point at 0.5: D = 0.5 both sides
  CHECK(ks_statistic_uniform({0.5}) == doctest::Approx(0.5));
  // 0.1, 0.9: sup|F_n - x| = max(|1/2-0.1|,...) = 0.4
  CHECK(ks_statistic_uniform({0.1, 0.9}) == doctest::Approx(0.4));
}

TEST_CASE("asymptotic KS p-value reference points") {
  // Kolmogorov distribution: K(1.36) ~ 0.951 (the classic 5% point)
  const std::size_t n = 10000;
  const double d = 1.36 / std::sqrt(static_cast<double>(n));
  CHECK(ks_pvalue(d, n) == doctest::Approx(0.05).epsilon(0.05));
  CHECK(ks_pvalue(1e-9, n) == doctest::Approx(1.0));
  CHECK(ks_pvalue(0.9, n) < 1e-12);
}

TEST_CASE("exponential fit: rate is 1/mean") {
  std::vector<double> data{1.0, 3.0, 2.0, 2.0, 1.5, 2.5,
                           0.5, 3.5, 2.0, 2.0, 1.0, 3.0};  // mean 2
  auto [rate, result] = exponential_fit_test(data, 0.05, 200, 11);
  CHECK(rate == doctest::Approx(0.5));
}

TEST_CASE("exponential fit accepts exponential data for most seeds") {
  int accept = 0;
  const int n_seeds = 100;
  for (int s = 0; s < n_seeds; ++s) {
    Rng rng(mix_seed(500 + s, 1));
    std::vector<double> data(10000);
    for (double& d : data) d = rng.exponential(2.0);
    auto [rate, result] = exponential_fit_test(data, 0.05, 400, 42);
    if (!result.reject) ++accept;
  }
  // nominal size 0.05; allow Monte Carlo calibration noise
  CHECK(accept >= 90);
}

TEST_CASE("exponential fit rejects uniform data") {
  Rng rng(9);
  std::vector<double> data(10000);
  for (double& d : data) d = rng.uniform();
  auto [rate, result] = exponential_fit_test(data, 0.05, 400, 42);
  CHECK(result.reject);
}

TEST_CASE("exponential fit is deterministic in its seed") {
  Rng rng(4);
  std::vector<double> data(500);
  for (double& d : data) d = rng.exponential(0.7);
  auto r1 = exponential_fit_test(data, 0.05, 300, 99);
  auto r2 = exponential_fit_test(data, 0.05, 300, 99);
  CHECK(r1.second.critical_value == r2.second.critical_value);
  CHECK(r1.second.statistic == r2.second.statistic);
}

TEST_CASE("Mann-Whitney one-sided p-values") {
  // clearly larger xs
  std::vector<double> xs{10, 11, 12, 13, 14, 15, 16, 17, 18, 19};
  std::vector<double> ys{0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
  CHECK(mann_whitney_greater_pvalue(xs, ys) < 1e-3);
  // reversed alternative is near 1
  CHECK(mann_whitney_greater_pvalue(ys, xs) > 0.99);
  // identical samples: p ~ 0.5
  CHECK(mann_whitney_greater_pvalue(xs, xs) == doctest::Approx(0.5).epsilon(0.2));
}

TEST_CASE("Mann-Whitney matches a frozen reference value") {
  // scipy.stats.mannwhitneyu(x, y, alternative='greater',
  //                          method='asymptotic', use_continuity=True)
  std::vector<double> x{1.1, 2.3, 3.5, 0.7, 2.2, 4.1};
  std::vector<double> y{0.4, 1.9, 1.2, 0.8, 2.0};
  CHECK(mann_whitney_greater_pvalue(x, y) ==
        doctest::Approx(0.08545176011539873).epsilon(1e-9));
}

TEST_CASE("median and mean") {
  CHECK(median({3.0, 1.0, 2.0}) == 2.0);
  CHECK(median({4.0, 1.0, 2.0, 3.0}) == doctest::Approx(2.5));
  CHECK(mean({1.0, 2.0, 3.0, 4.0}) == doctest::Approx(2.5));
}
