#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "radarnet/detection.hpp"
#include "radarnet/rng.hpp"
#include "radarnet/stats.hpp"

using namespace radarnet;

namespace {
ChirpConfig cfg;
IFConfig ifc;

Eigen::VectorXcd tone_spectrum(int M, int bin, double amp) {
  Eigen::VectorXcd spec = Eigen::VectorXcd::Zero(M);
  spec(bin) = std::complex<double>(amp, 0.0);
  return spec;
}
}  // namespace

TEST_CASE("power ratio of single tones and the symmetric pair") {
  const int M = ifc.n_samples_M;
  CHECK(power_ratio(tone_spectrum(M, M / 8, 1.0)) < 1e-12);
  CHECK(power_ratio(tone_spectrum(M, M / 2 + 5, 1.0)) >= 1e6);
  Eigen::VectorXcd both = tone_spectrum(M, M / 4, 0.7);
  both(3 * M / 4) = std::complex<double>(0.0, 0.7);
  CHECK(power_ratio(both) == doctest::Approx(1.0).epsilon(1e-9));
  bool degen = false;
  CHECK(power_ratio(Eigen::VectorXcd::Zero(M), &degen) == 0.0);
  CHECK(degen);
}

TEST_CASE("doppler feature on constructed frames") {
  const double wavelength = cfg.wavelength();
  const int M = ifc.n_samples_M;
  const int bin = 40;

  SUBCASE("constant phase gives zero") {
    std::array<Eigen::VectorXcd, 4> frame;
    for (auto& s : frame) {
      s = Eigen::VectorXcd::Zero(M);
      s(bin) = std::polar(1.0, 0.9);
    }
    CHECK(doppler_feature(frame, wavelength, cfg.T_c) == doctest::Approx(0.0));
  }
  SUBCASE("quarter-turn per chirp gives ~8.12 m/s") {
    std::array<Eigen::VectorXcd, 4> frame;
    for (int c = 0; c < 4; ++c) {
      frame[c] = Eigen::VectorXcd::Zero(M);
      frame[c](bin) = std::polar(1.0, c * M_PI / 2.0);
    }
    const double v = doppler_feature(frame, wavelength, cfg.T_c);
    CHECK(v == doctest::Approx(wavelength * (M_PI / 2.0) /
                               (4.0 * M_PI * cfg.T_c)).epsilon(1e-9));
    CHECK(v == doctest::Approx(8.12).epsilon(2e-2));
  }
  SUBCASE("independent uniform phases match the wrapped-difference oracle") {
    // E|wrap(dphi)| = pi/2 for uniform independent phases
    Rng rng(1234);
    double acc = 0.0;
    const int n_frames = 10000;
    for (int i = 0; i < n_frames; ++i) {
      std::array<Eigen::VectorXcd, 4> frame;
      for (int c = 0; c < 4; ++c) {
        frame[c] = Eigen::VectorXcd::Zero(M);
        frame[c](bin) = std::polar(1.0, rng.uniform(0.0, 2.0 * M_PI));
      }
      acc += doppler_feature(frame, wavelength, cfg.T_c);
    }
    const double expected = wavelength / (4.0 * M_PI * cfg.T_c) * (M_PI / 2.0);
    CHECK(acc / n_frames == doctest::Approx(expected).epsilon(0.05));
  }
}

TEST_CASE("synthetic dataset: determinism and class geometry") {
  Dataset a = gen_synthetic_dataset(200, 20.0, 30.0, cfg, ifc, 77);
  Dataset b = gen_synthetic_dataset(200, 20.0, 30.0, cfg, ifc, 77);
  REQUIRE(a.samples.size() == b.samples.size());
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    CHECK(a.samples[i].x.power_ratio_R == b.samples[i].x.power_ratio_R);
    CHECK(a.samples[i].x.doppler_mag_V == b.samples[i].x.doppler_mag_V);
  }

  std::vector<double> sig_R, sig_V, intf_V;
  for (const auto& s : a.samples) {
    if (s.y == Label::Signal) {
      sig_R.push_back(s.x.power_ratio_R);
      sig_V.push_back(s.x.doppler_mag_V);
    } else {
      intf_V.push_back(s.x.doppler_mag_V);
    }
  }
  CHECK(median(sig_R) < 0.1);
  CHECK(median(intf_V) >= 5.0 * median(sig_V));
}

TEST_CASE("classifier separates separable clouds and respects scaling") {
  Dataset toy;
  Rng rng(5);
  for (int i = 0; i < 50; ++i) {
    toy.samples.push_back({{0.02 + 0.01 * rng.uniform(),
                            0.5 + 0.2 * rng.uniform(), false},
                           Label::Signal});
    toy.samples.push_back({{1.5 + 0.5 * rng.uniform(),
                            8.0 + 2.0 * rng.uniform(), false},
                           Label::Interference});
  }
  LinearClassifier clf = train_classifier(toy);
  CHECK(classifier_accuracy(clf, toy.samples) == doctest::Approx(1.0));

  SUBCASE("centroids classify to their own class") {
    CHECK(classify(clf, {0.025, 0.6, false}) == Label::Signal);
    CHECK(classify(clf, {1.75, 9.0, false}) == Label::Interference);
  }
  SUBCASE("decision invariant under positive feature rescaling") {
    for (std::uint64_t s = 0; s < 20; ++s) {
      Rng r2(mix_seed(99, s));
      const double a = r2.uniform(0.1, 10.0);
      const double b = r2.uniform(0.1, 10.0);
      Dataset scaled = toy;
      for (auto& smp : scaled.samples) {
        smp.x.power_ratio_R *= a;
        smp.x.doppler_mag_V *= b;
      }
      LinearClassifier clf2 = train_classifier(scaled);
      int mismatches = 0;
      for (std::size_t i = 0; i < toy.samples.size(); ++i) {
        FeatureVector fx = toy.samples[i].x;
        fx.power_ratio_R *= a;
        fx.doppler_mag_V *= b;
        if (classify(clf2, fx) != classify(clf, toy.samples[i].x))
          ++mismatches;
      }
      CHECK(mismatches == 0);
    }
  }
}

TEST_CASE("held-out accuracy on the synthetic problem") {
  // 80/20 split surrogate for the reported perfect hardware separation
  Dataset data = gen_synthetic_dataset(1250, 10.0, 30.0, cfg, ifc, 424242);
  Dataset train, test;
  train.seed = test.seed = data.seed;
  for (std::size_t i = 0; i < data.samples.size(); ++i) {
    if (i % 5 == 4)
      test.samples.push_back(data.samples[i]);
    else
      train.samples.push_back(data.samples[i]);
  }
  LinearClassifier clf = train_classifier(train);
  CHECK(classifier_accuracy(clf, test.samples) >= 0.98);
}

TEST_CASE("dataset text round trip") {
  Dataset a = gen_synthetic_dataset(25, 12.0, 28.0, cfg, ifc, 31);
  std::stringstream ss;
  write_dataset(ss, a);
  Dataset b = read_dataset(ss);
  CHECK(b.seed == a.seed);
  CHECK(b.snr_lo_db == a.snr_lo_db);
  CHECK(b.snr_hi_db == a.snr_hi_db);
  REQUIRE(b.samples.size() == a.samples.size());
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    CHECK(b.samples[i].y == a.samples[i].y);
    CHECK(b.samples[i].x.power_ratio_R ==
          doctest::Approx(a.samples[i].x.power_ratio_R).epsilon(1e-15));
    CHECK(b.samples[i].x.doppler_mag_V ==
          doctest::Approx(a.samples[i].x.doppler_mag_V).epsilon(1e-15));
  }
}
