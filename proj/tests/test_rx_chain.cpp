#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "radarnet/rx_chain.hpp"

using namespace radarnet;

namespace {
ChirpConfig cfg;
IFConfig ifc;
}

TEST_CASE("empty scene synthesizes silence and no target") {
  DechirpScene scene;
  SampledSignal s = synth_if_output(scene, cfg, ifc);
  CHECK(s.samples.cwiseAbs().maxCoeff() == 0.0);
  RangeEstimate est = estimate_range(s, cfg, ifc);
  CHECK_FALSE(est.found);
}

TEST_CASE("single target produces the beat tone S*tau and 15 m estimate") {
  DechirpScene scene;
  scene.target = TargetEcho{1.0e-7, 1.0, 0.0};  // 15 m round trip
  SampledSignal s = synth_if_output(scene, cfg, ifc);
  RangeEstimate est = estimate_range(s, cfg, ifc);
  REQUIRE(est.found);
  // beat = 2.9982e13 * 1e-7 = 2.9982 MHz -> d = c*f/(2S) ~ 14.99 m
  const double d_true = 0.5 * kLightSpeed * 1.0e-7;
  const double bin_width_m =
      0.5 * kLightSpeed * (ifc.fs / ifc.n_samples_M) / cfg.slope_S;
  CHECK(std::abs(est.distance - d_true) <= bin_width_m);
}

TEST_CASE("equal-slope interferer adds exactly a second tone") {
  DechirpScene scene;
  scene.target = TargetEcho{1.0e-7, 1.0, 0.0};
  InterfererTone tone;
  tone.offset_tau_prime = 7.0 / (0.5 * kLightSpeed) ;  // 7 m equivalent
  tone.slope_delta = 0.0;
  tone.amp_A2 = 0.5;
  scene.interferers.push_back(tone);
  SampledSignal s = synth_if_output(scene, cfg, ifc);
  Eigen::VectorXcd spec = spectrum(s, ifc.n_samples_M);

  const double bin_hz = ifc.fs / ifc.n_samples_M;
  const int bin_target = static_cast<int>(
      std::lround(cfg.slope_S * 1.0e-7 / bin_hz));
  const int bin_intf = static_cast<int>(
      std::lround(cfg.slope_S * tone.offset_tau_prime / bin_hz));
  // the two expected bins dominate every other positive-frequency bin
  double third = 0.0;
  for (int k = 0; k < ifc.n_samples_M / 2; ++k) {
    if (std::abs(k - bin_target) <= 1 || std::abs(k - bin_intf) <= 1) continue;
    third = std::max(third, std::abs(spec(k)));
  }
  CHECK(std::abs(spec(bin_target)) > 3.0 * third);
  CHECK(std::abs(spec(bin_intf)) > 3.0 * third);
  // strongest peak governs the single-target estimate
  RangeEstimate est = estimate_range(s, cfg, ifc);
  REQUIRE(est.found);
  CHECK(est.peak_bin == bin_target);
}

TEST_CASE("wrap_phase lands in (-pi, pi]") {
  CHECK(wrap_phase(0.0) == 0.0);
  CHECK(wrap_phase(M_PI) == doctest::Approx(M_PI));
  CHECK(wrap_phase(-M_PI) == doctest::Approx(M_PI));
  CHECK(wrap_phase(3.0 * M_PI) == doctest::Approx(M_PI));
  CHECK(wrap_phase(M_PI + 0.1) == doctest::Approx(-M_PI + 0.1));
}

TEST_CASE("velocity from phase steps") {
  const double wavelength = kLightSpeed / 77e9;  // 3.893 mm
  const double T_c = 60e-6;
  SUBCASE("constant phases give zero") {
    auto v = estimate_velocity({0.4, 0.4, 0.4, 0.4}, wavelength, T_c);
    REQUIRE(v.size() == 3);
    for (double vi : v) CHECK(vi == 0.0);
  }
  SUBCASE("quarter-turn step gives ~8.12 m/s") {
    auto v = estimate_velocity({0.0, M_PI / 2.0}, wavelength, T_c);
    REQUIRE(v.size() == 1);
    CHECK(v[0] == doctest::Approx(wavelength * (M_PI / 2.0) /
                                  (4.0 * M_PI * T_c)));
    CHECK(v[0] == doctest::Approx(8.12).epsilon(2e-2));
  }
  SUBCASE("step just above pi wraps to a negative velocity") {
    auto vpos = estimate_velocity({0.0, M_PI - 0.01}, wavelength, T_c);
    auto vneg = estimate_velocity({0.0, M_PI + 0.01}, wavelength, T_c);
    CHECK(vpos[0] > 0.0);
    CHECK(vneg[0] < 0.0);
  }
}

TEST_CASE("noiseless ranging error stays within one resolution cell") {
  // single-target range error <= c/(2 S T_c) across 100 random ranges
  const double res = kLightSpeed / (2.0 * cfg.slope_S * cfg.T_c);
  std::uint64_t state = 12345;
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    state = state * 6364136223846793005ULL + 1442695040888963407ULL;
    const double frac = (state >> 11) * 0x1.0p-53;
    // keep the beat inside the IF passband: d <= c*B/(2S) = 20 m
    const double d = 1.0 + frac * 17.0;
    DechirpScene scene;
    scene.target = TargetEcho{2.0 * d / kLightSpeed, 1.0, 0.0};
    RangeEstimate est =
        estimate_range(synth_if_output(scene, cfg, ifc), cfg, ifc);
    REQUIRE(est.found);
    worst = std::max(worst, std::abs(est.distance - d));
  }
  CHECK(worst <= res);
}
