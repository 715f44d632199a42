#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "radarnet/rng.hpp"
#include "radarnet/worldline.hpp"

using namespace radarnet;

namespace {

// cloud centred on a world point, as seen from an observer at the origin
UncertaintyCloud cloud_at(const Eigen::Vector2d& p, double t, int id,
                          double ang_half = 0.06, double rel_dist = 0.1,
                          double t_half = 0.2) {
  ObserverPose obs{0.0, 0.0, 0.0};
  const double ang = std::atan2(p.y(), p.x());
  const double d = p.norm();
  return make_cloud({ang - ang_half, ang + ang_half},
                    {d * (1.0 - rel_dist), d * (1.0 + rel_dist)},
                    {t - t_half, t + t_half}, obs, id);
}

}  // namespace

TEST_CASE("make_cloud geometry") {
  SUBCASE("centre of the sector is inside the polygon") {
    ObserverPose obs{0.0, 0.0, 0.0};
    const double deg = M_PI / 180.0;
    UncertaintyCloud c = make_cloud({-5.0 * deg, 5.0 * deg}, {90.0, 110.0},
                                    {0.0, 1.0}, obs, 1);
    CHECK(polygon_contains(c.polygon, {100.0, 0.0}));
  }
  SUBCASE("zero-width intervals give a degenerate point cloud") {
    ObserverPose obs{2.0, 3.0, 0.5};
    UncertaintyCloud c =
        make_cloud({0.1, 0.1}, {50.0, 50.0}, {7.0, 7.0}, obs, 2);
    const Eigen::Vector2d expected{2.0 + 50.0 * std::cos(0.6),
                                   3.0 + 50.0 * std::sin(0.6)};
    CHECK((c.centroid - expected).norm() < 1e-9);
    CHECK(polygon_contains(c.polygon, expected));
  }
  SUBCASE("invalid intervals are rejected") {
    ObserverPose obs{0, 0, 0};
    CHECK_THROWS(make_cloud({0.2, 0.1}, {10.0, 20.0}, {0.0, 1.0}, obs));
    CHECK_THROWS(make_cloud({0.0, 0.1}, {-5.0, 20.0}, {0.0, 1.0}, obs));
  }
  SUBCASE("random sector samples all fall inside the polygon") {
    ObserverPose obs{-3.0, 8.0, 1.1};
    UncertaintyCloud c =
        make_cloud({-0.4, 0.25}, {40.0, 90.0}, {0.0, 1.0}, obs, 3);
    Rng rng(55);
    for (int i = 0; i < 1000; ++i) {
      const double a = rng.uniform(-0.4, 0.25) + obs.heading;
      const double r = rng.uniform(40.0, 90.0);
      const Eigen::Vector2d p{obs.x + r * std::cos(a),
                              obs.y + r * std::sin(a)};
      CHECK(polygon_contains(c.polygon, p));
      if (!polygon_contains(c.polygon, p)) break;
    }
  }
}

TEST_CASE("single cloud becomes one zero-velocity line") {
  std::vector<UncertaintyCloud> clouds{cloud_at({50.0, 10.0}, 1.0, 0)};
  auto lines = cluster_worldlines(clouds, 30.0);
  REQUIRE(lines.size() == 1);
  CHECK(lines[0].velocity.norm() == 0.0);
  REQUIRE(lines[0].members.size() == 1);
  CHECK(lines[0].members[0] == 0);
}

TEST_CASE("constant-velocity track with outliers") {
  // 5 clouds along x(t) = (30 + 10 t, 40), 2 outliers far away
  std::vector<UncertaintyCloud> clouds;
  for (int k = 0; k < 5; ++k) {
    const double t = 1.0 + k;
    clouds.push_back(cloud_at({30.0 + 10.0 * t, 40.0}, t, k));
  }
  clouds.push_back(cloud_at({-200.0, -310.0}, 2.0, 5, 0.03, 0.05, 0.05));
  clouds.push_back(cloud_at({250.0, -390.0}, 14.0, 6, 0.03, 0.05, 0.05));

  auto lines = cluster_worldlines(clouds, 30.0);
  REQUIRE_FALSE(lines.empty());
  // the first line (earliest anchor cloud) covers all 5 constructed clouds
  REQUIRE(lines[0].members.size() >= 5);
  for (int k = 0; k < 5; ++k)
    CHECK(std::find(lines[0].members.begin(), lines[0].members.end(), k) !=
          lines[0].members.end());

  // partition property: each cloud appears in exactly one line
  std::vector<int> seen(clouds.size(), 0);
  for (const auto& wl : lines)
    for (int m : wl.members) seen[static_cast<std::size_t>(m)]++;
  for (int s : seen) CHECK(s == 1);
}

TEST_CASE("speed limit forces separate lines") {
  std::vector<UncertaintyCloud> clouds{
      cloud_at({10.0, 0.0}, 0.0, 0, 0.02, 0.02, 0.01),
      cloud_at({10.0 + 2.0 * 30.0, 0.0}, 1.0, 1, 0.02, 0.02, 0.01)};
  auto lines = cluster_worldlines(clouds, 30.0 * 0.9);
  REQUIRE(lines.size() == 2);
  CHECK(lines[0].members.size() == 1);
  CHECK(lines[1].members.size() == 1);
}

TEST_CASE("all output lines respect the speed bound") {
  Rng rng(321);
  std::vector<UncertaintyCloud> clouds;
  for (int i = 0; i < 60; ++i) {
    const Eigen::Vector2d p{rng.uniform(-300.0, 300.0),
                            rng.uniform(-300.0, 300.0)};
    clouds.push_back(cloud_at(p, rng.uniform(0.0, 60.0), i));
  }
  const double v_m = 25.0;
  auto lines = cluster_worldlines(clouds, v_m);
  std::size_t members = 0;
  for (const auto& wl : lines) {
    CHECK(wl.velocity.norm() <= v_m + 1e-9);
    members += wl.members.size();
  }
  CHECK(members == clouds.size());
}

TEST_CASE("track evaluation: exact truth and translation oracle") {
  // one line moving at (10, 0), clouds along it, truth on the same path
  std::vector<UncertaintyCloud> clouds;
  std::vector<TruthSample> truth;
  for (int k = 0; k < 5; ++k) {
    const double t = 1.0 + k;
    clouds.push_back(cloud_at({30.0 + 10.0 * t, 40.0}, t, k));
    truth.push_back({t, 7, 30.0 + 10.0 * t, 40.0});
  }
  WorldLine wl;
  wl.anchor = {40.0, 40.0};
  wl.t0 = 1.0;
  wl.velocity = {10.0, 0.0};
  for (int k = 0; k < 5; ++k) wl.members.push_back(k);

  auto stats = evaluate_tracks({wl}, clouds, truth);
  CHECK(stats.pooled_median == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(stats.pooled_mean == doctest::Approx(0.0).epsilon(1e-12));

  std::vector<TruthSample> shifted = truth;
  for (auto& s : shifted) s.x += 30.0, s.y += 40.0;  // offset 50 m
  auto stats2 = evaluate_tracks({wl}, clouds, shifted);
  CHECK(stats2.pooled_median == doctest::Approx(50.0).epsilon(0.02));
}

TEST_CASE("cloud list text round trip") {
  std::vector<UncertaintyCloud> clouds;
  for (int i = 0; i < 7; ++i)
    clouds.push_back(cloud_at({20.0 + 3.0 * i, -10.0 + 2.0 * i}, 0.5 * i, i));
  std::stringstream ss;
  write_clouds(ss, clouds);
  auto back = read_clouds(ss);
  REQUIRE(back.size() == clouds.size());
  for (std::size_t i = 0; i < clouds.size(); ++i) {
    CHECK(back[i].id == clouds[i].id);
    CHECK(back[i].angle.lo == doctest::Approx(clouds[i].angle.lo).epsilon(1e-12));
    CHECK(back[i].dist.hi == doctest::Approx(clouds[i].dist.hi).epsilon(1e-12));
    CHECK(back[i].time.lo == doctest::Approx(clouds[i].time.lo).epsilon(1e-12));
    CHECK((back[i].centroid - clouds[i].centroid).norm() < 1e-9);
  }
}
