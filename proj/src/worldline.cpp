#include "radarnet/worldline.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "radarnet/stats.hpp"

namespace radarnet {

namespace {

Eigen::Vector2d dir(double angle) {
  return {std::cos(angle), std::sin(angle)};
}

constexpr double kGeomEps = 1e-9;

}  // namespace

UncertaintyCloud make_cloud(const Interval& angle, const Interval& dist,
                            const Interval& time, const ObserverPose& observer,
                            int id) {
  if (!angle.valid() || !dist.valid() || !time.valid())
    throw std::invalid_argument("make_cloud: empty interval");
  if (dist.lo < 0.0)
    throw std::invalid_argument("make_cloud: negative distance");
  if (angle.width() >= M_PI)
    throw std::invalid_argument("make_cloud: angular width must be < pi");

  UncertaintyCloud c;
  c.id = id;
  c.observer = observer;
  c.angle = angle;
  c.dist = dist;
  c.time = time;

  const double a_lo = observer.heading + angle.lo;
  const double a_hi = observer.heading + angle.hi;
  const double a_mid = 0.5 * (a_lo + a_hi);
  const double half = 0.5 * angle.width();
  const Eigen::Vector2d obs(observer.x, observer.y);

  // Four sector corners plus an apex on the mid ray at r_hi / cos(half):
  // the two outer edges are then tangent to the outer arc, so the polygon
  // contains the exact sector.
  const double apex_r = dist.hi / std::cos(half);
  c.polygon = {
      obs + dist.lo * dir(a_lo), obs + dist.hi * dir(a_lo),
      obs + apex_r * dir(a_mid), obs + dist.hi * dir(a_hi),
      obs + dist.lo * dir(a_hi),
  };
  c.centroid = obs + 0.5 * (dist.lo + dist.hi) * dir(a_mid);
  return c;
}

bool polygon_contains(const std::vector<Eigen::Vector2d>& poly,
                      const Eigen::Vector2d& p) {
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Eigen::Vector2d& a = poly[i];
    const Eigen::Vector2d& b = poly[(i + 1) % n];
    const Eigen::Vector2d e = b - a;
    const double cross = e.x() * (p.y() - a.y()) - e.y() * (p.x() - a.x());
    if (cross < -kGeomEps * (1.0 + e.norm())) return false;
  }
  return true;
}

namespace {

// separating-axis test between a convex CCW polygon and a segment
bool segment_intersects_convex(const std::vector<Eigen::Vector2d>& poly,
                               const Eigen::Vector2d& s0,
                               const Eigen::Vector2d& s1) {
  auto separated = [&](const Eigen::Vector2d& axis) {
    if (axis.squaredNorm() < 1e-24) return false;
    double pmin = std::numeric_limits<double>::infinity();
    double pmax = -pmin;
    for (const auto& v : poly) {
      const double d = axis.dot(v);
      pmin = std::min(pmin, d);
      pmax = std::max(pmax, d);
    }
    const double q0 = axis.dot(s0), q1 = axis.dot(s1);
    const double qmin = std::min(q0, q1), qmax = std::max(q0, q1);
    const double eps = kGeomEps * axis.norm() * (1.0 + std::abs(pmax) + std::abs(qmax));
    return qmin > pmax + eps || pmin > qmax + eps;
  };

  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Eigen::Vector2d e = poly[(i + 1) % n] - poly[i];
    if (separated({-e.y(), e.x()})) return false;
  }
  const Eigen::Vector2d se = s1 - s0;
  if (separated({-se.y(), se.x()})) return false;
  if (separated(se)) return false;
  return true;
}

bool line_hits_cloud(const WorldLine& line, const UncertaintyCloud& c) {
  const Eigen::Vector2d p0 = line.position(c.time.lo);
  const Eigen::Vector2d p1 = line.position(c.time.hi);
  return segment_intersects_convex(c.polygon, p0, p1);
}

}  // namespace

std::vector<WorldLine> cluster_worldlines(
    const std::vector<UncertaintyCloud>& clouds, double v_m) {
  if (!(v_m > 0.0)) throw std::invalid_argument("cluster_worldlines: v_m > 0");

  std::vector<std::size_t> unassigned(clouds.size());
  for (std::size_t i = 0; i < clouds.size(); ++i) unassigned[i] = i;

  std::vector<WorldLine> lines;
  while (!unassigned.empty()) {
    // earliest cloud by time lower bound; ties by id
    std::size_t e = unassigned[0];
    for (std::size_t i : unassigned) {
      if (clouds[i].time.lo < clouds[e].time.lo ||
          (clouds[i].time.lo == clouds[e].time.lo && clouds[i].id < clouds[e].id))
        e = i;
    }
    const Eigen::Vector2d anchor = clouds[e].centroid;
    const double t0 = clouds[e].time.mid();

    struct Candidate {
      Eigen::Vector2d velocity;
      int partner_id;
    };
    std::vector<Candidate> candidates;
    candidates.push_back({Eigen::Vector2d::Zero(), -1});
    for (std::size_t o : unassigned) {
      if (o == e) continue;
      const double dt = clouds[o].time.mid() - t0;
      if (std::abs(dt) < 1e-12) continue;
      const Eigen::Vector2d v = (clouds[o].centroid - anchor) / dt;
      if (v.norm() > v_m) continue;
      candidates.push_back({v, clouds[o].id});
    }

    WorldLine best;
    std::vector<std::size_t> best_hits;
    double best_speed = 0.0;
    int best_partner = 0;
    bool have_best = false;
    for (const auto& cand : candidates) {
      WorldLine wl;
      wl.anchor = anchor;
      wl.t0 = t0;
      wl.velocity = cand.velocity;
      std::vector<std::size_t> hits;
      for (std::size_t i : unassigned)
        if (line_hits_cloud(wl, clouds[i])) hits.push_back(i);
      const double speed = cand.velocity.norm();
      const bool better =
          !have_best || hits.size() > best_hits.size() ||
          (hits.size() == best_hits.size() &&
           (speed < best_speed ||
            (speed == best_speed && cand.partner_id < best_partner)));
      if (better) {
        best = wl;
        best_hits = hits;
        best_speed = speed;
        best_partner = cand.partner_id;
        have_best = true;
      }
    }

    // the zero-velocity candidate always hits the seed cloud itself
    for (std::size_t i : best_hits) best.members.push_back(clouds[i].id);
    lines.push_back(best);
    std::vector<std::size_t> rest;
    rest.reserve(unassigned.size() - best_hits.size());
    for (std::size_t i : unassigned)
      if (std::find(best_hits.begin(), best_hits.end(), i) == best_hits.end())
        rest.push_back(i);
    unassigned = std::move(rest);
  }
  return lines;
}

TrackErrorStats evaluate_tracks(const std::vector<WorldLine>& lines,
                                const std::vector<UncertaintyCloud>& clouds,
                                const std::vector<TruthSample>& truth) {
  TrackErrorStats stats;
  if (lines.empty() || truth.empty()) return stats;

  std::vector<const UncertaintyCloud*> by_id;
  int max_id = 0;
  for (const auto& c : clouds) max_id = std::max(max_id, c.id);
  by_id.assign(static_cast<std::size_t>(max_id) + 1, nullptr);
  for (const auto& c : clouds) by_id[static_cast<std::size_t>(c.id)] = &c;

  std::vector<TruthSample> sorted = truth;
  std::sort(sorted.begin(), sorted.end(),
            [](const TruthSample& a, const TruthSample& b) { return a.t < b.t; });

  auto nearest_error = [&](const Eigen::Vector2d& pos, double t) {
    auto it = std::lower_bound(
        sorted.begin(), sorted.end(), t,
        [](const TruthSample& s, double tv) { return s.t < tv; });
    double best_dt = std::numeric_limits<double>::infinity();
    if (it != sorted.end()) best_dt = std::abs(it->t - t);
    if (it != sorted.begin()) best_dt = std::min(best_dt, std::abs(std::prev(it)->t - t));
    double best = std::numeric_limits<double>::infinity();
    // scan both directions over samples sharing the nearest timestamp
    for (auto f = it; f != sorted.end() && std::abs(f->t - t) <= best_dt + 1e-9; ++f)
      best = std::min(best, (pos - Eigen::Vector2d(f->x, f->y)).norm());
    for (auto r = it; r != sorted.begin();) {
      --r;
      if (std::abs(r->t - t) > best_dt + 1e-9) break;
      best = std::min(best, (pos - Eigen::Vector2d(r->x, r->y)).norm());
    }
    return best;
  };

  for (const auto& line : lines) {
    std::vector<double> errs;
    for (int id : line.members) {
      const UncertaintyCloud* c =
          (id >= 0 && id <= max_id) ? by_id[static_cast<std::size_t>(id)] : nullptr;
      if (!c) continue;
      const double t = c->time.mid();
      const double err = nearest_error(line.position(t), t);
      if (std::isfinite(err)) {
        errs.push_back(err);
        stats.pooled.push_back(err);
      }
    }
    if (!errs.empty()) {
      stats.per_line_median.push_back(median(errs));
      stats.per_line_mean.push_back(mean(errs));
    }
  }
  if (!stats.pooled.empty()) {
    stats.pooled_median = median(stats.pooled);
    stats.pooled_mean = mean(stats.pooled);
  }
  return stats;
}

void write_clouds(std::ostream& os, const std::vector<UncertaintyCloud>& clouds) {
  os << "# radarnet clouds\n";
  os << "id obs_x obs_y heading ang_lo ang_hi dist_lo dist_hi t_lo t_hi\n";
  os.precision(17);
  for (const auto& c : clouds) {
    os << c.id << ' ' << c.observer.x << ' ' << c.observer.y << ' '
       << c.observer.heading << ' ' << c.angle.lo << ' ' << c.angle.hi << ' '
       << c.dist.lo << ' ' << c.dist.hi << ' ' << c.time.lo << ' ' << c.time.hi
       << '\n';
  }
}

std::vector<UncertaintyCloud> read_clouds(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line.rfind("# radarnet clouds", 0) != 0)
    throw std::runtime_error("read_clouds: bad header");
  std::getline(is, line);  // column header
  std::vector<UncertaintyCloud> out;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    int id;
    ObserverPose pose;
    Interval ang, dist, tim;
    if (!(ls >> id >> pose.x >> pose.y >> pose.heading >> ang.lo >> ang.hi >>
          dist.lo >> dist.hi >> tim.lo >> tim.hi))
      throw std::runtime_error("read_clouds: bad row");
    out.push_back(make_cloud(ang, dist, tim, pose, id));
  }
  return out;
}

}  // namespace radarnet
