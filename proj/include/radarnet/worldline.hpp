#ifndef RADARNET_WORLDLINE_HPP
#define RADARNET_WORLDLINE_HPP

#include <iosfwd>
#include <vector>

#include <Eigen/Dense>

namespace radarnet {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  bool valid() const { return lo <= hi; }
  double mid() const { return 0.5 * (lo + hi); }
  double width() const { return hi - lo; }
};

struct ObserverPose {
  double x = 0.0;
  double y = 0.0;
  double heading = 0.0;  // rad
};

// Space-time region of one interference report: angular interval (relative
// to the observer heading) x distance interval x time interval, plus a
// convex polygon over-approximating the annular sector.
struct UncertaintyCloud {
  int id = 0;
  ObserverPose observer;
  Interval angle;  // rad, relative to heading
  Interval dist;   // m
  Interval time;   // s
  std::vector<Eigen::Vector2d> polygon;  // convex, CCW
  Eigen::Vector2d centroid = Eigen::Vector2d::Zero();
};

UncertaintyCloud make_cloud(const Interval& angle, const Interval& dist,
                            const Interval& time, const ObserverPose& observer,
                            int id = 0);

// true if p lies in the convex polygon (boundary inclusive)
bool polygon_contains(const std::vector<Eigen::Vector2d>& poly,
                      const Eigen::Vector2d& p);

// Constant-velocity track explaining a set of clouds.
struct WorldLine {
  Eigen::Vector2d anchor = Eigen::Vector2d::Zero();  // position at t0
  double t0 = 0.0;
  Eigen::Vector2d velocity = Eigen::Vector2d::Zero();  // m/s
  std::vector<int> members;  // cloud ids

  Eigen::Vector2d position(double t) const {
    return anchor + velocity * (t - t0);
  }
};

// Greedy clustering: repeatedly take the earliest unassigned cloud,
// enumerate candidate constant-velocity lines through its centroid and each
// other unassigned centroid (plus the zero-velocity line), keep candidates
// with speed <= v_m, and claim the candidate hitting the most clouds. Ties
// break to smaller speed, then lower partner id. Output member sets
// partition the input.
std::vector<WorldLine> cluster_worldlines(
    const std::vector<UncertaintyCloud>& clouds, double v_m);

struct TruthSample {
  double t = 0.0;
  int vehicle_id = 0;
  double x = 0.0;
  double y = 0.0;
};

struct TrackErrorStats {
  std::vector<double> per_line_median;
  std::vector<double> per_line_mean;
  std::vector<double> pooled;  // one error per member cloud
  double pooled_median = 0.0;
  double pooled_mean = 0.0;
};

// Position error of each line at each member cloud's mid time, against the
// nearest true vehicle position at the nearest truth timestamp.
TrackErrorStats evaluate_tracks(const std::vector<WorldLine>& lines,
                                const std::vector<UncertaintyCloud>& clouds,
                                const std::vector<TruthSample>& truth);

// Delimited-text cloud list: one row per cloud with observer pose and the
// three interval bounds.
void write_clouds(std::ostream& os, const std::vector<UncertaintyCloud>& clouds);
std::vector<UncertaintyCloud> read_clouds(std::istream& is);

}  // namespace radarnet

#endif  // RADARNET_WORLDLINE_HPP
