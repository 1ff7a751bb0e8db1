#pragma once

#include <variant>
#include <vector>

#include <Eigen/Dense>

namespace bcuav::experiment {

using Vec2 = Eigen::Vector2d;

enum class Turn { Left, Right };

struct Straight {
  double length;
  Vec2 start;
  double heading;  // rad, counter-clockwise from +x
};

struct Arc {
  double length;
  double radius;
  Turn turn;
  Vec2 start;
  double heading;  // tangent heading at the start
};

using Segment = std::variant<Straight, Arc>;

struct Pose2 {
  Vec2 position;
  double heading;
};

Pose2 segment_start(const Segment& segment);
Pose2 segment_end(const Segment& segment);
double segment_length(const Segment& segment);

struct ReferencePoint {
  Eigen::Vector3d position;
  double heading;
  double altitude;
};

struct TrackProjection {
  double s = 0.0;          // arc length of the nearest point, in [0, total_length)
  Vec2 point = Vec2::Zero();
  double heading = 0.0;    // tangent heading at the nearest point
  double distance = 0.0;   // unsigned distance to the nearest point
  double cross_track = 0.0;  // signed, positive right of the direction of travel
};

/// Closed planar circuit flown at a fixed altitude.
class Trajectory {
 public:
  /// Throws std::invalid_argument unless consecutive segments join in
  /// position and heading and the last one ends where the first begins.
  Trajectory(std::vector<Segment> segments, double altitude);

  const std::vector<Segment>& segments() const { return segments_; }
  double total_length() const { return total_length_; }
  double altitude() const { return altitude_; }

  /// Point and tangent at arc length s, wrapped modulo the total length.
  ReferencePoint reference_at(double s) const;

  TrackProjection project(const Vec2& point) const;

  double cross_track_error(const Vec2& point) const { return project(point).cross_track; }

 private:
  std::vector<Segment> segments_;
  std::vector<double> offsets_;  // arc length at the start of each segment
  double altitude_;
  double total_length_ = 0.0;
};

inline constexpr double kClosureTolerance = 1e-9;

/// Stadium circuit starting at the origin heading +x: straight, semicircular
/// arc of radius arc_length / pi, straight back, closing arc.
Trajectory build_runway(double straight_length, double arc_length, double altitude, Turn turn = Turn::Left);

/// Unwrapped along-track progress of a moving point, measured from its first
/// projection. Each new projection is placed on the lap closest to the
/// previous one.
class ProgressTracker {
 public:
  explicit ProgressTracker(const Trajectory& track) : track_(&track) {}

  /// Returns progress after incorporating the new position.
  double update(const Vec2& position);

  double progress() const { return unwrapped_ - origin_; }
  double max_progress() const { return max_progress_; }

 private:
  const Trajectory* track_;
  bool started_ = false;
  double origin_ = 0.0;
  double unwrapped_ = 0.0;
  double max_progress_ = 0.0;
};

}  // namespace bcuav::experiment
