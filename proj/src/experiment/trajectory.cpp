#include "bcuav/experiment/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "bcuav/plant/quadrotor.hpp"

namespace bcuav::experiment {

namespace {

using plant::wrap_angle;

double turn_sign(Turn turn) { return turn == Turn::Left ? 1.0 : -1.0; }

Vec2 direction(double heading) { return {std::cos(heading), std::sin(heading)}; }

Vec2 arc_center(const Arc& arc) {
  const double sign = turn_sign(arc.turn);
  return arc.start + sign * arc.radius * Vec2(-std::sin(arc.heading), std::cos(arc.heading));
}

Pose2 pose_at(const Segment& segment, double local_s) {
  if (const auto* line = std::get_if<Straight>(&segment)) {
    return {line->start + local_s * direction(line->heading), line->heading};
  }
  const auto& arc = std::get<Arc>(segment);
  const double sign = turn_sign(arc.turn);
  const double start_angle = arc.heading - sign * std::numbers::pi / 2.0;
  const double swept = sign * local_s / arc.radius;
  const double angle = start_angle + swept;
  return {arc_center(arc) + arc.radius * Vec2(std::cos(angle), std::sin(angle)), arc.heading + swept};
}

struct LocalProjection {
  double local_s;
  Pose2 pose;
};

LocalProjection project_local(const Segment& segment, const Vec2& p) {
  if (const auto* line = std::get_if<Straight>(&segment)) {
    const double along = (p - line->start).dot(direction(line->heading));
    const double s = std::clamp(along, 0.0, line->length);
    return {s, pose_at(segment, s)};
  }
  const auto& arc = std::get<Arc>(segment);
  const double sign = turn_sign(arc.turn);
  const Vec2 v = p - arc_center(arc);
  const double start_angle = arc.heading - sign * std::numbers::pi / 2.0;
  const double span = arc.length / arc.radius;
  double rel = 0.0;
  if (v.squaredNorm() > 0.0) {
    rel = sign * wrap_angle(std::atan2(v.y(), v.x()) - start_angle);
    if (rel < 0.0 && rel + 2.0 * std::numbers::pi <= span) rel += 2.0 * std::numbers::pi;
  }
  if (rel >= 0.0 && rel <= span) {
    const double s = rel * arc.radius;
    return {s, pose_at(segment, s)};
  }
  const Pose2 first = pose_at(segment, 0.0);
  const Pose2 last = pose_at(segment, arc.length);
  if ((p - first.position).squaredNorm() <= (p - last.position).squaredNorm()) return {0.0, first};
  return {arc.length, last};
}

}  // namespace

double segment_length(const Segment& segment) {
  return std::visit([](const auto& s) { return s.length; }, segment);
}

Pose2 segment_start(const Segment& segment) { return pose_at(segment, 0.0); }

Pose2 segment_end(const Segment& segment) { return pose_at(segment, segment_length(segment)); }

Trajectory::Trajectory(std::vector<Segment> segments, double altitude)
    : segments_(std::move(segments)), altitude_(altitude) {
  if (segments_.empty()) throw std::invalid_argument("trajectory needs at least one segment");
  for (std::size_t i = 0; i < segments_.size(); ++i) {
    if (!(segment_length(segments_[i]) > 0.0)) throw std::invalid_argument("segment lengths must be positive");
    if (const auto* arc = std::get_if<Arc>(&segments_[i]); arc && !(arc->radius > 0.0)) {
      throw std::invalid_argument("arc radius must be positive");
    }
    const Pose2 end = segment_end(segments_[i]);
    const Pose2 next = segment_start(segments_[(i + 1) % segments_.size()]);
    const double scale = std::max(1.0, end.position.norm());
    if ((end.position - next.position).norm() > kClosureTolerance * scale ||
        std::abs(wrap_angle(end.heading - next.heading)) > kClosureTolerance) {
      throw std::invalid_argument("trajectory segments are not tangent-continuous and closed");
    }
    offsets_.push_back(total_length_);
    total_length_ += segment_length(segments_[i]);
  }
}

ReferencePoint Trajectory::reference_at(double s) const {
  double wrapped = std::fmod(s, total_length_);
  if (wrapped < 0.0) wrapped += total_length_;
  std::size_t i = segments_.size() - 1;
  for (std::size_t k = 1; k < segments_.size(); ++k) {
    if (wrapped < offsets_[k]) {
      i = k - 1;
      break;
    }
  }
  const Pose2 pose = pose_at(segments_[i], wrapped - offsets_[i]);
  return {{pose.position.x(), pose.position.y(), altitude_}, pose.heading, altitude_};
}

TrackProjection Trajectory::project(const Vec2& point) const {
  TrackProjection best;
  double best_sq = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < segments_.size(); ++i) {
    const LocalProjection local = project_local(segments_[i], point);
    const double sq = (point - local.pose.position).squaredNorm();
    if (sq < best_sq) {
      best_sq = sq;
      best.s = std::fmod(offsets_[i] + local.local_s, total_length_);
      best.point = local.pose.position;
      best.heading = local.pose.heading;
    }
  }
  best.distance = std::sqrt(best_sq);
  const Vec2 d = point - best.point;
  const Vec2 t = direction(best.heading);
  const double left = t.x() * d.y() - t.y() * d.x();
  best.cross_track = left > 0.0 ? -best.distance : best.distance;
  return best;
}

Trajectory build_runway(double straight_length, double arc_length, double altitude, Turn turn) {
  if (!(straight_length > 0.0) || !(arc_length > 0.0)) {
    throw std::invalid_argument("runway straight and arc lengths must be positive");
  }
  const double radius = arc_length / std::numbers::pi;
  const double sign = turn_sign(turn);
  const Vec2 origin = Vec2::Zero();
  const Vec2 far_end = origin + straight_length * Vec2::UnitX();
  const Vec2 lateral = sign * 2.0 * radius * Vec2::UnitY();

  std::vector<Segment> segments;
  segments.emplace_back(Straight{straight_length, origin, 0.0});
  segments.emplace_back(Arc{arc_length, radius, turn, far_end, 0.0});
  segments.emplace_back(Straight{straight_length, far_end + lateral, std::numbers::pi});
  segments.emplace_back(Arc{arc_length, radius, turn, origin + lateral, std::numbers::pi});
  return Trajectory(std::move(segments), altitude);
}

double ProgressTracker::update(const Vec2& position) {
  const double raw = track_->project(position).s;
  const double length = track_->total_length();
  if (!started_) {
    started_ = true;
    origin_ = raw;
    unwrapped_ = raw;
  } else {
    const double laps = std::round((unwrapped_ - raw) / length);
    unwrapped_ = raw + laps * length;
  }
  max_progress_ = std::max(max_progress_, progress());
  return progress();
}

}  // namespace bcuav::experiment
