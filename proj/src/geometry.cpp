#include "svomerge/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace svo {

namespace {
constexpr double kDomainEps = 1e-9;
}

double wrap_angle(double a) {
  a = std::fmod(a, 2.0 * M_PI);
  if (a > M_PI) a -= 2.0 * M_PI;
  if (a <= -M_PI) a += 2.0 * M_PI;
  return a;
}

RoadNetwork::RoadNetwork(std::vector<SpineSegment> spine, const RoadConfig& cfg)
    : cfg_(cfg) {
  if (cfg.highway_lanes < 1) throw std::invalid_argument("highway_lanes must be >= 1");
  if (cfg.lane_width <= 0.0) throw std::invalid_argument("lane_width must be > 0");
  if (cfg.ramp_start >= cfg.ramp_end)
    throw std::invalid_argument("ramp_start must be < ramp_end");
  if (cfg.ramp_end - cfg.ramp_start <= 0.0)
    throw std::invalid_argument("ramp length must be > 0");
  if (cfg.ramp_gap < 0.0) throw std::invalid_argument("ramp_gap must be >= 0");
  if (spine.empty()) throw std::invalid_argument("spine must have segments");

  WorldPose cursor;  // spine starts at origin heading +x
  double l0 = 0.0;
  for (const auto& seg : spine) {
    if (seg.length <= 0.0) throw std::invalid_argument("segment length must be > 0");
    if (seg.kind == SpineSegment::Kind::Arc && seg.curvature == 0.0)
      throw std::invalid_argument("arc segment needs nonzero curvature");
    segments_.push_back({seg, l0, cursor});
    if (seg.kind == SpineSegment::Kind::Straight) {
      cursor.x += seg.length * std::cos(cursor.heading);
      cursor.y += seg.length * std::sin(cursor.heading);
    } else {
      const double r = 1.0 / seg.curvature;
      const double h1 = cursor.heading + seg.curvature * seg.length;
      // center lies at distance r along the left normal
      const double cx = cursor.x - r * std::sin(cursor.heading);
      const double cy = cursor.y + r * std::cos(cursor.heading);
      cursor.x = cx + r * std::sin(h1);
      cursor.y = cy - r * std::cos(h1);
      cursor.heading = wrap_angle(h1);
    }
    l0 += seg.length;
  }
  total_length_ = l0;
  if (cfg.road_length > total_length_ + kDomainEps)
    throw std::invalid_argument("spine shorter than configured road_length");
  if (cfg.ramp_end > total_length_ + kDomainEps)
    throw std::invalid_argument("road ends before the ramp terminus");
}

const RoadNetwork::SegmentGeom& RoadNetwork::segment_at(double l) const {
  if (l < -kDomainEps || l > total_length_ + kDomainEps)
    throw std::out_of_range("longitudinal position outside road domain");
  auto it = std::upper_bound(
      segments_.begin(), segments_.end(), l,
      [](double v, const SegmentGeom& s) { return v < s.l0; });
  if (it != segments_.begin()) --it;
  return *it;
}

bool RoadNetwork::lane_exists(int lane, double l) const {
  if (lane < 0 || lane > ramp_lane()) return false;
  if (lane < cfg_.highway_lanes) return true;
  return l <= cfg_.ramp_end + kDomainEps;
}

double RoadNetwork::lane_center_d(int lane, double l) const {
  if (!lane_exists(lane, l)) throw std::out_of_range("lane does not exist at l");
  if (lane < cfg_.highway_lanes) return -cfg_.lane_width * lane;
  // ramp: one lane width right of the rightmost highway lane, plus a gap
  // that closes linearly across the merge region
  double gap = cfg_.ramp_gap;
  if (l >= cfg_.ramp_end) {
    gap = 0.0;
  } else if (l > cfg_.ramp_start) {
    gap = cfg_.ramp_gap * (cfg_.ramp_end - l) / (cfg_.ramp_end - cfg_.ramp_start);
  }
  return -cfg_.lane_width * cfg_.highway_lanes - gap;
}

int RoadNetwork::nearest_lane(double l, double d) const {
  int best = 0;
  double best_dist = std::numeric_limits<double>::max();
  for (int lane = 0; lane <= ramp_lane(); ++lane) {
    if (!lane_exists(lane, l)) continue;
    const double dist = std::abs(d - lane_center_d(lane, l));
    if (dist < best_dist) {
      best_dist = dist;
      best = lane;
    }
  }
  return best;
}

std::vector<int> RoadNetwork::reachable_lanes(int lane, double l) const {
  std::vector<int> out;
  if (lane == ramp_lane()) {
    out.push_back(cfg_.highway_lanes - 1);
    if (lane_exists(lane, l)) out.push_back(lane);
    return out;
  }
  for (int i = 0; i < cfg_.highway_lanes; ++i) out.push_back(i);
  return out;
}

double RoadNetwork::right_edge_d(double l) const {
  const bool ramp = lane_exists(ramp_lane(), l);
  const double inner =
      ramp ? lane_center_d(ramp_lane(), l) : lane_center_d(cfg_.highway_lanes - 1, l);
  return inner - 0.5 * cfg_.lane_width;
}

double RoadNetwork::tangent_heading(double l) const {
  const auto& s = segment_at(l);
  const double ll = l - s.l0;
  if (s.seg.kind == SpineSegment::Kind::Straight) return s.start.heading;
  return wrap_angle(s.start.heading + s.seg.curvature * ll);
}

double RoadNetwork::curvature_at(double l) const {
  const auto& s = segment_at(l);
  return s.seg.kind == SpineSegment::Kind::Arc ? s.seg.curvature : 0.0;
}

WorldPose RoadNetwork::frenet_to_world(const FrenetPose& pose) const {
  const auto& s = segment_at(pose.l);
  const double ll = pose.l - s.l0;
  WorldPose out;
  if (s.seg.kind == SpineSegment::Kind::Straight) {
    const double ch = std::cos(s.start.heading), sh = std::sin(s.start.heading);
    out.x = s.start.x + ll * ch - pose.d * sh;
    out.y = s.start.y + ll * sh + pose.d * ch;
    out.heading = s.start.heading;
  } else {
    const double r = 1.0 / s.seg.curvature;
    const double cx = s.start.x - r * std::sin(s.start.heading);
    const double cy = s.start.y + r * std::cos(s.start.heading);
    const double h = s.start.heading + s.seg.curvature * ll;
    out.x = cx + (r - pose.d) * std::sin(h);
    out.y = cy - (r - pose.d) * std::cos(h);
    out.heading = wrap_angle(h);
  }
  return out;
}

FrenetPose RoadNetwork::world_to_frenet(const WorldPose& pose) const {
  // projection band: the drivable width plus a margin of two lane widths
  const double band = cfg_.lane_width * (cfg_.highway_lanes + 3) + cfg_.ramp_gap;
  double best_abs_d = std::numeric_limits<double>::max();
  FrenetPose best;
  bool found = false;
  for (const auto& s : segments_) {
    double ll, d;
    if (s.seg.kind == SpineSegment::Kind::Straight) {
      const double ch = std::cos(s.start.heading), sh = std::sin(s.start.heading);
      const double px = pose.x - s.start.x, py = pose.y - s.start.y;
      ll = px * ch + py * sh;
      d = -px * sh + py * ch;
    } else {
      const double r = 1.0 / s.seg.curvature;
      const double cx = s.start.x - r * std::sin(s.start.heading);
      const double cy = s.start.y + r * std::cos(s.start.heading);
      const double vx = pose.x - cx, vy = pose.y - cy;
      const double dist = std::hypot(vx, vy);
      if (dist < 1e-12) continue;  // at arc center: undefined projection
      d = r - (r > 0 ? dist : -dist);
      // sweep angle from segment start, measured in the turn direction
      const double a0 = std::atan2(s.start.y - cy, s.start.x - cx);
      const double a = std::atan2(vy, vx);
      double sweep = wrap_angle(a - a0);
      if (r > 0 && sweep < -kDomainEps) sweep += 2.0 * M_PI;
      if (r < 0 && sweep > kDomainEps) sweep -= 2.0 * M_PI;
      ll = std::abs(r) * std::abs(sweep);
    }
    if (ll < -1e-6 || ll > s.seg.length + 1e-6) continue;
    if (std::abs(d) > band) continue;
    if (std::abs(d) < best_abs_d) {
      best_abs_d = std::abs(d);
      const double l = std::clamp(s.l0 + ll, 0.0, total_length_);
      best = FrenetPose{l, d, 0};
      found = true;
    }
  }
  if (!found) throw std::out_of_range("point outside road projection band");
  best.lane_index = nearest_lane(best.l, best.d);
  return best;
}

RoadNetwork::FrenetVelocity RoadNetwork::frenet_velocity(double l, double d,
                                                         double heading,
                                                         double speed) const {
  const double dh = wrap_angle(heading - tangent_heading(l));
  const double k = curvature_at(l);
  const double denom = 1.0 - k * d;
  FrenetVelocity v;
  v.l_dot = speed * std::cos(dh) / (std::abs(denom) < 1e-6 ? 1e-6 : denom);
  v.d_dot = speed * std::sin(dh);
  return v;
}

RoadNetwork build_merge_scenario(const RoadConfig& cfg) {
  if (cfg.road_length <= 0.0) throw std::invalid_argument("road_length must be > 0");
  if (cfg.ramp_end >= cfg.road_length)
    throw std::invalid_argument("road must extend beyond the ramp terminus");
  std::vector<SpineSegment> spine{
      {SpineSegment::Kind::Straight, cfg.road_length, 0.0}};
  return RoadNetwork(std::move(spine), cfg);
}

}  // namespace svo
