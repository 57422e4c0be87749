#pragma once

#include <cstddef>
#include <vector>

namespace svo {

struct WorldPose {
  double x = 0.0;
  double y = 0.0;
  double heading = 0.0;  // rad, global frame
};

struct FrenetPose {
  double l = 0.0;      // arc length along the spine (m)
  double d = 0.0;      // lateral offset, positive to the left of the spine (m)
  int lane_index = 0;  // 0 = leftmost highway lane
};

// One piece of the road spine. Arcs turn left for curvature > 0.
struct SpineSegment {
  enum class Kind { Straight, Arc };
  Kind kind = Kind::Straight;
  double length = 0.0;     // m
  double curvature = 0.0;  // 1/m, 0 for straight
};

// Geometry slice of the scenario configuration.
struct RoadConfig {
  int highway_lanes = 2;
  double road_length = 500.0;  // m
  double ramp_start = 250.0;   // merge region begin (m)
  double ramp_end = 400.0;     // ramp terminus = merge point (m)
  double lane_width = 4.0;     // m
  double ramp_gap = 2.0;       // extra centerline separation before the merge region (m)
};

// Immutable road: a spine (piecewise straight/arc) plus parallel lanes.
// Highway lanes 0..H-1 run the full length; the ramp lane (index H) exists
// for l in [0, ramp_end] and its centerline converges toward the rightmost
// highway lane across the merge region [ramp_start, ramp_end].
class RoadNetwork {
 public:
  RoadNetwork(std::vector<SpineSegment> spine, const RoadConfig& cfg);

  double length() const { return total_length_; }
  int highway_lanes() const { return cfg_.highway_lanes; }
  int lane_count() const { return cfg_.highway_lanes + 1; }  // incl. ramp
  int ramp_lane() const { return cfg_.highway_lanes; }
  double lane_width() const { return cfg_.lane_width; }
  double merge_start_l() const { return cfg_.ramp_start; }
  double merge_end_l() const { return cfg_.ramp_end; }
  double merge_point_l() const { return cfg_.ramp_end; }
  const RoadConfig& config() const { return cfg_; }

  bool lane_exists(int lane, double l) const;
  // Lateral centerline position of a lane at longitudinal l.
  double lane_center_d(int lane, double l) const;
  // Lane whose centerline is nearest to d among lanes existing at l.
  int nearest_lane(double l, double d) const;
  // Lanes a vehicle in `lane` may target at l. The ramp is never a target
  // from the highway; from the ramp the only other target is the adjacent
  // highway lane.
  std::vector<int> reachable_lanes(int lane, double l) const;

  // Spine queries. l outside [0, length] throws.
  double tangent_heading(double l) const;
  double curvature_at(double l) const;

  WorldPose frenet_to_world(const FrenetPose& pose) const;
  FrenetPose world_to_frenet(const WorldPose& pose) const;

  // Frenet velocity components of a vehicle at (l, d) moving with `speed`
  // along `heading`.
  struct FrenetVelocity {
    double l_dot;
    double d_dot;
  };
  FrenetVelocity frenet_velocity(double l, double d, double heading,
                                 double speed) const;

  // Half-width of the drivable band at l, measured from the leftmost lane
  // edge to the ramp's outer edge (used for projection limits and the road
  // layout observation plane).
  double left_edge_d() const { return 0.5 * cfg_.lane_width; }
  double right_edge_d(double l) const;

 private:
  struct SegmentGeom {
    SpineSegment seg;
    double l0;  // cumulative arc length at segment start
    WorldPose start;
  };
  const SegmentGeom& segment_at(double l) const;

  RoadConfig cfg_;
  std::vector<SegmentGeom> segments_;
  double total_length_ = 0.0;
};

// Builds the straight highway-plus-ramp scenario from config.
// Throws std::invalid_argument on non-positive lengths, zero lanes, or a
// ramp that does not fit inside the road.
RoadNetwork build_merge_scenario(const RoadConfig& cfg);

double wrap_angle(double a);  // to (-pi, pi]

}  // namespace svo
