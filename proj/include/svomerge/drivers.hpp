#pragma once

#include <optional>

#include "svomerge/dynamics.hpp"

namespace svo {

struct IdmParams {
  double desired_speed = 25.0;    // v0 (m/s); sampled per vehicle at spawn
  double time_headway = 1.5;      // T (s)
  double max_accel = 1.5;         // a (m/s^2)
  double comfort_decel = 2.0;     // b (m/s^2)
  double jam_distance = 2.0;      // s0 (m)
  double exponent = 4.0;
  double emergency_decel = 8.0;   // clamp floor when the gap closes (m/s^2)
};

struct MobilParams {
  double politeness = 0.3;        // p in [0, 1]
  double accel_gain_threshold = 0.2;  // m/s^2
  double safe_decel = 4.0;        // b_safe (m/s^2)
};

// A neighbor reduced to what IDM needs.
struct CarAhead {
  double gap;    // bumper-to-bumper (m); <= 0 means overlap
  double speed;  // m/s
};

// Intelligent-driver-model acceleration for a vehicle at `speed` with an
// optional leader. Output clamped to [-emergency_decel, max_accel];
// a non-positive gap returns the emergency value.
double idm_acceleration(double speed, const std::optional<CarAhead>& leader,
                        const IdmParams& params);

// Equilibrium gap at which a follower at `speed` behind an equal-speed leader
// holds zero acceleration (test oracle companion to idm_acceleration).
double idm_equilibrium_gap(double speed, const IdmParams& params);

enum class LaneChange { KeepLane, ChangeLeft, ChangeRight };

// Leaders/followers around the ego, per lane. `*_follower_gap` measure from
// the follower's front bumper to the ego's rear bumper.
struct NeighborSet {
  std::optional<CarAhead> current_leader;
  struct Follower {
    double gap;    // m, to ego rear bumper
    double speed;  // m/s
    std::optional<CarAhead> own_leader;  // what it follows before the change
  };
  std::optional<CarAhead> left_leader;
  std::optional<Follower> left_follower;
  std::optional<CarAhead> right_leader;
  std::optional<Follower> right_follower;
  std::optional<Follower> current_follower;
  bool left_lane_exists = false;
  bool right_lane_exists = false;
};

// MOBIL: change lanes when the politeness-weighted acceleration gain clears
// the threshold and the new follower is not forced below -safe_decel.
// Ties keep the lane.
LaneChange mobil_decide(double ego_speed, double ego_length,
                        const NeighborSet& neighbors, const IdmParams& idm,
                        const MobilParams& mobil);

}  // namespace svo
