#pragma once

#include <cstdint>
#include <string>

#include "svomerge/geometry.hpp"

namespace svo {

enum class VehicleKind : std::uint8_t { AV, HV };

// High-level maneuvers, translated to continuous control by pid_track.
enum class MetaAction : std::uint8_t {
  LaneLeft = 0,
  Idle = 1,
  LaneRight = 2,
  Accelerate = 3,
  Decelerate = 4,
};
constexpr int kMetaActionCount = 5;
const char* to_string(MetaAction a);

struct ControlInput {
  double accel = 0.0;  // m/s^2
  double steer = 0.0;  // rad
};

struct ActuatorLimits {
  double accel_min = -5.0;   // m/s^2
  double accel_max = 3.0;    // m/s^2
  double steer_max = 0.3;    // rad
  double v_phys_max = 40.0;  // m/s
};

struct BicycleParams {
  double wheelbase = 2.8;  // m
  ActuatorLimits limits;
};

struct PidGains {
  double kp_speed = 1.2;
  double ki_speed = 0.05;
  double kd_speed = 0.0;
  double integral_cap = 4.0;    // anti-windup bound on the integral term (m/s * s)
  double kp_lat = 1.0;          // lateral position loop (1/s)
  double kp_head = 5.0;         // heading loop (1/s)
  double course_max = 0.35;     // clamp on commanded course offset (rad)
  double v_floor = 2.0;         // speed used in gains when nearly stopped (m/s)
};

struct MetaActionParams {
  double delta_v = 2.0;        // Accelerate/Decelerate target-speed step (m/s)
  double target_speed_max = 40.0;
};

struct VehicleState {
  int id = 0;
  VehicleKind kind = VehicleKind::HV;
  bool is_mission = false;

  FrenetPose frenet;
  WorldPose world;     // kept in sync with frenet by the env
  double speed = 0.0;  // m/s, never negative
  double accel = 0.0;  // last applied longitudinal command (m/s^2)

  double length = 5.0;  // m
  double width = 2.0;   // m

  double target_speed = 0.0;  // m/s
  int target_lane = 0;

  // controller and driver memory
  double pid_speed_integral = 0.0;
  double idm_desired_speed = 25.0;  // sampled per HV at spawn

  bool crashed = false;
  bool done = false;  // crashed or exited the road end
};

// One integration step of the kinematic bicycle model. Inputs are clamped to
// actuator limits; speed stays in [0, v_phys_max]. Constant-twist integration
// is exact for constant (accel, steer) over the step. dt == 0 returns the
// state unchanged; dt < 0 throws.
VehicleState bicycle_step(const VehicleState& state, const ControlInput& u,
                          double dt, const BicycleParams& params);

// Applies a meta-action to the vehicle's targets. Lane targets are clamped
// to lanes reachable from the current lane (the ramp is not enterable from
// the highway); speed targets are clamped to [0, target_speed_max].
VehicleState apply_meta_action(MetaAction action, const VehicleState& state,
                               const RoadNetwork& road,
                               const MetaActionParams& params);

// Closed-loop tracking of (target_speed, target_lane). Returns clamped
// commands; updates the integral state stored in `state`.
ControlInput pid_track(VehicleState& state, const RoadNetwork& road, double dt,
                       const PidGains& gains, const BicycleParams& params);

}  // namespace svo
