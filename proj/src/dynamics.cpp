#include "svomerge/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace svo {

const char* to_string(MetaAction a) {
  switch (a) {
    case MetaAction::LaneLeft: return "LANE_LEFT";
    case MetaAction::Idle: return "IDLE";
    case MetaAction::LaneRight: return "LANE_RIGHT";
    case MetaAction::Accelerate: return "FASTER";
    case MetaAction::Decelerate: return "SLOWER";
  }
  return "?";
}

VehicleState bicycle_step(const VehicleState& state, const ControlInput& u,
                          double dt, const BicycleParams& params) {
  if (dt < 0.0) throw std::invalid_argument("dt must be >= 0");
  if (dt == 0.0) return state;

  const auto& lim = params.limits;
  const double a = std::clamp(u.accel, lim.accel_min, lim.accel_max);
  const double steer = std::clamp(u.steer, -lim.steer_max, lim.steer_max);

  VehicleState next = state;
  const double v0 = state.speed;
  double v1 = std::clamp(v0 + a * dt, 0.0, lim.v_phys_max);
  // arc length actually covered, honoring the v >= 0 clamp
  double s;
  if (a < 0.0 && v0 + a * dt < 0.0) {
    s = v0 > 0.0 ? -v0 * v0 / (2.0 * a) : 0.0;  // distance to standstill
  } else if (a > 0.0 && v0 + a * dt > lim.v_phys_max) {
    const double t_cap = (lim.v_phys_max - v0) / a;
    s = v0 * t_cap + 0.5 * a * t_cap * t_cap + lim.v_phys_max * (dt - t_cap);
  } else {
    s = v0 * dt + 0.5 * a * dt * dt;
  }

  const double kappa = std::tan(steer) / params.wheelbase;  // path curvature
  const double h0 = state.world.heading;
  if (std::abs(kappa * s) < 1e-9) {
    next.world.x += s * std::cos(h0);
    next.world.y += s * std::sin(h0);
    next.world.heading = wrap_angle(h0 + kappa * s);
  } else {
    const double h1 = h0 + kappa * s;
    next.world.x += (std::sin(h1) - std::sin(h0)) / kappa;
    next.world.y += (std::cos(h0) - std::cos(h1)) / kappa;
    next.world.heading = wrap_angle(h1);
  }
  next.speed = v1;
  next.accel = a;
  return next;
}

VehicleState apply_meta_action(MetaAction action, const VehicleState& state,
                               const RoadNetwork& road,
                               const MetaActionParams& params) {
  VehicleState next = state;
  switch (action) {
    case MetaAction::Idle:
      break;
    case MetaAction::Accelerate:
      next.target_speed = std::clamp(state.target_speed + params.delta_v, 0.0,
                                     params.target_speed_max);
      break;
    case MetaAction::Decelerate:
      next.target_speed = std::clamp(state.target_speed - params.delta_v, 0.0,
                                     params.target_speed_max);
      break;
    case MetaAction::LaneLeft:
    case MetaAction::LaneRight: {
      const int dir = action == MetaAction::LaneLeft ? -1 : +1;
      const int want = state.target_lane + dir;
      const auto lanes = road.reachable_lanes(state.frenet.lane_index, state.frenet.l);
      if (std::find(lanes.begin(), lanes.end(), want) != lanes.end())
        next.target_lane = want;
      break;
    }
  }
  return next;
}

ControlInput pid_track(VehicleState& state, const RoadNetwork& road, double dt,
                       const PidGains& gains, const BicycleParams& params) {
  const auto& limits = params.limits;
  ControlInput u;

  // longitudinal: PI(D) on speed error
  const double ev = state.target_speed - state.speed;
  state.pid_speed_integral = std::clamp(state.pid_speed_integral + ev * dt,
                                        -gains.integral_cap, gains.integral_cap);
  u.accel = gains.kp_speed * ev + gains.ki_speed * state.pid_speed_integral;
  u.accel = std::clamp(u.accel, limits.accel_min, limits.accel_max);

  // lateral: course command from lateral offset, steering from heading error
  const double target_d = road.lane_center_d(state.target_lane, state.frenet.l);
  const double ed = target_d - state.frenet.d;
  const double v_eff = std::max(state.speed, gains.v_floor);
  const double course_ref =
      std::clamp(gains.kp_lat * ed / v_eff, -gains.course_max, gains.course_max);
  const double heading_ref = road.tangent_heading(state.frenet.l) + course_ref;
  const double eh = wrap_angle(heading_ref - state.world.heading);
  // match heading rate kp_head*eh through v*tan(steer)/L
  const double steer_raw = std::atan(gains.kp_head * eh * params.wheelbase / v_eff);
  u.steer = std::clamp(steer_raw, -limits.steer_max, limits.steer_max);
  return u;
}

}  // namespace svo
