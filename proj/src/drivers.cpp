#include "svomerge/drivers.hpp"

#include <algorithm>
#include <cmath>

namespace svo {

double idm_acceleration(double speed, const std::optional<CarAhead>& leader,
                        const IdmParams& p) {
  const double free_term =
      1.0 - std::pow(std::max(speed, 0.0) / p.desired_speed, p.exponent);
  double accel = p.max_accel * free_term;
  if (leader) {
    if (leader->gap <= 0.0) return -p.emergency_decel;
    const double dv = speed - leader->speed;
    const double s_star = p.jam_distance + speed * p.time_headway +
                          speed * dv / (2.0 * std::sqrt(p.max_accel * p.comfort_decel));
    const double ratio = std::max(s_star, 0.0) / leader->gap;
    accel = p.max_accel * (free_term - ratio * ratio);
  }
  return std::clamp(accel, -p.emergency_decel, p.max_accel);
}

double idm_equilibrium_gap(double speed, const IdmParams& p) {
  const double free_term = 1.0 - std::pow(speed / p.desired_speed, p.exponent);
  return (p.jam_distance + speed * p.time_headway) / std::sqrt(free_term);
}

namespace {

// acceleration of a follower if `ahead` were its leader
double follower_accel(const NeighborSet::Follower& f,
                      const std::optional<CarAhead>& ahead, const IdmParams& idm) {
  return idm_acceleration(f.speed, ahead, idm);
}

}  // namespace

LaneChange mobil_decide(double ego_speed, double ego_length,
                        const NeighborSet& neighbors, const IdmParams& idm,
                        const MobilParams& mobil) {
  const double a_ego_now = idm_acceleration(ego_speed, neighbors.current_leader, idm);

  struct Candidate {
    LaneChange dir;
    bool exists;
    const std::optional<CarAhead>* leader;
    const std::optional<NeighborSet::Follower>* follower;
  };
  const Candidate candidates[2] = {
      {LaneChange::ChangeLeft, neighbors.left_lane_exists, &neighbors.left_leader,
       &neighbors.left_follower},
      {LaneChange::ChangeRight, neighbors.right_lane_exists, &neighbors.right_leader,
       &neighbors.right_follower},
  };

  LaneChange best = LaneChange::KeepLane;
  double best_incentive = mobil.accel_gain_threshold;  // must strictly exceed
  for (const auto& c : candidates) {
    if (!c.exists) continue;

    // safety: the prospective new follower must not brake beyond b_safe,
    // and inserting into an overlap is never allowed
    if (c.follower->has_value()) {
      const auto& nf = c.follower->value();
      if (nf.gap <= 0.0) continue;
      const double a_nf_after =
          idm_acceleration(nf.speed, CarAhead{nf.gap, ego_speed}, idm);
      if (a_nf_after < -mobil.safe_decel) continue;
    }
    if (c.leader->has_value() && c.leader->value().gap <= 0.0) continue;

    const double a_ego_new = idm_acceleration(ego_speed, *c.leader, idm);
    double others_gain = 0.0;
    if (c.follower->has_value()) {
      const auto& nf = c.follower->value();
      const double before = follower_accel(nf, nf.own_leader, idm);
      const double after = idm_acceleration(nf.speed, CarAhead{nf.gap, ego_speed}, idm);
      others_gain += after - before;
    }
    if (neighbors.current_follower.has_value()) {
      const auto& of = neighbors.current_follower.value();
      const double before = idm_acceleration(of.speed, CarAhead{of.gap, ego_speed}, idm);
      // once the ego leaves, the old follower inherits the ego's leader
      std::optional<CarAhead> inherited;
      if (neighbors.current_leader) {
        inherited = CarAhead{of.gap + ego_length + neighbors.current_leader->gap,
                             neighbors.current_leader->speed};
      }
      const double after = idm_acceleration(of.speed, inherited, idm);
      others_gain += after - before;
    }

    const double incentive = (a_ego_new - a_ego_now) + mobil.politeness * others_gain;
    if (incentive > best_incentive) {
      best_incentive = incentive;
      best = c.dir;
    }
  }
  return best;
}

}  // namespace svo
