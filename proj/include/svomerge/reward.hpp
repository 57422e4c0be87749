#pragma once

#include <vector>

#include "svomerge/config.hpp"

namespace svo {

// Social-value-orientation weighting of the reward components, plus the
// distance-kernel coefficients of the sympathy term.
struct SvoWeights {
  double lambda_e = 1.0;
  double lambda_c = 1.0;
  double lambda_s = 1.0;
  double eta = 1.0;
  double psi = 1.0;

  static SvoWeights from_config(const RewardConfig& r) {
    return {r.lambda_e, r.lambda_c, r.lambda_s, r.eta, r.psi};
  }
};

struct RewardBreakdown {
  double ego = 0.0;
  double coop = 0.0;  // aggregated allied utility
  double symp = 0.0;  // aggregated human + mission utility
  double total = 0.0;
};

// Local driving-performance reward: normalized speed, minus a jerk cost on
// the change in commanded acceleration, minus a crash penalty.
double egoistic_reward(double speed, double delta_accel, bool crashed_this_step,
                       const RewardConfig& cfg);

// Aggregate of the visible allies' own egoistic rewards (self excluded by
// the caller). Empty -> 0.
double cooperative_reward(const std::vector<double>& ally_ego_rewards,
                          const RewardConfig& cfg);

// One sympathy target: a visible human-driven vehicle or the mission vehicle.
struct SympathyTarget {
  double speed = 0.0;      // m/s
  double distance = 0.0;   // center distance to the observer (m)
  bool mission_merged_now = false;  // carries the sparse mission bonus
};

// Sum of r^M + u / (eta * d^psi) over targets, aggregated per config.
double sympathetic_reward(const std::vector<SympathyTarget>& targets,
                          const SvoWeights& w, const RewardConfig& cfg);

// 1 exactly on the step the mission vehicle transitions Pending -> Merged.
double mission_reward(bool is_mission_vehicle, bool transitioned_to_merged);

RewardBreakdown total_reward(double ego, double coop, double symp,
                             const SvoWeights& w);

}  // namespace svo
