#include "svomerge/reward.hpp"

#include <algorithm>
#include <cmath>

namespace svo {

double egoistic_reward(double speed, double delta_accel, bool crashed_this_step,
                       const RewardConfig& cfg) {
  const double v_term = std::clamp(speed / cfg.v_norm, 0.0, 1.0);
  const double jerk_term = std::abs(delta_accel) / cfg.jerk_norm;
  return cfg.w_speed * v_term - cfg.w_jerk * jerk_term -
         (crashed_this_step ? cfg.w_crash : 0.0);
}

double cooperative_reward(const std::vector<double>& ally_ego_rewards,
                          const RewardConfig& cfg) {
  if (ally_ego_rewards.empty()) return 0.0;
  double sum = 0.0;
  for (double r : ally_ego_rewards) sum += r;
  return cfg.aggregate == "mean" ? sum / ally_ego_rewards.size() : sum;
}

double sympathetic_reward(const std::vector<SympathyTarget>& targets,
                          const SvoWeights& w, const RewardConfig& cfg) {
  if (targets.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& t : targets) {
    const double u = std::clamp(t.speed / cfg.v_norm, 0.0, 1.0);
    const double d = std::max(t.distance, cfg.d_floor);
    sum += (t.mission_merged_now ? 1.0 : 0.0) + u / (w.eta * std::pow(d, w.psi));
  }
  return cfg.aggregate == "mean" ? sum / targets.size() : sum;
}

double mission_reward(bool is_mission_vehicle, bool transitioned_to_merged) {
  return (is_mission_vehicle && transitioned_to_merged) ? 1.0 : 0.0;
}

RewardBreakdown total_reward(double ego, double coop, double symp,
                             const SvoWeights& w) {
  RewardBreakdown b;
  b.ego = ego;
  b.coop = coop;
  b.symp = symp;
  b.total = w.lambda_e * ego + w.lambda_c * coop + w.lambda_s * symp;
  return b;
}

}  // namespace svo
