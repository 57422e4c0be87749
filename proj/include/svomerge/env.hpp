#pragma once

#include <map>
#include <memory>
#include <vector>

#include "svomerge/config.hpp"
#include "svomerge/episode_log.hpp"
#include "svomerge/observe.hpp"
#include "svomerge/reward.hpp"
#include "svomerge/world.hpp"

namespace svo {

struct StepOutcome {
  std::map<int, RewardBreakdown> rewards;  // per agent acting this step
  std::vector<CollisionEvent> collisions;  // new events this step
  MissionStatus mission = MissionStatus::Pending;
  bool mission_merged_now = false;
  bool terminal = false;
};

// Oriented-rectangle overlap (separating axis test).
bool footprints_overlap(const VehicleState& a, const VehicleState& b);

// All pairwise collisions among live vehicles.
std::vector<CollisionEvent> check_collision(const WorldState& world);

// Unlatched mission rule: Merged when centered in a highway lane, Failed on
// crash or on entering the forced-stop zone at the ramp terminus.
MissionStatus instantaneous_mission_status(const WorldState& world,
                                           const RoadNetwork& road,
                                           const EnvConfig& cfg);

// Episode lifecycle of the merging scenario. One Env runs one episode at a
// time; episodes across seeds are independent.
class Env {
 public:
  explicit Env(Config cfg);

  // Spawns vehicles from clipped Gaussians; deterministic per seed. Throws
  // std::runtime_error when no collision-free placement exists within the
  // configured attempts.
  void reset(std::uint64_t seed);

  // One 1 Hz decision step. `actions` must contain exactly the live agents.
  StepOutcome step(const std::map<int, MetaAction>& actions);

  PerceptionSet perception(int observer) const;
  VelocityMap observe_agent(int observer) const;
  OccupancyGrid observe_occupancy(int observer) const;

  const WorldState& world() const { return world_; }
  WorldState& mutable_world() { return world_; }  // test access
  const RoadNetwork& road() const { return road_; }
  const Config& config() const { return cfg_; }

  MissionStatus mission_status() const { return mission_status_; }
  bool terminal() const { return terminal_; }
  int steps() const { return steps_; }
  std::vector<int> agent_ids() const;       // every policy-controlled vehicle
  std::vector<int> live_agent_ids() const;  // agents still acting

  // Trace of the episode so far; the end record is attached when the episode
  // is terminal (or on demand for truncated rollouts).
  EpisodeLog log_with_end() const;

 private:
  void spawn_world(std::uint64_t seed);
  void record_header();
  void record_step(const std::map<int, MetaAction>& actions,
                   const std::map<int, LaneChange>& hv_changes,
                   const StepOutcome& outcome);
  void freeze(VehicleState& v);
  void substep(double dt, std::vector<CollisionEvent>& events);
  ControlInput control_for(const VehicleState& v,
                           const std::vector<VehicleState>& snapshot, double dt);
  std::optional<CarAhead> leader_in_lane(const VehicleState& ego, int lane,
                                         const std::vector<VehicleState>& all,
                                         double radius) const;
  NeighborSet neighbors_for(const VehicleState& ego,
                            const std::vector<VehicleState>& all) const;

  Config cfg_;
  RoadNetwork road_;
  WorldState world_;
  MissionStatus mission_status_ = MissionStatus::Pending;
  bool terminal_ = false;
  int steps_ = 0;
  bool any_collision_ = false;
  EpisodeLog log_;
  std::vector<double> spawn_l_;  // by vehicle index, for distance accounting
};

}  // namespace svo
