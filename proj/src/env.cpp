#include "svomerge/env.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "svomerge/drivers.hpp"
#include "svomerge/rng.hpp"

namespace svo {

const char* to_string(MissionStatus s) {
  switch (s) {
    case MissionStatus::Pending: return "pending";
    case MissionStatus::Merged: return "merged";
    case MissionStatus::Failed: return "failed";
  }
  return "?";
}

namespace {

struct Box {
  double cx, cy, heading, half_len, half_wid;
};

// project both boxes on `axis` and test the 1D intervals
bool separated_on(const Box& a, const Box& b, double ax, double ay) {
  auto radius = [&](const Box& r) {
    const double c = std::cos(r.heading), s = std::sin(r.heading);
    const double ux = c * ax + s * ay;        // axis in box frame, x part
    const double uy = -s * ax + c * ay;       // y part
    return r.half_len * std::abs(ux) + r.half_wid * std::abs(uy);
  };
  const double dist = std::abs((b.cx - a.cx) * ax + (b.cy - a.cy) * ay);
  return dist > radius(a) + radius(b);
}

bool boxes_overlap(const Box& a, const Box& b) {
  const double axes[4][2] = {
      {std::cos(a.heading), std::sin(a.heading)},
      {-std::sin(a.heading), std::cos(a.heading)},
      {std::cos(b.heading), std::sin(b.heading)},
      {-std::sin(b.heading), std::cos(b.heading)},
  };
  for (const auto& ax : axes)
    if (separated_on(a, b, ax[0], ax[1])) return false;
  return true;
}

Box box_of(const VehicleState& v) {
  return {v.world.x, v.world.y, v.world.heading, 0.5 * v.length, 0.5 * v.width};
}

double dist2d(const VehicleState& a, const VehicleState& b) {
  return std::hypot(a.world.x - b.world.x, a.world.y - b.world.y);
}

}  // namespace

bool footprints_overlap(const VehicleState& a, const VehicleState& b) {
  return boxes_overlap(box_of(a), box_of(b));
}

std::vector<CollisionEvent> check_collision(const WorldState& world) {
  std::vector<CollisionEvent> events;
  const auto& vs = world.vehicles;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (vs[i].done) continue;  // frozen wrecks and exited vehicles
    for (std::size_t j = i + 1; j < vs.size(); ++j) {
      if (vs[j].done) continue;
      if (footprints_overlap(vs[i], vs[j]))
        events.push_back({vs[i].id, vs[j].id});
    }
  }
  return events;
}

MissionStatus instantaneous_mission_status(const WorldState& world,
                                           const RoadNetwork& road,
                                           const EnvConfig& cfg) {
  const VehicleState& m = world.vehicle(world.mission_id);
  if (m.crashed) return MissionStatus::Failed;
  if (m.frenet.lane_index < road.highway_lanes()) {
    const double center = road.lane_center_d(m.frenet.lane_index, m.frenet.l);
    if (std::abs(m.frenet.d - center) < cfg.merge_center_tolerance)
      return MissionStatus::Merged;
  }
  if (m.frenet.lane_index == road.ramp_lane() &&
      m.frenet.l >= road.merge_end_l() - cfg.ramp_stop_margin)
    return MissionStatus::Failed;
  return MissionStatus::Pending;
}

Env::Env(Config cfg)
    : cfg_(std::move(cfg)), road_(build_merge_scenario(cfg_.scenario.road)) {}

std::vector<int> Env::agent_ids() const {
  std::vector<int> out;
  for (const auto& v : world_.vehicles)
    if (v.kind == VehicleKind::AV) out.push_back(v.id);
  return out;
}

std::vector<int> Env::live_agent_ids() const {
  std::vector<int> out;
  for (const auto& v : world_.vehicles)
    if (v.kind == VehicleKind::AV && !v.done) out.push_back(v.id);
  return out;
}

void Env::spawn_world(std::uint64_t seed) {
  const auto& sc = cfg_.scenario;
  const auto& sp = sc.spawn;
  const double scale = sc.randomness_scale;
  Rng rng(Rng::mix(seed, 0));

  // slot plan: explicit arrangement or the generated default
  std::vector<SpawnSlot> slots = sp.arrangement;
  const int n_highway = sc.n_avs + sc.n_hvs;
  if (slots.empty()) {
    int av_left = sc.n_avs, hv_left = sc.n_hvs;
    const int lanes = sc.road.highway_lanes;
    for (int i = 0; i < n_highway; ++i) {
      SpawnSlot s;
      const bool want_av = (i % 2 == 0) ? av_left > 0 : av_left > 0 && hv_left == 0;
      s.kind = want_av ? VehicleKind::AV : VehicleKind::HV;
      if (s.kind == VehicleKind::AV) --av_left; else --hv_left;
      s.lane = (lanes - 1) - ((i / 2) % lanes);
      slots.push_back(s);
    }
  } else {
    if (static_cast<int>(slots.size()) != n_highway)
      throw std::runtime_error("spawn arrangement size must equal n_avs + n_hvs");
    int avs = 0;
    for (const auto& s : slots) {
      if (s.lane < 0 || s.lane >= sc.road.highway_lanes)
        throw std::runtime_error("spawn arrangement lane out of range");
      if (s.kind == VehicleKind::AV) ++avs;
    }
    if (avs != sc.n_avs)
      throw std::runtime_error("spawn arrangement AV count must equal n_avs");
  }

  for (int attempt = 0; attempt < sp.max_attempts; ++attempt) {
    std::vector<VehicleState> vehicles;
    std::vector<int> lane_slot_count(sc.road.highway_lanes, 0);
    int next_id = 0;

    auto make_vehicle = [&](VehicleKind kind, bool is_mission, int lane, double l,
                            double v) {
      VehicleState s;
      s.id = next_id++;
      s.kind = kind;
      s.is_mission = is_mission;
      s.length = cfg_.dynamics.vehicle_length;
      s.width = cfg_.dynamics.vehicle_width;
      s.frenet.l = std::clamp(l, s.length, road_.length() - 2.0 * s.length);
      s.frenet.d = road_.lane_center_d(lane, s.frenet.l);
      s.frenet.lane_index = lane;
      s.world = road_.frenet_to_world(s.frenet);
      s.speed = std::max(v, 0.0);
      s.target_speed = s.speed;
      s.target_lane = lane;
      return s;
    };

    for (const auto& slot : slots) {
      const int k = lane_slot_count[slot.lane]++;
      const double mean_l = sp.platoon_front_l - k * sp.headway;
      const double l = rng.clipped_normal(mean_l, sp.l_std * scale,
                                          mean_l - sp.l_halfwidth * scale,
                                          mean_l + sp.l_halfwidth * scale);
      const double v = rng.clipped_normal(sp.v_mean, sp.v_std * scale,
                                          std::max(0.0, sp.v_mean - sp.v_halfwidth * scale),
                                          sp.v_mean + sp.v_halfwidth * scale);
      vehicles.push_back(make_vehicle(slot.kind, false, slot.lane, l, v));
    }

    // mission vehicle on the ramp
    {
      const double l = rng.clipped_normal(
          sp.mission_l_mean, sp.mission_l_std * scale,
          std::max(5.0, sp.mission_l_mean - sp.mission_l_halfwidth * scale),
          sp.mission_l_mean + sp.mission_l_halfwidth * scale);
      const double v = rng.clipped_normal(
          sp.mission_v_mean, sp.mission_v_std * scale,
          std::max(0.0, sp.mission_v_mean - sp.mission_v_halfwidth * scale),
          sp.mission_v_mean + sp.mission_v_halfwidth * scale);
      vehicles.push_back(
          make_vehicle(sc.mission_kind, true, road_.ramp_lane(), l, v));
    }

    // per-vehicle desired speeds for the car-following model
    for (auto& v : vehicles) {
      v.idm_desired_speed = rng.clipped_normal(
          cfg_.drivers.idm.desired_speed_mean, cfg_.drivers.idm.desired_speed_std,
          cfg_.drivers.idm.desired_speed_min, cfg_.drivers.idm.desired_speed_max);
    }

    // reject draws with same-lane bumper gaps below min_gap
    bool ok = true;
    for (std::size_t i = 0; i < vehicles.size() && ok; ++i)
      for (std::size_t j = i + 1; j < vehicles.size() && ok; ++j) {
        if (vehicles[i].frenet.lane_index != vehicles[j].frenet.lane_index) continue;
        const double gap = std::abs(vehicles[i].frenet.l - vehicles[j].frenet.l) -
                           0.5 * (vehicles[i].length + vehicles[j].length);
        if (gap < sp.min_gap) ok = false;
      }
    if (!ok) continue;

    world_.t = 0.0;
    world_.vehicles = std::move(vehicles);
    world_.mission_id = static_cast<int>(world_.vehicles.size()) - 1;
    world_.seed = seed;
    return;
  }
  throw std::runtime_error(
      "could not place vehicles without overlap within max_attempts; reduce "
      "population or spacing requirements");
}

void Env::record_header() {
  log_ = EpisodeLog{};
  auto& h = log_.header;
  h.version = 1;
  h.config_hash = cfg_.hash();
  h.seed = world_.seed;
  for (const auto& v : world_.vehicles) {
    LogRosterEntry e;
    e.id = v.id;
    e.kind = v.kind == VehicleKind::AV ? "av" : "hv";
    e.is_mission = v.is_mission;
    e.length = v.length;
    e.width = v.width;
    e.idm_v0 = v.idm_desired_speed;
    e.spawn_l = v.frenet.l;
    e.spawn_d = v.frenet.d;
    e.spawn_v = v.speed;
    e.spawn_lane = v.frenet.lane_index;
    h.roster.push_back(e);
  }
}

void Env::reset(std::uint64_t seed) {
  spawn_world(seed);
  mission_status_ = MissionStatus::Pending;
  terminal_ = false;
  steps_ = 0;
  any_collision_ = false;
  spawn_l_.clear();
  for (const auto& v : world_.vehicles) spawn_l_.push_back(v.frenet.l);
  record_header();
}

PerceptionSet Env::perception(int observer) const {
  const VehicleState& obs = world_.vehicle(observer);
  if (obs.kind != VehicleKind::AV || obs.done)
    throw std::invalid_argument("observer must be a live autonomous vehicle");

  PerceptionSet out;
  out.observer = observer;

  // connected AVs: everyone by default, multi-hop relay under a finite range
  std::vector<const VehicleState*> avs;
  for (const auto& v : world_.vehicles)
    if (v.kind == VehicleKind::AV && !v.done) avs.push_back(&v);

  std::set<int> connected;
  if (cfg_.env.v2v_range < 0.0) {
    for (const auto* v : avs) connected.insert(v->id);
  } else {
    std::vector<const VehicleState*> frontier{&obs};
    connected.insert(observer);
    while (!frontier.empty()) {
      const VehicleState* cur = frontier.back();
      frontier.pop_back();
      for (const auto* v : avs) {
        if (connected.count(v->id)) continue;
        if (dist2d(*cur, *v) <= cfg_.env.v2v_range) {
          connected.insert(v->id);
          frontier.push_back(v);
        }
      }
    }
  }
  for (const auto& v : world_.vehicles)
    if (connected.count(v.id)) out.visible_avs.push_back(v.id);

  // extended perception: any human vehicle inside a connected AV's sensor range
  for (const auto& v : world_.vehicles) {
    if (v.kind != VehicleKind::HV || v.done) continue;
    for (int av_id : out.visible_avs) {
      if (dist2d(v, world_.vehicle(av_id)) <= cfg_.env.av_sensing_radius) {
        out.visible_hvs.push_back(v.id);
        break;
      }
    }
  }
  return out;
}

VelocityMap Env::observe_agent(int observer) const {
  return render_velocity_map(world_, road_, cfg_.observation, observer,
                             perception(observer));
}

OccupancyGrid Env::observe_occupancy(int observer) const {
  return render_occupancy(world_, road_, cfg_.observation, observer,
                          perception(observer));
}

std::optional<CarAhead> Env::leader_in_lane(const VehicleState& ego, int lane,
                                            const std::vector<VehicleState>& all,
                                            double radius) const {
  std::optional<CarAhead> best;
  for (const auto& v : all) {
    if (v.id == ego.id || v.done) continue;
    if (v.frenet.lane_index != lane) continue;
    const double dl = v.frenet.l - ego.frenet.l;
    if (dl <= 0.0) continue;
    if (dl > radius) continue;
    const double gap = dl - 0.5 * (v.length + ego.length);
    if (!best || gap < best->gap) best = CarAhead{gap, v.speed};
  }
  // a ramp lane ends: treat the forced-stop point as a standing obstacle
  if (lane == road_.ramp_lane() && ego.frenet.lane_index == road_.ramp_lane()) {
    const double stop_l = road_.merge_end_l() - cfg_.env.ramp_stop_margin;
    const double gap = stop_l - ego.frenet.l - 0.5 * ego.length;
    if (gap < radius && (!best || gap < best->gap)) best = CarAhead{gap, 0.0};
  }
  return best;
}

NeighborSet Env::neighbors_for(const VehicleState& ego,
                               const std::vector<VehicleState>& all) const {
  const double radius = cfg_.drivers.hv_sensing_radius;
  NeighborSet n;
  n.current_leader = leader_in_lane(ego, ego.frenet.lane_index, all, radius);

  auto follower_in_lane = [&](int lane) -> std::optional<NeighborSet::Follower> {
    const VehicleState* best = nullptr;
    double best_dl = radius;
    for (const auto& v : all) {
      if (v.id == ego.id || v.done) continue;
      if (v.frenet.lane_index != lane) continue;
      const double dl = ego.frenet.l - v.frenet.l;
      if (dl <= 0.0 || dl > best_dl) continue;
      best_dl = dl;
      best = &v;
    }
    if (!best) return std::nullopt;
    NeighborSet::Follower f;
    f.gap = best_dl - 0.5 * (best->length + ego.length);
    f.speed = best->speed;
    f.own_leader = leader_in_lane(*best, lane, all, radius);
    return f;
  };

  n.current_follower = follower_in_lane(ego.frenet.lane_index);

  const auto reachable = road_.reachable_lanes(ego.frenet.lane_index, ego.frenet.l);
  const int left = ego.frenet.lane_index - 1;
  const int right = ego.frenet.lane_index + 1;
  n.left_lane_exists =
      std::find(reachable.begin(), reachable.end(), left) != reachable.end();
  n.right_lane_exists =
      std::find(reachable.begin(), reachable.end(), right) != reachable.end();
  if (n.left_lane_exists) {
    n.left_leader = leader_in_lane(ego, left, all, radius);
    n.left_follower = follower_in_lane(left);
  }
  if (n.right_lane_exists) {
    n.right_leader = leader_in_lane(ego, right, all, radius);
    n.right_follower = follower_in_lane(right);
  }
  return n;
}

ControlInput Env::control_for(const VehicleState& v,
                              const std::vector<VehicleState>& snapshot,
                              double dt) {
  VehicleState& mut = world_.vehicle(v.id);  // integral state lives here
  ControlInput pid = pid_track(mut, road_, dt, cfg_.dynamics.pid,
                               cfg_.dynamics.bicycle);
  if (v.kind == VehicleKind::AV) return pid;

  // human driver: car-following acceleration, lane keeping from the PID layer
  IdmParams idm = cfg_.drivers.idm.base;
  idm.desired_speed = v.idm_desired_speed;
  const double radius = cfg_.drivers.hv_sensing_radius;
  double accel =
      idm_acceleration(v.speed, leader_in_lane(v, v.frenet.lane_index, snapshot, radius), idm);
  if (v.target_lane != v.frenet.lane_index) {
    const double a2 = idm_acceleration(
        v.speed, leader_in_lane(v, v.target_lane, snapshot, radius), idm);
    accel = std::min(accel, a2);
  }
  return ControlInput{accel, pid.steer};
}

void Env::freeze(VehicleState& v) {
  v.speed = 0.0;
  v.target_speed = 0.0;
  v.done = true;
}

void Env::substep(double dt, std::vector<CollisionEvent>& events) {
  const std::vector<VehicleState> snapshot = world_.vehicles;
  std::vector<VehicleState> next = world_.vehicles;

  for (std::size_t i = 0; i < snapshot.size(); ++i) {
    const VehicleState& v = snapshot[i];
    if (v.done) continue;
    const ControlInput u = control_for(v, snapshot, dt);
    VehicleState moved = bicycle_step(snapshot[i], u, dt, cfg_.dynamics.bicycle);
    moved.pid_speed_integral = world_.vehicle(v.id).pid_speed_integral;
    bool ok = true;
    try {
      FrenetPose fr = road_.world_to_frenet(moved.world);
      moved.frenet = fr;
    } catch (const std::out_of_range&) {
      ok = false;  // left the mapped band; park the vehicle where it was
    }
    if (!ok) {
      next[i] = world_.vehicles[i];
      freeze(next[i]);
      continue;
    }
    // exit at the road end
    if (moved.frenet.l >= road_.length() - moved.length) {
      next[i] = moved;
      freeze(next[i]);
      continue;
    }
    // forced stop at the ramp terminus
    if (moved.frenet.lane_index == road_.ramp_lane()) {
      const double stop_l = road_.merge_end_l() - cfg_.env.ramp_stop_margin;
      if (moved.frenet.l >= stop_l) {
        moved.frenet.l = stop_l;
        moved.world = road_.frenet_to_world(
            FrenetPose{stop_l, moved.frenet.d, moved.frenet.lane_index});
        moved.world.heading = road_.tangent_heading(stop_l);
        moved.speed = 0.0;
      }
    }
    next[i] = moved;
  }
  world_.vehicles = std::move(next);

  // collision sweep at sub-step resolution so fast closings cannot tunnel
  for (const auto& ev : check_collision(world_)) {
    events.push_back(ev);
    any_collision_ = true;
    for (int id : {ev.first, ev.second}) {
      VehicleState& v = world_.vehicle(id);
      v.crashed = true;
      freeze(v);
    }
  }
}

StepOutcome Env::step(const std::map<int, MetaAction>& actions) {
  if (terminal_) throw std::logic_error("step on a terminal episode");

  // exactly one action per live agent
  const auto live = live_agent_ids();
  if (actions.size() != live.size())
    throw std::invalid_argument("action map must cover exactly the live agents");
  for (int id : live)
    if (!actions.count(id))
      throw std::invalid_argument("missing action for agent " + std::to_string(id));

  const std::vector<VehicleState> before = world_.vehicles;
  const MissionStatus mission_before = mission_status_;

  // meta-actions update AV targets
  for (const auto& [id, action] : actions) {
    VehicleState& v = world_.vehicle(id);
    v = apply_meta_action(action, v, road_, cfg_.dynamics.meta);
  }

  // human lane-change decisions at the policy cadence
  std::map<int, LaneChange> hv_changes;
  for (auto& v : world_.vehicles) {
    if (v.kind != VehicleKind::HV || v.done) continue;
    // re-evaluate only when settled in the current lane
    const double center = road_.lane_center_d(v.frenet.lane_index, v.frenet.l);
    if (v.target_lane != v.frenet.lane_index || std::abs(v.frenet.d - center) > 0.5)
      continue;
    IdmParams idm = cfg_.drivers.idm.base;
    idm.desired_speed = v.idm_desired_speed;
    const LaneChange lc =
        mobil_decide(v.speed, v.length, neighbors_for(v, world_.vehicles), idm,
                     cfg_.drivers.mobil);
    if (lc == LaneChange::ChangeLeft) v.target_lane = v.frenet.lane_index - 1;
    if (lc == LaneChange::ChangeRight) v.target_lane = v.frenet.lane_index + 1;
    if (lc != LaneChange::KeepLane) hv_changes[v.id] = lc;
  }

  // physics
  StepOutcome outcome;
  const double dt = cfg_.dynamics.decision_dt / cfg_.dynamics.substeps;
  for (int s = 0; s < cfg_.dynamics.substeps; ++s)
    substep(dt, outcome.collisions);

  world_.t += cfg_.dynamics.decision_dt;
  ++steps_;

  // mission bookkeeping (latched)
  if (mission_status_ == MissionStatus::Pending)
    mission_status_ = instantaneous_mission_status(world_, road_, cfg_.env);
  outcome.mission = mission_status_;
  outcome.mission_merged_now = mission_before == MissionStatus::Pending &&
                               mission_status_ == MissionStatus::Merged;

  // rewards for every agent that acted
  std::set<int> crashed_now;
  for (const auto& ev : outcome.collisions) {
    crashed_now.insert(ev.first);
    crashed_now.insert(ev.second);
  }
  std::map<int, double> ego_rewards;
  for (int id : live) {
    const VehicleState& after = world_.vehicle(id);
    const VehicleState& pre = before[static_cast<std::size_t>(id)];
    ego_rewards[id] = egoistic_reward(after.speed, after.accel - pre.accel,
                                      crashed_now.count(id) > 0, cfg_.reward);
  }
  const SvoWeights weights = SvoWeights::from_config(cfg_.reward);
  const VehicleState& mission = world_.vehicle(world_.mission_id);
  for (int id : live) {
    // V2V picture for the reward uses vehicles live at step start, so an
    // ally or human that crashed during this step still contributes once
    // (it drops out from the next step on)
    std::vector<int> connected;  // ally ids, self included
    if (cfg_.env.v2v_range < 0.0) {
      connected = live;
    } else {
      std::set<int> seen{id};
      std::vector<int> frontier{id};
      while (!frontier.empty()) {
        const int cur = frontier.back();
        frontier.pop_back();
        for (int other : live) {
          if (seen.count(other)) continue;
          if (dist2d(world_.vehicle(cur), world_.vehicle(other)) <=
              cfg_.env.v2v_range) {
            seen.insert(other);
            frontier.push_back(other);
          }
        }
      }
      connected.assign(seen.begin(), seen.end());
    }

    std::vector<double> ally_ego;
    for (int ally : connected)
      if (ally != id) ally_ego.push_back(ego_rewards[ally]);

    std::vector<SympathyTarget> targets;
    std::set<int> target_ids;
    auto add_target = [&](const VehicleState& v) {
      if (target_ids.count(v.id)) return;
      target_ids.insert(v.id);
      SympathyTarget t;
      t.speed = v.speed;
      t.distance = dist2d(world_.vehicle(id), v);
      t.mission_merged_now = v.is_mission && outcome.mission_merged_now;
      targets.push_back(t);
    };
    for (const auto& v : world_.vehicles) {
      if (v.kind != VehicleKind::HV) continue;
      if (before[static_cast<std::size_t>(v.id)].done) continue;
      bool sensed = false;
      for (int av : connected) {
        if (dist2d(v, world_.vehicle(av)) <= cfg_.env.av_sensing_radius) {
          sensed = true;
          break;
        }
      }
      if (sensed) add_target(v);
    }
    // the mission vehicle always matters to the social objective when human
    if (mission.kind == VehicleKind::HV &&
        !before[static_cast<std::size_t>(mission.id)].done)
      add_target(mission);

    const double ego = ego_rewards[id];
    const double coop = cooperative_reward(ally_ego, cfg_.reward);
    const double symp = sympathetic_reward(targets, weights, cfg_.reward);
    outcome.rewards[id] = total_reward(ego, coop, symp, weights);
  }

  // terminal: first collision anywhere, horizon, or an empty road
  bool all_done = true;
  for (const auto& v : world_.vehicles)
    if (!v.done) all_done = false;
  terminal_ = any_collision_ || world_.t >= cfg_.env.horizon_s - 1e-9 || all_done;
  outcome.terminal = terminal_;

  record_step(actions, hv_changes, outcome);
  return outcome;
}

void Env::record_step(const std::map<int, MetaAction>& actions,
                      const std::map<int, LaneChange>& hv_changes,
                      const StepOutcome& outcome) {
  LogStep s;
  s.t = world_.t;
  for (const auto& v : world_.vehicles) {
    LogVehicle lv;
    lv.id = v.id;
    lv.l = v.frenet.l;
    lv.d = v.frenet.d;
    lv.lane = v.frenet.lane_index;
    lv.v = v.speed;
    lv.a = v.accel;
    lv.yaw = v.world.heading;
    if (auto it = actions.find(v.id); it != actions.end())
      lv.action = to_string(it->second);
    else if (auto hc = hv_changes.find(v.id); hc != hv_changes.end())
      lv.action = hc->second == LaneChange::ChangeLeft ? "LC_LEFT" : "LC_RIGHT";
    lv.done = v.done;
    s.vehicles.push_back(lv);
  }
  for (const auto& [id, r] : outcome.rewards)
    s.rewards.push_back({id, r.ego, r.coop, r.symp, r.total});
  s.mission = to_string(outcome.mission);
  for (const auto& c : outcome.collisions) s.collisions.emplace_back(c.first, c.second);
  log_.steps.push_back(std::move(s));
}

EpisodeLog Env::log_with_end() const {
  EpisodeLog out = log_;
  out.end.crashed = any_collision_;
  out.end.mission = to_string(mission_status_);
  out.end.steps = steps_;
  for (std::size_t i = 0; i < world_.vehicles.size(); ++i)
    out.end.distance.emplace_back(world_.vehicles[i].id,
                                  world_.vehicles[i].frenet.l - spawn_l_[i]);
  out.has_end = true;
  return out;
}

}  // namespace svo

