#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "svomerge/env.hpp"
#include "svomerge/rng.hpp"

using namespace svo;

namespace {

Config small_config(int avs, int hvs, VehicleKind mission = VehicleKind::HV) {
  Config c = default_config();
  c.scenario.n_avs = avs;
  c.scenario.n_hvs = hvs;
  c.scenario.mission_kind = mission;
  return c;
}

std::map<int, MetaAction> idle_actions(const Env& env) {
  std::map<int, MetaAction> a;
  for (int id : env.live_agent_ids()) a[id] = MetaAction::Idle;
  return a;
}

bool same_world(const WorldState& a, const WorldState& b) {
  if (a.vehicles.size() != b.vehicles.size()) return false;
  for (std::size_t i = 0; i < a.vehicles.size(); ++i) {
    const auto& x = a.vehicles[i];
    const auto& y = b.vehicles[i];
    if (x.id != y.id || x.kind != y.kind || x.is_mission != y.is_mission ||
        x.frenet.l != y.frenet.l || x.frenet.d != y.frenet.d ||
        x.frenet.lane_index != y.frenet.lane_index || x.speed != y.speed ||
        x.world.x != y.world.x || x.world.y != y.world.y ||
        x.world.heading != y.world.heading ||
        x.idm_desired_speed != y.idm_desired_speed)
      return false;
  }
  return a.t == b.t && a.mission_id == b.mission_id && a.seed == b.seed;
}

std::string log_bytes(const EpisodeLog& log) {
  std::ostringstream os;
  write_jsonl(log, os);
  return os.str();
}

}  // namespace

TEST_CASE("reset is bit-deterministic per seed") {
  Env a(small_config(2, 2)), b(small_config(2, 2));
  a.reset(42);
  b.reset(42);
  CHECK(same_world(a.world(), b.world()));
  b.reset(43);
  CHECK_FALSE(same_world(a.world(), b.world()));
}

TEST_CASE("randomness scale widens the spawn spread about fourfold") {
  auto spread = [](int scale) {
    Config c = default_config();
    c.scenario.n_avs = 1;
    c.scenario.n_hvs = 0;
    c.scenario.randomness_scale = scale;
    Env env(c);
    // slot mean is fixed; measure the deviation of the first vehicle's l
    double sum = 0, sum2 = 0;
    const int n = 1500;
    for (int s = 0; s < n; ++s) {
      env.reset(1000 + s);
      const double l = env.world().vehicles[0].frenet.l;
      sum += l;
      sum2 += l * l;
    }
    return std::sqrt(sum2 / n - (sum / n) * (sum / n));
  };
  const double s1 = spread(1);
  const double s4 = spread(4);
  CHECK(s4 / s1 > 3.2);
  CHECK(s4 / s1 < 4.8);
}

TEST_CASE("degenerate population: only the mission vehicle") {
  Env env(small_config(0, 0));
  env.reset(7);
  CHECK(env.world().vehicles.size() == 1);
  CHECK(env.world().vehicles[0].is_mission);
  CHECK(env.world().vehicles[0].frenet.lane_index == env.road().ramp_lane());
  // no agents: stepping with an empty action map is legal
  const StepOutcome out = env.step({});
  CHECK(out.rewards.empty());
}

TEST_CASE("impossible placements raise after bounded attempts") {
  Config c = small_config(6, 6);
  c.scenario.spawn.headway = 4.0;  // slots closer than min_gap + length
  c.scenario.spawn.min_gap = 10.0;
  c.scenario.spawn.l_std = 0.5;
  c.scenario.spawn.l_halfwidth = 1.0;
  Env env(c);
  CHECK_THROWS_AS(env.reset(1), std::runtime_error);
}

TEST_CASE("step validates the action key set") {
  Env env(small_config(2, 0));
  env.reset(5);
  const auto agents = env.live_agent_ids();
  REQUIRE(agents.size() == 2);
  std::map<int, MetaAction> missing{{agents[0], MetaAction::Idle}};
  CHECK_THROWS_AS(env.step(missing), std::invalid_argument);
  std::map<int, MetaAction> wrong{{agents[0], MetaAction::Idle},
                                  {agents[0] + 100, MetaAction::Idle}};
  CHECK_THROWS_AS(env.step(wrong), std::invalid_argument);
}

TEST_CASE("idle cruising on an empty road keeps speeds and stays safe") {
  Config c = small_config(2, 0);
  c.scenario.spawn.v_std = 0.0;
  c.scenario.spawn.v_halfwidth = 0.0;
  Env env(c);
  env.reset(11);
  const double v0 = env.world().vehicles[0].speed;
  const StepOutcome out = env.step(idle_actions(env));
  CHECK(out.collisions.empty());
  CHECK_FALSE(out.terminal);
  for (const auto& v : env.world().vehicles)
    if (v.kind == VehicleKind::AV) CHECK(v.speed == doctest::Approx(v0).epsilon(1e-9));
  for (const auto& [id, r] : out.rewards) {
    CHECK(std::isfinite(r.total));
    CHECK(std::isfinite(r.ego));
  }
}

TEST_CASE("footprint overlap matches the rectangle geometry") {
  const RoadNetwork road = build_merge_scenario(RoadConfig{});
  auto vehicle_at = [&](double l, int lane) {
    VehicleState s;
    s.frenet = {l, road.lane_center_d(lane, l), lane};
    s.world = road.frenet_to_world(s.frenet);
    return s;
  };
  CHECK(footprints_overlap(vehicle_at(100.0, 0), vehicle_at(104.9, 0)));
  CHECK_FALSE(footprints_overlap(vehicle_at(100.0, 0), vehicle_at(105.1, 0)));
  CHECK_FALSE(footprints_overlap(vehicle_at(100.0, 0), vehicle_at(100.0, 1)));
}

TEST_CASE("an overlapping spawn collides on the first step and terminates") {
  Env env(small_config(2, 0));
  env.reset(3);
  auto& w = env.mutable_world();
  // drop vehicle 1 onto vehicle 0
  w.vehicles[1].frenet = w.vehicles[0].frenet;
  w.vehicles[1].world = w.vehicles[0].world;
  w.vehicles[1].world.x += 2.0;
  const StepOutcome out = env.step(idle_actions(env));
  CHECK_FALSE(out.collisions.empty());
  CHECK(out.terminal);
  for (const auto& ev : out.collisions) {
    CHECK(env.world().vehicle(ev.first).crashed);
    CHECK(env.world().vehicle(ev.second).crashed);
    CHECK(env.world().vehicle(ev.first).speed == 0.0);
  }
}

TEST_CASE("mission status latches and the merge bonus fires once") {
  Config c = small_config(1, 0);
  Env env(c);
  env.reset(17);
  auto& w = env.mutable_world();
  VehicleState& m = w.vehicle(w.mission_id);
  // park the mission vehicle mid-change, just outside the adjacent lane center
  const double l = 320.0;
  const int lane = env.road().highway_lanes() - 1;
  m.frenet.l = l;
  m.frenet.d = env.road().lane_center_d(lane, l) - 0.45;
  m.frenet.lane_index = lane;
  m.world = env.road().frenet_to_world(m.frenet);
  m.target_lane = lane;
  m.speed = 20.0;
  m.target_speed = 20.0;

  CHECK(env.mission_status() == MissionStatus::Pending);
  const StepOutcome out = env.step(idle_actions(env));
  CHECK(out.mission == MissionStatus::Merged);
  CHECK(out.mission_merged_now);
  const StepOutcome out2 = env.step(idle_actions(env));
  CHECK(out2.mission == MissionStatus::Merged);
  CHECK_FALSE(out2.mission_merged_now);
}

TEST_CASE("mission status rules: pending, merged, failed") {
  Config c = small_config(0, 0);
  Env env(c);
  env.reset(19);
  auto& w = env.mutable_world();
  VehicleState& m = w.vehicle(w.mission_id);
  const auto& road = env.road();

  // pending on the ramp before the stop zone
  m.frenet = {100.0, road.lane_center_d(road.ramp_lane(), 100.0), road.ramp_lane()};
  CHECK(instantaneous_mission_status(w, road, c.env) == MissionStatus::Pending);

  // merged when centered in a highway lane
  m.frenet = {300.0, road.lane_center_d(1, 300.0), 1};
  CHECK(instantaneous_mission_status(w, road, c.env) == MissionStatus::Merged);

  // failed once it reaches the forced stop at the ramp terminus
  const double stop_l = road.merge_end_l() - c.env.ramp_stop_margin;
  m.frenet = {stop_l + 0.1, road.lane_center_d(road.ramp_lane(), stop_l + 0.1),
              road.ramp_lane()};
  CHECK(instantaneous_mission_status(w, road, c.env) == MissionStatus::Failed);
}

TEST_CASE("perception: direct, relayed, and out-of-range humans") {
  Config c = small_config(2, 1);
  c.env.av_sensing_radius = 80.0;
  Env env(c);
  env.reset(23);
  auto& w = env.mutable_world();
  const auto& road = env.road();
  auto place = [&](VehicleState& v, double l, int lane) {
    v.frenet = {l, road.lane_center_d(lane, l), lane};
    v.world = road.frenet_to_world(v.frenet);
  };
  // ids: 0 = AV, 1 = AV, 2 = HV (default interleave), 3 = mission
  REQUIRE(w.vehicles[0].kind == VehicleKind::AV);
  int second_av = -1, hv = -1;
  for (const auto& v : w.vehicles) {
    if (v.id != 0 && v.kind == VehicleKind::AV && !v.is_mission) second_av = v.id;
    if (v.kind == VehicleKind::HV && !v.is_mission) hv = v.id;
  }
  REQUIRE(second_av >= 0);
  REQUIRE(hv >= 0);

  place(w.vehicle(0), 100.0, 0);
  place(w.vehicle(second_av), 240.0, 0);
  place(w.vehicle(hv), 150.0, 1);  // 50 m from observer

  PerceptionSet p = env.perception(0);
  CHECK(std::count(p.visible_avs.begin(), p.visible_avs.end(), 0) == 1);
  CHECK(std::count(p.visible_hvs.begin(), p.visible_hvs.end(), hv) == 1);

  // human far from the observer but near the allied vehicle stays visible
  place(w.vehicle(hv), 300.0, 1);  // 200 m from observer, 60 m from ally
  p = env.perception(0);
  CHECK(std::count(p.visible_hvs.begin(), p.visible_hvs.end(), hv) == 1);

  // human beyond every sensor disappears
  place(w.vehicle(hv), 480.0, 1);
  p = env.perception(0);
  CHECK(std::count(p.visible_hvs.begin(), p.visible_hvs.end(), hv) == 0);
}

TEST_CASE("no vehicle teleports between decision steps") {
  Config c = small_config(3, 3);
  Env env(c);
  env.reset(29);
  Rng rng(99);
  std::map<int, double> last_l;
  for (const auto& v : env.world().vehicles) last_l[v.id] = v.frenet.l;
  const double cap = c.dynamics.bicycle.limits.v_phys_max * c.dynamics.decision_dt + 0.5;
  for (int step = 0; step < 30 && !env.terminal(); ++step) {
    std::map<int, MetaAction> actions;
    for (int id : env.live_agent_ids())
      actions[id] = static_cast<MetaAction>(rng.below(5));
    env.step(actions);
    for (const auto& v : env.world().vehicles) {
      CHECK(std::abs(v.frenet.l - last_l[v.id]) <= cap);
      last_l[v.id] = v.frenet.l;
    }
  }
}

TEST_CASE("identical seeds and actions give byte-identical episode logs") {
  auto run = [](int seed) {
    Env env(small_config(2, 2));
    env.reset(seed);
    Rng rng(555);
    while (!env.terminal()) {
      std::map<int, MetaAction> actions;
      for (int id : env.live_agent_ids())
        actions[id] = static_cast<MetaAction>(rng.below(5));
      env.step(actions);
      if (env.steps() > 80) break;
    }
    return log_bytes(env.log_with_end());
  };
  const std::string a = run(1234);
  const std::string b = run(1234);
  CHECK(a == b);
  CHECK(a.size() > 100);
  const std::string c = run(1235);
  CHECK(a != c);
}

TEST_CASE("episode log round-trips through the jsonl parser") {
  Env env(small_config(2, 1));
  env.reset(31);
  for (int i = 0; i < 5 && !env.terminal(); ++i) env.step(idle_actions(env));
  const EpisodeLog log = env.log_with_end();
  const std::string bytes = log_bytes(log);
  std::istringstream is(bytes);
  const EpisodeLog parsed = parse_jsonl(is);
  CHECK(log_bytes(parsed) == bytes);
  CHECK(parsed.steps.size() == log.steps.size());
  CHECK(parsed.header.roster.size() == log.header.roster.size());

  // a truncated record fails with the offending line
  std::istringstream bad(bytes.substr(0, bytes.size() / 2));
  CHECK_THROWS(parse_jsonl(bad));
}

TEST_CASE("horizon expiry terminates the episode") {
  Config c = small_config(1, 0);
  c.env.horizon_s = 3.0;
  Env env(c);
  env.reset(37);
  int steps = 0;
  while (!env.terminal()) {
    env.step(idle_actions(env));
    if (++steps > 10) break;
  }
  CHECK(steps <= 3);
  CHECK(env.terminal());
}
