#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "svomerge/observe.hpp"

using namespace svo;

namespace {

RoadNetwork default_road() { return build_merge_scenario(RoadConfig{}); }

ObservationConfig obs_cfg() {
  ObservationConfig c;
  c.pixel.beta = 1.0 / std::log(40.0);
  return c;
}

VehicleState put_vehicle(const RoadNetwork& road, int id, VehicleKind kind,
                         double l, int lane, double v, bool mission = false) {
  VehicleState s;
  s.id = id;
  s.kind = kind;
  s.is_mission = mission;
  s.frenet = {l, road.lane_center_d(lane, l), lane};
  s.world = road.frenet_to_world(s.frenet);
  s.speed = v;
  s.target_speed = v;
  s.target_lane = lane;
  return s;
}

PerceptionSet see_all(const WorldState& w, int observer) {
  PerceptionSet p;
  p.observer = observer;
  for (const auto& v : w.vehicles)
    (v.kind == VehicleKind::AV ? p.visible_avs : p.visible_hvs).push_back(v.id);
  return p;
}

}  // namespace

TEST_CASE("pixel value follows the clipped-log coding") {
  const auto cfg = obs_cfg();
  CHECK(pixel_value(0.0, cfg.pixel) == doctest::Approx(1.0));
  CHECK(pixel_value(0.4, cfg.pixel) == doctest::Approx(1.0));  // below threshold
  const double z10 = 1.0 - std::log(20.0) / std::log(40.0);
  CHECK(pixel_value(10.0, cfg.pixel) == doctest::Approx(z10).epsilon(1e-12));
  CHECK(pixel_value(10.0, cfg.pixel) == doctest::Approx(0.188).epsilon(0.01));
  CHECK(pixel_value(20.0, cfg.pixel) == doctest::Approx(0.0));
  CHECK(pixel_value(-20.0, cfg.pixel) == doctest::Approx(0.0));
  CHECK(pixel_value(35.0, cfg.pixel) == doctest::Approx(0.0));  // clamped
}

TEST_CASE("pixel value is monotone non-increasing over 10k magnitudes") {
  const auto cfg = obs_cfg();
  std::mt19937 gen(2);
  std::uniform_real_distribution<double> dv(0.0, 40.0);
  std::vector<double> mags(10000);
  for (auto& m : mags) m = dv(gen);
  std::sort(mags.begin(), mags.end());
  double prev = 2.0;
  for (double m : mags) {
    const double z = pixel_value(m, cfg.pixel);
    CHECK(z >= 0.0);
    CHECK(z <= 1.0);
    CHECK(z <= prev + 1e-12);
    if (m < cfg.pixel.v0) CHECK(z == doctest::Approx(1.0));
    prev = z;
  }
}

TEST_CASE("a lone observer renders only its own footprint") {
  const auto road = default_road();
  const auto cfg = obs_cfg();
  WorldState w;
  w.vehicles.push_back(put_vehicle(road, 0, VehicleKind::AV, 100.0, 0, 20.0));
  w.mission_id = 0;

  const VelocityMap map = render_velocity_map(w, road, cfg, 0, see_all(w, 0));
  CHECK(map.width == cfg.width_px);
  CHECK(map.height == cfg.height_px);
  CHECK(static_cast<int>(map.data.size()) ==
        VelocityMap::kChannels * cfg.width_px * cfg.height_px);

  double av_sum = 0, hv_sum = 0, mission_sum = 0;
  int av_on = 0;
  for (int x = 0; x < map.width; ++x)
    for (int y = 0; y < map.height; ++y) {
      av_sum += map.at(VelocityMap::kChannelAv, x, y);
      hv_sum += map.at(VelocityMap::kChannelHv, x, y);
      mission_sum += map.at(VelocityMap::kChannelMission, x, y);
      if (map.at(VelocityMap::kChannelAv, x, y) > 0) ++av_on;
    }
  CHECK(hv_sum == 0.0);
  CHECK(mission_sum == 0.0);
  // ego footprint: 5 m x 2 m at 1 m x 0.5 m per px -> 5x4 cells, value 1
  CHECK(av_on == 20);
  CHECK(av_sum == doctest::Approx(20.0));
}

TEST_CASE("an equal-speed human ahead paints 1.0 in the hv plane") {
  const auto road = default_road();
  const auto cfg = obs_cfg();
  WorldState w;
  w.vehicles.push_back(put_vehicle(road, 0, VehicleKind::AV, 100.0, 0, 20.0));
  w.vehicles.push_back(put_vehicle(road, 1, VehicleKind::HV, 130.0, 0, 20.0));
  w.mission_id = 1;

  const VelocityMap map = render_velocity_map(w, road, cfg, 0, see_all(w, 0));
  int hv_on = 0;
  for (int x = 0; x < map.width; ++x)
    for (int y = 0; y < map.height; ++y)
      if (map.at(VelocityMap::kChannelHv, x, y) > 0) {
        CHECK(map.at(VelocityMap::kChannelHv, x, y) == doctest::Approx(1.0));
        ++hv_on;
      }
  CHECK(hv_on == 20);
}

TEST_CASE("vehicle planes are invariant to a common longitudinal shift") {
  const auto road = default_road();
  const auto cfg = obs_cfg();
  auto build = [&](double base) {
    WorldState w;
    w.vehicles.push_back(put_vehicle(road, 0, VehicleKind::AV, base, 0, 20.0));
    w.vehicles.push_back(put_vehicle(road, 1, VehicleKind::HV, base + 25.0, 1, 24.0));
    w.vehicles.push_back(put_vehicle(road, 2, VehicleKind::AV, base - 18.0, 1, 18.0));
    w.mission_id = 2;
    return w;
  };
  const VelocityMap a = render_velocity_map(build(100.0), road, cfg, 0,
                                            see_all(build(100.0), 0));
  const VelocityMap b = render_velocity_map(build(137.0), road, cfg, 0,
                                            see_all(build(137.0), 0));
  for (int c : {VelocityMap::kChannelAv, VelocityMap::kChannelHv,
                VelocityMap::kChannelMission})
    for (int x = 0; x < a.width; ++x)
      for (int y = 0; y < a.height; ++y)
        CHECK(a.at(c, x, y) == b.at(c, x, y));
}

TEST_CASE("rendering is a pure function of its inputs") {
  const auto road = default_road();
  const auto cfg = obs_cfg();
  WorldState w;
  w.vehicles.push_back(put_vehicle(road, 0, VehicleKind::AV, 90.0, 1, 21.0));
  w.vehicles.push_back(put_vehicle(road, 1, VehicleKind::HV, 115.0, 0, 26.0));
  w.mission_id = 1;
  const auto p = see_all(w, 0);
  const VelocityMap m1 = render_velocity_map(w, road, cfg, 0, p);
  const VelocityMap m2 = render_velocity_map(w, road, cfg, 0, p);
  CHECK(m1.data == m2.data);
  const OccupancyGrid g1 = render_occupancy(w, road, cfg, 0, p);
  const OccupancyGrid g2 = render_occupancy(w, road, cfg, 0, p);
  CHECK(g1.data == g2.data);
}

TEST_CASE("all rendered values are finite and in declared ranges") {
  const auto road = default_road();
  const auto cfg = obs_cfg();
  std::mt19937 gen(31);
  std::uniform_real_distribution<double> dl(20.0, 460.0), dv(0.0, 35.0);
  for (int trial = 0; trial < 20; ++trial) {
    WorldState w;
    for (int i = 0; i < 6; ++i) {
      const int lane = i % 2;
      w.vehicles.push_back(put_vehicle(road, i, i < 3 ? VehicleKind::AV : VehicleKind::HV,
                                       dl(gen), lane, dv(gen), i == 5));
    }
    w.mission_id = 5;
    const VelocityMap map = render_velocity_map(w, road, cfg, 0, see_all(w, 0));
    for (float v : map.data) {
      CHECK(std::isfinite(v));
      CHECK(v >= 0.f);
      CHECK(v <= 1.f);
    }
    const OccupancyGrid grid = render_occupancy(w, road, cfg, 0, see_all(w, 0));
    for (float v : grid.data) CHECK(std::isfinite(v));
  }
}

TEST_CASE("occupancy grid: ego cell, empty cells, and heading features") {
  const auto road = default_road();
  const auto cfg = obs_cfg();
  WorldState w;
  w.vehicles.push_back(put_vehicle(road, 0, VehicleKind::AV, 100.0, 0, 20.0));
  w.mission_id = 0;
  const OccupancyGrid g = render_occupancy(w, road, cfg, 0, see_all(w, 0));

  int occupied = 0;
  int ex = -1, ey = -1;
  for (int x = 0; x < g.width; ++x)
    for (int y = 0; y < g.height; ++y)
      if (g.at(0, x, y) == 1.f) {
        ++occupied;
        ex = x;
        ey = y;
      }
  REQUIRE(occupied == 1);
  CHECK(g.at(1, ex, ey) == 0.f);  // relative l
  CHECK(g.at(2, ex, ey) == 0.f);  // relative d
  CHECK(g.at(3, ex, ey) == 0.f);
  CHECK(g.at(4, ex, ey) == 0.f);
  CHECK(g.at(5, ex, ey) == doctest::Approx(0.0));  // sin of ego yaw (0)
  CHECK(g.at(6, ex, ey) == doctest::Approx(1.0));

  // every cell without presence is all-zero
  for (int x = 0; x < g.width; ++x)
    for (int y = 0; y < g.height; ++y) {
      if (g.at(0, x, y) == 1.f) continue;
      for (int f = 0; f < OccupancyGrid::kFeatures; ++f)
        CHECK(g.at(f, x, y) == 0.f);
    }
}

TEST_CASE("occupancy heading pi/2 lands in the sincos features") {
  const auto road = default_road();
  const auto cfg = obs_cfg();
  WorldState w;
  w.vehicles.push_back(put_vehicle(road, 0, VehicleKind::AV, 100.0, 0, 20.0));
  auto other = put_vehicle(road, 1, VehicleKind::HV, 110.0, 1, 15.0);
  other.world.heading = M_PI / 2.0;
  w.vehicles.push_back(other);
  w.mission_id = 1;
  const OccupancyGrid g = render_occupancy(w, road, cfg, 0, see_all(w, 0));
  bool found = false;
  for (int x = 0; x < g.width && !found; ++x)
    for (int y = 0; y < g.height && !found; ++y)
      if (g.at(0, x, y) == 1.f && g.at(1, x, y) > 5.f) {
        CHECK(g.at(5, x, y) == doctest::Approx(1.0));
        CHECK(g.at(6, x, y) == doctest::Approx(0.0).epsilon(1e-6));
        found = true;
      }
  CHECK(found);
}

TEST_CASE("two vehicles in one cell keep the nearer one") {
  const auto road = default_road();
  ObservationConfig cfg = obs_cfg();
  cfg.mpp_long = 8.0;  // coarse cells force the shared-cell case
  cfg.mpp_lat = 8.0;
  WorldState w;
  w.vehicles.push_back(put_vehicle(road, 0, VehicleKind::AV, 100.0, 0, 20.0));
  w.vehicles.push_back(put_vehicle(road, 1, VehicleKind::HV, 120.0, 0, 10.0));
  w.vehicles.push_back(put_vehicle(road, 2, VehicleKind::HV, 123.0, 0, 12.0));
  w.mission_id = 2;
  const OccupancyGrid g = render_occupancy(w, road, cfg, 0, see_all(w, 0));
  CHECK(g.overlap_drops == 1);
  bool found = false;
  for (int x = 0; x < g.width && !found; ++x)
    for (int y = 0; y < g.height && !found; ++y)
      if (g.at(0, x, y) == 1.f && g.at(1, x, y) > 10.f) {
        CHECK(g.at(1, x, y) == doctest::Approx(20.0));  // the nearer one
        found = true;
      }
  CHECK(found);
}

TEST_CASE("frame stacking pads, truncates, and rejects empties") {
  std::deque<VelocityMap> hist;
  CHECK_THROWS_AS(stack_frames(hist, 10), std::invalid_argument);

  auto tagged = [](float tag) {
    VelocityMap m(4, 2);
    m.at(0, 0, 0) = tag;
    return m;
  };
  for (int i = 0; i < 3; ++i) hist.push_back(tagged(static_cast<float>(i + 1)));
  const FrameStack padded = stack_frames(hist, 10);
  REQUIRE(padded.depth() == 10);
  for (int i = 0; i < 7; ++i) CHECK(padded.frames[i].at(0, 0, 0) == 1.f);
  CHECK(padded.frames[7].at(0, 0, 0) == 1.f);
  CHECK(padded.frames[8].at(0, 0, 0) == 2.f);
  CHECK(padded.frames[9].at(0, 0, 0) == 3.f);

  for (int i = 3; i < 25; ++i) hist.push_back(tagged(static_cast<float>(i + 1)));
  const FrameStack last10 = stack_frames(hist, 10);
  for (int i = 0; i < 10; ++i)
    CHECK(last10.frames[i].at(0, 0, 0) == static_cast<float>(16 + i));

  const FrameStack exact = stack_frames(std::deque<VelocityMap>(
                                            hist.end() - 10, hist.end()),
                                        10);
  for (int i = 0; i < 10; ++i)
    CHECK(exact.frames[i].at(0, 0, 0) == static_cast<float>(16 + i));
}
