#include "svomerge/observe.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace svo {

double pixel_value(double v_rel, const PixelCodingParams& p) {
  const double mag = std::abs(v_rel);
  if (mag < p.v0) return 1.0;  // H(|v|-v0) = 0 below the threshold
  const double z = 1.0 - p.beta * std::log(p.alpha * mag);
  return std::clamp(z, 0.0, 1.0);
}

namespace {

// Pixel frame around the observer: x grows downstream with `rear_fraction`
// of the width behind the ego; y grows to the right.
struct Frame {
  double l0;        // l at the rear edge of the frame
  double d0;        // d at the left edge (d decreases with y)
  double mpp_long;
  double mpp_lat;
  int w, h;

  double cell_l(int x) const { return l0 + (x + 0.5) * mpp_long; }
  double cell_d(int y) const { return d0 - (y + 0.5) * mpp_lat; }
  int to_x(double l) const {
    return static_cast<int>(std::floor((l - l0) / mpp_long));
  }
  int to_y(double d) const {
    return static_cast<int>(std::floor((d0 - d) / mpp_lat));
  }
  bool in_x(int x) const { return x >= 0 && x < w; }
  bool in_y(int y) const { return y >= 0 && y < h; }
};

Frame make_frame(const VehicleState& ego, const ObservationConfig& cfg) {
  Frame f;
  f.w = cfg.width_px;
  f.h = cfg.height_px;
  f.mpp_long = cfg.mpp_long;
  f.mpp_lat = cfg.mpp_lat;
  f.l0 = ego.frenet.l - cfg.rear_fraction * cfg.width_px * cfg.mpp_long;
  f.d0 = ego.frenet.d + 0.5 * cfg.height_px * cfg.mpp_lat;
  return f;
}

// Rasterize a footprint rectangle (axis-aligned in Frenet) into one channel;
// writes `value` into every cell whose center lies inside.
template <typename Grid>
void rasterize(Grid& grid, int channel, const Frame& f, double l_center,
               double d_center, double length, double width, float value) {
  const int x_lo = std::max(0, f.to_x(l_center - 0.5 * length));
  const int x_hi = std::min(f.w - 1, f.to_x(l_center + 0.5 * length));
  const int y_lo = std::max(0, f.to_y(d_center + 0.5 * width));
  const int y_hi = std::min(f.h - 1, f.to_y(d_center - 0.5 * width));
  for (int x = x_lo; x <= x_hi; ++x) {
    const double cl = f.cell_l(x);
    if (cl < l_center - 0.5 * length || cl >= l_center + 0.5 * length) continue;
    for (int y = y_lo; y <= y_hi; ++y) {
      const double cd = f.cell_d(y);
      if (cd <= d_center - 0.5 * width || cd > d_center + 0.5 * width) continue;
      grid.at(channel, x, y) = value;
    }
  }
}

}  // namespace

VelocityMap render_velocity_map(const WorldState& world, const RoadNetwork& road,
                                const ObservationConfig& cfg, int observer_id,
                                const PerceptionSet& perception) {
  const VehicleState& ego = world.vehicle(observer_id);
  VelocityMap map(cfg.width_px, cfg.height_px);
  const Frame f = make_frame(ego, cfg);

  // road layout plane: drivable cells of every lane existing at l
  for (int x = 0; x < f.w; ++x) {
    const double cl = f.cell_l(x);
    if (cl < 0.0 || cl > road.length()) continue;
    for (int y = 0; y < f.h; ++y) {
      const double cd = f.cell_d(y);
      for (int lane = 0; lane <= road.ramp_lane(); ++lane) {
        if (!road.lane_exists(lane, cl)) continue;
        if (std::abs(cd - road.lane_center_d(lane, cl)) <= 0.5 * road.lane_width()) {
          map.at(VelocityMap::kChannelRoad, x, y) = 1.f;
          break;
        }
      }
    }
  }

  const auto ego_vel =
      road.frenet_velocity(ego.frenet.l, ego.frenet.d, ego.world.heading, ego.speed);

  auto draw_vehicle = [&](const VehicleState& v, int channel) {
    const auto vel =
        road.frenet_velocity(v.frenet.l, v.frenet.d, v.world.heading, v.speed);
    const float z = static_cast<float>(pixel_value(vel.l_dot - ego_vel.l_dot, cfg.pixel));
    rasterize(map, channel, f, v.frenet.l, v.frenet.d, v.length, v.width, z);
  };

  for (int id : perception.visible_avs) {
    const VehicleState& v = world.vehicle(id);
    draw_vehicle(v, VelocityMap::kChannelAv);
    if (v.is_mission) draw_vehicle(v, VelocityMap::kChannelMission);
  }
  for (int id : perception.visible_hvs) {
    const VehicleState& v = world.vehicle(id);
    draw_vehicle(v, VelocityMap::kChannelHv);
    if (v.is_mission) draw_vehicle(v, VelocityMap::kChannelMission);
  }
  return map;
}

OccupancyGrid render_occupancy(const WorldState& world, const RoadNetwork& road,
                               const ObservationConfig& cfg, int observer_id,
                               const PerceptionSet& perception) {
  const VehicleState& ego = world.vehicle(observer_id);
  OccupancyGrid grid(cfg.width_px, cfg.height_px);
  const Frame f = make_frame(ego, cfg);
  const auto ego_vel =
      road.frenet_velocity(ego.frenet.l, ego.frenet.d, ego.world.heading, ego.speed);

  // nearer-to-observer distance of the vehicle occupying each cell
  std::vector<double> cell_dist(static_cast<std::size_t>(f.w) * f.h, -1.0);

  auto place = [&](const VehicleState& v) {
    const int x = f.to_x(v.frenet.l);
    const int y = f.to_y(v.frenet.d);
    if (!f.in_x(x) || !f.in_y(y)) return;  // off-frame: clipped
    const double dist = std::hypot(v.world.x - ego.world.x, v.world.y - ego.world.y);
    double& occupant = cell_dist[static_cast<std::size_t>(x) * f.h + y];
    if (occupant >= 0.0 && occupant <= dist) {
      ++grid.overlap_drops;
      return;
    }
    if (occupant >= 0.0) ++grid.overlap_drops;
    occupant = dist;
    const auto vel =
        road.frenet_velocity(v.frenet.l, v.frenet.d, v.world.heading, v.speed);
    grid.at(0, x, y) = 1.f;
    grid.at(1, x, y) = static_cast<float>(v.frenet.l - ego.frenet.l);
    grid.at(2, x, y) = static_cast<float>(v.frenet.d - ego.frenet.d);
    grid.at(3, x, y) = static_cast<float>(vel.l_dot - ego_vel.l_dot);
    grid.at(4, x, y) = static_cast<float>(vel.d_dot - ego_vel.d_dot);
    grid.at(5, x, y) = static_cast<float>(std::sin(v.world.heading));
    grid.at(6, x, y) = static_cast<float>(std::cos(v.world.heading));
  };

  for (int id : perception.visible_avs) place(world.vehicle(id));
  for (int id : perception.visible_hvs) place(world.vehicle(id));
  return grid;
}

FrameStack stack_frames(const std::deque<VelocityMap>& history, int depth) {
  if (history.empty()) throw std::invalid_argument("frame history is empty");
  FrameStack stack;
  stack.frames.reserve(depth);
  const int n = static_cast<int>(history.size());
  for (int i = 0; i < depth; ++i) {
    const int idx = n - depth + i;
    stack.frames.push_back(history[static_cast<std::size_t>(std::max(idx, 0))]);
  }
  return stack;
}

void write_pgm(const VelocityMap& map, int channel, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path);
  // rows = lateral (y), columns = longitudinal (x)
  out << "P5\n" << map.width << " " << map.height << "\n255\n";
  for (int y = 0; y < map.height; ++y)
    for (int x = 0; x < map.width; ++x) {
      const float v = std::clamp(map.at(channel, x, y), 0.f, 1.f);
      out.put(static_cast<char>(std::lround(v * 255.f)));
    }
}

}  // namespace svo

