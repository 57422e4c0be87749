#pragma once

#include <deque>
#include <string>
#include <vector>

#include "svomerge/config.hpp"
#include "svomerge/geometry.hpp"
#include "svomerge/world.hpp"

namespace svo {

// Ego-centric multi-channel image; vehicle pixels carry the clipped-log
// encoding of relative longitudinal speed.
struct VelocityMap {
  static constexpr int kChannelAv = 0;
  static constexpr int kChannelHv = 1;
  static constexpr int kChannelRoad = 2;
  static constexpr int kChannelMission = 3;
  static constexpr int kChannels = 4;

  int width = 0;   // longitudinal pixels
  int height = 0;  // lateral pixels
  std::vector<float> data;  // [channel][x][y]

  VelocityMap() = default;
  VelocityMap(int w, int h)
      : width(w), height(h), data(static_cast<std::size_t>(kChannels) * w * h, 0.f) {}
  float& at(int c, int x, int y) {
    return data[(static_cast<std::size_t>(c) * width + x) * height + y];
  }
  float at(int c, int x, int y) const {
    return data[(static_cast<std::size_t>(c) * width + x) * height + y];
  }
};

// Sparse feature grid: each occupied cell holds
// [p, l, d, v_l, v_d, sin(yaw), cos(yaw)] relative to the observer
// (yaw stays global).
struct OccupancyGrid {
  static constexpr int kFeatures = 7;
  int width = 0;
  int height = 0;
  std::vector<float> data;  // [feature][x][y]
  int overlap_drops = 0;    // farther vehicle lost to a shared cell

  OccupancyGrid() = default;
  OccupancyGrid(int w, int h)
      : width(w), height(h), data(static_cast<std::size_t>(kFeatures) * w * h, 0.f) {}
  float& at(int f, int x, int y) {
    return data[(static_cast<std::size_t>(f) * width + x) * height + y];
  }
  float at(int f, int x, int y) const {
    return data[(static_cast<std::size_t>(f) * width + x) * height + y];
  }
};

// Temporal stack, oldest first.
struct FrameStack {
  std::vector<VelocityMap> frames;
  int depth() const { return static_cast<int>(frames.size()); }
};

// Clipped-logarithmic speed-to-pixel encoding:
// Z = 1 - beta * log(alpha * |v|) * H(|v| - v0), clamped to [0, 1],
// with H the Heaviside step and H(0) = 1.
double pixel_value(double v_rel, const PixelCodingParams& params);

VelocityMap render_velocity_map(const WorldState& world, const RoadNetwork& road,
                                const ObservationConfig& cfg, int observer_id,
                                const PerceptionSet& perception);

OccupancyGrid render_occupancy(const WorldState& world, const RoadNetwork& road,
                               const ObservationConfig& cfg, int observer_id,
                               const PerceptionSet& perception);

// Last `depth` frames oldest-first; shorter histories repeat the earliest
// frame. Empty history throws.
FrameStack stack_frames(const std::deque<VelocityMap>& history, int depth);

// Debug export of one channel as a binary portable graymap.
void write_pgm(const VelocityMap& map, int channel, const std::string& path);

}  // namespace svo
