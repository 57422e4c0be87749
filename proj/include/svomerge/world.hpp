#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "svomerge/dynamics.hpp"

namespace svo {

enum class MissionStatus : std::uint8_t { Pending, Merged, Failed };
const char* to_string(MissionStatus s);

struct CollisionEvent {
  int first;
  int second;
};

// What one agent can see: itself, its connected allies, and every human
// vehicle inside any connected ally's sensing radius.
struct PerceptionSet {
  int observer = -1;
  std::vector<int> visible_avs;  // includes the observer
  std::vector<int> visible_hvs;
};

struct WorldState {
  double t = 0.0;
  std::vector<VehicleState> vehicles;
  int mission_id = -1;
  std::uint64_t seed = 0;

  const VehicleState& vehicle(int id) const {
    for (const auto& v : vehicles)
      if (v.id == id) return v;
    throw std::out_of_range("no vehicle with that id");
  }
  VehicleState& vehicle(int id) {
    for (auto& v : vehicles)
      if (v.id == id) return v;
    throw std::out_of_range("no vehicle with that id");
  }
};

}  // namespace svo
