#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace svo {

// JSON-lines episode trace: one header record, one record per decision step,
// and one end record. The step records carry everything needed to re-render
// observations offline.

struct LogRosterEntry {
  int id = 0;
  std::string kind;  // "av" | "hv"
  bool is_mission = false;
  double length = 0, width = 0;
  double idm_v0 = 0;  // sampled desired speed (HVs)
  double spawn_l = 0, spawn_d = 0, spawn_v = 0;
  int spawn_lane = 0;
};

struct LogHeader {
  int version = 1;
  std::string config_hash;
  std::uint64_t seed = 0;
  std::vector<LogRosterEntry> roster;
};

struct LogVehicle {
  int id = 0;
  double l = 0, d = 0;
  int lane = 0;
  double v = 0, a = 0, yaw = 0;
  std::string action;  // meta-action for AVs, lane-change tag for HVs, "" otherwise
  bool done = false;
};

struct LogRewards {
  int agent = 0;
  double ego = 0, coop = 0, symp = 0, total = 0;
};

struct LogStep {
  double t = 0;
  std::vector<LogVehicle> vehicles;
  std::vector<LogRewards> rewards;
  std::string mission;  // pending | merged | failed
  std::vector<std::pair<int, int>> collisions;
};

struct LogEnd {
  bool crashed = false;
  std::string mission;
  int steps = 0;
  std::vector<std::pair<int, double>> distance;  // per vehicle id, final l - spawn l
};

struct EpisodeLog {
  LogHeader header;
  std::vector<LogStep> steps;
  LogEnd end;
  bool has_end = false;
};

void write_jsonl(const EpisodeLog& log, std::ostream& out);
void write_jsonl_file(const EpisodeLog& log, const std::string& path);

// Throws std::runtime_error naming the first malformed record (1-based line).
EpisodeLog parse_jsonl(std::istream& in);
EpisodeLog parse_jsonl_file(const std::string& path);

}  // namespace svo
