#include "svomerge/episode_log.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace svo {

using nlohmann::json;

namespace {

json header_to_json(const LogHeader& h) {
  json roster = json::array();
  for (const auto& r : h.roster) {
    roster.push_back({{"id", r.id},
                      {"kind", r.kind},
                      {"is_mission", r.is_mission},
                      {"length", r.length},
                      {"width", r.width},
                      {"idm_v0", r.idm_v0},
                      {"spawn_l", r.spawn_l},
                      {"spawn_d", r.spawn_d},
                      {"spawn_v", r.spawn_v},
                      {"spawn_lane", r.spawn_lane}});
  }
  return {{"type", "header"},
          {"version", h.version},
          {"config_hash", h.config_hash},
          {"seed", h.seed},
          {"roster", roster}};
}

json step_to_json(const LogStep& s) {
  json vehicles = json::array();
  for (const auto& v : s.vehicles) {
    vehicles.push_back({{"id", v.id},
                        {"l", v.l},
                        {"d", v.d},
                        {"lane", v.lane},
                        {"v", v.v},
                        {"a", v.a},
                        {"yaw", v.yaw},
                        {"action", v.action},
                        {"done", v.done}});
  }
  json rewards = json::array();
  for (const auto& r : s.rewards) {
    rewards.push_back({{"agent", r.agent},
                       {"ego", r.ego},
                       {"coop", r.coop},
                       {"symp", r.symp},
                       {"total", r.total}});
  }
  json collisions = json::array();
  for (const auto& c : s.collisions) collisions.push_back({c.first, c.second});
  return {{"type", "step"},       {"t", s.t},           {"vehicles", vehicles},
          {"rewards", rewards},   {"mission", s.mission}, {"collisions", collisions}};
}

json end_to_json(const LogEnd& e) {
  json dist = json::object();
  for (const auto& [id, d] : e.distance) dist[std::to_string(id)] = d;
  return {{"type", "end"},
          {"crashed", e.crashed},
          {"mission", e.mission},
          {"steps", e.steps},
          {"distance", dist}};
}

[[noreturn]] void bad_record(std::size_t line, const std::string& why) {
  throw std::runtime_error("malformed episode log record at line " +
                           std::to_string(line) + ": " + why);
}

}  // namespace

void write_jsonl(const EpisodeLog& log, std::ostream& out) {
  out << header_to_json(log.header).dump() << '\n';
  for (const auto& s : log.steps) out << step_to_json(s).dump() << '\n';
  if (log.has_end) out << end_to_json(log.end).dump() << '\n';
}

void write_jsonl_file(const EpisodeLog& log, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  write_jsonl(log, out);
}

EpisodeLog parse_jsonl(std::istream& in) {
  EpisodeLog log;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded()) bad_record(line_no, "not valid JSON");
    try {
      const std::string type = j.at("type").get<std::string>();
      if (type == "header") {
        if (have_header) bad_record(line_no, "duplicate header");
        auto& h = log.header;
        h.version = j.at("version").get<int>();
        if (h.version != 1) bad_record(line_no, "unsupported schema version");
        h.config_hash = j.at("config_hash").get<std::string>();
        h.seed = j.at("seed").get<std::uint64_t>();
        for (const auto& r : j.at("roster")) {
          LogRosterEntry e;
          e.id = r.at("id").get<int>();
          e.kind = r.at("kind").get<std::string>();
          e.is_mission = r.at("is_mission").get<bool>();
          e.length = r.at("length").get<double>();
          e.width = r.at("width").get<double>();
          e.idm_v0 = r.at("idm_v0").get<double>();
          e.spawn_l = r.at("spawn_l").get<double>();
          e.spawn_d = r.at("spawn_d").get<double>();
          e.spawn_v = r.at("spawn_v").get<double>();
          e.spawn_lane = r.at("spawn_lane").get<int>();
          h.roster.push_back(e);
        }
        have_header = true;
      } else if (type == "step") {
        if (!have_header) bad_record(line_no, "step before header");
        if (log.has_end) bad_record(line_no, "step after end record");
        LogStep s;
        s.t = j.at("t").get<double>();
        for (const auto& v : j.at("vehicles")) {
          LogVehicle lv;
          lv.id = v.at("id").get<int>();
          lv.l = v.at("l").get<double>();
          lv.d = v.at("d").get<double>();
          lv.lane = v.at("lane").get<int>();
          lv.v = v.at("v").get<double>();
          lv.a = v.at("a").get<double>();
          lv.yaw = v.at("yaw").get<double>();
          lv.action = v.at("action").get<std::string>();
          lv.done = v.at("done").get<bool>();
          s.vehicles.push_back(lv);
        }
        for (const auto& r : j.at("rewards")) {
          LogRewards lr;
          lr.agent = r.at("agent").get<int>();
          lr.ego = r.at("ego").get<double>();
          lr.coop = r.at("coop").get<double>();
          lr.symp = r.at("symp").get<double>();
          lr.total = r.at("total").get<double>();
          s.rewards.push_back(lr);
        }
        s.mission = j.at("mission").get<std::string>();
        for (const auto& c : j.at("collisions")) {
          if (!c.is_array() || c.size() != 2) bad_record(line_no, "bad collision pair");
          s.collisions.emplace_back(c[0].get<int>(), c[1].get<int>());
        }
        log.steps.push_back(std::move(s));
      } else if (type == "end") {
        if (!have_header) bad_record(line_no, "end before header");
        if (log.has_end) bad_record(line_no, "duplicate end record");
        auto& e = log.end;
        e.crashed = j.at("crashed").get<bool>();
        e.mission = j.at("mission").get<std::string>();
        e.steps = j.at("steps").get<int>();
        for (const auto& [key, val] : j.at("distance").items())
          e.distance.emplace_back(std::stoi(key), val.get<double>());
        log.has_end = true;
      } else {
        bad_record(line_no, "unknown record type '" + type + "'");
      }
    } catch (const json::exception& ex) {
      bad_record(line_no, ex.what());
    }
  }
  if (!have_header) throw std::runtime_error("episode log has no header record");
  return log;
}

EpisodeLog parse_jsonl_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open episode log: " + path);
  return parse_jsonl(in);
}

}  // namespace svo

