#include "svomerge/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>

namespace svo {

using nlohmann::json;

namespace {

// Walks one JSON object level: typed reads with defaults, error collection,
// and unknown-key detection on destruction of the tree walk.
class Reader {
 public:
  Reader(const json& j, std::string path, std::vector<std::string>& errors)
      : j_(j), path_(std::move(path)), errors_(errors) {
    if (!j_.is_object())
      errors_.push_back(path_ + ": expected an object");
  }

  template <typename T>
  T get(const std::string& key, T def) {
    seen_.insert(key);
    if (!j_.is_object() || !j_.contains(key)) return def;
    try {
      return j_.at(key).get<T>();
    } catch (const json::exception&) {
      errors_.push_back(path_ + "." + key + ": wrong type");
      return def;
    }
  }

  bool has(const std::string& key) {
    return j_.is_object() && j_.contains(key);
  }

  const json* raw(const std::string& key) {
    seen_.insert(key);
    if (!has(key)) return nullptr;
    return &j_.at(key);
  }

  json sub(const std::string& key) {
    seen_.insert(key);
    if (!j_.is_object() || !j_.contains(key)) return json::object();
    const json& s = j_.at(key);
    if (!s.is_object()) {
      errors_.push_back(path_ + "." + key + ": expected an object");
      return json::object();
    }
    return s;
  }

  void finish() {
    if (!j_.is_object()) return;
    for (auto it = j_.begin(); it != j_.end(); ++it) {
      if (!seen_.count(it.key()))
        errors_.push_back(path_ + "." + it.key() + ": unknown key");
    }
  }

  std::string path() const { return path_; }
  std::vector<std::string>& errors() { return errors_; }

 private:
  const json& j_;
  std::string path_;
  std::vector<std::string>& errors_;
  std::set<std::string> seen_;
};

void require(bool ok, const std::string& what, std::vector<std::string>& errors) {
  if (!ok) errors.push_back(what);
}

VehicleKind parse_kind(const std::string& s, const std::string& path,
                       std::vector<std::string>& errors) {
  if (s == "av") return VehicleKind::AV;
  if (s == "hv") return VehicleKind::HV;
  errors.push_back(path + ": expected \"av\" or \"hv\"");
  return VehicleKind::HV;
}

std::string kind_str(VehicleKind k) { return k == VehicleKind::AV ? "av" : "hv"; }

}  // namespace

void Config::apply_reward_preset() {
  auto& r = reward;
  if (r.preset == "e") {
    r.lambda_e = 1; r.lambda_c = 0; r.lambda_s = 0;
  } else if (r.preset == "c") {
    r.lambda_e = 1; r.lambda_c = 1; r.lambda_s = 0;
  } else if (r.preset == "s") {
    r.lambda_e = 1; r.lambda_c = 0; r.lambda_s = 1;
  } else if (r.preset == "sc") {
    r.lambda_e = 1; r.lambda_c = 1; r.lambda_s = 1;
  }
  // "custom": keep explicit lambdas
}

Config parse_config(const json& j) {
  std::vector<std::string> errors;
  Config c;

  Reader root(j, "config", errors);

  {
    json sj = root.sub("scenario");
    Reader s(sj, "scenario", errors);
    auto& sc = c.scenario;
    sc.road.highway_lanes = s.get<int>("lane_count", 2);
    sc.road.road_length = s.get<double>("road_length", 500.0);
    sc.road.ramp_start = s.get<double>("ramp_start", 250.0);
    sc.road.ramp_end = s.get<double>("ramp_end", 400.0);
    sc.road.lane_width = s.get<double>("lane_width", 4.0);
    sc.road.ramp_gap = s.get<double>("ramp_gap", 2.0);
    sc.n_avs = s.get<int>("n_avs", 4);
    sc.n_hvs = s.get<int>("n_hvs", 4);
    sc.mission_kind = parse_kind(s.get<std::string>("mission", "hv"),
                                 "scenario.mission", errors);
    sc.randomness_scale = s.get<int>("randomness_scale", 1);
    require(sc.randomness_scale == 1 || sc.randomness_scale == 2 ||
                sc.randomness_scale == 4,
            "scenario.randomness_scale: must be 1, 2, or 4", errors);
    require(sc.road.highway_lanes >= 1, "scenario.lane_count: must be >= 1", errors);
    require(sc.road.road_length > 0, "scenario.road_length: must be > 0", errors);
    require(sc.road.ramp_end > sc.road.ramp_start,
            "scenario.ramp_end: must exceed ramp_start", errors);
    require(sc.n_avs >= 0 && sc.n_hvs >= 0,
            "scenario.n_avs/n_hvs: must be >= 0", errors);

    json spj = s.sub("spawn");
    Reader sp(spj, "scenario.spawn", errors);
    auto& w = sc.spawn;
    w.platoon_front_l = sp.get<double>("platoon_front_l", 150.0);
    w.headway = sp.get<double>("headway", 26.0);
    w.l_std = sp.get<double>("l_std", 6.0);
    w.l_halfwidth = sp.get<double>("l_halfwidth", 14.0);
    w.v_mean = sp.get<double>("v_mean", 23.0);
    w.v_std = sp.get<double>("v_std", 1.5);
    w.v_halfwidth = sp.get<double>("v_halfwidth", 4.0);
    w.mission_l_mean = sp.get<double>("mission_l_mean", 40.0);
    w.mission_l_std = sp.get<double>("mission_l_std", 8.0);
    w.mission_l_halfwidth = sp.get<double>("mission_l_halfwidth", 20.0);
    w.mission_v_mean = sp.get<double>("mission_v_mean", 20.0);
    w.mission_v_std = sp.get<double>("mission_v_std", 1.0);
    w.mission_v_halfwidth = sp.get<double>("mission_v_halfwidth", 3.0);
    w.min_gap = sp.get<double>("min_gap", 10.0);
    w.max_attempts = sp.get<int>("max_attempts", 100);
    if (const json* arr = sp.raw("arrangement")) {
      if (!arr->is_array()) {
        errors.push_back("scenario.spawn.arrangement: expected an array");
      } else {
        int idx = 0;
        for (const auto& e : *arr) {
          Reader er(e, "scenario.spawn.arrangement[" + std::to_string(idx) + "]",
                    errors);
          SpawnSlot slot;
          slot.kind = parse_kind(er.get<std::string>("kind", "hv"),
                                 er.path() + ".kind", errors);
          slot.lane = er.get<int>("lane", sc.road.highway_lanes - 1);
          er.finish();
          w.arrangement.push_back(slot);
          ++idx;
        }
      }
    }
    sp.finish();
    s.finish();
  }

  {
    json dj = root.sub("dynamics");
    Reader d(dj, "dynamics", errors);
    auto& dy = c.dynamics;
    dy.bicycle.wheelbase = d.get<double>("wheelbase", 2.8);
    dy.bicycle.limits.accel_min = d.get<double>("accel_min", -5.0);
    dy.bicycle.limits.accel_max = d.get<double>("accel_max", 3.0);
    dy.bicycle.limits.steer_max = d.get<double>("steer_max", 0.3);
    dy.bicycle.limits.v_phys_max = d.get<double>("v_phys_max", 40.0);
    dy.meta.delta_v = d.get<double>("delta_v", 2.0);
    dy.meta.target_speed_max = d.get<double>("target_speed_max", 40.0);
    dy.vehicle_length = d.get<double>("vehicle_length", 5.0);
    dy.vehicle_width = d.get<double>("vehicle_width", 2.0);
    dy.substeps = d.get<int>("substeps", 15);
    dy.decision_dt = d.get<double>("decision_dt", 1.0);
    require(dy.substeps >= 1, "dynamics.substeps: must be >= 1", errors);
    require(dy.decision_dt > 0, "dynamics.decision_dt: must be > 0", errors);

    json pj = d.sub("pid");
    Reader p(pj, "dynamics.pid", errors);
    auto& g = dy.pid;
    g.kp_speed = p.get<double>("kp_speed", 1.2);
    g.ki_speed = p.get<double>("ki_speed", 0.05);
    g.kd_speed = p.get<double>("kd_speed", 0.0);
    g.integral_cap = p.get<double>("integral_cap", 4.0);
    g.kp_lat = p.get<double>("kp_lat", 1.0);
    g.kp_head = p.get<double>("kp_head", 5.0);
    g.course_max = p.get<double>("course_max", 0.35);
    g.v_floor = p.get<double>("v_floor", 2.0);
    p.finish();
    d.finish();
  }

  {
    json dj = root.sub("drivers");
    Reader d(dj, "drivers", errors);
    auto& dr = c.drivers;
    json ij = d.sub("idm");
    Reader i(ij, "drivers.idm", errors);
    dr.idm.desired_speed_mean = i.get<double>("desired_speed_mean", 25.0);
    dr.idm.desired_speed_std = i.get<double>("desired_speed_std", 2.0);
    dr.idm.desired_speed_min = i.get<double>("desired_speed_min", 20.0);
    dr.idm.desired_speed_max = i.get<double>("desired_speed_max", 30.0);
    dr.idm.base.time_headway = i.get<double>("time_headway", 1.5);
    dr.idm.base.max_accel = i.get<double>("max_accel", 1.5);
    dr.idm.base.comfort_decel = i.get<double>("comfort_decel", 2.0);
    dr.idm.base.jam_distance = i.get<double>("jam_distance", 2.0);
    dr.idm.base.exponent = i.get<double>("exponent", 4.0);
    dr.idm.base.emergency_decel = i.get<double>("emergency_decel", 8.0);
    dr.idm.base.desired_speed = dr.idm.desired_speed_mean;
    i.finish();
    json mj = d.sub("mobil");
    Reader m(mj, "drivers.mobil", errors);
    dr.mobil.politeness = m.get<double>("politeness", 0.3);
    dr.mobil.accel_gain_threshold = m.get<double>("threshold", 0.2);
    dr.mobil.safe_decel = m.get<double>("safe_decel", 4.0);
    require(dr.mobil.politeness >= 0.0 && dr.mobil.politeness <= 1.0,
            "drivers.mobil.politeness: must be in [0, 1]", errors);
    m.finish();
    dr.hv_sensing_radius = d.get<double>("sensing_radius", 80.0);
    d.finish();
  }

  {
    json ej = root.sub("env");
    Reader e(ej, "env", errors);
    c.env.horizon_s = e.get<double>("horizon_s", 60.0);
    c.env.v2v_range = e.get<double>("v2v_range", -1.0);
    c.env.av_sensing_radius = e.get<double>("av_sensing_radius", 80.0);
    c.env.merge_center_tolerance = e.get<double>("merge_center_tolerance", 0.5);
    c.env.ramp_stop_margin = e.get<double>("ramp_stop_margin", 5.0);
    require(c.env.horizon_s > 0, "env.horizon_s: must be > 0", errors);
    e.finish();
  }

  {
    json oj = root.sub("observation");
    Reader o(oj, "observation", errors);
    auto& ob = c.observation;
    ob.type = o.get<std::string>("type", "velocity_map");
    require(ob.type == "velocity_map" || ob.type == "occupancy",
            "observation.type: must be velocity_map or occupancy", errors);
    ob.width_px = o.get<int>("width_px", 128);
    ob.height_px = o.get<int>("height_px", 32);
    ob.mpp_long = o.get<double>("mpp_long", 1.0);
    ob.mpp_lat = o.get<double>("mpp_lat", 0.5);
    ob.rear_fraction = o.get<double>("rear_fraction", 0.3);
    ob.frames = o.get<int>("frames", 10);
    require(ob.width_px > 0 && ob.height_px > 0,
            "observation.width_px/height_px: must be > 0", errors);
    require(ob.frames >= 1, "observation.frames: must be >= 1", errors);
    json pj = o.sub("pixel");
    Reader p(pj, "observation.pixel", errors);
    ob.pixel.alpha = p.get<double>("alpha", 2.0);
    ob.pixel.beta = p.get<double>("beta", 1.0 / std::log(40.0));
    ob.pixel.v0 = p.get<double>("v0", 0.5);
    require(ob.pixel.alpha > 0 && ob.pixel.beta > 0 && ob.pixel.v0 > 0,
            "observation.pixel: coefficients must be > 0", errors);
    p.finish();
    o.finish();
  }

  {
    json rj = root.sub("reward");
    Reader r(rj, "reward", errors);
    auto& rw = c.reward;
    rw.preset = r.get<std::string>("preset", "sc");
    require(rw.preset == "e" || rw.preset == "c" || rw.preset == "s" ||
                rw.preset == "sc" || rw.preset == "custom",
            "reward.preset: must be one of e, c, s, sc, custom", errors);
    rw.lambda_e = r.get<double>("lambda_e", 1.0);
    rw.lambda_c = r.get<double>("lambda_c", 1.0);
    rw.lambda_s = r.get<double>("lambda_s", 1.0);
    rw.eta = r.get<double>("eta", 1.0);
    rw.psi = r.get<double>("psi", 1.0);
    rw.d_floor = r.get<double>("d_floor", 2.0);
    rw.v_norm = r.get<double>("v_norm", 30.0);
    rw.w_speed = r.get<double>("w_speed", 1.0);
    rw.w_jerk = r.get<double>("w_jerk", 0.1);
    rw.w_crash = r.get<double>("w_crash", 5.0);
    rw.jerk_norm = r.get<double>("jerk_norm", 8.0);
    rw.aggregate = r.get<std::string>("aggregate", "mean");
    require(rw.aggregate == "mean" || rw.aggregate == "sum",
            "reward.aggregate: must be mean or sum", errors);
    require(rw.lambda_e >= 0 && rw.lambda_c >= 0 && rw.lambda_s >= 0,
            "reward.lambda_*: must be >= 0", errors);
    require(rw.eta > 0, "reward.eta: must be > 0", errors);
    require(rw.d_floor > 0, "reward.d_floor: must be > 0", errors);
    require(rw.v_norm > 0, "reward.v_norm: must be > 0", errors);
    r.finish();
    c.apply_reward_preset();
    require(c.reward.lambda_e > 0 || c.reward.lambda_c > 0 || c.reward.lambda_s > 0,
            "reward: at least one lambda must be positive", errors);
  }

  {
    json tj = root.sub("training");
    Reader t(tj, "training", errors);
    auto& tr = c.training;
    tr.iterations = t.get<long long>("iterations", 720000);
    tr.batch_size = t.get<int>("batch_size", 32);
    tr.lr = t.get<double>("lr", 0.0005);
    tr.gamma = t.get<double>("gamma", 0.95);
    tr.target_update = t.get<int>("target_update", 200);
    tr.eps_start = t.get<double>("eps_start", 1.0);
    tr.eps_end = t.get<double>("eps_end", 0.1);
    tr.eps_decay_fraction = t.get<double>("eps_decay_fraction", 0.7);
    tr.replay_capacity = t.get<int>("replay_capacity", 10000);
    tr.replay_min = t.get<int>("replay_min", 1000);
    tr.phase_episodes = t.get<int>("phase_episodes", 50);
    tr.train_every = t.get<int>("train_every", 1);
    tr.importance_sampling = t.get<bool>("importance_sampling", false);
    tr.ally_exploration = t.get<bool>("ally_exploration", false);
    tr.checkpoint_every = t.get<long long>("checkpoint_every", 10000);
    tr.csv_every = t.get<long long>("csv_every", 100);
    require(tr.iterations >= 0, "training.iterations: must be >= 0", errors);
    require(tr.batch_size >= 1, "training.batch_size: must be >= 1", errors);
    require(tr.gamma >= 0 && tr.gamma < 1, "training.gamma: must be in [0, 1)",
            errors);
    require(tr.replay_capacity >= 1, "training.replay_capacity: must be >= 1",
            errors);
    require(tr.replay_min >= tr.batch_size,
            "training.replay_min: must be >= batch_size", errors);
    require(tr.train_every >= 1, "training.train_every: must be >= 1", errors);
    require(!tr.importance_sampling,
            "training.importance_sampling: correction not applied in this build",
            errors);

    json prj = t.sub("priority");
    Reader pr(prj, "training.priority", errors);
    tr.priority.c1 = pr.get<double>("c1", 0.5);
    tr.priority.c2 = pr.get<double>("c2", 0.5);
    tr.priority.length_scale = pr.get<double>("length_scale", 50.0);
    require(tr.priority.length_scale > 0,
            "training.priority.length_scale: must be > 0", errors);
    pr.finish();

    json nj = t.sub("net");
    Reader n(nj, "training.net", errors);
    tr.net.temporal_padding = n.get<std::string>("temporal_padding", "valid");
    require(tr.net.temporal_padding == "valid" || tr.net.temporal_padding == "same",
            "training.net.temporal_padding: must be valid or same", errors);
    if (const json* conv = n.raw("conv")) {
      if (!conv->is_array()) {
        errors.push_back("training.net.conv: expected an array");
      } else {
        tr.net.conv.clear();
        int idx = 0;
        for (const auto& e : *conv) {
          Reader er(e, "training.net.conv[" + std::to_string(idx) + "]", errors);
          ConvStage st;
          st.channels = er.get<int>("channels", 16);
          st.kt = er.get<int>("kt", 3);
          st.ks = er.get<int>("ks", 3);
          st.pool = er.get<bool>("pool", true);
          require(st.ks == 3, er.path() + ".ks: only 3 supported", errors);
          require(st.kt >= 1, er.path() + ".kt: must be >= 1", errors);
          require(st.channels >= 1, er.path() + ".channels: must be >= 1", errors);
          er.finish();
          tr.net.conv.push_back(st);
          ++idx;
        }
      }
    }
    if (const json* dense = n.raw("dense")) {
      if (!dense->is_array()) {
        errors.push_back("training.net.dense: expected an array");
      } else {
        tr.net.dense.clear();
        for (const auto& e : *dense) {
          if (!e.is_number_integer() || e.get<int>() < 1) {
            errors.push_back("training.net.dense: entries must be positive integers");
          } else {
            tr.net.dense.push_back(e.get<int>());
          }
        }
      }
    }
    n.finish();
    t.finish();
  }

  {
    json ej = root.sub("evaluation");
    Reader e(ej, "evaluation", errors);
    c.evaluation.episodes = e.get<int>("episodes", 100);
    if (e.has("randomness_scale"))
      c.evaluation.randomness_scale = e.get<int>("randomness_scale", 1);
    require(c.evaluation.episodes >= 1, "evaluation.episodes: must be >= 1",
            errors);
    if (c.evaluation.randomness_scale) {
      const int rs = *c.evaluation.randomness_scale;
      require(rs == 1 || rs == 2 || rs == 4,
              "evaluation.randomness_scale: must be 1, 2, or 4", errors);
    }
    e.finish();
  }

  root.finish();

  if (!errors.empty()) {
    std::string msg = "invalid config (" + std::to_string(errors.size()) + " problem";
    if (errors.size() > 1) msg += "s";
    msg += "): ";
    for (std::size_t i = 0; i < errors.size(); ++i) {
      if (i) msg += "; ";
      msg += errors[i];
    }
    throw ConfigError(msg, errors);
  }
  return c;
}

json Config::to_json() const {
  json j;
  auto& s = j["scenario"];
  s["lane_count"] = scenario.road.highway_lanes;
  s["road_length"] = scenario.road.road_length;
  s["ramp_start"] = scenario.road.ramp_start;
  s["ramp_end"] = scenario.road.ramp_end;
  s["lane_width"] = scenario.road.lane_width;
  s["ramp_gap"] = scenario.road.ramp_gap;
  s["n_avs"] = scenario.n_avs;
  s["n_hvs"] = scenario.n_hvs;
  s["mission"] = kind_str(scenario.mission_kind);
  s["randomness_scale"] = scenario.randomness_scale;
  auto& sp = s["spawn"];
  sp["platoon_front_l"] = scenario.spawn.platoon_front_l;
  sp["headway"] = scenario.spawn.headway;
  sp["l_std"] = scenario.spawn.l_std;
  sp["l_halfwidth"] = scenario.spawn.l_halfwidth;
  sp["v_mean"] = scenario.spawn.v_mean;
  sp["v_std"] = scenario.spawn.v_std;
  sp["v_halfwidth"] = scenario.spawn.v_halfwidth;
  sp["mission_l_mean"] = scenario.spawn.mission_l_mean;
  sp["mission_l_std"] = scenario.spawn.mission_l_std;
  sp["mission_l_halfwidth"] = scenario.spawn.mission_l_halfwidth;
  sp["mission_v_mean"] = scenario.spawn.mission_v_mean;
  sp["mission_v_std"] = scenario.spawn.mission_v_std;
  sp["mission_v_halfwidth"] = scenario.spawn.mission_v_halfwidth;
  sp["min_gap"] = scenario.spawn.min_gap;
  sp["max_attempts"] = scenario.spawn.max_attempts;
  if (!scenario.spawn.arrangement.empty()) {
    json arr = json::array();
    for (const auto& slot : scenario.spawn.arrangement)
      arr.push_back({{"kind", kind_str(slot.kind)}, {"lane", slot.lane}});
    sp["arrangement"] = arr;
  }

  auto& d = j["dynamics"];
  d["wheelbase"] = dynamics.bicycle.wheelbase;
  d["accel_min"] = dynamics.bicycle.limits.accel_min;
  d["accel_max"] = dynamics.bicycle.limits.accel_max;
  d["steer_max"] = dynamics.bicycle.limits.steer_max;
  d["v_phys_max"] = dynamics.bicycle.limits.v_phys_max;
  d["delta_v"] = dynamics.meta.delta_v;
  d["target_speed_max"] = dynamics.meta.target_speed_max;
  d["vehicle_length"] = dynamics.vehicle_length;
  d["vehicle_width"] = dynamics.vehicle_width;
  d["substeps"] = dynamics.substeps;
  d["decision_dt"] = dynamics.decision_dt;
  auto& p = d["pid"];
  p["kp_speed"] = dynamics.pid.kp_speed;
  p["ki_speed"] = dynamics.pid.ki_speed;
  p["kd_speed"] = dynamics.pid.kd_speed;
  p["integral_cap"] = dynamics.pid.integral_cap;
  p["kp_lat"] = dynamics.pid.kp_lat;
  p["kp_head"] = dynamics.pid.kp_head;
  p["course_max"] = dynamics.pid.course_max;
  p["v_floor"] = dynamics.pid.v_floor;

  auto& dr = j["drivers"];
  auto& i = dr["idm"];
  i["desired_speed_mean"] = drivers.idm.desired_speed_mean;
  i["desired_speed_std"] = drivers.idm.desired_speed_std;
  i["desired_speed_min"] = drivers.idm.desired_speed_min;
  i["desired_speed_max"] = drivers.idm.desired_speed_max;
  i["time_headway"] = drivers.idm.base.time_headway;
  i["max_accel"] = drivers.idm.base.max_accel;
  i["comfort_decel"] = drivers.idm.base.comfort_decel;
  i["jam_distance"] = drivers.idm.base.jam_distance;
  i["exponent"] = drivers.idm.base.exponent;
  i["emergency_decel"] = drivers.idm.base.emergency_decel;
  auto& m = dr["mobil"];
  m["politeness"] = drivers.mobil.politeness;
  m["threshold"] = drivers.mobil.accel_gain_threshold;
  m["safe_decel"] = drivers.mobil.safe_decel;
  dr["sensing_radius"] = drivers.hv_sensing_radius;

  auto& e = j["env"];
  e["horizon_s"] = env.horizon_s;
  e["v2v_range"] = env.v2v_range;
  e["av_sensing_radius"] = env.av_sensing_radius;
  e["merge_center_tolerance"] = env.merge_center_tolerance;
  e["ramp_stop_margin"] = env.ramp_stop_margin;

  auto& o = j["observation"];
  o["type"] = observation.type;
  o["width_px"] = observation.width_px;
  o["height_px"] = observation.height_px;
  o["mpp_long"] = observation.mpp_long;
  o["mpp_lat"] = observation.mpp_lat;
  o["rear_fraction"] = observation.rear_fraction;
  o["frames"] = observation.frames;
  o["pixel"] = {{"alpha", observation.pixel.alpha},
                {"beta", observation.pixel.beta},
                {"v0", observation.pixel.v0}};

  auto& r = j["reward"];
  r["preset"] = reward.preset;
  r["lambda_e"] = reward.lambda_e;
  r["lambda_c"] = reward.lambda_c;
  r["lambda_s"] = reward.lambda_s;
  r["eta"] = reward.eta;
  r["psi"] = reward.psi;
  r["d_floor"] = reward.d_floor;
  r["v_norm"] = reward.v_norm;
  r["w_speed"] = reward.w_speed;
  r["w_jerk"] = reward.w_jerk;
  r["w_crash"] = reward.w_crash;
  r["jerk_norm"] = reward.jerk_norm;
  r["aggregate"] = reward.aggregate;

  auto& t = j["training"];
  t["iterations"] = training.iterations;
  t["batch_size"] = training.batch_size;
  t["lr"] = training.lr;
  t["gamma"] = training.gamma;
  t["target_update"] = training.target_update;
  t["eps_start"] = training.eps_start;
  t["eps_end"] = training.eps_end;
  t["eps_decay_fraction"] = training.eps_decay_fraction;
  t["replay_capacity"] = training.replay_capacity;
  t["replay_min"] = training.replay_min;
  t["phase_episodes"] = training.phase_episodes;
  t["train_every"] = training.train_every;
  t["importance_sampling"] = training.importance_sampling;
  t["ally_exploration"] = training.ally_exploration;
  t["checkpoint_every"] = training.checkpoint_every;
  t["csv_every"] = training.csv_every;
  t["priority"] = {{"c1", training.priority.c1},
                   {"c2", training.priority.c2},
                   {"length_scale", training.priority.length_scale}};
  json conv = json::array();
  for (const auto& st : training.net.conv)
    conv.push_back({{"channels", st.channels},
                    {"kt", st.kt},
                    {"ks", st.ks},
                    {"pool", st.pool}});
  t["net"] = {{"conv", conv},
              {"dense", training.net.dense},
              {"temporal_padding", training.net.temporal_padding}};

  auto& ev = j["evaluation"];
  ev["episodes"] = evaluation.episodes;
  if (evaluation.randomness_scale)
    ev["randomness_scale"] = *evaluation.randomness_scale;

  return j;
}

std::string Config::hash() const {
  const std::string s = to_json().dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[19];
  std::snprintf(buf, sizeof(buf), "0x%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Config load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& ex) {
    throw ConfigError("config is not valid JSON: " + std::string(ex.what()));
  }
  return parse_config(j);
}

Config default_config() { return parse_config(json::object()); }

json apply_overrides(json j, const std::vector<std::string>& overrides) {
  for (const auto& ov : overrides) {
    const auto eq = ov.find('=');
    if (eq == std::string::npos)
      throw ConfigError("override must look like path.to.key=value: " + ov);
    const std::string path = ov.substr(0, eq);
    const std::string value = ov.substr(eq + 1);
    json* node = &j;
    std::size_t pos = 0;
    while (true) {
      const auto dot = path.find('.', pos);
      const std::string key = path.substr(pos, dot - pos);
      if (key.empty()) throw ConfigError("bad override path: " + ov);
      if (dot == std::string::npos) {
        json parsed = json::parse(value, nullptr, false);
        (*node)[key] = parsed.is_discarded() ? json(value) : parsed;
        break;
      }
      node = &(*node)[key];
      pos = dot + 1;
    }
  }
  return j;
}

}  // namespace svo
