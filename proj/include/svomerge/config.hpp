#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "svomerge/drivers.hpp"
#include "svomerge/dynamics.hpp"
#include "svomerge/geometry.hpp"

namespace svo {

// Thrown on schema violations; `details` lists every offending key.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& msg, std::vector<std::string> bad = {})
      : std::runtime_error(msg), details(std::move(bad)) {}
  std::vector<std::string> details;
};

struct SpawnSlot {
  VehicleKind kind;
  int lane;
};

struct SpawnConfig {
  double platoon_front_l = 150.0;  // l of the most downstream highway slot (m)
  double headway = 26.0;           // mean slot spacing (m)
  double l_std = 6.0;              // position std at randomness scale 1 (m)
  double l_halfwidth = 14.0;       // clip half-range at scale 1 (m)
  double v_mean = 23.0;            // m/s
  double v_std = 1.5;
  double v_halfwidth = 4.0;
  double mission_l_mean = 40.0;
  double mission_l_std = 8.0;
  double mission_l_halfwidth = 20.0;
  double mission_v_mean = 20.0;
  double mission_v_std = 1.0;
  double mission_v_halfwidth = 3.0;
  double min_gap = 10.0;     // bumper gap below which a draw is rejected (m)
  int max_attempts = 100;
  std::vector<SpawnSlot> arrangement;  // empty -> generated default
};

struct ScenarioConfig {
  RoadConfig road;
  int n_avs = 4;
  int n_hvs = 4;
  VehicleKind mission_kind = VehicleKind::HV;
  int randomness_scale = 1;  // {1, 2, 4}: multiplies spawn stds and clip ranges
  SpawnConfig spawn;
};

struct IdmPopulation {
  IdmParams base;
  double desired_speed_mean = 25.0;
  double desired_speed_std = 2.0;
  double desired_speed_min = 20.0;
  double desired_speed_max = 30.0;
};

struct DriversConfig {
  IdmPopulation idm;
  MobilParams mobil;
  double hv_sensing_radius = 80.0;  // line-of-sight range of human drivers (m)
};

struct DynamicsConfig {
  BicycleParams bicycle;
  MetaActionParams meta;
  PidGains pid;
  double vehicle_length = 5.0;
  double vehicle_width = 2.0;
  int substeps = 15;        // physics sub-steps per decision
  double decision_dt = 1.0; // policy period (s)
};

struct EnvConfig {
  double horizon_s = 60.0;
  double v2v_range = -1.0;           // <0: unlimited AV-to-AV connectivity
  double av_sensing_radius = 80.0;   // HV detection range of one AV (m)
  double merge_center_tolerance = 0.5;  // |d - lane center| for Merged (m)
  double ramp_stop_margin = 5.0;     // distance before ramp end where a ramp
                                     // vehicle is forced to a stop (m)
};

struct PixelCodingParams {
  double alpha = 2.0;
  double beta = 0.0;  // 0 -> 1/ln(40), set in defaults
  double v0 = 0.5;    // speed threshold (m/s)
};

struct ObservationConfig {
  std::string type = "velocity_map";  // or "occupancy"
  int width_px = 128;                 // longitudinal
  int height_px = 32;                 // lateral
  double mpp_long = 1.0;              // meters per pixel
  double mpp_lat = 0.5;
  double rear_fraction = 0.3;         // share of the frame behind the ego
  int frames = 10;                    // temporal stack depth
  PixelCodingParams pixel;
};

struct RewardConfig {
  std::string preset = "sc";  // e | c | s | sc | custom
  double lambda_e = 1.0;
  double lambda_c = 1.0;
  double lambda_s = 1.0;
  double eta = 1.0;
  double psi = 1.0;
  double d_floor = 2.0;   // distance floor in the sympathy kernel (m)
  double v_norm = 30.0;   // speed normalizer for utilities (m/s)
  double w_speed = 1.0;
  double w_jerk = 0.1;
  double w_crash = 5.0;
  double jerk_norm = 8.0;       // |delta a| normalizer (m/s^2)
  std::string aggregate = "mean";  // mean | sum over allies / sympathy targets
};

struct ConvStage {
  int channels = 16;
  int kt = 3;  // temporal extent
  int ks = 3;  // spatial extent (ks x ks)
  bool pool = true;  // 2x2 spatial max pool after activation
};

struct NetConfig {
  std::vector<ConvStage> conv{{16, 3, 3, true}, {32, 3, 3, true}};
  std::vector<int> dense{256};
  std::string temporal_padding = "valid";  // valid | same
};

struct PriorityConfig {
  double c1 = 0.5;
  double c2 = 0.5;
  double length_scale = 50.0;  // m
};

struct TrainingConfig {
  long long iterations = 720000;  // gradient steps
  int batch_size = 32;
  double lr = 0.0005;
  double gamma = 0.95;
  int target_update = 200;
  double eps_start = 1.0;
  double eps_end = 0.1;
  double eps_decay_fraction = 0.7;  // of total iterations
  int replay_capacity = 10000;
  int replay_min = 1000;       // warmup transitions before learning
  PriorityConfig priority;
  int phase_episodes = 50;     // k: episodes per agent per phase
  int train_every = 1;         // env steps per gradient step
  bool importance_sampling = false;  // recorded for ablation; not applied
  bool ally_exploration = false;     // frozen allies act greedily
  long long checkpoint_every = 10000;
  long long csv_every = 100;
  NetConfig net;
};

struct EvaluationConfig {
  int episodes = 100;
  std::optional<int> randomness_scale;  // overrides scenario when set
};

struct Config {
  ScenarioConfig scenario;
  DynamicsConfig dynamics;
  DriversConfig drivers;
  EnvConfig env;
  ObservationConfig observation;
  RewardConfig reward;
  TrainingConfig training;
  EvaluationConfig evaluation;

  // canonical JSON with every default filled in
  nlohmann::json to_json() const;
  // 64-bit FNV-1a of the canonical form, as "0x…" (not cryptographic; used
  // to tie artifacts to the exact configuration)
  std::string hash() const;

  // Applies the preset to (lambda_e, lambda_c, lambda_s); "custom" leaves
  // explicit values untouched.
  void apply_reward_preset();
};

// Parses and validates. Unknown keys and type mismatches raise ConfigError
// listing every offending path. Missing keys take defaults.
Config parse_config(const nlohmann::json& j);
Config load_config_file(const std::string& path);
Config default_config();

// "scenario.n_avs=2" style dotted-path assignments, applied before parsing.
nlohmann::json apply_overrides(nlohmann::json j,
                               const std::vector<std::string>& overrides);

}  // namespace svo
