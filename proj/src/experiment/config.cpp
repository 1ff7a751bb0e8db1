#include "bcuav/experiment/config.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace bcuav::experiment {

namespace {

using nlohmann::json;

// Reads the fields of one JSON object and remembers which keys were consumed,
// so that leftovers can be reported as unknown.
class Fields {
 public:
  Fields(const json& object, std::string path) : object_(object), path_(std::move(path)) {
    if (!object_.is_object()) throw ConfigInvalid(display() + " must be an object");
  }

  template <typename T>
  void read(const std::string& key, T& out) {
    seen_.insert(key);
    const auto it = object_.find(key);
    if (it == object_.end()) return;
    try {
      out = it->template get<T>();
    } catch (const json::exception&) {
      throw ConfigInvalid(field(key) + " has the wrong type");
    }
  }

  void read_gains(const std::string& key, control::PidGains& gains) {
    if (auto sub = child(key)) {
      sub->read("kp", gains.kp);
      sub->read("ki", gains.ki);
      sub->read("kd", gains.kd);
      sub->finish();
    }
  }

  void read_scaling(const std::string& key, control::FuzzyScaling& scaling) {
    if (auto sub = child(key)) {
      sub->read("error_scale", scaling.error_scale);
      sub->read("rate_scale", scaling.rate_scale);
      sub->read("kp_scale", scaling.kp_scale);
      sub->read("ki_scale", scaling.ki_scale);
      sub->read("kd_scale", scaling.kd_scale);
      sub->finish();
    }
  }

  std::optional<Fields> child(const std::string& key) {
    seen_.insert(key);
    const auto it = object_.find(key);
    if (it == object_.end()) return std::nullopt;
    return Fields(*it, field(key));
  }

  void finish() const {
    for (const auto& item : object_.items()) {
      if (!seen_.contains(item.key())) throw ConfigInvalid("unknown field " + field(item.key()));
    }
  }

  std::string field(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

 private:
  std::string display() const { return path_.empty() ? "config" : path_; }

  const json& object_;
  std::string path_;
  std::set<std::string> seen_;
};

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigInvalid("cannot read " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

void require(bool ok, const std::string& message) {
  if (!ok) throw ConfigInvalid(message);
}

bool finite_nonnegative(double v) { return std::isfinite(v) && v >= 0.0; }
bool finite_positive(double v) { return std::isfinite(v) && v > 0.0; }

void validate_gains(const control::PidGains& g, const std::string& name) {
  require(finite_nonnegative(g.kp) && finite_nonnegative(g.ki) && finite_nonnegative(g.kd),
          name + " gains must be finite and >= 0");
}

void validate_scaling(const control::FuzzyScaling& s, const std::string& name) {
  require(finite_positive(s.error_scale), name + ".error_scale must be positive");
  require(finite_positive(s.rate_scale), name + ".rate_scale must be positive");
  require(finite_nonnegative(s.kp_scale) && finite_nonnegative(s.ki_scale) && finite_nonnegative(s.kd_scale),
          name + " output scales must be >= 0");
}

}  // namespace

std::string_view to_string(RunMode mode) {
  switch (mode) {
    case RunMode::BrainOnly: return "brain";
    case RunMode::AutoOnly: return "auto";
    case RunMode::Shared: return "shared";
  }
  return "?";
}

std::optional<RunMode> parse_run_mode(std::string_view text) {
  for (const RunMode mode : {RunMode::BrainOnly, RunMode::AutoOnly, RunMode::Shared}) {
    if (to_string(mode) == text) return mode;
  }
  return std::nullopt;
}

void ExperimentConfig::validate() const {
  require(finite_positive(dt), "dt must be positive");
  require(finite_positive(duration), "duration must be positive");
  try {
    plant.validate();
    channel.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigInvalid(e.what());
  }
  try {
    arbiter.validate();
  } catch (const arbitration::BadThresholds& e) {
    throw ConfigInvalid(e.what());
  }
  validate_gains(controller.position, "controller.position");
  validate_gains(controller.altitude, "controller.altitude");
  validate_gains(controller.attitude.roll, "controller.attitude.roll");
  validate_gains(controller.attitude.pitch, "controller.attitude.pitch");
  validate_gains(controller.attitude.yaw, "controller.attitude.yaw");
  validate_scaling(controller.position_fuzzy, "controller.position_fuzzy");
  validate_scaling(controller.altitude_fuzzy, "controller.altitude_fuzzy");
  require(finite_positive(controller.position_integral_limit), "controller.position_integral_limit must be positive");
  require(finite_positive(controller.altitude_integral_limit), "controller.altitude_integral_limit must be positive");
  require(finite_positive(controller.attitude_integral_limit), "controller.attitude_integral_limit must be positive");
  require(finite_positive(controller.limits.max_tilt) && controller.limits.max_tilt < 1.2,
          "controller.max_tilt must be in (0, 1.2)");
  require(finite_positive(controller.limits.max_thrust), "controller.max_thrust must be positive");
  require(finite_positive(controller.climb_gain), "controller.climb_gain must be positive");
  require(finite_positive(controller.yaw_time_constant), "controller.yaw_time_constant must be positive");

  require(finite_nonnegative(commands.tilt) && commands.tilt <= controller.limits.max_tilt,
          "commands.tilt must be in [0, controller.max_tilt]");
  require(finite_nonnegative(commands.yaw_rate), "commands.yaw_rate must be >= 0");
  require(finite_nonnegative(commands.climb_rate), "commands.climb_rate must be >= 0");

  require(finite_positive(pilot.horizon), "pilot.horizon must be positive");
  require(finite_nonnegative(pilot.cruise_speed), "pilot.cruise_speed must be >= 0");

  require(finite_nonnegative(weights.cross_track) && finite_nonnegative(weights.altitude) &&
              finite_nonnegative(weights.heading) && finite_nonnegative(weights.error_rate),
          "arbitration.weights must be >= 0");

  require(finite_positive(track.straight_length), "track.straight_length must be positive");
  require(finite_positive(track.arc_length), "track.arc_length must be positive");
  require(std::isfinite(track.altitude), "track.altitude must be finite");
  require(finite_positive(track.reference_speed), "track.reference_speed must be positive");
  require(finite_positive(track.reference_leash), "track.reference_leash must be positive");

  require(finite_positive(regression.auto_rms_cross_track_max), "regression.auto_rms_cross_track_max must be positive");
  require(service.telemetry_decimation >= 1, "service.telemetry_decimation must be >= 1");
  require(finite_positive(service.time_scale), "service.time_scale must be positive");
  require(service.telemetry_queue >= 1, "service.telemetry_queue must be >= 1");
}

ExperimentConfig parse_config(std::string_view json_text, const std::filesystem::path& base_dir) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigInvalid(std::string("malformed JSON: ") + e.what());
  }

  ExperimentConfig cfg;
  Fields root(doc, "");
  root.read("dt", cfg.dt);
  root.read("duration", cfg.duration);
  root.read("seed", cfg.seed);
  std::string mode = std::string(to_string(cfg.mode));
  root.read("mode", mode);
  if (const auto parsed = parse_run_mode(mode)) {
    cfg.mode = *parsed;
  } else {
    throw ConfigInvalid("mode must be one of brain|auto|shared");
  }

  if (auto p = root.child("plant")) {
    p->read("mass", cfg.plant.mass);
    std::array<double, 3> inertia = {cfg.plant.inertia.x(), cfg.plant.inertia.y(), cfg.plant.inertia.z()};
    p->read("inertia", inertia);
    cfg.plant.inertia = plant::Vec3(inertia[0], inertia[1], inertia[2]);
    p->read("arm_length", cfg.plant.arm_length);
    p->read("thrust_coeff", cfg.plant.thrust_coeff);
    p->read("torque_coeff", cfg.plant.torque_coeff);
    p->read("max_rotor_speed", cfg.plant.max_rotor_speed);
    p->read("gravity", cfg.plant.gravity);
    p->read("linear_drag", cfg.plant.linear_drag);
    p->finish();
  }

  if (auto c = root.child("controller")) {
    auto& ctl = cfg.controller;
    c->read_gains("position", ctl.position);
    c->read_gains("altitude", ctl.altitude);
    c->read_scaling("position_fuzzy", ctl.position_fuzzy);
    c->read_scaling("altitude_fuzzy", ctl.altitude_fuzzy);
    c->read("position_integral_limit", ctl.position_integral_limit);
    c->read("altitude_integral_limit", ctl.altitude_integral_limit);
    if (auto a = c->child("attitude")) {
      a->read_gains("roll", ctl.attitude.roll);
      a->read_gains("pitch", ctl.attitude.pitch);
      a->read_gains("yaw", ctl.attitude.yaw);
      a->finish();
    }
    c->read("attitude_integral_limit", ctl.attitude_integral_limit);
    c->read("max_tilt", ctl.limits.max_tilt);
    c->read("max_thrust", ctl.limits.max_thrust);
    c->read("climb_gain", ctl.climb_gain);
    c->read("yaw_time_constant", ctl.yaw_time_constant);
    c->finish();
  }

  if (auto ch = root.child("channel")) {
    ch->read("accuracy", cfg.channel.accuracy);
    ch->read("recognition_interval", cfg.channel.recognition_interval);
    ch->read("latency", cfg.channel.latency);
    ch->finish();
  }

  if (auto cmd = root.child("commands")) {
    cmd->read("tilt", cfg.commands.tilt);
    cmd->read("yaw_rate", cfg.commands.yaw_rate);
    cmd->read("climb_rate", cfg.commands.climb_rate);
    cmd->finish();
  }

  if (auto p = root.child("pilot")) {
    auto& pc = cfg.pilot;
    p->read("horizon", pc.horizon);
    p->read("cruise_speed", pc.cruise_speed);
    p->read("cross_track_weight", pc.cross_track_weight);
    p->read("heading_weight", pc.heading_weight);
    p->read("altitude_weight", pc.altitude_weight);
    p->read("damping_time", pc.damping_time);
    p->read("speed_weight", pc.speed_weight);
    p->read("cross_track_deadband", pc.cross_track_deadband);
    p->read("heading_deadband", pc.heading_deadband);
    p->read("altitude_deadband", pc.altitude_deadband);
    p->read("speed_deadband", pc.speed_deadband);
    p->finish();
  }

  if (auto a = root.child("arbitration")) {
    if (auto w = a->child("weights")) {
      w->read("cross_track", cfg.weights.cross_track);
      w->read("altitude", cfg.weights.altitude);
      w->read("heading", cfg.weights.heading);
      w->read("error_rate", cfg.weights.error_rate);
      w->finish();
    }
    a->read("rho_lo", cfg.arbiter.risk_low);
    a->read("rho_hi", cfg.arbiter.risk_high);
    a->read("max_switch_rate", cfg.arbiter.max_switch_rate);
    a->finish();
  }

  if (auto t = root.child("track")) {
    t->read("straight_length", cfg.track.straight_length);
    t->read("arc_length", cfg.track.arc_length);
    t->read("altitude", cfg.track.altitude);
    t->read("reference_speed", cfg.track.reference_speed);
    t->read("reference_leash", cfg.track.reference_leash);
    t->finish();
  }

  if (auto r = root.child("rules")) {
    auto load = [&](const std::string& key, fuzzy::GainTarget target, fuzzy::RuleTable& table) {
      std::string path;
      r->read(key, path);
      if (path.empty()) return;
      try {
        table = fuzzy::RuleTable::parse(target, read_file(base_dir / path));
      } catch (const fuzzy::RuleTableParseError& e) {
        throw ConfigInvalid(r->field(key) + ": " + e.what());
      }
    };
    load("kp", fuzzy::GainTarget::Kp, cfg.rules.kp);
    load("ki", fuzzy::GainTarget::Ki, cfg.rules.ki);
    load("kd", fuzzy::GainTarget::Kd, cfg.rules.kd);
    r->finish();
  }

  if (auto r = root.child("regression")) {
    r->read("auto_rms_cross_track_max", cfg.regression.auto_rms_cross_track_max);
    r->finish();
  }

  if (auto s = root.child("service")) {
    s->read("telemetry_decimation", cfg.service.telemetry_decimation);
    s->read("time_scale", cfg.service.time_scale);
    s->read("telemetry_queue", cfg.service.telemetry_queue);
    s->finish();
  }

  root.finish();
  cfg.channel.seed = cfg.seed;
  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  return parse_config(read_file(path), path.parent_path());
}

}  // namespace bcuav::experiment
