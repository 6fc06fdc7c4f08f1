// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The rischan Authors

#include "rischan/config.hpp"

#include <cmath>
#include <set>

#include "rischan/errors.hpp"

namespace rischan {

FrameSchedule ScheduleConfig::build(std::size_t elements_total) const {
  return build_schedule(blocks, time_rate, elements_total, antenna_rate, pilot_length,
                        pilot_power);
}

double TrainConfig::learning_rate_at(std::size_t epoch) const {
  const double decayed =
      learning_rate * std::pow(decay, static_cast<double>(epoch / std::max<std::size_t>(decay_every, 1)));
  return std::max(decayed, std::min(learning_rate_floor, learning_rate));
}

void TrainConfig::validate() const {
  if (epochs < 1) throw ConfigError("train: epochs must be >= 1");
  if (batch_size < 1) throw ConfigError("train: batch_size must be >= 1");
  if (learning_rate < 0.0 || learning_rate_floor < 0.0)
    throw ConfigError("train: learning rates must be >= 0");
  if (!(decay > 0.0 && decay <= 1.0)) throw ConfigError("train: decay must lie in (0, 1]");
  if (decay_every < 1) throw ConfigError("train: decay_every must be >= 1");
  if (!(train_fraction > 0.0 && train_fraction < 1.0))
    throw ConfigError("train: train_fraction must lie in (0, 1)");
  if (!(validation_fraction > 0.0 && validation_fraction < 1.0))
    throw ConfigError("train: validation_fraction must lie in (0, 1)");
}

EstimatorConfig ExperimentConfig::estimator() const {
  const FrameSchedule s = schedule.build(scenario.ris_elements());
  EstimatorConfig e;
  e.bs_antennas = scenario.bs_antennas;
  e.selected = s.selected();
  e.elements = scenario.ris_elements();
  e.hidden = model.hidden;
  e.steps_per_block = model.steps_per_block;
  e.rk_step = model.rk_step;
  e.use_ode = model.use_ode;
  return e;
}

void ExperimentConfig::validate() const {
  scenario.validate();
  schedule.build(scenario.ris_elements());
  if (samples < 1) throw ConfigError("dataset: samples must be >= 1");
  train.validate();
  estimator().validate();
}

ExperimentConfig profile_config(std::string_view name) {
  ExperimentConfig cfg;
  if (name == "desk") {
    cfg.profile = "desk";
    return cfg;
  }
  if (name == "paper") {
    cfg.profile = "paper";
    cfg.scenario.ris_vertical = 8;
    cfg.scenario.ris_horizontal = 8;
    cfg.samples = 20000;
    cfg.train.epochs = 1000;
    cfg.train.batch_size = 200;
    return cfg;
  }
  throw ConfigError("unknown profile '" + std::string(name) + "' (expected desk or paper)");
}

nlohmann::json to_json(const ExperimentConfig& c) {
  nlohmann::json j;
  j["profile"] = c.profile;
  j["seed"] = c.seed;
  j["scenario"] = {{"M", c.scenario.bs_antennas},
                   {"N_v", c.scenario.ris_vertical},
                   {"N_h", c.scenario.ris_horizontal},
                   {"L_g", c.scenario.paths},
                   {"speed_mps", c.scenario.speed},
                   {"carrier_hz", c.scenario.carrier},
                   {"light_speed_mps", c.scenario.light_speed},
                   {"sample_period_s", c.scenario.sample_period},
                   {"block_length", c.scenario.block_length},
                   {"spacing_wavelengths", c.scenario.spacing_wavelengths}};
  j["schedule"] = {{"L", c.schedule.blocks},
                   {"r_t", c.schedule.time_rate},
                   {"r_a", c.schedule.antenna_rate},
                   {"N_p", c.schedule.pilot_length},
                   {"P", c.schedule.pilot_power},
                   {"snr_db", c.schedule.snr_db ? nlohmann::json(*c.schedule.snr_db)
                                                : nlohmann::json(nullptr)}};
  j["dataset"] = {{"samples", c.samples}};
  j["model"] = {{"hidden", c.model.hidden},
                {"steps_per_block", c.model.steps_per_block},
                {"rk_step", c.model.rk_step},
                {"use_ode", c.model.use_ode}};
  j["train"] = {{"epochs", c.train.epochs},
                {"batch_size", c.train.batch_size},
                {"learning_rate", c.train.learning_rate},
                {"decay", c.train.decay},
                {"decay_every", c.train.decay_every},
                {"learning_rate_floor", c.train.learning_rate_floor},
                {"gamma", c.train.gamma},
                {"train_fraction", c.train.train_fraction},
                {"validation_fraction", c.train.validation_fraction}};
  j["paths"] = {{"dataset", c.paths.dataset},
                {"checkpoint", c.paths.checkpoint},
                {"report", c.paths.report}};
  return j;
}

namespace {

class Reader {
 public:
  Reader(const nlohmann::json& j, std::string section) : j_(j), section_(std::move(section)) {
    if (!j_.is_object()) throw ConfigError("config: '" + section_ + "' must be an object");
  }

  template <class T>
  void get(const char* key, T& out) {
    seen_.insert(key);
    if (!j_.contains(key)) return;
    try {
      out = j_.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError("config: " + section_ + "." + key + ": " + e.what());
    }
  }

  void get(const char* key, std::optional<double>& out) {
    seen_.insert(key);
    if (!j_.contains(key)) return;
    const auto& v = j_.at(key);
    if (v.is_null()) {
      out.reset();
    } else if (v.is_number()) {
      out = v.get<double>();
    } else {
      throw ConfigError("config: " + section_ + "." + key + " must be a number or null");
    }
  }

  void finish() const {
    for (const auto& [k, v] : j_.items())
      if (!seen_.count(k)) throw ConfigError("config: unknown key '" + section_ + "." + k + "'");
  }

 private:
  const nlohmann::json& j_;
  std::string section_;
  std::set<std::string> seen_;
};

}  // namespace

void merge_json(ExperimentConfig& c, const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("config: top level must be an object");
  std::set<std::string> known = {"profile", "seed", "scenario", "schedule", "dataset",
                                 "model", "train", "paths"};
  for (const auto& [k, v] : j.items())
    if (!known.count(k)) throw ConfigError("config: unknown key '" + k + "'");
  if (j.contains("profile")) {
    // A profile switch resets everything to that profile before the overrides.
    const auto name = j["profile"].get<std::string>();
    if (name != c.profile) {
      const auto seed = c.seed;
      c = profile_config(name);
      c.seed = seed;
    }
  }
  if (j.contains("seed")) {
    try {
      c.seed = j["seed"].get<std::uint64_t>();
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(std::string("config: seed: ") + e.what());
    }
  }
  if (j.contains("scenario")) {
    Reader r(j["scenario"], "scenario");
    r.get("M", c.scenario.bs_antennas);
    r.get("N_v", c.scenario.ris_vertical);
    r.get("N_h", c.scenario.ris_horizontal);
    r.get("L_g", c.scenario.paths);
    r.get("speed_mps", c.scenario.speed);
    r.get("carrier_hz", c.scenario.carrier);
    r.get("light_speed_mps", c.scenario.light_speed);
    r.get("sample_period_s", c.scenario.sample_period);
    r.get("block_length", c.scenario.block_length);
    r.get("spacing_wavelengths", c.scenario.spacing_wavelengths);
    r.finish();
  }
  if (j.contains("schedule")) {
    Reader r(j["schedule"], "schedule");
    r.get("L", c.schedule.blocks);
    r.get("r_t", c.schedule.time_rate);
    r.get("r_a", c.schedule.antenna_rate);
    r.get("N_p", c.schedule.pilot_length);
    r.get("P", c.schedule.pilot_power);
    r.get("snr_db", c.schedule.snr_db);
    r.finish();
  }
  if (j.contains("dataset")) {
    Reader r(j["dataset"], "dataset");
    r.get("samples", c.samples);
    r.finish();
  }
  if (j.contains("model")) {
    Reader r(j["model"], "model");
    r.get("hidden", c.model.hidden);
    r.get("steps_per_block", c.model.steps_per_block);
    r.get("rk_step", c.model.rk_step);
    r.get("use_ode", c.model.use_ode);
    r.finish();
  }
  if (j.contains("train")) {
    Reader r(j["train"], "train");
    r.get("epochs", c.train.epochs);
    r.get("batch_size", c.train.batch_size);
    r.get("learning_rate", c.train.learning_rate);
    r.get("decay", c.train.decay);
    r.get("decay_every", c.train.decay_every);
    r.get("learning_rate_floor", c.train.learning_rate_floor);
    r.get("gamma", c.train.gamma);
    r.get("train_fraction", c.train.train_fraction);
    r.get("validation_fraction", c.train.validation_fraction);
    r.finish();
  }
  if (j.contains("paths")) {
    Reader r(j["paths"], "paths");
    r.get("dataset", c.paths.dataset);
    r.get("checkpoint", c.paths.checkpoint);
    r.get("report", c.paths.report);
    r.finish();
  }
}

ExperimentConfig from_json(const nlohmann::json& j) {
  ExperimentConfig c = profile_config(j.contains("profile") && j["profile"].is_string()
                                          ? j["profile"].get<std::string>()
                                          : std::string("desk"));
  merge_json(c, j);
  return c;
}

}  // namespace rischan
