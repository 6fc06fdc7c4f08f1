// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The rischan Authors

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "rischan/channel.hpp"
#include "rischan/estimator.hpp"
#include "rischan/pilot.hpp"

namespace rischan {

struct ScheduleConfig {
  std::size_t blocks = 10;          // L
  double time_rate = 1.0;           // r_t
  double antenna_rate = 0.5;        // r_a
  std::size_t pilot_length = 0;     // N_p; 0 means N_s
  double pilot_power = 1.0;         // P
  std::optional<double> snr_db;     // nullopt: noiseless

  FrameSchedule build(std::size_t elements_total) const;
};

struct ModelConfig {
  std::size_t hidden = 0;
  std::size_t steps_per_block = 1;
  double rk_step = 1.0;
  bool use_ode = true;
};

struct TrainConfig {
  std::size_t epochs = 150;
  std::size_t batch_size = 50;            // M_b
  double learning_rate = 0.005;           // eta_0
  double decay = 0.5;
  std::size_t decay_every = 50;
  double learning_rate_floor = 0.00005;
  double gamma = 1.0;
  double train_fraction = 0.8;
  double validation_fraction = 0.1;       // carved from the training split

  /// max(eta_0 * decay^floor(epoch / decay_every), floor), never above eta_0.
  double learning_rate_at(std::size_t epoch) const;
  void validate() const;
};

struct PathsConfig {
  std::string dataset = "data";
  std::string checkpoint = "checkpoint.json";
  std::string report = "reports";
};

/// Everything needed to replay a command: scenario, schedule, model, training
/// and one top-level seed from which named sub-streams are derived.
struct ExperimentConfig {
  std::string profile = "desk";
  std::uint64_t seed = 20260101;
  ScenarioParams scenario;
  ScheduleConfig schedule;
  std::size_t samples = 1000;
  ModelConfig model;
  TrainConfig train;
  PathsConfig paths;

  EstimatorConfig estimator() const;
  void validate() const;
};

/// "desk" (M=2, N=16, L=10, 1000 samples, 150 epochs, M_b=50) or "paper"
/// (N=64, 20000 samples, 1000 epochs, M_b=200).
ExperimentConfig profile_config(std::string_view name);

nlohmann::json to_json(const ExperimentConfig& cfg);
/// Fields absent from `j` keep the values already in `cfg`.
void merge_json(ExperimentConfig& cfg, const nlohmann::json& j);
ExperimentConfig from_json(const nlohmann::json& j);

}  // namespace rischan
