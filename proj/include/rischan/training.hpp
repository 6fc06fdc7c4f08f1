// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The rischan Authors

#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rischan/config.hpp"
#include "rischan/dataset.hpp"
#include "rischan/estimator.hpp"

namespace rischan {

struct EpochRecord {
  std::size_t epoch = 0;  // 1-based
  double learning_rate = 0.0;
  double loss_time = 0.0;
  double loss_antenna = 0.0;
  double validation_nmse = 0.0;
};

struct RunRecord {
  nlohmann::json config;
  std::uint64_t seed = 0;
  std::vector<EpochRecord> epochs;
  std::size_t best_epoch = 0;
  double best_validation_nmse = 0.0;
  double test_nmse = 0.0;
  double scale = 1.0;
  double wall_time_s = 0.0;
  bool diverged = false;
  std::string diagnostic;

  nlohmann::json to_json() const;
};

/// Trained estimator plus the normalization it expects.
struct TrainedModel {
  Estimator estimator;
  double scale = 1.0;
  nlohmann::json config;
};

struct TrainResult {
  TrainedModel model;  // best-validation parameters
  RunRecord record;
};

/// Per-sample NMSE sum_n |c - c_hat|^2 / sum_n |c|^2 over blocks, averaged
/// over samples. Each entry of `predicted`/`truth` is one sample's block list.
double nmse(std::span<const std::vector<std::vector<double>>> predicted,
            std::span<const std::vector<std::vector<double>>> truth);

/// Full-channel predictions (normalized units) for the listed samples.
std::vector<std::vector<std::vector<double>>> predict(Estimator& model,
                                                      const std::vector<Sample>& samples,
                                                      std::span<const std::size_t> indices);

/// NMSE of the full-channel estimate after undoing the normalization.
/// Throws ContractError for an empty index list.
double evaluate_nmse(Estimator& model, const NormalizedData& data,
                     std::span<const std::size_t> indices);

/// Minibatch Adam on L_t + gamma L_a with the configured step schedule.
/// A non-finite loss stops training; the record then has diverged == true.
TrainResult train(const ExperimentConfig& cfg, const Dataset& ds);

/// Builds an estimator matching the dataset geometry and the model block of `cfg`.
EstimatorConfig estimator_config(const ExperimentConfig& cfg, const Dataset& ds);

nlohmann::json model_to_json(TrainedModel& model);
TrainedModel model_from_json(const nlohmann::json& j);
void save_model(TrainedModel& model, const std::filesystem::path& path);
TrainedModel load_model(const std::filesystem::path& path);

/// Test-split NMSE of a trained model on a dataset.
double evaluate_model(TrainedModel& model, const ExperimentConfig& cfg, const Dataset& ds);

enum class SweepAxis { antenna_rate, time_rate, snr, epochs };
SweepAxis parse_axis(std::string_view name);
std::string_view axis_name(SweepAxis axis);

struct SweepRow {
  std::string axis;
  double value = 0.0;
  std::size_t epoch = 0;
  double loss_time = 0.0;
  double loss_antenna = 0.0;
  double nmse = 0.0;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  std::vector<RunRecord> runs;
};

/// One dataset + training run per value, all with the base seed.
SweepResult sweep(SweepAxis axis, std::span<const double> values, const ExperimentConfig& base);

inline constexpr const char* kSweepCsvHeader = "axis,value,epoch,loss_t,loss_a,nmse";
void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows);
std::vector<SweepRow> read_sweep_csv(std::istream& in);

}  // namespace rischan
