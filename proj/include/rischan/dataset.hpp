// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The rischan Authors

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "rischan/channel.hpp"
#include "rischan/estimator.hpp"
#include "rischan/pilot.hpp"

namespace rischan {

/// One frame: ray draw, ground-truth cascade per block, and the network
/// input built from noisy pilot observations.
struct DatasetRecord {
  RayParams rays;
  std::vector<ComplexMatrix> cascade;        // C(n), M x N
  std::vector<std::vector<double>> inputs;   // x(n), 2 M N_s
};

struct Dataset {
  ScenarioParams scenario;
  FrameSchedule schedule;
  std::optional<double> snr_db;
  std::uint64_t seed = 0;
  std::vector<DatasetRecord> records;
  nlohmann::json config;  // snapshot of the generating configuration

  std::size_t size() const { return records.size(); }
  std::size_t blocks() const { return schedule.blocks; }
  /// Stacked vec(C(n)) over all elements, length 2 M N.
  std::vector<double> full_label(std::size_t sample, std::size_t block) const;
  /// Stacked vec(C(n)) restricted to the selected elements, length 2 M N_s.
  std::vector<double> subsampled_label(std::size_t sample, std::size_t block) const;
};

/// Deterministic in `seed`: sample i draws rays from stream ("dataset", i) and
/// pilot noise from stream ("noise", i).
Dataset generate_dataset(const ScenarioParams& scenario, const FrameSchedule& schedule,
                         std::size_t count, std::optional<double> snr_db, std::uint64_t seed);

/// Writes `dataset.bin` and `manifest.json` under `dir`; returns bytes written.
std::uint64_t save_dataset(const Dataset& ds, const std::filesystem::path& dir);
Dataset load_dataset(const std::filesystem::path& dir);

nlohmann::json manifest_json(const Dataset& ds);

/// Sample-index partition: fit and validation come from the training split,
/// test from the remainder. The three sets are disjoint.
struct Split {
  std::vector<std::size_t> fit;
  std::vector<std::size_t> validation;
  std::vector<std::size_t> test;
};

Split split_indices(std::size_t count, double train_fraction, double validation_fraction);

/// Real-stacked sequences for one sample, already divided by the scale.
struct Sample {
  std::vector<std::vector<double>> inputs;
  std::vector<std::vector<double>> subsampled;
  std::vector<std::vector<double>> full;
};

struct NormalizedData {
  std::vector<Sample> samples;
  double scale = 1.0;
};

/// Single global scale = largest |real| or |imag| part of any input or label
/// in the training split (fit + validation). Throws NumericalError when that
/// is zero.
NormalizedData normalize(const Dataset& ds, const Split& split);
/// Divides by a known scale (for evaluating a trained model on new data).
NormalizedData normalize(const Dataset& ds, double scale);

/// Stacks the listed samples block by block.
Batch make_batch(const std::vector<Sample>& samples, std::span<const std::size_t> indices);

}  // namespace rischan
