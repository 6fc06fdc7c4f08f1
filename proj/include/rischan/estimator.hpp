// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The rischan Authors

#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "rischan/autodiff.hpp"
#include "rischan/checkpoint.hpp"
#include "rischan/nn.hpp"
#include "rischan/ode.hpp"

namespace rischan {

/// Architecture of the two-stage estimator.
struct EstimatorConfig {
  std::size_t bs_antennas = 2;     // M
  std::size_t selected = 8;        // N_s
  std::size_t elements = 16;       // N
  std::size_t hidden = 0;          // D_h; 0 means 2 M N_s
  std::size_t steps_per_block = 1; // RK4 steps per elapsed block
  double rk_step = 1.0;            // h of the extrapolation residual blocks
  bool use_ode = true;             // false skips the hidden-state evolution

  std::size_t input_dim() const { return 2 * bs_antennas * selected; }
  std::size_t output_dim() const { return 2 * bs_antennas * elements; }
  std::size_t hidden_dim() const { return hidden ? hidden : input_dim(); }
  void validate() const;
};

/// GRU update with two-layer gate networks (affine, tanh, affine, gate).
///   r = sigma(W_r[u', x]),  z = sigma(W_z[u', x]),
///   c = tanh(W_c[r * u', x]),  u = (1 - z) * u' + z * c
class GruCell {
 public:
  GruCell() = default;
  GruCell(std::size_t input, std::size_t hidden);

  void initialize(Rng& rng);
  Var step(Tape& tape, Var hidden_prev, Var input);
  void collect(std::vector<Parameter*>& out);

  std::size_t input_dim() const { return input_; }
  std::size_t hidden_dim() const { return hidden_; }

  // Gate networks in order reset, update, candidate; two layers each.
  std::array<DenseLayer, 6> layers;

 private:
  std::size_t input_ = 0;
  std::size_t hidden_ = 0;
};

/// Antenna-domain extrapolation: dense lift to 2MN, two RK residual blocks,
/// dense output.
class ExtraNet {
 public:
  ExtraNet() = default;
  ExtraNet(std::size_t input, std::size_t output, double rk_step);

  void initialize(Rng& rng);
  Var forward(Tape& tape, Var x);
  void collect(std::vector<Parameter*>& out);

  DenseLayer lift;
  std::array<RKResidualBlock, 2> blocks;
  DenseLayer output;
};

class Estimator {
 public:
  explicit Estimator(EstimatorConfig cfg);

  void initialize(Rng& rng);

  struct Outputs {
    std::vector<Var> subsampled;  // c_hat restricted to the selected elements, per block
    std::vector<Var> full;        // c_hat over all elements, per block
  };

  /// Time-domain stage over one frame of [batch, 2 M N_s] inputs.
  std::vector<Var> interpolate(Tape& tape, std::span<const Var> inputs);
  /// Antenna-domain stage for one block.
  Var extrapolate(Tape& tape, Var subsampled);
  Outputs forward(Tape& tape, std::span<const Var> inputs);

  const EstimatorConfig& config() const { return cfg_; }
  ParameterGroups groups();
  std::vector<Parameter*> parameters();

  DynamicsNet dynamics;                 // omega_f
  GruCell gru;                          // omega_R
  std::array<DenseLayer, 6> decoder;    // omega_D
  ExtraNet extrapolator;                // omega_E

 private:
  EstimatorConfig cfg_;
};

/// One minibatch: per block, [batch, width] matrices of the network input and
/// both label sequences.
struct Batch {
  std::vector<RealTensor> inputs;
  std::vector<RealTensor> subsampled_labels;
  std::vector<RealTensor> full_labels;
  std::size_t size() const { return inputs.empty() ? 0 : inputs.front().rows(); }
};

struct Losses {
  Var time;     // L_t
  Var antenna;  // L_a
  Var total;    // L_t + gamma L_a
};

/// Mean squared errors per complex entry over batch, antennas and blocks.
Losses compute_losses(const Estimator::Outputs& out, const Batch& batch,
                      const EstimatorConfig& cfg, double gamma);

}  // namespace rischan
