// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The rischan Authors

#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "rischan/autodiff.hpp"
#include "rischan/rng.hpp"
#include "rischan/tensor.hpp"

namespace rischan {

enum class Activation { identity, tanh, sigmoid };

std::string_view to_string(Activation a);
Var activate(Activation a, Var x);

/// Fully connected layer y = act(x W^T + b) over [batch, features] inputs.
class DenseLayer {
 public:
  DenseLayer() = default;
  DenseLayer(std::string name, std::size_t in, std::size_t out, Activation act);

  /// W ~ U(-sqrt(6/(in+out)), sqrt(6/(in+out))), b = 0.
  void initialize(Rng& rng);

  Var forward(Tape& tape, Var x);

  std::size_t in_dim() const { return weight.value.shape[1]; }
  std::size_t out_dim() const { return weight.value.shape[0]; }

  void collect(std::vector<Parameter*>& out) {
    out.push_back(&weight);
    out.push_back(&bias);
  }

  Parameter weight;
  Parameter bias;
  Activation activation = Activation::tanh;
};

/// Adam with bias correction. Each parameter may be registered once.
class Adam {
 public:
  struct Options {
    double learning_rate = 1e-3;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
  };

  Adam(std::vector<Parameter*> params, Options opts);

  /// One update from the gradients currently held in each Parameter::grad.
  void step();
  void zero_grad();

  void set_learning_rate(double lr) { opts_.learning_rate = lr; }
  double learning_rate() const { return opts_.learning_rate; }
  std::size_t step_count() const { return step_; }
  const std::vector<Parameter*>& parameters() const { return params_; }

 private:
  std::vector<Parameter*> params_;
  std::vector<std::vector<double>> first_;
  std::vector<std::vector<double>> second_;
  Options opts_;
  std::size_t step_ = 0;
};

}  // namespace rischan
