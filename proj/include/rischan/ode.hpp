// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The rischan Authors

#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "rischan/autodiff.hpp"
#include "rischan/nn.hpp"

namespace rischan {

/// Autonomous right-hand side d(xi)/dt = f(xi) evaluated on a tape.
using Dynamics = std::function<Var(Tape&, Var)>;

/// Classic fixed-step RK4 over [t_start, t_end] with `steps` uniform steps,
/// recorded on the tape so gradients flow through every stage.
/// Throws ContractError for steps == 0 or t_end < t_start and NumericalError
/// when the state stops being finite.
Var ode_solve(const Dynamics& f, Var state, double t_start, double t_end, std::size_t steps);

/// Three tanh dense layers of constant width.
class DynamicsNet {
 public:
  DynamicsNet() = default;
  DynamicsNet(const std::string& name, std::size_t width);

  void initialize(Rng& rng);
  Var operator()(Tape& tape, Var state);
  Dynamics as_dynamics();
  void collect(std::vector<Parameter*>& out);
  std::size_t width() const { return layers_[0].in_dim(); }

  std::array<DenseLayer, 3>& layers() { return layers_; }

 private:
  std::array<DenseLayer, 3> layers_;
};

/// Residual block shaped like one RK4 step with four independent stage
/// networks:  x + h/6 (k1 + 2 k2 + 2 k3 + k4),  k1 = s1(x), k2 = s2(x + h/2 k1),
/// k3 = s3(x + h/2 k2), k4 = s4(x + h k3).
class RKResidualBlock {
 public:
  RKResidualBlock() = default;
  RKResidualBlock(const std::string& name, std::size_t width, double step);

  void initialize(Rng& rng);
  Var forward(Tape& tape, Var x);
  void collect(std::vector<Parameter*>& out);

  std::array<DenseLayer, 4>& stages() { return stages_; }
  double step() const { return step_; }
  void set_step(double h) { step_ = h; }

 private:
  std::array<DenseLayer, 4> stages_;
  double step_ = 1.0;
};

}  // namespace rischan
