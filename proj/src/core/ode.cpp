// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The rischan Authors

#include "rischan/ode.hpp"

#include <cmath>

#include "rischan/errors.hpp"

namespace rischan {

namespace {

void require_finite(const Var& v, double t) {
  for (double x : v.value().values)
    if (!std::isfinite(x))
      throw NumericalError("ode_solve: state diverged at t = " + std::to_string(t));
}

}  // namespace

Var ode_solve(const Dynamics& f, Var state, double t_start, double t_end, std::size_t steps) {
  if (steps == 0) throw ContractError("ode_solve: steps must be >= 1");
  if (!(t_end >= t_start)) throw ContractError("ode_solve: t_end < t_start");
  if (t_end == t_start) return state;
  Tape& tape = state.tape();
  const double h = (t_end - t_start) / static_cast<double>(steps);
  Var x = state;
  for (std::size_t i = 0; i < steps; ++i) {
    Var k1 = f(tape, x);
    Var k2 = f(tape, axpy(x, 0.5 * h, k1));
    Var k3 = f(tape, axpy(x, 0.5 * h, k2));
    Var k4 = f(tape, axpy(x, h, k3));
    Var incr = axpy(axpy(axpy(k1, 2.0, k2), 2.0, k3), 1.0, k4);
    x = axpy(x, h / 6.0, incr);
    require_finite(x, t_start + h * static_cast<double>(i + 1));
  }
  return x;
}

DynamicsNet::DynamicsNet(const std::string& name, std::size_t width) {
  for (std::size_t i = 0; i < layers_.size(); ++i)
    layers_[i] = DenseLayer(name + ".fc" + std::to_string(i), width, width, Activation::tanh);
}

void DynamicsNet::initialize(Rng& rng) {
  for (auto& l : layers_) l.initialize(rng);
}

Var DynamicsNet::operator()(Tape& tape, Var state) {
  Var h = state;
  for (auto& l : layers_) h = l.forward(tape, h);
  return h;
}

Dynamics DynamicsNet::as_dynamics() {
  return [this](Tape& tape, Var s) { return (*this)(tape, s); };
}

void DynamicsNet::collect(std::vector<Parameter*>& out) {
  for (auto& l : layers_) l.collect(out);
}

RKResidualBlock::RKResidualBlock(const std::string& name, std::size_t width, double step)
    : step_(step) {
  for (std::size_t i = 0; i < stages_.size(); ++i)
    stages_[i] = DenseLayer(name + ".stage" + std::to_string(i), width, width, Activation::tanh);
}

void RKResidualBlock::initialize(Rng& rng) {
  for (auto& s : stages_) s.initialize(rng);
}

Var RKResidualBlock::forward(Tape& tape, Var x) {
  if (x.value().cols() != stages_[0].in_dim())
    throw ShapeError("RKResidualBlock: input " + shape_string(x.shape()) + ", block width " +
                     std::to_string(stages_[0].in_dim()));
  const double h = step_;
  Var k1 = stages_[0].forward(tape, x);
  Var k2 = stages_[1].forward(tape, axpy(x, 0.5 * h, k1));
  Var k3 = stages_[2].forward(tape, axpy(x, 0.5 * h, k2));
  Var k4 = stages_[3].forward(tape, axpy(x, h, k3));
  Var incr = axpy(axpy(axpy(k1, 2.0, k2), 2.0, k3), 1.0, k4);
  return axpy(x, h / 6.0, incr);
}

void RKResidualBlock::collect(std::vector<Parameter*>& out) {
  for (auto& s : stages_) s.collect(out);
}

}  // namespace rischan
