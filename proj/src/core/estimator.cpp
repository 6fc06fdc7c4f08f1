// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The rischan Authors

#include "rischan/estimator.hpp"

#include <string>

#include "rischan/errors.hpp"

namespace rischan {

void EstimatorConfig::validate() const {
  if (bs_antennas < 1 || selected < 1 || elements < 1 || selected > elements)
    throw ConfigError("estimator: need M >= 1 and 1 <= N_s <= N");
  if (steps_per_block < 1) throw ConfigError("estimator: steps_per_block must be >= 1");
}

GruCell::GruCell(std::size_t input, std::size_t hidden) : input_(input), hidden_(hidden) {
  const char* names[] = {"reset", "update", "candidate"};
  const Activation gates[] = {Activation::sigmoid, Activation::sigmoid, Activation::tanh};
  for (std::size_t g = 0; g < 3; ++g) {
    layers[2 * g] = DenseLayer(std::string("gru.") + names[g] + ".fc0", hidden + input, hidden,
                               Activation::tanh);
    layers[2 * g + 1] =
        DenseLayer(std::string("gru.") + names[g] + ".fc1", hidden, hidden, gates[g]);
  }
}

void GruCell::initialize(Rng& rng) {
  for (auto& l : layers) l.initialize(rng);
}

Var GruCell::step(Tape& tape, Var hidden_prev, Var input) {
  if (hidden_prev.value().cols() != hidden_ || input.value().cols() != input_)
    throw ShapeError("GruCell: hidden " + shape_string(hidden_prev.shape()) + ", input " +
                     shape_string(input.shape()));
  auto gate = [&](std::size_t g, Var in) {
    return layers[2 * g + 1].forward(tape, layers[2 * g].forward(tape, in));
  };
  Var joint = concat_cols(hidden_prev, input);
  Var reset = gate(0, joint);
  Var update = gate(1, joint);
  Var candidate = gate(2, concat_cols(reset * hidden_prev, input));
  return one_minus(update) * hidden_prev + update * candidate;
}

void GruCell::collect(std::vector<Parameter*>& out) {
  for (auto& l : layers) l.collect(out);
}

ExtraNet::ExtraNet(std::size_t input, std::size_t output_width, double rk_step)
    : lift("extra.lift", input, output_width, Activation::tanh),
      blocks{RKResidualBlock("extra.rk0", output_width, rk_step),
             RKResidualBlock("extra.rk1", output_width, rk_step)},
      output("extra.out", output_width, output_width, Activation::tanh) {}

void ExtraNet::initialize(Rng& rng) {
  lift.initialize(rng);
  for (auto& b : blocks) b.initialize(rng);
  output.initialize(rng);
}

Var ExtraNet::forward(Tape& tape, Var x) {
  Var h = lift.forward(tape, x);
  for (auto& b : blocks) h = b.forward(tape, h);
  return output.forward(tape, h);
}

void ExtraNet::collect(std::vector<Parameter*>& out) {
  lift.collect(out);
  for (auto& b : blocks) b.collect(out);
  output.collect(out);
}

Estimator::Estimator(EstimatorConfig cfg) : cfg_(cfg) {
  cfg_.validate();
  const std::size_t dx = cfg_.input_dim(), dh = cfg_.hidden_dim();
  dynamics = DynamicsNet("ode", dh);
  gru = GruCell(dx, dh);
  for (std::size_t i = 0; i < decoder.size(); ++i)
    decoder[i] = DenseLayer("dec.fc" + std::to_string(i), i == 0 ? dh : dx, dx, Activation::tanh);
  extrapolator = ExtraNet(dx, cfg_.output_dim(), cfg_.rk_step);
}

void Estimator::initialize(Rng& rng) {
  dynamics.initialize(rng);
  gru.initialize(rng);
  for (auto& l : decoder) l.initialize(rng);
  extrapolator.initialize(rng);
}

std::vector<Var> Estimator::interpolate(Tape& tape, std::span<const Var> inputs) {
  if (inputs.empty()) throw ContractError("interpolate: empty input sequence");
  const std::size_t batch = inputs.front().value().rows();
  Var hidden = tape.constant(RealTensor({batch, cfg_.hidden_dim()}));
  std::vector<Var> out;
  out.reserve(inputs.size());
  const Dynamics f = dynamics.as_dynamics();
  for (std::size_t n = 0; n < inputs.size(); ++n) {
    Var evolved = hidden;
    if (cfg_.use_ode) {
      const auto t = static_cast<double>(n + 1);
      evolved = ode_solve(f, hidden, t - 1.0, t, cfg_.steps_per_block);
    }
    hidden = gru.step(tape, evolved, inputs[n]);
    Var h = hidden;
    for (auto& l : decoder) h = l.forward(tape, h);
    out.push_back(h);
  }
  return out;
}

Var Estimator::extrapolate(Tape& tape, Var subsampled) {
  if (subsampled.value().cols() != cfg_.input_dim())
    throw ShapeError("extrapolate: input " + shape_string(subsampled.shape()) + ", expected " +
                     std::to_string(cfg_.input_dim()) + " features");
  return extrapolator.forward(tape, subsampled);
}

Estimator::Outputs Estimator::forward(Tape& tape, std::span<const Var> inputs) {
  Outputs out;
  out.subsampled = interpolate(tape, inputs);
  out.full.reserve(out.subsampled.size());
  for (Var v : out.subsampled) out.full.push_back(extrapolate(tape, v));
  return out;
}

ParameterGroups Estimator::groups() {
  ParameterGroups g;
  std::vector<Parameter*> p;
  dynamics.collect(p);
  g.emplace_back("dynamics", std::move(p));
  p = {};
  gru.collect(p);
  g.emplace_back("gru", std::move(p));
  p = {};
  for (auto& l : decoder) l.collect(p);
  g.emplace_back("decoder", std::move(p));
  p = {};
  extrapolator.collect(p);
  g.emplace_back("extrapolator", std::move(p));
  return g;
}

std::vector<Parameter*> Estimator::parameters() {
  std::vector<Parameter*> all;
  for (auto& [name, params] : groups()) all.insert(all.end(), params.begin(), params.end());
  return all;
}

Losses compute_losses(const Estimator::Outputs& out, const Batch& batch,
                      const EstimatorConfig& cfg, double gamma) {
  const std::size_t blocks = batch.inputs.size();
  if (out.subsampled.size() != blocks || out.full.size() != blocks ||
      batch.subsampled_labels.size() != blocks || batch.full_labels.size() != blocks)
    throw ShapeError("compute_losses: sequence lengths differ");
  Var time_sum = squared_error(out.subsampled[0], batch.subsampled_labels[0]);
  Var antenna_sum = squared_error(out.full[0], batch.full_labels[0]);
  for (std::size_t n = 1; n < blocks; ++n) {
    time_sum = time_sum + squared_error(out.subsampled[n], batch.subsampled_labels[n]);
    antenna_sum = antenna_sum + squared_error(out.full[n], batch.full_labels[n]);
  }
  const auto b = static_cast<double>(batch.size());
  const auto l = static_cast<double>(blocks);
  const auto m = static_cast<double>(cfg.bs_antennas);
  Losses losses;
  losses.time = scale(time_sum, 1.0 / (b * m * static_cast<double>(cfg.selected) * l));
  losses.antenna = scale(antenna_sum, 1.0 / (b * m * static_cast<double>(cfg.elements) * l));
  losses.total = axpy(losses.time, gamma, losses.antenna);
  return losses;
}

}  // namespace rischan
