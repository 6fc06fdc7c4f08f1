// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The rischan Authors

#include "rischan/nn.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "rischan/errors.hpp"

namespace rischan {

std::string_view to_string(Activation a) {
  switch (a) {
    case Activation::identity: return "identity";
    case Activation::tanh: return "tanh";
    case Activation::sigmoid: return "sigmoid";
  }
  return "?";
}

Var activate(Activation a, Var x) {
  switch (a) {
    case Activation::tanh: return tanh(x);
    case Activation::sigmoid: return sigmoid(x);
    case Activation::identity: break;
  }
  return x;
}

DenseLayer::DenseLayer(std::string name, std::size_t in, std::size_t out, Activation act)
    : weight(name + ".weight", {out, in}), bias(name + ".bias", {out}), activation(act) {}

void DenseLayer::initialize(Rng& rng) {
  const double bound = std::sqrt(6.0 / static_cast<double>(in_dim() + out_dim()));
  std::uniform_real_distribution<double> u(-bound, bound);
  for (double& w : weight.value.values) w = u(rng);
  std::fill(bias.value.values.begin(), bias.value.values.end(), 0.0);
}

Var DenseLayer::forward(Tape& tape, Var x) {
  if (x.value().cols() != in_dim())
    throw ShapeError(weight.name + ": input " + shape_string(x.shape()) + " but layer expects " +
                     std::to_string(in_dim()) + " features");
  return activate(activation, linear(x, tape.leaf(weight), tape.leaf(bias)));
}

Adam::Adam(std::vector<Parameter*> params, Options opts) : params_(std::move(params)), opts_(opts) {
  std::unordered_set<const Parameter*> seen;
  for (const Parameter* p : params_) {
    if (!seen.insert(p).second) throw ContractError("Adam: parameter '" + p->name + "' registered twice");
    first_.emplace_back(p->value.numel(), 0.0);
    second_.emplace_back(p->value.numel(), 0.0);
  }
}

void Adam::step() {
  for (const Parameter* p : params_)
    if (p->grad.size() != p->value.numel())
      throw ContractError("Adam: missing gradient for '" + p->name + "'");
  ++step_;
  const double b1 = opts_.beta1, b2 = opts_.beta2;
  const double c1 = 1.0 - std::pow(b1, static_cast<double>(step_));
  const double c2 = 1.0 - std::pow(b2, static_cast<double>(step_));
  for (std::size_t k = 0; k < params_.size(); ++k) {
    auto& value = params_[k]->value.values;
    const auto& grad = params_[k]->grad;
    auto& m = first_[k];
    auto& v = second_[k];
    for (std::size_t i = 0; i < value.size(); ++i) {
      m[i] = b1 * m[i] + (1.0 - b1) * grad[i];
      v[i] = b2 * v[i] + (1.0 - b2) * grad[i] * grad[i];
      const double mhat = m[i] / c1;
      const double vhat = v[i] / c2;
      value[i] -= opts_.learning_rate * mhat / (std::sqrt(vhat) + opts_.epsilon);
    }
  }
}

void Adam::zero_grad() {
  for (Parameter* p : params_) p->zero_grad();
}

}  // namespace rischan
