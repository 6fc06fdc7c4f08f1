// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The rischan Authors

#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "rischan/autodiff.hpp"
#include "rischan/rng.hpp"
#include "rischan/tensor.hpp"

namespace rischan::testing {

inline double relative_error(double analytic, double numeric, double floor = 1e-8) {
  return std::abs(analytic - numeric) / std::max({std::abs(analytic), std::abs(numeric), floor});
}

using LossFn = std::function<Var(Tape&)>;

inline double evaluate(const LossFn& loss) {
  Tape tape;
  return loss(tape).value().values.at(0);
}

/// Analytic gradient of `loss` w.r.t. p.value[k] against a central difference.
struct GradientProbe {
  double analytic;
  double numeric;
  double error() const { return relative_error(analytic, numeric); }
};

inline std::vector<double> analytic_gradient(const LossFn& loss, Parameter& p) {
  p.grad.clear();
  Tape tape;
  Var l = loss(tape);
  tape.backward(l);
  std::vector<double> g = p.grad;
  if (g.empty()) g.assign(p.value.numel(), 0.0);
  return g;
}

inline double numeric_gradient(const LossFn& loss, Parameter& p, std::size_t k,
                               double step = 1e-6) {
  const double saved = p.value.values[k];
  p.value.values[k] = saved + step;
  const double up = evaluate(loss);
  p.value.values[k] = saved - step;
  const double down = evaluate(loss);
  p.value.values[k] = saved;
  return (up - down) / (2.0 * step);
}

/// Worst relative error over every entry of every parameter.
inline double worst_gradient_error(const LossFn& loss, const std::vector<Parameter*>& params) {
  double worst = 0.0;
  for (Parameter* p : params) {
    const std::vector<double> g = analytic_gradient(loss, *p);
    for (std::size_t k = 0; k < p->value.numel(); ++k)
      worst = std::max(worst, relative_error(g[k], numeric_gradient(loss, *p, k)));
  }
  return worst;
}

inline RealTensor random_tensor(std::vector<std::size_t> shape, Rng& rng, double lo = -1.0,
                                double hi = 1.0) {
  RealTensor t(std::move(shape));
  std::uniform_real_distribution<double> u(lo, hi);
  for (double& v : t.values) v = u(rng);
  return t;
}

inline Parameter random_parameter(const char* name, std::vector<std::size_t> shape, Rng& rng) {
  Parameter p(name, shape);
  p.value = random_tensor(std::move(shape), rng);
  return p;
}

}  // namespace rischan::testing
