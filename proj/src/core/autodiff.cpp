// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The rischan Authors

#include "rischan/autodiff.hpp"

#include <cmath>
#include <string>

#include "rischan/errors.hpp"

namespace rischan {

const RealTensor& Var::value() const { return tape_->value(id_); }

Var Tape::constant(RealTensor value) {
  Node n;
  n.value = std::move(value);
  nodes_.push_back(std::move(n));
  return Var(this, nodes_.size() - 1);
}

Var Tape::leaf(Parameter& p) {
  if (auto it = leaves_.find(&p); it != leaves_.end()) return Var(this, it->second);
  Node n;
  n.param = &p;
  n.requires_grad = true;
  nodes_.push_back(std::move(n));
  leaves_.emplace(&p, nodes_.size() - 1);
  return Var(this, nodes_.size() - 1);
}

Var Tape::record(RealTensor value, std::initializer_list<Var> parents, Backward backward) {
  Node n;
  n.value = std::move(value);
  for (const Var& p : parents) {
    if (&p.tape() != this) throw ContractError("Tape::record: operand from another tape");
    n.requires_grad = n.requires_grad || nodes_[p.id()].requires_grad;
  }
  if (n.requires_grad) n.backward = std::move(backward);
  nodes_.push_back(std::move(n));
  return Var(this, nodes_.size() - 1);
}

const RealTensor& Tape::value(std::size_t id) const {
  const Node& n = nodes_[id];
  return n.param ? n.param->value : n.value;
}

std::vector<double>& Tape::grad_sink(std::size_t id) {
  Node& n = nodes_[id];
  std::vector<double>& g = n.param ? n.param->grad : n.grad;
  const std::size_t count = value(id).numel();
  if (g.size() != count) g.assign(count, 0.0);
  return g;
}

void Tape::backward(Var loss) {
  if (!loss.valid() || &loss.tape() != this) throw ContractError("backward: loss not on this tape");
  if (loss.value().numel() != 1)
    throw ContractError("backward: loss must be scalar, got shape " +
                        shape_string(loss.value().shape));
  grad_sink(loss.id())[0] += 1.0;
  for (std::size_t i = loss.id() + 1; i-- > 0;) {
    Node& n = nodes_[i];
    if (!n.backward || n.grad.empty()) continue;
    n.backward(*this, i);
  }
  clear();
}

void Tape::clear() {
  nodes_.clear();
  leaves_.clear();
}

namespace {

void require_same(const Var& a, const Var& b, const char* op) {
  if (a.shape() != b.shape())
    throw ShapeError(std::string(op) + ": " + shape_string(a.shape()) + " vs " +
                     shape_string(b.shape()));
}

RealTensor like(const RealTensor& t) { return RealTensor(t.shape); }

template <class F>
Var unary(Var a, F f, Tape::Backward bw) {
  RealTensor out = like(a.value());
  const auto& in = a.value().values;
  for (std::size_t i = 0; i < in.size(); ++i) out.values[i] = f(in[i]);
  return a.tape().record(std::move(out), {a}, std::move(bw));
}

}  // namespace

Var linear(Var x, Var weight, Var bias) {
  const RealTensor& xv = x.value();
  const RealTensor& w = weight.value();
  const RealTensor& b = bias.value();
  if (xv.rank() != 2 || w.rank() != 2 || b.rank() != 1 || xv.cols() != w.shape[1] ||
      b.shape[0] != w.shape[0])
    throw ShapeError("linear: x" + shape_string(xv.shape) + " W" + shape_string(w.shape) + " b" +
                     shape_string(b.shape));
  const std::size_t batch = xv.shape[0], in = w.shape[1], out_dim = w.shape[0];
  RealTensor out({batch, out_dim});
  for (std::size_t r = 0; r < batch; ++r) {
    const double* xr = &xv.values[r * in];
    double* yr = &out.values[r * out_dim];
    for (std::size_t o = 0; o < out_dim; ++o) {
      const double* wo = &w.values[o * in];
      double acc = b.values[o];
      for (std::size_t i = 0; i < in; ++i) acc += wo[i] * xr[i];
      yr[o] = acc;
    }
  }
  const std::size_t xi = x.id(), wi = weight.id(), bi = bias.id();
  return x.tape().record(std::move(out), {x, weight, bias},
                         [xi, wi, bi, batch, in, out_dim](Tape& t, std::size_t self) {
    const auto& dy = t.grad(self);
    const auto& xv = t.value(xi).values;
    const auto& wv = t.value(wi).values;
    if (t.requires_grad(xi)) {
      auto& dx = t.grad_sink(xi);
      for (std::size_t r = 0; r < batch; ++r)
        for (std::size_t o = 0; o < out_dim; ++o) {
          const double g = dy[r * out_dim + o];
          const double* wo = &wv[o * in];
          double* dxr = &dx[r * in];
          for (std::size_t i = 0; i < in; ++i) dxr[i] += g * wo[i];
        }
    }
    if (t.requires_grad(wi)) {
      auto& dw = t.grad_sink(wi);
      for (std::size_t r = 0; r < batch; ++r)
        for (std::size_t o = 0; o < out_dim; ++o) {
          const double g = dy[r * out_dim + o];
          const double* xr = &xv[r * in];
          double* dwo = &dw[o * in];
          for (std::size_t i = 0; i < in; ++i) dwo[i] += g * xr[i];
        }
    }
    if (t.requires_grad(bi)) {
      auto& db = t.grad_sink(bi);
      for (std::size_t r = 0; r < batch; ++r)
        for (std::size_t o = 0; o < out_dim; ++o) db[o] += dy[r * out_dim + o];
    }
  });
}

Var tanh(Var x) {
  const std::size_t xi = x.id();
  return unary(x, [](double v) { return std::tanh(v); }, [xi](Tape& t, std::size_t self) {
    const auto& dy = t.grad(self);
    const auto& y = t.value(self).values;
    auto& dx = t.grad_sink(xi);
    for (std::size_t i = 0; i < dy.size(); ++i) dx[i] += dy[i] * (1.0 - y[i] * y[i]);
  });
}

Var sigmoid(Var x) {
  const std::size_t xi = x.id();
  return unary(x, [](double v) { return 1.0 / (1.0 + std::exp(-v)); },
               [xi](Tape& t, std::size_t self) {
    const auto& dy = t.grad(self);
    const auto& y = t.value(self).values;
    auto& dx = t.grad_sink(xi);
    for (std::size_t i = 0; i < dy.size(); ++i) dx[i] += dy[i] * y[i] * (1.0 - y[i]);
  });
}

Var scale(Var a, double c) {
  const std::size_t ai = a.id();
  return unary(a, [c](double v) { return c * v; }, [ai, c](Tape& t, std::size_t self) {
    const auto& dy = t.grad(self);
    auto& da = t.grad_sink(ai);
    for (std::size_t i = 0; i < dy.size(); ++i) da[i] += c * dy[i];
  });
}

Var one_minus(Var a) {
  const std::size_t ai = a.id();
  return unary(a, [](double v) { return 1.0 - v; }, [ai](Tape& t, std::size_t self) {
    const auto& dy = t.grad(self);
    auto& da = t.grad_sink(ai);
    for (std::size_t i = 0; i < dy.size(); ++i) da[i] -= dy[i];
  });
}

Var axpy(Var a, double c, Var b) {
  require_same(a, b, "axpy");
  RealTensor out = a.value();
  const auto& bv = b.value().values;
  for (std::size_t i = 0; i < bv.size(); ++i) out.values[i] += c * bv[i];
  const std::size_t ai = a.id(), bi = b.id();
  return a.tape().record(std::move(out), {a, b}, [ai, bi, c](Tape& t, std::size_t self) {
    const auto& dy = t.grad(self);
    if (t.requires_grad(ai)) {
      auto& da = t.grad_sink(ai);
      for (std::size_t i = 0; i < dy.size(); ++i) da[i] += dy[i];
    }
    if (t.requires_grad(bi)) {
      auto& db = t.grad_sink(bi);
      for (std::size_t i = 0; i < dy.size(); ++i) db[i] += c * dy[i];
    }
  });
}

Var add(Var a, Var b) {
  require_same(a, b, "add");
  return axpy(a, 1.0, b);
}

Var sub(Var a, Var b) {
  require_same(a, b, "sub");
  return axpy(a, -1.0, b);
}

Var mul(Var a, Var b) {
  require_same(a, b, "mul");
  RealTensor out = a.value();
  const auto& bv = b.value().values;
  for (std::size_t i = 0; i < bv.size(); ++i) out.values[i] *= bv[i];
  const std::size_t ai = a.id(), bi = b.id();
  return a.tape().record(std::move(out), {a, b}, [ai, bi](Tape& t, std::size_t self) {
    const auto& dy = t.grad(self);
    if (t.requires_grad(ai)) {
      const auto& bv = t.value(bi).values;
      auto& da = t.grad_sink(ai);
      for (std::size_t i = 0; i < dy.size(); ++i) da[i] += dy[i] * bv[i];
    }
    if (t.requires_grad(bi)) {
      const auto& av = t.value(ai).values;
      auto& db = t.grad_sink(bi);
      for (std::size_t i = 0; i < dy.size(); ++i) db[i] += dy[i] * av[i];
    }
  });
}

Var concat_cols(Var a, Var b) {
  const RealTensor& av = a.value();
  const RealTensor& bv = b.value();
  if (av.rank() != 2 || bv.rank() != 2 || av.shape[0] != bv.shape[0])
    throw ShapeError("concat_cols: " + shape_string(av.shape) + " ++ " + shape_string(bv.shape));
  const std::size_t rows = av.shape[0], p = av.shape[1], q = bv.shape[1];
  RealTensor out({rows, p + q});
  for (std::size_t r = 0; r < rows; ++r) {
    std::copy_n(&av.values[r * p], p, &out.values[r * (p + q)]);
    std::copy_n(&bv.values[r * q], q, &out.values[r * (p + q) + p]);
  }
  const std::size_t ai = a.id(), bi = b.id();
  return a.tape().record(std::move(out), {a, b}, [ai, bi, rows, p, q](Tape& t, std::size_t self) {
    const auto& dy = t.grad(self);
    if (t.requires_grad(ai)) {
      auto& da = t.grad_sink(ai);
      for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t i = 0; i < p; ++i) da[r * p + i] += dy[r * (p + q) + i];
    }
    if (t.requires_grad(bi)) {
      auto& db = t.grad_sink(bi);
      for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t i = 0; i < q; ++i) db[r * q + i] += dy[r * (p + q) + p + i];
    }
  });
}

Var sum(Var a) {
  double acc = 0.0;
  for (double v : a.value().values) acc += v;
  const std::size_t ai = a.id();
  return a.tape().record(RealTensor({1}, {acc}), {a}, [ai](Tape& t, std::size_t self) {
    const double g = t.grad(self)[0];
    for (double& d : t.grad_sink(ai)) d += g;
  });
}

Var sum_squares(Var a) {
  double acc = 0.0;
  for (double v : a.value().values) acc += v * v;
  const std::size_t ai = a.id();
  return a.tape().record(RealTensor({1}, {acc}), {a}, [ai](Tape& t, std::size_t self) {
    const double g = t.grad(self)[0];
    const auto& av = t.value(ai).values;
    auto& da = t.grad_sink(ai);
    for (std::size_t i = 0; i < av.size(); ++i) da[i] += 2.0 * g * av[i];
  });
}

Var squared_error(Var pred, const RealTensor& target) {
  if (pred.shape() != target.shape)
    throw ShapeError("squared_error: prediction " + shape_string(pred.shape()) + " vs label " +
                     shape_string(target.shape));
  const auto& pv = pred.value().values;
  std::vector<double> diff(pv.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < pv.size(); ++i) {
    diff[i] = pv[i] - target.values[i];
    acc += diff[i] * diff[i];
  }
  const std::size_t pi = pred.id();
  return pred.tape().record(RealTensor({1}, {acc}), {pred},
                            [pi, diff = std::move(diff)](Tape& t, std::size_t self) {
    const double g = t.grad(self)[0];
    auto& dp = t.grad_sink(pi);
    for (std::size_t i = 0; i < diff.size(); ++i) dp[i] += 2.0 * g * diff[i];
  });
}

}  // namespace rischan
