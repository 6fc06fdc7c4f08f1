// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The rischan Authors

#pragma once

#include <cstddef>
#include <functional>
#include <initializer_list>
#include <unordered_map>
#include <vector>

#include "rischan/tensor.hpp"

namespace rischan {

class Tape;

/// Handle to a value recorded on a Tape. Cheap to copy; valid while the tape
/// lives and has not been consumed by backward().
class Var {
 public:
  Var() = default;
  Var(Tape* tape, std::size_t id) : tape_(tape), id_(id) {}

  const RealTensor& value() const;
  const std::vector<std::size_t>& shape() const { return value().shape; }
  Tape& tape() const { return *tape_; }
  std::size_t id() const { return id_; }
  bool valid() const { return tape_ != nullptr; }

 private:
  Tape* tape_ = nullptr;
  std::size_t id_ = 0;
};

/// Dynamic reverse-mode tape. Built fresh for each forward pass; nodes are
/// appended in evaluation order so one reverse sweep visits every consumer
/// before its producers.
class Tape {
 public:
  using Backward = std::function<void(Tape&, std::size_t self)>;

  Tape() = default;
  Tape(const Tape&) = delete;
  Tape& operator=(const Tape&) = delete;

  Var constant(RealTensor value);
  /// Leaf bound to a parameter; repeated calls return the same node.
  Var leaf(Parameter& p);
  /// Append an operation result. `backward` is dropped when none of
  /// `parents` requires a gradient.
  Var record(RealTensor value, std::initializer_list<Var> parents, Backward backward);

  const RealTensor& value(std::size_t id) const;
  bool requires_grad(std::size_t id) const { return nodes_[id].requires_grad; }
  /// Upstream gradient of node `id`; empty when nothing flowed into it.
  const std::vector<double>& grad(std::size_t id) const { return nodes_[id].grad; }
  /// Gradient accumulator of node `id`, zero-initialised on first access.
  /// For parameter leaves this is Parameter::grad itself.
  std::vector<double>& grad_sink(std::size_t id);

  /// Reverse sweep from a scalar loss. Parameter gradients are accumulated
  /// (+=) into Parameter::grad; the tape is cleared afterwards.
  void backward(Var loss);

  std::size_t size() const { return nodes_.size(); }
  void clear();

 private:
  struct Node {
    RealTensor value;
    std::vector<double> grad;
    Parameter* param = nullptr;
    bool requires_grad = false;
    Backward backward;
  };
  std::vector<Node> nodes_;
  std::unordered_map<const Parameter*, std::size_t> leaves_;
};

// Differentiable operations. Binary elementwise ops need identical shapes.

/// x[B,in] * W[out,in]^T + b[out] -> [B,out]
Var linear(Var x, Var weight, Var bias);
Var tanh(Var x);
Var sigmoid(Var x);
Var add(Var a, Var b);
Var sub(Var a, Var b);
Var mul(Var a, Var b);
Var scale(Var a, double c);
/// a + c*b
Var axpy(Var a, double c, Var b);
/// 1 - a
Var one_minus(Var a);
/// Concatenate along the trailing dimension: [B,p] ++ [B,q] -> [B,p+q].
Var concat_cols(Var a, Var b);
/// Scalar sum of every element.
Var sum(Var a);
/// Scalar sum of squared elements.
Var sum_squares(Var a);
/// Scalar sum of (pred - target)^2; target is a constant.
Var squared_error(Var pred, const RealTensor& target);

inline Var operator+(Var a, Var b) { return add(a, b); }
inline Var operator-(Var a, Var b) { return sub(a, b); }
inline Var operator*(Var a, Var b) { return mul(a, b); }
inline Var operator*(double c, Var a) { return scale(a, c); }

}  // namespace rischan
