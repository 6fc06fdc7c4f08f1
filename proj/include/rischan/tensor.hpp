// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The rischan Authors

#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace rischan {

/// N-dimensional real array. Network math uses rank-2 [batch, features].
struct RealTensor {
  std::vector<std::size_t> shape;
  std::vector<double> values;

  RealTensor() = default;
  explicit RealTensor(std::vector<std::size_t> extents);
  RealTensor(std::vector<std::size_t> extents, std::vector<double> data);

  static std::size_t count(const std::vector<std::size_t>& extents);

  std::size_t numel() const { return values.size(); }
  std::size_t rank() const { return shape.size(); }
  /// Leading extent for rank 2, 1 otherwise.
  std::size_t rows() const { return shape.size() == 2 ? shape[0] : 1; }
  /// Trailing extent.
  std::size_t cols() const { return shape.empty() ? 1 : shape.back(); }

  double& operator()(std::size_t r, std::size_t c) { return values[r * cols() + c]; }
  double operator()(std::size_t r, std::size_t c) const { return values[r * cols() + c]; }
};

std::string shape_string(const std::vector<std::size_t>& shape);

/// Trainable tensor with an accumulated gradient buffer of the same extent.
struct Parameter {
  std::string name;
  RealTensor value;
  std::vector<double> grad;

  Parameter() = default;
  Parameter(std::string n, std::vector<std::size_t> extents);

  void zero_grad();
};

}  // namespace rischan
