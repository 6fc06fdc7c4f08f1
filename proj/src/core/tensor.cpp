// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The rischan Authors

#include "rischan/tensor.hpp"

#include <algorithm>

#include "rischan/errors.hpp"

namespace rischan {

std::size_t RealTensor::count(const std::vector<std::size_t>& extents) {
  std::size_t n = 1;
  for (auto e : extents) n *= e;
  return n;
}

RealTensor::RealTensor(std::vector<std::size_t> extents)
    : shape(std::move(extents)), values(count(shape), 0.0) {}

RealTensor::RealTensor(std::vector<std::size_t> extents, std::vector<double> data)
    : shape(std::move(extents)), values(std::move(data)) {
  if (values.size() != count(shape))
    throw ShapeError("RealTensor: " + std::to_string(values.size()) + " values for shape " +
                     shape_string(shape));
}

std::string shape_string(const std::vector<std::size_t>& shape) {
  std::string s = "[";
  for (std::size_t i = 0; i < shape.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(shape[i]);
  }
  return s + "]";
}

Parameter::Parameter(std::string n, std::vector<std::size_t> extents)
    : name(std::move(n)), value(std::move(extents)), grad(value.numel(), 0.0) {}

void Parameter::zero_grad() {
  grad.assign(value.numel(), 0.0);
}

}  // namespace rischan
