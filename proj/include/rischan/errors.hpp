// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The rischan Authors

#pragma once

#include <stdexcept>
#include <string>

namespace rischan {

/// Base of every exception thrown by the library core.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand extents do not agree.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// A caller broke an operation's precondition (non-scalar loss, missing
/// gradient, missing pilot estimate, ...).
class ContractError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Frame schedule violates its invariants (for example N_p < N_s).
class ScheduleError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// A state, loss or scale became non-finite or degenerate.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace rischan
