// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The rischan Authors

#pragma once

#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "rischan/tensor.hpp"

namespace rischan {

inline constexpr int kCheckpointVersion = 1;

/// Named parameter groups in a fixed order.
using ParameterGroups = std::vector<std::pair<std::string, std::vector<Parameter*>>>;

/// {"version":1,"groups":{group:{param:{"shape":[...],"values":[...]}}}}
nlohmann::json parameters_to_json(const ParameterGroups& groups);

/// Restores values in place. Throws ConfigError on a version, name or shape
/// mismatch.
void parameters_from_json(const nlohmann::json& j, const ParameterGroups& groups);

}  // namespace rischan
