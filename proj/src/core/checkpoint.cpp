// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The rischan Authors

#include "rischan/checkpoint.hpp"

#include "rischan/errors.hpp"

namespace rischan {

nlohmann::json parameters_to_json(const ParameterGroups& groups) {
  nlohmann::json out;
  out["version"] = kCheckpointVersion;
  nlohmann::json& g = out["groups"];
  g = nlohmann::json::object();
  for (const auto& [group, params] : groups) {
    nlohmann::json& gj = g[group];
    gj = nlohmann::json::object();
    for (const Parameter* p : params)
      gj[p->name] = {{"shape", p->value.shape}, {"values", p->value.values}};
  }
  return out;
}

void parameters_from_json(const nlohmann::json& j, const ParameterGroups& groups) {
  if (!j.contains("version") || j["version"] != kCheckpointVersion)
    throw ConfigError("checkpoint: missing or unsupported version");
  const auto& g = j.at("groups");
  for (const auto& [group, params] : groups) {
    if (!g.contains(group)) throw ConfigError("checkpoint: missing group '" + group + "'");
    const auto& gj = g[group];
    for (Parameter* p : params) {
      if (!gj.contains(p->name))
        throw ConfigError("checkpoint: missing parameter '" + group + "/" + p->name + "'");
      const auto& pj = gj[p->name];
      auto shape = pj.at("shape").get<std::vector<std::size_t>>();
      if (shape != p->value.shape)
        throw ConfigError("checkpoint: '" + p->name + "' has shape " + shape_string(shape) +
                          ", model expects " + shape_string(p->value.shape));
      auto values = pj.at("values").get<std::vector<double>>();
      if (values.size() != p->value.numel())
        throw ConfigError("checkpoint: '" + p->name + "' value count mismatch");
      p->value.values = std::move(values);
    }
  }
}

}  // namespace rischan
