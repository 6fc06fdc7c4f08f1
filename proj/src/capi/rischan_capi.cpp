// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The rischan Authors

#include "rischan/rischan.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <new>
#include <optional>
#include <string>

#include "rischan/config.hpp"
#include "rischan/dataset.hpp"
#include "rischan/errors.hpp"
#include "rischan/training.hpp"

struct rischan_config {
  rischan::ExperimentConfig cfg;
};

struct rischan_dataset {
  rischan::Dataset ds;
};

struct rischan_model {
  rischan::TrainedModel model;
};

namespace {

thread_local std::string g_last_error;

rischan_status fail(rischan_status s, const std::string& msg) {
  g_last_error = msg;
  return s;
}

template <class F>
rischan_status guarded(F&& f) {
  try {
    g_last_error.clear();
    return f();
  } catch (const rischan::ShapeError& e) {
    return fail(RISCHAN_ERR_SHAPE, e.what());
  } catch (const rischan::ConfigError& e) {
    return fail(RISCHAN_ERR_CONFIG, e.what());
  } catch (const rischan::IoError& e) {
    return fail(RISCHAN_ERR_IO, e.what());
  } catch (const rischan::NumericalError& e) {
    return fail(RISCHAN_ERR_DIVERGENCE, e.what());
  } catch (const rischan::ContractError& e) {
    return fail(RISCHAN_ERR_INVALID_ARGUMENT, e.what());
  } catch (const nlohmann::json::exception& e) {
    return fail(RISCHAN_ERR_CONFIG, std::string("json: ") + e.what());
  } catch (const std::bad_alloc&) {
    return fail(RISCHAN_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(RISCHAN_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(RISCHAN_ERR_INTERNAL, "unknown error");
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

#define RISCHAN_REQUIRE(cond, what) \
  if (!(cond)) return fail(RISCHAN_ERR_INVALID_ARGUMENT, what)

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw rischan::IoError("cannot write " + path);
  out << text;
  if (!out) throw rischan::IoError("cannot write " + path);
}

}  // namespace

extern "C" {

const char* rischan_last_error(void) { return g_last_error.c_str(); }

const char* rischan_status_string(rischan_status status) {
  switch (status) {
    case RISCHAN_OK: return "ok";
    case RISCHAN_ERR_INVALID_ARGUMENT: return "invalid argument";
    case RISCHAN_ERR_CONFIG: return "configuration error";
    case RISCHAN_ERR_IO: return "I/O error";
    case RISCHAN_ERR_DIVERGENCE: return "numerical divergence";
    case RISCHAN_ERR_SHAPE: return "shape error";
    case RISCHAN_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void rischan_string_free(char* s) { std::free(s); }

rischan_status rischan_config_create(const char* profile, rischan_config** out) {
  RISCHAN_REQUIRE(out, "rischan_config_create: null output");
  *out = nullptr;
  return guarded([&] {
    *out = new rischan_config{rischan::profile_config(profile ? profile : "desk")};
    return RISCHAN_OK;
  });
}

void rischan_config_destroy(rischan_config* cfg) { delete cfg; }

rischan_status rischan_config_merge_json(rischan_config* cfg, const char* json) {
  RISCHAN_REQUIRE(cfg && json, "rischan_config_merge_json: null argument");
  return guarded([&] {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(json);
    } catch (const nlohmann::json::exception& e) {
      throw rischan::ConfigError(std::string("config: ") + e.what());
    }
    rischan::ExperimentConfig next = cfg->cfg;
    rischan::merge_json(next, j);
    cfg->cfg = std::move(next);
    return RISCHAN_OK;
  });
}

rischan_status rischan_config_merge_file(rischan_config* cfg, const char* path) {
  RISCHAN_REQUIRE(cfg && path, "rischan_config_merge_file: null argument");
  return guarded([&] {
    std::ifstream in(path);
    if (!in) throw rischan::IoError(std::string("cannot open config ") + path);
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw rischan::ConfigError(std::string("config ") + path + ": " + e.what());
    }
    rischan::ExperimentConfig next = cfg->cfg;
    rischan::merge_json(next, j);
    cfg->cfg = std::move(next);
    return RISCHAN_OK;
  });
}

rischan_status rischan_config_set_seed(rischan_config* cfg, uint64_t seed) {
  RISCHAN_REQUIRE(cfg, "rischan_config_set_seed: null config");
  cfg->cfg.seed = seed;
  return RISCHAN_OK;
}

rischan_status rischan_config_to_json(const rischan_config* cfg, char** out) {
  RISCHAN_REQUIRE(cfg && out, "rischan_config_to_json: null argument");
  return guarded([&] {
    *out = dup_string(rischan::to_json(cfg->cfg).dump(2));
    return RISCHAN_OK;
  });
}

rischan_status rischan_config_validate(const rischan_config* cfg) {
  RISCHAN_REQUIRE(cfg, "rischan_config_validate: null config");
  return guarded([&] {
    cfg->cfg.validate();
    return RISCHAN_OK;
  });
}

rischan_status rischan_config_path(const rischan_config* cfg, const char* key, char** out) {
  RISCHAN_REQUIRE(cfg && key && out, "rischan_config_path: null argument");
  return guarded([&] {
    const auto& p = cfg->cfg.paths;
    const std::string k = key;
    if (k == "dataset") *out = dup_string(p.dataset);
    else if (k == "checkpoint") *out = dup_string(p.checkpoint);
    else if (k == "report") *out = dup_string(p.report);
    else return fail(RISCHAN_ERR_INVALID_ARGUMENT, "rischan_config_path: unknown key '" + k + "'");
    return RISCHAN_OK;
  });
}

rischan_status rischan_dataset_generate(const rischan_config* cfg, rischan_dataset** out) {
  RISCHAN_REQUIRE(cfg && out, "rischan_dataset_generate: null argument");
  *out = nullptr;
  return guarded([&] {
    const auto& c = cfg->cfg;
    c.validate();
    const rischan::FrameSchedule schedule = c.schedule.build(c.scenario.ris_elements());
    auto ds = rischan::generate_dataset(c.scenario, schedule, c.samples, c.schedule.snr_db, c.seed);
    ds.config = rischan::to_json(c);
    *out = new rischan_dataset{std::move(ds)};
    return RISCHAN_OK;
  });
}

rischan_status rischan_dataset_save(const rischan_dataset* ds, const char* dir,
                                    uint64_t* bytes_written) {
  RISCHAN_REQUIRE(ds && dir, "rischan_dataset_save: null argument");
  return guarded([&] {
    const auto bytes = rischan::save_dataset(ds->ds, dir);
    if (bytes_written) *bytes_written = bytes;
    return RISCHAN_OK;
  });
}

rischan_status rischan_dataset_load(const char* dir, rischan_dataset** out) {
  RISCHAN_REQUIRE(dir && out, "rischan_dataset_load: null argument");
  *out = nullptr;
  return guarded([&] {
    *out = new rischan_dataset{rischan::load_dataset(dir)};
    return RISCHAN_OK;
  });
}

size_t rischan_dataset_size(const rischan_dataset* ds) { return ds ? ds->ds.size() : 0; }

rischan_status rischan_dataset_manifest(const rischan_dataset* ds, char** out) {
  RISCHAN_REQUIRE(ds && out, "rischan_dataset_manifest: null argument");
  return guarded([&] {
    *out = dup_string(rischan::manifest_json(ds->ds).dump(2));
    return RISCHAN_OK;
  });
}

void rischan_dataset_destroy(rischan_dataset* ds) { delete ds; }

rischan_status rischan_train(const rischan_config* cfg, const rischan_dataset* ds,
                             rischan_model** model, char** run_record_json) {
  RISCHAN_REQUIRE(cfg && ds, "rischan_train: null argument");
  if (model) *model = nullptr;
  if (run_record_json) *run_record_json = nullptr;
  return guarded([&] {
    rischan::TrainResult r = rischan::train(cfg->cfg, ds->ds);
    if (run_record_json) *run_record_json = dup_string(r.record.to_json().dump(2));
    if (r.record.diverged) return fail(RISCHAN_ERR_DIVERGENCE, r.record.diagnostic);
    if (model) *model = new rischan_model{std::move(r.model)};
    return RISCHAN_OK;
  });
}

rischan_status rischan_model_save(rischan_model* model, const char* path) {
  RISCHAN_REQUIRE(model && path, "rischan_model_save: null argument");
  return guarded([&] {
    rischan::save_model(model->model, path);
    return RISCHAN_OK;
  });
}

rischan_status rischan_model_load(const char* path, rischan_model** out) {
  RISCHAN_REQUIRE(path && out, "rischan_model_load: null argument");
  *out = nullptr;
  return guarded([&] {
    *out = new rischan_model{rischan::load_model(path)};
    return RISCHAN_OK;
  });
}

rischan_status rischan_model_evaluate(rischan_model* model, const rischan_config* cfg,
                                      const rischan_dataset* ds, double* nmse) {
  RISCHAN_REQUIRE(model && cfg && ds && nmse, "rischan_model_evaluate: null argument");
  return guarded([&] {
    *nmse = rischan::evaluate_model(model->model, cfg->cfg, ds->ds);
    return RISCHAN_OK;
  });
}

void rischan_model_destroy(rischan_model* model) { delete model; }

rischan_status rischan_sweep(const rischan_config* cfg, const char* axis, const double* values,
                             size_t count, const char* csv_path, size_t* runs) {
  RISCHAN_REQUIRE(cfg && axis && csv_path, "rischan_sweep: null argument");
  RISCHAN_REQUIRE(values || count == 0, "rischan_sweep: null values");
  return guarded([&] {
    const rischan::SweepAxis parsed = rischan::parse_axis(axis);
    const rischan::SweepResult result =
        rischan::sweep(parsed, std::span<const double>(values, count), cfg->cfg);
    {
      std::ofstream out(csv_path, std::ios::trunc);
      if (!out) throw rischan::IoError(std::string("cannot write ") + csv_path);
      rischan::write_sweep_csv(out, result.rows);
      if (!out) throw rischan::IoError(std::string("cannot write ") + csv_path);
    }
    nlohmann::json snapshot = {{"axis", axis},
                               {"values", std::vector<double>(values, values + count)},
                               {"config", rischan::to_json(cfg->cfg)}};
    write_text(std::string(csv_path) + ".config.json", snapshot.dump(2) + "\n");
    nlohmann::json records = nlohmann::json::array();
    for (const auto& r : result.runs) records.push_back(r.to_json());
    write_text(std::string(csv_path) + ".runs.json", records.dump(2) + "\n");
    if (runs) *runs = result.runs.size();
    return RISCHAN_OK;
  });
}

}  // extern "C"
