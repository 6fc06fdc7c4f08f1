// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The rischan Authors

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <string>

#include <nlohmann/json.hpp>

#include "rischan/rischan.h"

namespace fs = std::filesystem;

namespace {

struct Config {
  rischan_config* ptr = nullptr;
  explicit Config(const char* overrides = nullptr) {
    REQUIRE(rischan_config_create("desk", &ptr) == RISCHAN_OK);
    if (overrides) REQUIRE(rischan_config_merge_json(ptr, overrides) == RISCHAN_OK);
  }
  ~Config() { rischan_config_destroy(ptr); }
};

constexpr const char* kSmall = R"({
  "scenario": {"M": 1, "N_v": 2, "N_h": 2, "L_g": 2},
  "schedule": {"L": 3},
  "dataset": {"samples": 40},
  "train": {"epochs": 2, "batch_size": 8}
})";

std::string take(char* s) {
  std::string out = s ? s : "";
  rischan_string_free(s);
  return out;
}

}  // namespace

TEST_CASE("status strings and null arguments") {
  CHECK(std::string(rischan_status_string(RISCHAN_OK)) == "ok");
  CHECK(rischan_config_create("desk", nullptr) == RISCHAN_ERR_INVALID_ARGUMENT);
  CHECK(std::string(rischan_last_error()).size() > 0);
  CHECK(rischan_config_validate(nullptr) == RISCHAN_ERR_INVALID_ARGUMENT);
  CHECK(rischan_dataset_size(nullptr) == 0);
  rischan_config_destroy(nullptr);
  rischan_dataset_destroy(nullptr);
  rischan_model_destroy(nullptr);
  rischan_string_free(nullptr);
}

TEST_CASE("configuration through the C interface") {
  rischan_config* cfg = nullptr;
  CHECK(rischan_config_create("laptop", &cfg) == RISCHAN_ERR_CONFIG);
  CHECK(cfg == nullptr);
  Config c;
  CHECK(rischan_config_merge_json(c.ptr, "{not json") == RISCHAN_ERR_CONFIG);
  CHECK(rischan_config_merge_json(c.ptr, R"({"nope": 1})") == RISCHAN_ERR_CONFIG);
  CHECK(rischan_config_set_seed(c.ptr, 99) == RISCHAN_OK);
  char* text = nullptr;
  REQUIRE(rischan_config_to_json(c.ptr, &text) == RISCHAN_OK);
  auto j = nlohmann::json::parse(take(text));
  CHECK(j.at("seed") == 99);
  char* path = nullptr;
  REQUIRE(rischan_config_path(c.ptr, "report", &path) == RISCHAN_OK);
  CHECK(take(path) == "reports");
  CHECK(rischan_config_path(c.ptr, "elsewhere", &path) == RISCHAN_ERR_INVALID_ARGUMENT);
  CHECK(rischan_config_merge_file(c.ptr, "/nonexistent/cfg.json") == RISCHAN_ERR_IO);

  CHECK(rischan_config_merge_json(c.ptr, R"({"schedule": {"N_p": 4}})") == RISCHAN_OK);
  CHECK(rischan_config_validate(c.ptr) == RISCHAN_ERR_CONFIG);
}

TEST_CASE("dataset, training, checkpoint and evaluation") {
  Config c(kSmall);
  rischan_dataset* ds = nullptr;
  REQUIRE(rischan_dataset_generate(c.ptr, &ds) == RISCHAN_OK);
  CHECK(rischan_dataset_size(ds) == 40);

  const fs::path dir = fs::temp_directory_path() / "rischan_capi_test";
  fs::remove_all(dir);
  std::uint64_t bytes = 0;
  REQUIRE(rischan_dataset_save(ds, dir.c_str(), &bytes) == RISCHAN_OK);
  CHECK(bytes > 0);
  rischan_dataset* loaded = nullptr;
  REQUIRE(rischan_dataset_load(dir.c_str(), &loaded) == RISCHAN_OK);
  char* manifest = nullptr;
  REQUIRE(rischan_dataset_manifest(loaded, &manifest) == RISCHAN_OK);
  CHECK(nlohmann::json::parse(take(manifest)).at("count") == 40);

  rischan_model* model = nullptr;
  char* record = nullptr;
  REQUIRE(rischan_train(c.ptr, loaded, &model, &record) == RISCHAN_OK);
  auto rec = nlohmann::json::parse(take(record));
  CHECK(rec.at("epochs").size() == 2);
  const fs::path ckpt = dir / "model.json";
  REQUIRE(rischan_model_save(model, ckpt.c_str()) == RISCHAN_OK);
  rischan_model* back = nullptr;
  REQUIRE(rischan_model_load(ckpt.c_str(), &back) == RISCHAN_OK);
  double nmse = -1.0;
  REQUIRE(rischan_model_evaluate(back, c.ptr, loaded, &nmse) == RISCHAN_OK);
  CHECK(nmse == doctest::Approx(rec.at("test_nmse").get<double>()).epsilon(1e-12));

  CHECK(rischan_dataset_load((dir / "missing").c_str(), &loaded) == RISCHAN_ERR_IO);
  CHECK(rischan_model_load((dir / "missing.json").c_str(), &back) == RISCHAN_ERR_IO);

  rischan_model_destroy(back);
  rischan_model_destroy(model);
  rischan_dataset_destroy(loaded);
  rischan_dataset_destroy(ds);
  fs::remove_all(dir);
}

TEST_CASE("evaluating on a dataset of another geometry fails") {
  Config small(kSmall);
  Config other(R"({"scenario": {"M": 1, "N_v": 2, "N_h": 4, "L_g": 2}, "schedule": {"L": 3},
                   "dataset": {"samples": 40}, "train": {"epochs": 1, "batch_size": 8}})");
  rischan_dataset *a = nullptr, *b = nullptr;
  REQUIRE(rischan_dataset_generate(small.ptr, &a) == RISCHAN_OK);
  REQUIRE(rischan_dataset_generate(other.ptr, &b) == RISCHAN_OK);
  rischan_model* model = nullptr;
  REQUIRE(rischan_train(small.ptr, a, &model, nullptr) == RISCHAN_OK);
  double nmse = 0.0;
  CHECK(rischan_model_evaluate(model, other.ptr, b, &nmse) == RISCHAN_ERR_CONFIG);
  rischan_model_destroy(model);
  rischan_dataset_destroy(a);
  rischan_dataset_destroy(b);
}

TEST_CASE("sweep writes the CSV report") {
  Config c(kSmall);
  const fs::path dir = fs::temp_directory_path() / "rischan_capi_sweep";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const fs::path csv = dir / "sweep.csv";
  const double values[] = {0.5, 1.0};
  std::size_t runs = 0;
  REQUIRE(rischan_sweep(c.ptr, "r_a", values, 2, csv.c_str(), &runs) == RISCHAN_OK);
  CHECK(runs == 2);
  std::ifstream in(csv);
  std::string header;
  std::getline(in, header);
  CHECK(header == "axis,value,epoch,loss_t,loss_a,nmse");
  std::size_t lines = 0;
  for (std::string line; std::getline(in, line);) ++lines;
  CHECK(lines == 4);
  CHECK(rischan_sweep(c.ptr, "doppler", values, 2, csv.c_str(), &runs) == RISCHAN_ERR_CONFIG);
  CHECK(rischan_sweep(c.ptr, "r_a", values, 0, csv.c_str(), &runs) != RISCHAN_OK);
  fs::remove_all(dir);
}
