// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The rischan Authors
//
// Command-line driver: generate / train / eval / sweep. Talks to the library
// only through the C interface in rischan/rischan.h.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rischan/rischan.h"

namespace {

struct ConfigDeleter {
  void operator()(rischan_config* p) const { rischan_config_destroy(p); }
};
struct DatasetDeleter {
  void operator()(rischan_dataset* p) const { rischan_dataset_destroy(p); }
};
struct ModelDeleter {
  void operator()(rischan_model* p) const { rischan_model_destroy(p); }
};
struct StringDeleter {
  void operator()(char* p) const { rischan_string_free(p); }
};

using ConfigPtr = std::unique_ptr<rischan_config, ConfigDeleter>;
using DatasetPtr = std::unique_ptr<rischan_dataset, DatasetDeleter>;
using ModelPtr = std::unique_ptr<rischan_model, ModelDeleter>;
using StringPtr = std::unique_ptr<char, StringDeleter>;

/// Carries a library status out of a command.
struct Failure {
  rischan_status status;
  std::string message;
};

void check(rischan_status s, const std::string& context) {
  if (s != RISCHAN_OK) throw Failure{s, context + ": " + rischan_last_error()};
}

struct Options {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string profile;
  std::string axis;
  std::string values;
  std::string out;
  std::string dataset;
  std::string checkpoint;
};

ConfigPtr resolve_config(const Options& o) {
  rischan_config* raw = nullptr;
  check(rischan_config_create(o.profile.empty() ? "desk" : o.profile.c_str(), &raw), "config");
  ConfigPtr cfg(raw);
  if (!o.config_path.empty()) check(rischan_config_merge_file(cfg.get(), o.config_path.c_str()), "config");
  if (!o.profile.empty()) {
    // Flags win over the file.
    const std::string patch = "{\"profile\":\"" + o.profile + "\"}";
    check(rischan_config_merge_json(cfg.get(), patch.c_str()), "config");
  }
  if (o.seed) check(rischan_config_set_seed(cfg.get(), *o.seed), "config");
  check(rischan_config_validate(cfg.get()), "config");
  return cfg;
}


std::string config_json(const rischan_config* cfg) {
  char* raw = nullptr;
  check(rischan_config_to_json(cfg, &raw), "config");
  return StringPtr(raw).get();
}

std::string config_path_entry(const rischan_config* cfg, const char* key) {
  char* raw = nullptr;
  check(rischan_config_path(cfg, key, &raw), "config");
  return StringPtr(raw).get();
}

void write_file(const std::filesystem::path& p, const std::string& text) {
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::trunc);
  if (!out) throw Failure{RISCHAN_ERR_IO, "cannot write " + p.string()};
  out << text << "\n";
}

DatasetPtr load_dataset(const std::string& dir) {
  rischan_dataset* raw = nullptr;
  check(rischan_dataset_load(dir.c_str(), &raw), "dataset");
  return DatasetPtr(raw);
}

int cmd_generate(const Options& o) {
  ConfigPtr cfg = resolve_config(o);
  const std::string dir = o.out.empty() ? config_path_entry(cfg.get(), "dataset") : o.out;
  rischan_dataset* raw = nullptr;
  check(rischan_dataset_generate(cfg.get(), &raw), "generate");
  DatasetPtr ds(raw);
  std::uint64_t bytes = 0;
  check(rischan_dataset_save(ds.get(), dir.c_str(), &bytes), "generate");
  std::cout << "samples: " << rischan_dataset_size(ds.get()) << "\n"
            << "bytes: " << bytes << "\n"
            << "dataset: " << dir << "\n";
  return 0;
}

int cmd_train(const Options& o) {
  ConfigPtr cfg = resolve_config(o);
  const std::string data_dir = o.dataset.empty() ? config_path_entry(cfg.get(), "dataset") : o.dataset;
  const std::filesystem::path out = o.out.empty() ? config_path_entry(cfg.get(), "report") : o.out;
  DatasetPtr ds = load_dataset(data_dir);
  std::filesystem::create_directories(out);
  write_file(out / "config.json", config_json(cfg.get()));

  rischan_model* raw_model = nullptr;
  char* raw_record = nullptr;
  const rischan_status s = rischan_train(cfg.get(), ds.get(), &raw_model, &raw_record);
  ModelPtr model(raw_model);
  StringPtr record(raw_record);
  if (record) write_file(out / "run_record.json", record.get());
  check(s, "train");
  const std::filesystem::path ckpt = o.checkpoint.empty() ? out / "checkpoint.json" : std::filesystem::path(o.checkpoint);
  check(rischan_model_save(model.get(), ckpt.string().c_str()), "train");
  std::cout << "checkpoint: " << ckpt.string() << "\n"
            << "run record: " << (out / "run_record.json").string() << "\n";
  return 0;
}

int cmd_eval(const Options& o) {
  ConfigPtr cfg = resolve_config(o);
  const std::string data_dir = o.dataset.empty() ? config_path_entry(cfg.get(), "dataset") : o.dataset;
  const std::string ckpt = o.checkpoint.empty() ? config_path_entry(cfg.get(), "checkpoint") : o.checkpoint;
  DatasetPtr ds = load_dataset(data_dir);
  rischan_model* raw = nullptr;
  check(rischan_model_load(ckpt.c_str(), &raw), "eval");
  ModelPtr model(raw);
  double nmse = 0.0;
  check(rischan_model_evaluate(model.get(), cfg.get(), ds.get(), &nmse), "eval");
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", nmse);
  std::cout << "test_nmse: " << buf << "\n";
  if (!o.out.empty())
    write_file(o.out, std::string("{\"checkpoint\": \"") + ckpt + "\", \"test_nmse\": " + buf + "}");
  return 0;
}

std::vector<double> parse_values(const std::string& text) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size()) throw Failure{RISCHAN_ERR_CONFIG, "--values: cannot parse '" + item + "'"};
    values.push_back(v);
  }
  if (values.empty()) throw Failure{RISCHAN_ERR_CONFIG, "--values: no values given"};
  return values;
}

int cmd_sweep(const Options& o) {
  ConfigPtr cfg = resolve_config(o);
  const std::vector<double> values = parse_values(o.values);
  std::filesystem::path out = o.out;
  if (out.empty()) out = std::filesystem::path(config_path_entry(cfg.get(), "report")) / ("sweep_" + o.axis + ".csv");
  if (out.has_parent_path()) std::filesystem::create_directories(out.parent_path());
  std::size_t runs = 0;
  check(rischan_sweep(cfg.get(), o.axis.c_str(), values.data(), values.size(), out.string().c_str(), &runs),
        "sweep");
  std::cout << "runs: " << runs << "\n"
            << "report: " << out.string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-stage ODE-RNN estimator for time-varying cascaded RIS channels"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", o.config_path, "JSON config file")->check(CLI::ExistingFile);
    sub->add_option("--seed", o.seed, "Top-level RNG seed");
    sub->add_option("--profile", o.profile, "Base profile")->check(CLI::IsMember({"desk", "paper"}));
    sub->add_option("--out", o.out, "Output path");
  };

  auto* gen = app.add_subcommand("generate", "Draw channels and pilots, write a dataset");
  add_common(gen);
  auto* trn = app.add_subcommand("train", "Train on a dataset, write checkpoint and run record");
  add_common(trn);
  trn->add_option("--dataset", o.dataset, "Dataset directory (default: paths.dataset)");
  trn->add_option("--checkpoint", o.checkpoint, "Checkpoint file (default: <out>/checkpoint.json)");
  auto* ev = app.add_subcommand("eval", "Test-split NMSE of a checkpoint");
  add_common(ev);
  ev->add_option("--dataset", o.dataset, "Dataset directory (default: paths.dataset)");
  ev->add_option("--checkpoint", o.checkpoint, "Checkpoint file (default: paths.checkpoint)");
  auto* sw = app.add_subcommand("sweep", "Train one model per value and write a CSV report");
  add_common(sw);
  sw->add_option("--axis", o.axis, "r_a, r_t, snr or epoch")->required();
  sw->add_option("--values", o.values, "Comma-separated values")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : RISCHAN_ERR_CONFIG;
  }

  try {
    if (gen->parsed()) return cmd_generate(o);
    if (trn->parsed()) return cmd_train(o);
    if (ev->parsed()) return cmd_eval(o);
    if (sw->parsed()) return cmd_sweep(o);
  } catch (const Failure& f) {
    std::cerr << "error (" << rischan_status_string(f.status) << "): " << f.message << "\n";
    return static_cast<int>(f.status);
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error (I/O error): " << e.what() << "\n";
    return RISCHAN_ERR_IO;
  }
  return 0;
}
