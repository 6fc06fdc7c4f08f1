// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The rischan Authors

#include "rischan/training.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>

#include "rischan/errors.hpp"
#include "rischan/nn.hpp"
#include "rischan/rng.hpp"

namespace rischan {

nlohmann::json RunRecord::to_json() const {
  nlohmann::json j;
  j["config"] = config;
  j["seed"] = seed;
  nlohmann::json ep = nlohmann::json::array();
  for (const EpochRecord& e : epochs)
    ep.push_back({{"epoch", e.epoch},
                  {"learning_rate", e.learning_rate},
                  {"loss_t", e.loss_time},
                  {"loss_a", e.loss_antenna},
                  {"validation_nmse", e.validation_nmse}});
  j["epochs"] = std::move(ep);
  j["best_epoch"] = best_epoch;
  j["best_validation_nmse"] = best_validation_nmse;
  j["test_nmse"] = test_nmse;
  j["scale"] = scale;
  j["wall_time_s"] = wall_time_s;
  j["diverged"] = diverged;
  j["diagnostic"] = diagnostic;
  return j;
}

double nmse(std::span<const std::vector<std::vector<double>>> predicted,
            std::span<const std::vector<std::vector<double>>> truth) {
  if (predicted.size() != truth.size()) throw ShapeError("nmse: sample counts differ");
  if (truth.empty()) throw ContractError("nmse: no samples");
  double total = 0.0;
  for (std::size_t s = 0; s < truth.size(); ++s) {
    if (predicted[s].size() != truth[s].size()) throw ShapeError("nmse: block counts differ");
    double err = 0.0, energy = 0.0;
    for (std::size_t n = 0; n < truth[s].size(); ++n) {
      const auto& p = predicted[s][n];
      const auto& t = truth[s][n];
      if (p.size() != t.size()) throw ShapeError("nmse: vector lengths differ");
      for (std::size_t i = 0; i < t.size(); ++i) {
        err += (t[i] - p[i]) * (t[i] - p[i]);
        energy += t[i] * t[i];
      }
    }
    if (!(energy > 0.0)) throw NumericalError("nmse: sample " + std::to_string(s) + " has zero energy");
    total += err / energy;
  }
  return total / static_cast<double>(truth.size());
}

std::vector<std::vector<std::vector<double>>> predict(Estimator& model,
                                                      const std::vector<Sample>& samples,
                                                      std::span<const std::size_t> indices) {
  const Batch batch = make_batch(samples, indices);
  Tape tape;
  std::vector<Var> inputs;
  for (const RealTensor& x : batch.inputs) inputs.push_back(tape.constant(x));
  const std::vector<Var> sub = model.interpolate(tape, inputs);
  std::vector<std::vector<std::vector<double>>> out(indices.size());
  for (Var v : sub) {
    const RealTensor& full = model.extrapolate(tape, v).value();
    const std::size_t w = full.cols();
    for (std::size_t r = 0; r < indices.size(); ++r)
      out[r].emplace_back(full.values.begin() + static_cast<std::ptrdiff_t>(r * w),
                          full.values.begin() + static_cast<std::ptrdiff_t>((r + 1) * w));
  }
  return out;
}

double evaluate_nmse(Estimator& model, const NormalizedData& data,
                     std::span<const std::size_t> indices) {
  if (indices.empty()) throw ContractError("evaluate_nmse: empty split");
  auto predicted = predict(model, data.samples, indices);
  std::vector<std::vector<std::vector<double>>> truth;
  truth.reserve(indices.size());
  for (std::size_t i : indices) truth.push_back(data.samples[i].full);
  for (auto* seq : {&predicted, &truth})
    for (auto& sample : *seq)
      for (auto& block : sample)
        for (double& v : block) v *= data.scale;
  return nmse(predicted, truth);
}

EstimatorConfig estimator_config(const ExperimentConfig& cfg, const Dataset& ds) {
  EstimatorConfig e;
  e.bs_antennas = ds.scenario.bs_antennas;
  e.selected = ds.schedule.selected();
  e.elements = ds.scenario.ris_elements();
  e.hidden = cfg.model.hidden;
  e.steps_per_block = cfg.model.steps_per_block;
  e.rk_step = cfg.model.rk_step;
  e.use_ode = cfg.model.use_ode;
  return e;
}

TrainResult train(const ExperimentConfig& cfg, const Dataset& ds) {
  const auto started = std::chrono::steady_clock::now();
  const TrainConfig& tc = cfg.train;
  tc.validate();
  const Split split = split_indices(ds.size(), tc.train_fraction, tc.validation_fraction);
  if (tc.batch_size > split.fit.size())
    throw ConfigError("train: batch size " + std::to_string(tc.batch_size) + " exceeds " +
                      std::to_string(split.fit.size()) + " training samples");
  const NormalizedData data = normalize(ds, split);

  Estimator model(estimator_config(cfg, ds));
  Rng init_rng = make_stream(cfg.seed, "init");
  model.initialize(init_rng);
  Adam adam(model.parameters(), Adam::Options{tc.learning_rate});
  adam.zero_grad();

  TrainResult result{TrainedModel{model, data.scale, to_json(cfg)}, RunRecord{}};
  RunRecord& rec = result.record;
  rec.config = to_json(cfg);
  rec.seed = cfg.seed;
  rec.scale = data.scale;
  rec.best_validation_nmse = std::numeric_limits<double>::infinity();

  std::vector<std::size_t> order = split.fit;
  const std::size_t batches = order.size() / tc.batch_size;
  for (std::size_t epoch = 0; epoch < tc.epochs && !rec.diverged; ++epoch) {
    adam.set_learning_rate(tc.learning_rate_at(epoch));
    Rng shuffle_rng = make_stream(cfg.seed, "shuffle", epoch);
    order = split.fit;
    std::shuffle(order.begin(), order.end(), shuffle_rng);

    double sum_t = 0.0, sum_a = 0.0;
    for (std::size_t b = 0; b < batches; ++b) {
      const std::span<const std::size_t> idx(order.data() + b * tc.batch_size, tc.batch_size);
      const Batch batch = make_batch(data.samples, idx);
      Tape tape;
      std::vector<Var> inputs;
      inputs.reserve(batch.inputs.size());
      for (const RealTensor& x : batch.inputs) inputs.push_back(tape.constant(x));
      Losses losses;
      try {
        losses = compute_losses(model.forward(tape, inputs), batch, model.config(), tc.gamma);
      } catch (const NumericalError& e) {
        rec.diverged = true;
        rec.diagnostic = "epoch " + std::to_string(epoch + 1) + " batch " + std::to_string(b + 1) +
                         ": " + e.what();
        break;
      }
      const double lt = losses.time.value().values[0];
      const double la = losses.antenna.value().values[0];
      const double ls = losses.total.value().values[0];
      if (!std::isfinite(ls)) {
        rec.diverged = true;
        rec.diagnostic = "epoch " + std::to_string(epoch + 1) + " batch " + std::to_string(b + 1) +
                         ": non-finite loss (L_t=" + std::to_string(lt) +
                         ", L_a=" + std::to_string(la) + ")";
        break;
      }
      sum_t += lt;
      sum_a += la;
      tape.backward(losses.total);
      adam.step();
      adam.zero_grad();
    }
    if (rec.diverged) break;

    EpochRecord er;
    er.epoch = epoch + 1;
    er.learning_rate = adam.learning_rate();
    er.loss_time = sum_t / static_cast<double>(batches);
    er.loss_antenna = sum_a / static_cast<double>(batches);
    er.validation_nmse = evaluate_nmse(model, data, split.validation);
    if (!std::isfinite(er.validation_nmse)) {
      rec.diverged = true;
      rec.diagnostic = "epoch " + std::to_string(epoch + 1) + ": non-finite validation NMSE";
      break;
    }
    rec.epochs.push_back(er);
    if (er.validation_nmse < rec.best_validation_nmse) {
      rec.best_validation_nmse = er.validation_nmse;
      rec.best_epoch = er.epoch;
      result.model.estimator = model;
    }
  }

  if (!rec.diverged) rec.test_nmse = evaluate_nmse(result.model.estimator, data, split.test);
  rec.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return result;
}

nlohmann::json model_to_json(TrainedModel& model) {
  const EstimatorConfig& e = model.estimator.config();
  nlohmann::json j;
  j["version"] = kCheckpointVersion;
  j["scale"] = model.scale;
  j["architecture"] = {{"M", e.bs_antennas},
                       {"N_s", e.selected},
                       {"N", e.elements},
                       {"hidden", e.hidden},
                       {"steps_per_block", e.steps_per_block},
                       {"rk_step", e.rk_step},
                       {"use_ode", e.use_ode}};
  j["config"] = model.config;
  j["parameters"] = parameters_to_json(model.estimator.groups());
  return j;
}

TrainedModel model_from_json(const nlohmann::json& j) {
  try {
    if (j.at("version") != kCheckpointVersion) throw ConfigError("checkpoint: unsupported version");
    const auto& a = j.at("architecture");
    EstimatorConfig e;
    e.bs_antennas = a.at("M");
    e.selected = a.at("N_s");
    e.elements = a.at("N");
    e.hidden = a.at("hidden");
    e.steps_per_block = a.at("steps_per_block");
    e.rk_step = a.at("rk_step");
    e.use_ode = a.at("use_ode");
    TrainedModel m{Estimator(e), j.at("scale").get<double>(), j.value("config", nlohmann::json())};
    parameters_from_json(j.at("parameters"), m.estimator.groups());
    return m;
  } catch (const nlohmann::json::exception& ex) {
    throw ConfigError(std::string("checkpoint: ") + ex.what());
  }
}

void save_model(TrainedModel& model, const std::filesystem::path& path) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << model_to_json(model).dump() << "\n";
  if (!out) throw IoError("cannot write " + path.string());
}

TrainedModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open checkpoint " + path.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw IoError("malformed checkpoint " + path.string() + ": " + e.what());
  }
  return model_from_json(j);
}

double evaluate_model(TrainedModel& model, const ExperimentConfig& cfg, const Dataset& ds) {
  const EstimatorConfig& e = model.estimator.config();
  if (e.bs_antennas != ds.scenario.bs_antennas || e.selected != ds.schedule.selected() ||
      e.elements != ds.scenario.ris_elements())
    throw ConfigError("evaluate: checkpoint geometry does not match the dataset");
  const Split split = split_indices(ds.size(), cfg.train.train_fraction, cfg.train.validation_fraction);
  const NormalizedData data = normalize(ds, model.scale);
  return evaluate_nmse(model.estimator, data, split.test);
}

SweepAxis parse_axis(std::string_view name) {
  if (name == "r_a") return SweepAxis::antenna_rate;
  if (name == "r_t") return SweepAxis::time_rate;
  if (name == "snr") return SweepAxis::snr;
  if (name == "epoch") return SweepAxis::epochs;
  throw ConfigError("unknown sweep axis '" + std::string(name) + "' (expected r_a, r_t, snr, epoch)");
}

std::string_view axis_name(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::antenna_rate: return "r_a";
    case SweepAxis::time_rate: return "r_t";
    case SweepAxis::snr: return "snr";
    case SweepAxis::epochs: return "epoch";
  }
  return "?";
}

SweepResult sweep(SweepAxis axis, std::span<const double> values, const ExperimentConfig& base) {
  if (values.empty()) throw ConfigError("sweep: no values");
  SweepResult out;
  for (double v : values) {
    ExperimentConfig cfg = base;
    switch (axis) {
      case SweepAxis::antenna_rate: cfg.schedule.antenna_rate = v; break;
      case SweepAxis::time_rate: cfg.schedule.time_rate = v; break;
      case SweepAxis::snr: cfg.schedule.snr_db = v; break;
      case SweepAxis::epochs:
        if (!(v >= 1.0) || v != std::floor(v)) throw ConfigError("sweep: epoch values must be positive integers");
        cfg.train.epochs = static_cast<std::size_t>(v);
        break;
    }
    cfg.validate();
    const FrameSchedule schedule = cfg.schedule.build(cfg.scenario.ris_elements());
    Dataset ds = generate_dataset(cfg.scenario, schedule, cfg.samples, cfg.schedule.snr_db, cfg.seed);
    ds.config = to_json(cfg);
    TrainResult r = train(cfg, ds);
    if (r.record.diverged)
      throw NumericalError("sweep: run " + std::string(axis_name(axis)) + "=" + std::to_string(v) +
                           " diverged: " + r.record.diagnostic);
    for (const EpochRecord& e : r.record.epochs)
      out.rows.push_back({std::string(axis_name(axis)), v, e.epoch, e.loss_time, e.loss_antenna,
                          e.validation_nmse});
    out.runs.push_back(std::move(r.record));
  }
  return out;
}

namespace {

std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows) {
  out << kSweepCsvHeader << "\n";
  for (const SweepRow& r : rows)
    out << r.axis << ',' << fmt_double(r.value) << ',' << r.epoch << ',' << fmt_double(r.loss_time)
        << ',' << fmt_double(r.loss_antenna) << ',' << fmt_double(r.nmse) << "\n";
}

std::vector<SweepRow> read_sweep_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kSweepCsvHeader)
    throw IoError("sweep CSV: missing or unexpected header");
  std::vector<SweepRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell[6];
    for (auto& c : cell)
      if (!std::getline(ss, c, ',')) throw IoError("sweep CSV: short row '" + line + "'");
    try {
      rows.push_back({cell[0], std::stod(cell[1]), std::stoul(cell[2]), std::stod(cell[3]),
                      std::stod(cell[4]), std::stod(cell[5])});
    } catch (const std::exception&) {
      throw IoError("sweep CSV: bad number in '" + line + "'");
    }
  }
  return rows;
}

}  // namespace rischan
