// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The rischan Authors

#include "rischan/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>

#include "rischan/errors.hpp"
#include "rischan/rng.hpp"

namespace rischan {

namespace {

constexpr char kMagic[8] = {'R', 'I', 'S', 'C', 'H', 'D', 'S', '1'};
constexpr std::uint32_t kFormatVersion = 1;

class Writer {
 public:
  explicit Writer(const std::filesystem::path& p) : out_(p, std::ios::binary | std::ios::trunc) {
    if (!out_) throw IoError("cannot open " + p.string() + " for writing");
  }
  template <class T>
  void put(T v) {
    out_.write(reinterpret_cast<const char*>(&v), sizeof(T));
    bytes_ += sizeof(T);
  }
  void put_raw(const char* data, std::size_t n) {
    out_.write(data, static_cast<std::streamsize>(n));
    bytes_ += n;
  }
  std::uint64_t finish() {
    out_.flush();
    if (!out_) throw IoError("write failed");
    return bytes_;
  }

 private:
  std::ofstream out_;
  std::uint64_t bytes_ = 0;
};

class Reader {
 public:
  explicit Reader(const std::filesystem::path& p) : in_(p, std::ios::binary), path_(p) {
    if (!in_) throw IoError("cannot open " + p.string());
  }
  template <class T>
  T get() {
    T v{};
    in_.read(reinterpret_cast<char*>(&v), sizeof(T));
    if (!in_) throw IoError("truncated dataset file " + path_.string());
    return v;
  }
  void get_raw(char* data, std::size_t n) {
    in_.read(data, static_cast<std::streamsize>(n));
    if (!in_) throw IoError("truncated dataset file " + path_.string());
  }

 private:
  std::ifstream in_;
  std::filesystem::path path_;
};

nlohmann::json scenario_json(const ScenarioParams& s) {
  return {{"M", s.bs_antennas},          {"N_v", s.ris_vertical},
          {"N_h", s.ris_horizontal},     {"L_g", s.paths},
          {"speed_mps", s.speed},        {"carrier_hz", s.carrier},
          {"light_speed_mps", s.light_speed}, {"sample_period_s", s.sample_period},
          {"block_length", s.block_length}, {"spacing_wavelengths", s.spacing_wavelengths}};
}

ScenarioParams scenario_from(const nlohmann::json& j) {
  ScenarioParams s;
  s.bs_antennas = j.at("M");
  s.ris_vertical = j.at("N_v");
  s.ris_horizontal = j.at("N_h");
  s.paths = j.at("L_g");
  s.speed = j.at("speed_mps");
  s.carrier = j.at("carrier_hz");
  s.light_speed = j.at("light_speed_mps");
  s.sample_period = j.at("sample_period_s");
  s.block_length = j.at("block_length");
  s.spacing_wavelengths = j.at("spacing_wavelengths");
  return s;
}

void put_complex(Writer& w, cplx z) {
  w.put(z.real());
  w.put(z.imag());
}

cplx get_complex(Reader& r) {
  const double re = r.get<double>();
  const double im = r.get<double>();
  return {re, im};
}

}  // namespace

std::vector<double> Dataset::full_label(std::size_t sample, std::size_t block) const {
  return stack_real(records.at(sample).cascade.at(block).vec());
}

std::vector<double> Dataset::subsampled_label(std::size_t sample, std::size_t block) const {
  return stack_real(
      records.at(sample).cascade.at(block).select_columns(schedule.elements).vec());
}

Dataset generate_dataset(const ScenarioParams& scenario, const FrameSchedule& schedule,
                         std::size_t count, std::optional<double> snr_db, std::uint64_t seed) {
  scenario.validate();
  schedule.validate();
  if (schedule.elements_total != scenario.ris_elements())
    throw ScheduleError("schedule covers " + std::to_string(schedule.elements_total) +
                        " elements, scenario has " + std::to_string(scenario.ris_elements()));
  if (count < 1) throw ConfigError("dataset: count must be >= 1");
  Dataset ds;
  ds.scenario = scenario;
  ds.schedule = schedule;
  ds.snr_db = snr_db;
  ds.seed = seed;
  ds.records.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    Rng ray_rng = make_stream(seed, "dataset", i);
    Rng noise_rng = make_stream(seed, "noise", i);
    ChannelSample frame = make_channel_sample(draw_rays(scenario, ray_rng), scenario, schedule.blocks);
    std::vector<ComplexMatrix> estimates;
    estimates.reserve(schedule.pilot_blocks.size());
    for (std::size_t b : schedule.pilot_blocks)
      estimates.push_back(ls_estimate(observe(frame.cascade[b], b, schedule, snr_db, noise_rng)));
    DatasetRecord& rec = ds.records[i];
    rec.inputs = build_network_input(estimates, schedule, scenario.bs_antennas);
    rec.rays = std::move(frame.rays);
    rec.cascade = std::move(frame.cascade);
  }
  return ds;
}

nlohmann::json manifest_json(const Dataset& ds) {
  nlohmann::json j;
  j["format"] = "rischan-dataset";
  j["version"] = kFormatVersion;
  j["count"] = ds.size();
  j["seed"] = ds.seed;
  j["scenario"] = scenario_json(ds.scenario);
  j["schedule"] = {{"L", ds.schedule.blocks},
                   {"pilot_blocks", ds.schedule.pilot_blocks},
                   {"N", ds.schedule.elements_total},
                   {"elements", ds.schedule.elements},
                   {"N_p", ds.schedule.pilot_length},
                   {"P", ds.schedule.pilot_power},
                   {"snr_db", ds.snr_db ? nlohmann::json(*ds.snr_db) : nlohmann::json(nullptr)}};
  j["config"] = ds.config;
  return j;
}

std::uint64_t save_dataset(const Dataset& ds, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());

  Writer w(dir / "dataset.bin");
  const auto& s = ds.scenario;
  w.put_raw(kMagic, sizeof kMagic);
  w.put(kFormatVersion);
  w.put(static_cast<std::uint64_t>(ds.size()));
  w.put(static_cast<std::uint32_t>(s.bs_antennas));
  w.put(static_cast<std::uint32_t>(s.ris_elements()));
  w.put(static_cast<std::uint32_t>(ds.blocks()));
  w.put(static_cast<std::uint32_t>(s.paths));
  w.put(static_cast<std::uint32_t>(ds.schedule.selected()));
  for (const DatasetRecord& rec : ds.records) {
    put_complex(w, rec.rays.bs_gain);
    w.put(rec.rays.departure);
    w.put(rec.rays.ris_azimuth);
    w.put(rec.rays.ris_elevation);
    for (const PathParams& p : rec.rays.paths) {
      put_complex(w, p.gain);
      w.put(p.delay);
      w.put(p.motion);
      w.put(p.azimuth);
      w.put(p.elevation);
    }
    for (const ComplexMatrix& c : rec.cascade)
      for (cplx z : c.entries()) put_complex(w, z);
    for (const auto& x : rec.inputs)
      for (double v : x) w.put(v);
  }
  std::uint64_t bytes = w.finish();

  const std::string manifest = manifest_json(ds).dump(2) + "\n";
  std::ofstream m(dir / "manifest.json", std::ios::trunc);
  if (!m) throw IoError("cannot write " + (dir / "manifest.json").string());
  m << manifest;
  if (!m) throw IoError("cannot write " + (dir / "manifest.json").string());
  return bytes + manifest.size();
}

Dataset load_dataset(const std::filesystem::path& dir) {
  nlohmann::json man;
  {
    std::ifstream m(dir / "manifest.json");
    if (!m) throw IoError("missing manifest in " + dir.string());
    try {
      man = nlohmann::json::parse(m);
    } catch (const nlohmann::json::exception& e) {
      throw IoError("malformed manifest: " + std::string(e.what()));
    }
  }
  Dataset ds;
  try {
    if (man.at("format") != "rischan-dataset" || man.at("version") != kFormatVersion)
      throw IoError("unsupported dataset manifest");
    ds.scenario = scenario_from(man.at("scenario"));
    const auto& sj = man.at("schedule");
    ds.schedule.blocks = sj.at("L");
    ds.schedule.pilot_blocks = sj.at("pilot_blocks").get<std::vector<std::size_t>>();
    ds.schedule.elements_total = sj.at("N");
    ds.schedule.elements = sj.at("elements").get<std::vector<std::size_t>>();
    ds.schedule.pilot_length = sj.at("N_p");
    ds.schedule.pilot_power = sj.at("P");
    if (!sj.at("snr_db").is_null()) ds.snr_db = sj.at("snr_db").get<double>();
    ds.seed = man.at("seed");
    ds.config = man.value("config", nlohmann::json());
  } catch (const nlohmann::json::exception& e) {
    throw IoError("malformed manifest: " + std::string(e.what()));
  }
  ds.schedule.validate();

  Reader r(dir / "dataset.bin");
  char magic[8];
  r.get_raw(magic, sizeof magic);
  if (std::memcmp(magic, kMagic, sizeof magic) != 0 || r.get<std::uint32_t>() != kFormatVersion)
    throw IoError("not a rischan dataset file");
  const auto count = r.get<std::uint64_t>();
  const auto m_ant = r.get<std::uint32_t>();
  const auto n_el = r.get<std::uint32_t>();
  const auto blocks = r.get<std::uint32_t>();
  const auto paths = r.get<std::uint32_t>();
  const auto selected = r.get<std::uint32_t>();
  if (count != man.at("count").get<std::uint64_t>() || m_ant != ds.scenario.bs_antennas ||
      n_el != ds.scenario.ris_elements() || blocks != ds.schedule.blocks ||
      paths != ds.scenario.paths || selected != ds.schedule.selected())
    throw IoError("dataset header disagrees with manifest");
  const std::size_t width = 2 * m_ant * selected;
  ds.records.resize(count);
  for (DatasetRecord& rec : ds.records) {
    rec.rays.bs_gain = get_complex(r);
    rec.rays.departure = r.get<double>();
    rec.rays.ris_azimuth = r.get<double>();
    rec.rays.ris_elevation = r.get<double>();
    rec.rays.paths.resize(paths);
    for (PathParams& p : rec.rays.paths) {
      p.gain = get_complex(r);
      p.delay = r.get<double>();
      p.motion = r.get<double>();
      p.azimuth = r.get<double>();
      p.elevation = r.get<double>();
    }
    rec.cascade.assign(blocks, ComplexMatrix(m_ant, n_el));
    for (ComplexMatrix& c : rec.cascade)
      for (cplx& z : c.entries()) z = get_complex(r);
    rec.inputs.assign(blocks, std::vector<double>(width));
    for (auto& x : rec.inputs)
      for (double& v : x) v = r.get<double>();
  }
  return ds;
}

Split split_indices(std::size_t count, double train_fraction, double validation_fraction) {
  const auto train = static_cast<std::size_t>(std::llround(train_fraction * static_cast<double>(count)));
  const auto val = static_cast<std::size_t>(std::llround(validation_fraction * static_cast<double>(train)));
  if (train == 0 || train >= count || val == 0 || val >= train)
    throw ConfigError("split: " + std::to_string(count) +
                      " samples are too few for a fit/validation/test partition");
  Split s;
  for (std::size_t i = 0; i < train - val; ++i) s.fit.push_back(i);
  for (std::size_t i = train - val; i < train; ++i) s.validation.push_back(i);
  for (std::size_t i = train; i < count; ++i) s.test.push_back(i);
  return s;
}

NormalizedData normalize(const Dataset& ds, const Split& split) {
  if (ds.size() == 0) throw ContractError("normalize: empty dataset");
  double peak = 0.0;
  auto scan = [&](std::size_t i) {
    for (const ComplexMatrix& c : ds.records[i].cascade)
      for (cplx z : c.entries()) peak = std::max({peak, std::abs(z.real()), std::abs(z.imag())});
    for (const auto& x : ds.records[i].inputs)
      for (double v : x) peak = std::max(peak, std::abs(v));
  };
  for (std::size_t i : split.fit) scan(i);
  for (std::size_t i : split.validation) scan(i);
  return normalize(ds, peak);
}

NormalizedData normalize(const Dataset& ds, double scale) {
  if (!(scale > 0.0) || !std::isfinite(scale))
    throw NumericalError("normalize: degenerate scale " + std::to_string(scale));
  NormalizedData out;
  out.scale = scale;
  out.samples.resize(ds.size());
  const double inv = 1.0 / scale;
  auto scaled = [inv](std::vector<double> v) {
    for (double& x : v) x *= inv;
    return v;
  };
  for (std::size_t i = 0; i < ds.size(); ++i) {
    Sample& s = out.samples[i];
    for (std::size_t n = 0; n < ds.blocks(); ++n) {
      s.inputs.push_back(scaled(ds.records[i].inputs[n]));
      s.subsampled.push_back(scaled(ds.subsampled_label(i, n)));
      s.full.push_back(scaled(ds.full_label(i, n)));
    }
  }
  return out;
}

Batch make_batch(const std::vector<Sample>& samples, std::span<const std::size_t> indices) {
  if (indices.empty()) throw ContractError("make_batch: no samples");
  const Sample& first = samples.at(indices.front());
  const std::size_t blocks = first.inputs.size();
  const std::size_t b = indices.size();
  Batch batch;
  auto stack = [&](auto member, std::vector<RealTensor>& dst) {
    for (std::size_t n = 0; n < blocks; ++n) {
      const std::size_t width = (first.*member)[n].size();
      RealTensor t({b, width});
      for (std::size_t r = 0; r < b; ++r) {
        const auto& src = (samples.at(indices[r]).*member)[n];
        if (src.size() != width) throw ShapeError("make_batch: ragged samples");
        std::copy(src.begin(), src.end(), t.values.begin() + static_cast<std::ptrdiff_t>(r * width));
      }
      dst.push_back(std::move(t));
    }
  };
  stack(&Sample::inputs, batch.inputs);
  stack(&Sample::subsampled, batch.subsampled_labels);
  stack(&Sample::full, batch.full_labels);
  return batch;
}

}  // namespace rischan
