// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The rischan Authors

#include "rischan/pilot.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "rischan/errors.hpp"

namespace rischan {

double FrameSchedule::time_rate() const {
  return static_cast<double>(pilot_blocks.size()) / static_cast<double>(blocks);
}

double FrameSchedule::antenna_rate() const {
  return static_cast<double>(elements.size()) / static_cast<double>(elements_total);
}

bool FrameSchedule::is_pilot(std::size_t block) const {
  return std::binary_search(pilot_blocks.begin(), pilot_blocks.end(), block);
}

void FrameSchedule::validate() const {
  auto require = [](bool ok, const std::string& what) {
    if (!ok) throw ScheduleError("schedule: " + what);
  };
  require(blocks >= 1, "L must be >= 1");
  require(!pilot_blocks.empty(), "no pilot blocks");
  require(std::is_sorted(pilot_blocks.begin(), pilot_blocks.end()) &&
              std::adjacent_find(pilot_blocks.begin(), pilot_blocks.end()) == pilot_blocks.end(),
          "pilot blocks must be strictly increasing");
  require(pilot_blocks.back() < blocks, "pilot block outside the frame");
  require(!elements.empty() && elements.size() <= elements_total, "need 1 <= N_s <= N");
  require(std::is_sorted(elements.begin(), elements.end()) &&
              std::adjacent_find(elements.begin(), elements.end()) == elements.end(),
          "selected elements must be strictly increasing");
  require(elements.back() < elements_total, "selected element outside the array");
  require(pilot_length >= elements.size(),
          "N_p = " + std::to_string(pilot_length) + " < N_s = " + std::to_string(elements.size()));
  require(pilot_power > 0.0, "P must be > 0");
}

namespace {

std::vector<std::size_t> strided_subset(std::size_t total, double rate, const char* what) {
  if (!(rate > 0.0 && rate <= 1.0))
    throw ScheduleError(std::string("schedule: ") + what + " rate must lie in (0, 1]");
  const auto count = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::llround(rate * static_cast<double>(total))));
  const std::size_t stride = total / count;
  std::vector<std::size_t> out(count);
  for (std::size_t k = 0; k < count; ++k) out[k] = k * stride;
  return out;
}

}  // namespace

FrameSchedule build_schedule(std::size_t blocks, double time_rate, std::size_t elements_total,
                             double antenna_rate, std::size_t pilot_length, double pilot_power) {
  if (blocks < 1 || elements_total < 1) throw ScheduleError("schedule: L and N must be >= 1");
  FrameSchedule s;
  s.blocks = blocks;
  s.pilot_blocks = strided_subset(blocks, time_rate, "time");
  s.elements_total = elements_total;
  s.elements = strided_subset(elements_total, antenna_rate, "antenna");
  s.pilot_length = pilot_length == 0 ? s.elements.size() : pilot_length;
  s.pilot_power = pilot_power;
  s.validate();
  return s;
}

ComplexMatrix make_gamma(std::size_t selected, std::size_t pilot_length) {
  if (selected < 1 || pilot_length < selected)
    throw ScheduleError("make_gamma: need 1 <= N_s <= N_p");
  ComplexMatrix g(selected, pilot_length);
  const double norm = 1.0 / std::sqrt(static_cast<double>(pilot_length));
  for (std::size_t k = 0; k < selected; ++k)
    for (std::size_t n = 0; n < pilot_length; ++n) {
      // k*n mod N_p keeps the phase argument small.
      const auto kn = static_cast<double>((k * n) % pilot_length);
      g(k, n) = std::polar(norm, -2.0 * std::numbers::pi * kn / static_cast<double>(pilot_length));
    }
  return g;
}

ComplexMatrix control_matrix(const FrameSchedule& schedule, const ComplexMatrix& gamma) {
  if (gamma.rows() != schedule.selected())
    throw ShapeError("control_matrix: Gamma has " + std::to_string(gamma.rows()) + " rows, N_s = " +
                     std::to_string(schedule.selected()));
  ComplexMatrix rho(schedule.elements_total, gamma.cols());
  for (std::size_t k = 0; k < schedule.selected(); ++k)
    for (std::size_t n = 0; n < gamma.cols(); ++n) rho(schedule.elements[k], n) = gamma(k, n);
  return rho;
}

double noise_variance(double pilot_power, std::optional<double> snr_db) {
  if (!snr_db) return 0.0;
  return pilot_power / std::pow(10.0, *snr_db / 10.0);
}

PilotObservation observe(const ComplexMatrix& cascade, std::size_t block,
                         const FrameSchedule& schedule, std::optional<double> snr_db, Rng& rng) {
  if (cascade.cols() != schedule.elements_total)
    throw ShapeError("observe: cascade has " + std::to_string(cascade.cols()) + " columns, N = " +
                     std::to_string(schedule.elements_total));
  if (!schedule.is_pilot(block))
    throw ContractError("observe: block " + std::to_string(block) + " carries no pilot");
  PilotObservation obs;
  obs.block = block;
  obs.gamma = make_gamma(schedule.selected(), schedule.pilot_length);
  obs.pilot_power = schedule.pilot_power;
  obs.pilot_length = schedule.pilot_length;
  obs.noise_variance = noise_variance(schedule.pilot_power, snr_db);

  const double amp =
      std::sqrt(schedule.pilot_power / static_cast<double>(schedule.pilot_length));
  obs.received = amp * matmul(cascade, control_matrix(schedule, obs.gamma));
  if (obs.noise_variance > 0.0) {
    std::normal_distribution<double> part(0.0, std::sqrt(obs.noise_variance / 2.0));
    for (cplx& y : obs.received.entries()) y += cplx(part(rng), part(rng));
  }
  return obs;
}

ComplexMatrix ls_estimate(const PilotObservation& obs) {
  const double amp = std::sqrt(static_cast<double>(obs.pilot_length) / obs.pilot_power);
  return amp * matmul(obs.received, obs.gamma.conj_transpose());
}

std::vector<double> stack_real(std::span<const cplx> v) {
  std::vector<double> x(2 * v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    x[i] = v[i].real();
    x[v.size() + i] = v[i].imag();
  }
  return x;
}

std::vector<cplx> unstack_real(std::span<const double> x) {
  if (x.size() % 2 != 0) throw ShapeError("unstack_real: odd length " + std::to_string(x.size()));
  const std::size_t n = x.size() / 2;
  std::vector<cplx> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = {x[i], x[n + i]};
  return v;
}

std::vector<std::vector<double>> build_network_input(std::span<const ComplexMatrix> estimates,
                                                     const FrameSchedule& schedule,
                                                     std::size_t bs_antennas) {
  if (estimates.size() != schedule.pilot_blocks.size())
    throw ContractError("build_network_input: " + std::to_string(estimates.size()) +
                        " estimates for " + std::to_string(schedule.pilot_blocks.size()) +
                        " pilot blocks");
  const std::size_t width = 2 * bs_antennas * schedule.selected();
  std::vector<std::vector<double>> x(schedule.blocks, std::vector<double>(width, 0.0));
  for (std::size_t k = 0; k < estimates.size(); ++k) {
    if (estimates[k].rows() != bs_antennas || estimates[k].cols() != schedule.selected())
      throw ShapeError("build_network_input: estimate must be M x N_s");
    x[schedule.pilot_blocks[k]] = stack_real(estimates[k].vec());
  }
  return x;
}

}  // namespace rischan
