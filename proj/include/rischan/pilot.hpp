// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The rischan Authors

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "rischan/complex_matrix.hpp"
#include "rischan/rng.hpp"

namespace rischan {

/// Pilot layout of one frame. Block and element indices are zero-based.
struct FrameSchedule {
  std::size_t blocks = 0;                   // L
  std::vector<std::size_t> pilot_blocks;    // sorted subset of [0, L)
  std::size_t elements_total = 0;           // N
  std::vector<std::size_t> elements;        // switched-on RIS elements, |.| = N_s
  std::size_t pilot_length = 0;             // N_p
  double pilot_power = 1.0;                 // P

  std::size_t selected() const { return elements.size(); }  // N_s
  double time_rate() const;     // r_t
  double antenna_rate() const;  // r_a
  bool is_pilot(std::size_t block) const;

  /// Throws ScheduleError when an invariant does not hold.
  void validate() const;
};

/// Uniformly strided pilot blocks (starting at the first block) and RIS
/// elements. Set sizes are round(r * total), at least 1. `pilot_length == 0`
/// selects the minimum N_p = N_s.
FrameSchedule build_schedule(std::size_t blocks, double time_rate, std::size_t elements_total,
                             double antenna_rate, std::size_t pilot_length = 0,
                             double pilot_power = 1.0);

/// First N_s rows of the unitary N_p-point DFT matrix, so Gamma Gamma^H = I.
ComplexMatrix make_gamma(std::size_t selected, std::size_t pilot_length);

/// RIS control vectors rho(n') for the N_p pilot uses, stacked as N x N_p:
/// rows of switched-off elements are zero, switched-on rows carry Gamma.
ComplexMatrix control_matrix(const FrameSchedule& schedule, const ComplexMatrix& gamma);

struct PilotObservation {
  std::size_t block = 0;
  ComplexMatrix received;  // Y, M x N_p
  ComplexMatrix gamma;     // N_s x N_p
  double noise_variance = 0.0;
  double pilot_power = 1.0;
  std::size_t pilot_length = 0;
};

/// Noise variance for a given SNR = P / sigma^2; nullopt means noiseless.
double noise_variance(double pilot_power, std::optional<double> snr_db);

/// Received pilot block Y = sqrt(P/N_p) C rho + V with the on/off pattern of
/// `schedule`. V is iid CN(0, sigma^2).
PilotObservation observe(const ComplexMatrix& cascade, std::size_t block,
                         const FrameSchedule& schedule, std::optional<double> snr_db, Rng& rng);

/// Coarse estimate sqrt(N_p/P) Y Gamma^H of the switched-on columns, M x N_s.
ComplexMatrix ls_estimate(const PilotObservation& obs);

/// [Re(v); Im(v)].
std::vector<double> stack_real(std::span<const cplx> v);
std::vector<cplx> unstack_real(std::span<const double> x);

/// Network input sequence: x(n) = stacked vec(estimate) at pilot blocks and a
/// zero vector elsewhere. `estimates[k]` belongs to schedule.pilot_blocks[k].
std::vector<std::vector<double>> build_network_input(std::span<const ComplexMatrix> estimates,
                                                     const FrameSchedule& schedule,
                                                     std::size_t bs_antennas);

}  // namespace rischan
