// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The rischan Authors

#pragma once

#include <cstddef>
#include <vector>

#include "rischan/complex_matrix.hpp"
#include "rischan/rng.hpp"

namespace rischan {

/// Physical and system constants of one BS / RIS / UE geometry.
struct ScenarioParams {
  std::size_t bs_antennas = 2;       // M
  std::size_t ris_vertical = 4;      // N_v
  std::size_t ris_horizontal = 4;    // N_h
  std::size_t paths = 5;             // L_g
  double speed = 100.0 / 3.6;        // v [m/s]
  double carrier = 28e9;             // f [Hz]
  double light_speed = 299792458.0;  // c [m/s]
  double sample_period = 50e-9;      // T_s [s], 20 MHz bandwidth
  std::size_t block_length = 200;    // L_c channel uses per block
  double spacing_wavelengths = 0.5;  // d / lambda

  std::size_t ris_elements() const { return ris_vertical * ris_horizontal; }  // N
  double wavelength() const { return light_speed / carrier; }
  double spacing() const { return spacing_wavelengths * wavelength(); }
  /// Per-block Doppler phase factor v f / c * L_c * T_s (cycles per unit cos(theta)).
  double doppler_cycles_per_block() const;

  /// Throws ConfigError on a non-positive quantity.
  void validate() const;
};

struct PathParams {
  cplx gain;         // beta_i
  double delay;      // tau_i [s]
  double motion;     // theta_i [rad]
  double azimuth;    // RIS azimuth [rad]
  double elevation;  // RIS elevation [rad]
};

struct RayParams {
  cplx bs_gain;          // alpha
  double departure;      // psi, AoD at the BS
  double ris_azimuth;    // RIS azimuth for H
  double ris_elevation;  // RIS elevation for H
  std::vector<PathParams> paths;
};

/// Parameter ranges of the synthetic ray draw.
struct RayDistribution {
  double azimuth_min = -1.5707963267948966, azimuth_max = 1.5707963267948966;
  double elevation_min = 0.7853981633974483, elevation_max = 2.356194490192345;
  double delay_max = 100e-9;
  double motion_max = 0.3490658503988659;  // 20 degrees
};

RayParams draw_rays(const ScenarioParams& s, Rng& rng, const RayDistribution& dist = {});

/// ULA response: entry m = exp(j 2pi/lambda d m sin(psi)), m = 0..M-1.
ComplexMatrix steering_ula(std::size_t antennas, double departure, double spacing,
                           double wavelength);

/// UPA response a_el(elevation) (x) a_az(azimuth, elevation), length N_v*N_h.
/// Element (v, h) sits at vector index v*N_h + h.
ComplexMatrix steering_upa(std::size_t vertical, std::size_t horizontal, double azimuth,
                           double elevation, double spacing, double wavelength);

/// Time-invariant BS-RIS channel sqrt(MN) alpha a_A(psi) a_R^H, M x N.
ComplexMatrix make_bs_ris(const RayParams& rays, const ScenarioParams& s);

/// RIS-UE channel held over block n (N x 1).
ComplexMatrix make_ris_ue(const RayParams& rays, const ScenarioParams& s, std::size_t block);

/// C = H diag(g). Throws ShapeError unless H is M x N and g is N x 1.
ComplexMatrix cascade(const ComplexMatrix& bs_ris, const ComplexMatrix& ris_ue);

struct ChannelSample {
  RayParams rays;
  ComplexMatrix bs_ris;                // H
  std::vector<ComplexMatrix> ris_ue;   // g(n), n = 1..L
  std::vector<ComplexMatrix> cascade;  // C(n), n = 1..L
};

/// Full frame of L blocks; block n (1-based) is stored at index n-1.
ChannelSample make_channel_sample(RayParams rays, const ScenarioParams& s, std::size_t blocks);

}  // namespace rischan
