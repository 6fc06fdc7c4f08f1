// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The rischan Authors

#include "rischan/channel.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "rischan/errors.hpp"

namespace rischan {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

ComplexMatrix phase_ramp(std::size_t n, double step) {
  ComplexMatrix v(n, 1);
  for (std::size_t k = 0; k < n; ++k) v(k, 0) = std::polar(1.0, step * static_cast<double>(k));
  return v;
}

}  // namespace

double ScenarioParams::doppler_cycles_per_block() const {
  return speed * carrier / light_speed * static_cast<double>(block_length) * sample_period;
}

void ScenarioParams::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw ConfigError(std::string("scenario: ") + what);
  };
  require(bs_antennas >= 1, "M must be >= 1");
  require(ris_vertical >= 1 && ris_horizontal >= 1, "N_v and N_h must be >= 1");
  require(paths >= 1, "L_g must be >= 1");
  require(speed >= 0.0, "speed must be >= 0");
  require(carrier > 0.0 && light_speed > 0.0 && sample_period > 0.0, "f, c, T_s must be > 0");
  require(block_length >= 1, "L_c must be >= 1");
  require(spacing_wavelengths > 0.0, "d must be > 0");
}

RayParams draw_rays(const ScenarioParams& s, Rng& rng, const RayDistribution& dist) {
  ComplexNormal gain;
  std::uniform_real_distribution<double> azimuth(dist.azimuth_min, dist.azimuth_max);
  std::uniform_real_distribution<double> elevation(dist.elevation_min, dist.elevation_max);
  std::uniform_real_distribution<double> delay(0.0, dist.delay_max);
  std::uniform_real_distribution<double> motion(-dist.motion_max, dist.motion_max);

  RayParams r;
  r.bs_gain = gain(rng);
  r.departure = azimuth(rng);
  r.ris_azimuth = azimuth(rng);
  r.ris_elevation = elevation(rng);
  r.paths.reserve(s.paths);
  for (std::size_t i = 0; i < s.paths; ++i) {
    PathParams p;
    p.gain = gain(rng);
    p.delay = delay(rng);
    p.motion = motion(rng);
    p.azimuth = azimuth(rng);
    p.elevation = elevation(rng);
    r.paths.push_back(p);
  }
  return r;
}

ComplexMatrix steering_ula(std::size_t antennas, double departure, double spacing,
                           double wavelength) {
  if (antennas < 1) throw ConfigError("steering_ula: need at least one antenna");
  return phase_ramp(antennas, kTwoPi / wavelength * spacing * std::sin(departure));
}

ComplexMatrix steering_upa(std::size_t vertical, std::size_t horizontal, double azimuth,
                           double elevation, double spacing, double wavelength) {
  if (vertical < 1 || horizontal < 1) throw ConfigError("steering_upa: empty array");
  const double k = kTwoPi * spacing / wavelength;
  const ComplexMatrix el = phase_ramp(vertical, k * std::cos(elevation));
  const ComplexMatrix az = phase_ramp(horizontal, k * std::sin(azimuth) * std::cos(elevation));
  return kron(el, az);
}

ComplexMatrix make_bs_ris(const RayParams& rays, const ScenarioParams& s) {
  const ComplexMatrix a_bs =
      steering_ula(s.bs_antennas, rays.departure, s.spacing(), s.wavelength());
  const ComplexMatrix a_ris = steering_upa(s.ris_vertical, s.ris_horizontal, rays.ris_azimuth,
                                           rays.ris_elevation, s.spacing(), s.wavelength());
  const double amp = std::sqrt(static_cast<double>(s.bs_antennas * s.ris_elements()));
  return (amp * rays.bs_gain) * matmul(a_bs, a_ris.conj_transpose());
}

ComplexMatrix make_ris_ue(const RayParams& rays, const ScenarioParams& s, std::size_t block) {
  if (block < 1) throw ContractError("make_ris_ue: block index is 1-based");
  const std::size_t n_el = s.ris_elements();
  ComplexMatrix g(n_el, 1);
  const double doppler = s.doppler_cycles_per_block();
  for (const PathParams& p : rays.paths) {
    const double cycles =
        static_cast<double>(block) * doppler * std::cos(p.motion) - s.carrier * p.delay;
    const cplx coeff = p.gain * std::polar(1.0, kTwoPi * cycles);
    g += coeff * steering_upa(s.ris_vertical, s.ris_horizontal, p.azimuth, p.elevation,
                              s.spacing(), s.wavelength());
  }
  g *= std::sqrt(static_cast<double>(n_el) / static_cast<double>(rays.paths.size()));
  return g;
}

ComplexMatrix cascade(const ComplexMatrix& bs_ris, const ComplexMatrix& ris_ue) {
  if (ris_ue.cols() != 1 || ris_ue.rows() != bs_ris.cols())
    throw ShapeError("cascade: H is " + std::to_string(bs_ris.rows()) + "x" +
                     std::to_string(bs_ris.cols()) + ", g is " + std::to_string(ris_ue.rows()) +
                     "x" + std::to_string(ris_ue.cols()));
  ComplexMatrix c = bs_ris;
  for (std::size_t r = 0; r < c.rows(); ++r)
    for (std::size_t k = 0; k < c.cols(); ++k) c(r, k) *= ris_ue(k, 0);
  return c;
}

ChannelSample make_channel_sample(RayParams rays, const ScenarioParams& s, std::size_t blocks) {
  ChannelSample out;
  out.bs_ris = make_bs_ris(rays, s);
  out.ris_ue.reserve(blocks);
  out.cascade.reserve(blocks);
  for (std::size_t n = 1; n <= blocks; ++n) {
    out.ris_ue.push_back(make_ris_ue(rays, s, n));
    out.cascade.push_back(cascade(out.bs_ris, out.ris_ue.back()));
  }
  out.rays = std::move(rays);
  return out;
}

}  // namespace rischan
