// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The rischan Authors

#include <doctest.h>

#include <cmath>

#include "rischan/channel.hpp"
#include "rischan/errors.hpp"
#include "rischan/pilot.hpp"

using namespace rischan;

TEST_CASE("uniform stride schedule") {
  FrameSchedule s = build_schedule(10, 0.3, 16, 0.5);
  CHECK(s.pilot_blocks == std::vector<std::size_t>{0, 3, 6});
  CHECK(s.elements == std::vector<std::size_t>{0, 2, 4, 6, 8, 10, 12, 14});
  CHECK(s.pilot_length == 8);
  CHECK(s.time_rate() == doctest::Approx(0.3));
  CHECK(s.antenna_rate() == doctest::Approx(0.5));
  CHECK(s.is_pilot(3));
  CHECK_FALSE(s.is_pilot(4));

  FrameSchedule all = build_schedule(10, 1.0, 16, 0.25, 6);
  CHECK(all.pilot_blocks.size() == 10);
  CHECK(all.elements == std::vector<std::size_t>{0, 4, 8, 12});
  CHECK(all.pilot_length == 6);

  FrameSchedule tiny = build_schedule(3, 0.01, 4, 0.01);
  CHECK(tiny.pilot_blocks == std::vector<std::size_t>{0});
  CHECK(tiny.elements == std::vector<std::size_t>{0});
}

TEST_CASE("schedule errors") {
  CHECK_THROWS_AS(build_schedule(10, 1.0, 16, 0.5, 4), ScheduleError);
  CHECK_THROWS_AS(build_schedule(10, 0.0, 16, 0.5), ScheduleError);
  CHECK_THROWS_AS(build_schedule(10, 1.0, 16, 1.5), ScheduleError);
  CHECK_THROWS_AS(build_schedule(0, 1.0, 16, 0.5), ScheduleError);
  FrameSchedule s = build_schedule(10, 1.0, 16, 0.5);
  s.elements = {4, 2};
  CHECK_THROWS_AS(s.validate(), ScheduleError);
  s = build_schedule(10, 1.0, 16, 0.5);
  s.pilot_blocks = {12};
  CHECK_THROWS_AS(s.validate(), ScheduleError);
  s = build_schedule(10, 1.0, 16, 0.5);
  s.pilot_power = 0.0;
  CHECK_THROWS_AS(s.validate(), ScheduleError);
}

TEST_CASE("Gamma has orthonormal rows") {
  for (std::size_t ns : {1u, 2u, 4u, 8u})
    for (std::size_t np : {ns, ns + 1, 2 * ns}) {
      ComplexMatrix g = make_gamma(ns, np);
      CHECK(max_abs_diff(matmul(g, g.conj_transpose()), ComplexMatrix::identity(ns)) < 1e-12);
    }
  CHECK_THROWS_AS(make_gamma(4, 3), ScheduleError);
  CHECK_THROWS_AS(make_gamma(0, 3), ScheduleError);
}

TEST_CASE("control matrix zeroes switched-off elements") {
  FrameSchedule s = build_schedule(10, 1.0, 8, 0.5);
  ComplexMatrix g = make_gamma(4, 4);
  ComplexMatrix rho = control_matrix(s, g);
  REQUIRE(rho.rows() == 8);
  for (std::size_t e = 0; e < 8; ++e)
    for (std::size_t n = 0; n < 4; ++n) {
      if (e % 2 == 1) CHECK(rho(e, n) == cplx(0.0));
      else CHECK(rho(e, n) == g(e / 2, n));
    }
  CHECK_THROWS_AS(control_matrix(s, make_gamma(3, 4)), ShapeError);
}

TEST_CASE("noiseless LS estimate recovers the switched-on columns") {
  ScenarioParams sc;
  Rng rng = make_stream(1, "pilot");
  for (double rate : {0.125, 0.25, 0.5, 1.0})
    for (std::size_t extra : {0u, 3u}) {
      FrameSchedule s = build_schedule(10, 1.0, 16, rate, 0, 2.0);
      s.pilot_length += extra;
      ChannelSample c = make_channel_sample(draw_rays(sc, rng), sc, 2);
      PilotObservation obs = observe(c.cascade[1], 1, s, std::nullopt, rng);
      CHECK(obs.noise_variance == 0.0);
      ComplexMatrix truth = c.cascade[1].select_columns(s.elements);
      ComplexMatrix est = ls_estimate(obs);
      CHECK((est - truth).frobenius_norm() / truth.frobenius_norm() < 1e-10);
    }
}

TEST_CASE("LS noise energy follows M N_s N_p / SNR") {
  ScenarioParams sc;
  Rng rng = make_stream(2, "pilot");
  FrameSchedule s = build_schedule(10, 1.0, 16, 0.25, 6, 1.0);
  const double snr_db = 10.0;
  ComplexMatrix c = make_channel_sample(draw_rays(sc, rng), sc, 1).cascade[0];
  ComplexMatrix truth = c.select_columns(s.elements);
  const int trials = 20000;
  double err = 0.0, noise = 0.0;
  for (int t = 0; t < trials; ++t) {
    PilotObservation obs = observe(c, 0, s, snr_db, rng);
    err += (ls_estimate(obs) - truth).frobenius_norm_sq();
    PilotObservation clean = observe(c, 0, s, std::nullopt, rng);
    noise += (obs.received - clean.received).frobenius_norm_sq();
  }
  const double sigma2 = noise_variance(1.0, snr_db);
  CHECK(sigma2 == doctest::Approx(0.1));
  const double expected_err = 2.0 * 4.0 * 6.0 * sigma2;
  CHECK(std::abs(err / trials - expected_err) < 0.05 * expected_err);
  const double expected_noise = 2.0 * 6.0 * sigma2;
  CHECK(std::abs(noise / trials - expected_noise) < 0.10 * expected_noise);
}

TEST_CASE("noise variance convention") {
  CHECK(noise_variance(1.0, std::nullopt) == 0.0);
  CHECK(noise_variance(1.0, 0.0) == doctest::Approx(1.0));
  CHECK(noise_variance(2.0, 20.0) == doctest::Approx(0.02));
}

TEST_CASE("observe contract errors") {
  ScenarioParams sc;
  Rng rng = make_stream(3, "pilot");
  FrameSchedule s = build_schedule(10, 0.3, 16, 0.5);
  ComplexMatrix c = make_channel_sample(draw_rays(sc, rng), sc, 1).cascade[0];
  CHECK_THROWS_AS(observe(c, 1, s, std::nullopt, rng), ContractError);
  CHECK_THROWS_AS(observe(ComplexMatrix(2, 8), 0, s, std::nullopt, rng), ShapeError);
}

TEST_CASE("real stacking round-trip") {
  std::vector<cplx> v{{1, 2}, {-3, 4}, {0.5, -0.25}};
  std::vector<double> x = stack_real(v);
  CHECK(x == std::vector<double>{1, -3, 0.5, 2, 4, -0.25});
  CHECK(unstack_real(x) == v);
  std::vector<double> odd{1, 2, 3};
  CHECK_THROWS_AS(unstack_real(odd), ShapeError);
}

TEST_CASE("network input zero-fills blocks without pilots") {
  FrameSchedule s = build_schedule(10, 0.3, 16, 0.25);
  std::vector<ComplexMatrix> est;
  for (int k = 0; k < 3; ++k) {
    ComplexMatrix e(2, 4);
    for (cplx& z : e.entries()) z = cplx(k + 1, -(k + 1));
    est.push_back(e);
  }
  auto x = build_network_input(est, s, 2);
  REQUIRE(x.size() == 10);
  for (std::size_t n = 0; n < 10; ++n) {
    REQUIRE(x[n].size() == 16);
    const bool pilot = s.is_pilot(n);
    CHECK((x[n][0] != 0.0) == pilot);
  }
  CHECK(x[3][0] == 2.0);
  CHECK(x[3][8] == -2.0);
  std::vector<cplx> back = unstack_real(x[6]);
  for (std::size_t i = 0; i < back.size(); ++i) CHECK(back[i] == est[2].vec()[i]);

  est.pop_back();
  CHECK_THROWS_AS(build_network_input(est, s, 2), ContractError);
  est.push_back(ComplexMatrix(2, 3));
  CHECK_THROWS_AS(build_network_input(est, s, 2), ShapeError);
}
