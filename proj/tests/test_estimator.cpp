// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The rischan Authors

#include <doctest.h>

#include <cmath>

#include "rischan/errors.hpp"
#include "rischan/estimator.hpp"
#include "support.hpp"

using namespace rischan;
using namespace rischan::testing;

namespace {

EstimatorConfig tiny() {
  EstimatorConfig c;
  c.bs_antennas = 1;
  c.selected = 2;
  c.elements = 4;
  c.hidden = 4;
  return c;
}

std::vector<RealTensor> random_sequence(std::size_t blocks, std::size_t batch, std::size_t width,
                                        Rng& rng) {
  std::vector<RealTensor> seq;
  for (std::size_t n = 0; n < blocks; ++n) seq.push_back(random_tensor({batch, width}, rng, -0.5, 0.5));
  return seq;
}

std::vector<Var> constants(Tape& t, const std::vector<RealTensor>& seq) {
  std::vector<Var> out;
  for (const RealTensor& x : seq) out.push_back(t.constant(x));
  return out;
}

Batch random_batch(const EstimatorConfig& c, std::size_t blocks, std::size_t batch, Rng& rng) {
  Batch b;
  b.inputs = random_sequence(blocks, batch, c.input_dim(), rng);
  b.subsampled_labels = random_sequence(blocks, batch, c.input_dim(), rng);
  b.full_labels = random_sequence(blocks, batch, c.output_dim(), rng);
  return b;
}

double loss_value(Estimator& e, const Batch& b, double gamma) {
  Tape t;
  auto out = e.forward(t, constants(t, b.inputs));
  return compute_losses(out, b, e.config(), gamma).total.value().values[0];
}

}  // namespace

TEST_CASE("estimator dimensions") {
  EstimatorConfig c;
  CHECK(c.input_dim() == 32);
  CHECK(c.output_dim() == 64);
  CHECK(c.hidden_dim() == 32);
  c.hidden = 7;
  CHECK(c.hidden_dim() == 7);
  c.selected = 17;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = EstimatorConfig{};
  c.steps_per_block = 0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
}

TEST_CASE("GRU with zero weights halves the hidden state") {
  GruCell cell(3, 2);
  Tape t;
  Var u = t.constant(RealTensor({1, 2}, {0.8, -0.4}));
  Var x = t.constant(RealTensor({1, 3}, {1.0, 2.0, 3.0}));
  Var next = cell.step(t, u, x);
  CHECK(next.value().values[0] == doctest::Approx(0.4));
  CHECK(next.value().values[1] == doctest::Approx(-0.2));
}

TEST_CASE("GRU step matches a scalar-loop oracle") {
  Rng rng = make_stream(8, "gru");
  GruCell cell(3, 2);
  cell.initialize(rng);
  for (DenseLayer& l : cell.layers)
    for (double& b : l.bias.value.values) b = std::uniform_real_distribution<double>(-0.3, 0.3)(rng);
  const std::vector<double> u{0.3, -0.6}, x{0.1, -0.2, 0.9};
  auto dense = [](DenseLayer& l, const std::vector<double>& in) {
    std::vector<double> out(l.out_dim());
    for (std::size_t r = 0; r < out.size(); ++r) {
      double s = l.bias.value.values[r];
      for (std::size_t c = 0; c < in.size(); ++c) s += l.weight.value(r, c) * in[c];
      out[r] = l.activation == Activation::sigmoid ? 1.0 / (1.0 + std::exp(-s)) : std::tanh(s);
    }
    return out;
  };
  auto gate = [&](std::size_t g, const std::vector<double>& in) {
    return dense(cell.layers[2 * g + 1], dense(cell.layers[2 * g], in));
  };
  std::vector<double> joint{u[0], u[1], x[0], x[1], x[2]};
  auto r = gate(0, joint), z = gate(1, joint);
  auto c = gate(2, {r[0] * u[0], r[1] * u[1], x[0], x[1], x[2]});
  Tape t;
  Var got = cell.step(t, t.constant(RealTensor({1, 2}, u)), t.constant(RealTensor({1, 3}, x)));
  for (std::size_t i = 0; i < 2; ++i)
    CHECK(got.value().values[i] == doctest::Approx((1 - z[i]) * u[i] + z[i] * c[i]).epsilon(1e-12));
}

TEST_CASE("GRU gradients match central differences") {
  Rng rng = make_stream(8, "gru", 1);
  GruCell cell(3, 2);
  cell.initialize(rng);
  RealTensor u = random_tensor({2, 2}, rng), x = random_tensor({2, 3}, rng);
  std::vector<Parameter*> params;
  cell.collect(params);
  CHECK(params.size() == 12);
  LossFn loss = [&](Tape& t) { return sum_squares(cell.step(t, t.constant(u), t.constant(x))); };
  CHECK(worst_gradient_error(loss, params) < 1e-4);
}

TEST_CASE("GRU rejects mismatched widths") {
  GruCell cell(3, 2);
  Tape t;
  CHECK_THROWS_AS(cell.step(t, t.constant(RealTensor({1, 3})), t.constant(RealTensor({1, 3}))),
                  ShapeError);
}

TEST_CASE("interpolate and extrapolate shapes") {
  Rng rng = make_stream(8, "est");
  EstimatorConfig c;
  Estimator e(c);
  e.initialize(rng);
  Tape t;
  auto seq = constants(t, random_sequence(5, 3, c.input_dim(), rng));
  auto out = e.forward(t, seq);
  REQUIRE(out.subsampled.size() == 5);
  REQUIRE(out.full.size() == 5);
  CHECK(out.subsampled[4].shape() == std::vector<std::size_t>{3, 32});
  CHECK(out.full[4].shape() == std::vector<std::size_t>{3, 64});
  for (double v : out.full[2].value().values) CHECK(std::abs(v) < 1.0);

  CHECK_THROWS_AS(e.extrapolate(t, t.constant(RealTensor({3, 31}))), ShapeError);
  CHECK_THROWS_AS(e.interpolate(t, std::span<const Var>{}), ContractError);
  auto wrong = constants(t, random_sequence(2, 3, 30, rng));
  CHECK_THROWS_AS(e.interpolate(t, wrong), ShapeError);
}

TEST_CASE("disabling the hidden-state dynamics changes later blocks only") {
  Rng rng = make_stream(8, "ablation");
  EstimatorConfig c = tiny();
  Estimator with(c);
  with.initialize(rng);
  c.use_ode = false;
  Estimator without(c);
  parameters_from_json(parameters_to_json(with.groups()), without.groups());
  auto seq = random_sequence(3, 2, c.input_dim(), rng);
  Tape t;
  auto a = with.interpolate(t, constants(t, seq));
  auto b = without.interpolate(t, constants(t, seq));
  CHECK(a[0].value().values == b[0].value().values);
  double diff = 0.0;
  for (std::size_t k = 0; k < a[2].value().numel(); ++k)
    diff = std::max(diff, std::abs(a[2].value().values[k] - b[2].value().values[k]));
  CHECK(diff > 1e-6);
}

TEST_CASE("copies own their parameters") {
  Rng rng = make_stream(8, "copy");
  Estimator a(tiny());
  a.initialize(rng);
  Estimator b = a;
  b.decoder[0].weight.value.values[0] += 1.0;
  CHECK(a.decoder[0].weight.value.values[0] != b.decoder[0].weight.value.values[0]);
  auto groups = a.groups();
  REQUIRE(groups.size() == 4);
  CHECK(groups[0].first == "dynamics");
  CHECK(groups[3].first == "extrapolator");
  CHECK(a.parameters().size() == 6 + 12 + 12 + 20);
}

TEST_CASE("losses match a direct computation") {
  Rng rng = make_stream(8, "loss");
  EstimatorConfig c = tiny();
  Estimator e(c);
  e.initialize(rng);
  Batch b = random_batch(c, 3, 2, rng);
  Tape t;
  auto out = e.forward(t, constants(t, b.inputs));
  double st = 0.0, sa = 0.0;
  for (std::size_t n = 0; n < 3; ++n) {
    for (std::size_t k = 0; k < b.subsampled_labels[n].numel(); ++k)
      st += std::pow(out.subsampled[n].value().values[k] - b.subsampled_labels[n].values[k], 2);
    for (std::size_t k = 0; k < b.full_labels[n].numel(); ++k)
      sa += std::pow(out.full[n].value().values[k] - b.full_labels[n].values[k], 2);
  }
  Losses l = compute_losses(out, b, c, 0.7);
  CHECK(l.time.value().values[0] == doctest::Approx(st / (2.0 * 1 * 2 * 3)));
  CHECK(l.antenna.value().values[0] == doctest::Approx(sa / (2.0 * 1 * 4 * 3)));
  CHECK(l.total.value().values[0] == doctest::Approx(st / 12.0 + 0.7 * sa / 24.0));
  Losses one = compute_losses(out, b, c, 1.0);
  CHECK(one.total.value().values[0] ==
        doctest::Approx(one.time.value().values[0] + one.antenna.value().values[0]));

  Batch shorter = b;
  shorter.full_labels.pop_back();
  CHECK_THROWS_AS(compute_losses(out, shorter, c, 1.0), ShapeError);
}

TEST_CASE("loss is invariant to the order of samples in a batch") {
  Rng rng = make_stream(8, "perm");
  EstimatorConfig c = tiny();
  Estimator e(c);
  e.initialize(rng);
  Batch b = random_batch(c, 3, 4, rng);
  Batch p = b;
  const std::vector<std::size_t> order{2, 0, 3, 1};
  auto permute = [&](std::vector<RealTensor>& seq) {
    for (RealTensor& t : seq) {
      RealTensor src = t;
      for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t k = 0; k < t.cols(); ++k) t(r, k) = src(order[r], k);
    }
  };
  permute(p.inputs);
  permute(p.subsampled_labels);
  permute(p.full_labels);
  CHECK(loss_value(e, p, 1.0) == doctest::Approx(loss_value(e, b, 1.0)).epsilon(1e-12));
}

TEST_CASE("end-to-end gradient on a tiny configuration") {
  Rng rng = make_stream(8, "e2e");
  EstimatorConfig c = tiny();
  Estimator e(c);
  e.initialize(rng);
  Batch b = random_batch(c, 3, 2, rng);
  LossFn loss = [&](Tape& t) {
    auto out = e.forward(t, constants(t, b.inputs));
    return compute_losses(out, b, c, 1.0).total;
  };
  std::vector<Parameter*> params = e.parameters();
  std::vector<Parameter*> probe{params.front(), params[7], params[20], params.back()};
  CHECK(worst_gradient_error(loss, probe) < 1e-4);
}
