// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The rischan Authors

#include <doctest.h>

#include <random>

#include "rischan/complex_matrix.hpp"
#include "rischan/errors.hpp"
#include "rischan/rng.hpp"

using namespace rischan;

namespace {

ComplexMatrix random_matrix(std::size_t r, std::size_t c, Rng& rng) {
  ComplexNormal cn;
  ComplexMatrix m(r, c);
  for (cplx& z : m.entries()) z = cn(rng);
  return m;
}

}  // namespace

TEST_CASE("matmul of small known matrices") {
  ComplexMatrix a{{1.0, cplx(0, 1)}, {2.0, 3.0}};
  ComplexMatrix b{{cplx(0, -1)}, {1.0}};
  ComplexMatrix c = matmul(a, b);
  REQUIRE(c.rows() == 2);
  REQUIRE(c.cols() == 1);
  CHECK(std::abs(c(0, 0) - cplx(0, 0)) < 1e-15);
  CHECK(std::abs(c(1, 0) - cplx(3, -2)) < 1e-15);
}

TEST_CASE("matmul rejects mismatched inner dimensions") {
  CHECK_THROWS_AS(matmul(ComplexMatrix(2, 3), ComplexMatrix(2, 3)), ShapeError);
  CHECK_THROWS_AS(ComplexMatrix(2, 2) + ComplexMatrix(2, 3), ShapeError);
  CHECK_THROWS_AS(ComplexMatrix(2, 2, std::vector<cplx>(3)), ShapeError);
}

TEST_CASE("conjugate transpose of a product reverses the factors") {
  Rng rng = make_stream(7, "cm");
  for (int trial = 0; trial < 20; ++trial) {
    ComplexMatrix a = random_matrix(3, 5, rng), b = random_matrix(5, 4, rng);
    ComplexMatrix lhs = matmul(a, b).conj_transpose();
    ComplexMatrix rhs = matmul(b.conj_transpose(), a.conj_transpose());
    CHECK(max_abs_diff(lhs, rhs) < 1e-12);
  }
}

TEST_CASE("identity is neutral and Frobenius norm matches entries") {
  Rng rng = make_stream(7, "cm", 1);
  ComplexMatrix a = random_matrix(4, 4, rng);
  CHECK(max_abs_diff(matmul(ComplexMatrix::identity(4), a), a) == 0.0);
  double s = 0;
  for (cplx z : a.entries()) s += std::norm(z);
  CHECK(a.frobenius_norm_sq() == doctest::Approx(s));
  CHECK(a.frobenius_norm() == doctest::Approx(std::sqrt(s)));
}

TEST_CASE("vec stacks columns") {
  ComplexMatrix a{{1.0, 2.0, 3.0}, {4.0, 5.0, 6.0}};
  std::vector<cplx> v = a.vec();
  std::vector<double> expect{1, 4, 2, 5, 3, 6};
  REQUIRE(v.size() == 6);
  for (std::size_t i = 0; i < 6; ++i) CHECK(v[i].real() == expect[i]);
}

TEST_CASE("select_columns, diagonal and column") {
  ComplexMatrix a{{1.0, 2.0, 3.0}, {4.0, 5.0, 6.0}};
  std::vector<std::size_t> idx{2, 0};
  ComplexMatrix s = a.select_columns(idx);
  CHECK(s(0, 0) == cplx(3.0));
  CHECK(s(1, 1) == cplx(4.0));
  std::vector<std::size_t> bad{3};
  CHECK_THROWS_AS(a.select_columns(bad), ShapeError);

  std::vector<cplx> d{1.0, cplx(0, 2)};
  ComplexMatrix dm = ComplexMatrix::diagonal(d);
  CHECK(dm(1, 1) == cplx(0, 2));
  CHECK(dm(0, 1) == cplx(0.0));
  ComplexMatrix col = ComplexMatrix::column(d);
  CHECK(col.rows() == 2);
  CHECK(col.cols() == 1);
}

TEST_CASE("kron places scaled copies of the right factor") {
  ComplexMatrix a{{1.0, 2.0}};
  ComplexMatrix b{{1.0}, {cplx(0, 1)}};
  ComplexMatrix k = kron(a, b);
  REQUIRE(k.rows() == 2);
  REQUIRE(k.cols() == 2);
  CHECK(k(0, 1) == cplx(2.0));
  CHECK(k(1, 1) == cplx(0, 2));
}

TEST_CASE("scalar arithmetic") {
  ComplexMatrix a{{1.0, 2.0}};
  ComplexMatrix b = cplx(0, 1) * a;
  CHECK(b(0, 1) == cplx(0, 2));
  b -= b;
  CHECK(b.frobenius_norm() == 0.0);
  CHECK(max_abs_diff(a + a, cplx(2.0) * a) == 0.0);
}
