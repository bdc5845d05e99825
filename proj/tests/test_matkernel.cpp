// Copyright 2026 The lyjump Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <random>

#include "doctest.h"
#include "lyjump/error.hpp"
#include "lyjump/matkernel.hpp"
#include "oracle.hpp"

using namespace lyjump;

namespace {

ComplexMatrix random_matrix(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> g(0, 1);
  ComplexMatrix a(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = cplx(g(rng), g(rng));
  return a;
}

double max_abs_diff(std::span<const cplx> a, std::span<const cplx> b) {
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_SUITE("matkernel") {

TEST_CASE("diagonal matrix has identity eigenvectors") {
  cplx d[] = {cplx(0, 2), 1.0};
  auto es = eig(ComplexMatrix::diagonal(d));
  REQUIRE(es.values.size() == 2);
  CHECK(std::abs(es.values[0] - cplx(0, 2)) < 1e-15);
  CHECK(std::abs(es.values[1] - 1.0) < 1e-15);
  CHECK(std::abs(std::abs(es.vectors(0, 0)) - 1.0) < 1e-15);
  CHECK(std::abs(es.vectors(1, 0)) < 1e-15);
  CHECK(std::abs(es.vectors(0, 1)) < 1e-15);
  CHECK(std::abs(std::abs(es.vectors(1, 1)) - 1.0) < 1e-15);
  CHECK(es.condition == doctest::Approx(1.0));
}

TEST_CASE("two-level generator eigenvalues") {
  ComplexMatrix a{{0.0, cplx(0, 2.5)}, {cplx(0, 2.5), 0.5}};
  auto es = eig(a);
  // characteristic polynomial x^2 - 0.5 x + 6.25
  auto [r1, r2] = oracle::quadratic_roots(-0.5, 6.25);
  CHECK(std::abs(es.values[0] - (r1.imag() < r2.imag() ? r1 : r2)) < 1e-13);
  CHECK(std::abs(es.values[1] - (r1.imag() < r2.imag() ? r2 : r1)) < 1e-13);
  CHECK(es.values[0].real() == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(es.values[1].imag() == doctest::Approx(std::sqrt(6.1875)).epsilon(1e-14));
}

TEST_CASE("Jordan block is near-defective") {
  ComplexMatrix a{{0.0, 1.0}, {0.0, 0.0}};
  CHECK_THROWS_AS(eig(a), Error);
  try {
    eig(a);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NearDefective);
  }
  auto es = eigen_decompose(a);
  CHECK(es.condition > kNearDefectiveCondition);
}

TEST_CASE("eigen residual and ordering over random 4x4 matrices") {
  std::mt19937_64 rng(7);
  int checked = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    auto a = random_matrix(rng, 4);
    auto es = eigen_decompose(a);
    if (es.condition > 1e6) continue;
    ++checked;
    double scale = a.norm1();
    for (std::size_t k = 0; k < 4; ++k) {
      ComplexVector v(4);
      for (std::size_t i = 0; i < 4; ++i) v[i] = es.vectors(i, k);
      auto av = a * v;
      for (std::size_t i = 0; i < 4; ++i) av[i] -= es.values[k] * v[i];
      CHECK(norm2(av) <= 1e-10 * scale);
      CHECK(norm2(v) == doctest::Approx(1.0).epsilon(1e-12));
    }
    for (std::size_t k = 1; k < 4; ++k) {
      bool ordered = es.values[k - 1].real() < es.values[k].real() ||
                     (es.values[k - 1].real() == es.values[k].real() &&
                      es.values[k - 1].imag() <= es.values[k].imag());
      CHECK(ordered);
    }
    auto ref = oracle::eigenvalues(a);
    CHECK(max_abs_diff(es.values, ref) < 1e-10 * scale);
  }
  CHECK(checked > 950);
}

TEST_CASE("eigenvalues-only path matches the full decomposition") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    auto a = random_matrix(rng, 6);
    auto full = eigen_decompose(a).values;
    auto only = eigenvalues(a);
    CHECK(max_abs_diff(full, only) < 1e-11 * a.norm1());
  }
}

TEST_CASE("expm_action trivial cases") {
  ComplexVector v{cplx(1, 2), cplx(-3, 0.5)};
  auto z = expm_action(ComplexMatrix(2), v, 3.7);
  CHECK(max_abs_diff(z, v) == 0.0);

  cplx d[] = {1.0, 2.0};
  ComplexVector ones{1.0, 1.0};
  auto e = expm_action(ComplexMatrix::diagonal(d), ones, 1.0);
  CHECK(std::abs(e[0] - std::exp(-1.0)) < 1e-15);
  CHECK(std::abs(e[1] - std::exp(-2.0)) < 1e-15);

  CHECK_THROWS_AS(expm_action(ComplexMatrix::diagonal(d), ones, -1.0), Error);
}

TEST_CASE("expm_action agrees with the modal sum and with Eigen") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    auto a = random_matrix(rng, 4);
    auto es = eigen_decompose(a);
    if (es.condition > 1e4) continue;
    ComplexVector e1{1.0, 0.0, 0.0, 0.0};
    auto c = solve(es.vectors, e1);
    double t = 0.7;
    ComplexVector modal(4, 0.0);
    for (std::size_t k = 0; k < 4; ++k)
      for (std::size_t i = 0; i < 4; ++i) modal[i] += std::exp(-es.values[k] * t) * c[k] * es.vectors(i, k);
    auto direct = expm_action(a, e1, t);
    double scale = std::max(1.0, norm2(direct));
    CHECK(max_abs_diff(direct, modal) < 1e-10 * scale);
    auto ref = oracle::evolve_e1(a, t);
    CHECK(max_abs_diff(direct, ref) < 1e-11 * scale);
  }
}

TEST_CASE("expm_action semigroup property") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    auto a = random_matrix(rng, 4);
    // shift so the evolution decays and norms stay O(1)
    for (std::size_t i = 0; i < 4; ++i) a(i, i) += 3.0;
    ComplexVector v{cplx(0.3, 0.1), cplx(-1, 0), cplx(0, 0.5), 0.25};
    double t1 = 0.4, t2 = 1.3;
    auto whole = expm_action(a, v, t1 + t2);
    auto split = expm_action(a, expm_action(a, v, t2), t1);
    CHECK(max_abs_diff(whole, split) < 1e-10);
  }
}

TEST_CASE("polyroots small cases") {
  double q[] = {-1.0, 0.0, 1.0};
  auto r = polyroots(q);
  REQUIRE(r.size() == 2);
  CHECK(std::abs(r[0] - (-1.0)) < 1e-14);
  CHECK(std::abs(r[1] - 1.0) < 1e-14);

  double c[] = {1.0, 0.0, 1.0};
  auto ri = polyroots(c);
  REQUIRE(ri.size() == 2);
  CHECK(std::abs(ri[0] - cplx(0, -1)) < 1e-14);
  CHECK(std::abs(ri[1] - cplx(0, 1)) < 1e-14);

  double constant[] = {3.0, 0.0, 0.0};
  CHECK_THROWS_AS(polyroots(constant), Error);
}

TEST_CASE("polyroots of (x-1)...(x-6)") {
  auto coeffs = oracle::poly_from_roots({1, 2, 3, 4, 5, 6});
  auto r = polyroots(coeffs);
  REQUIRE(r.size() == 6);
  for (std::size_t k = 0; k < 6; ++k) {
    CHECK(std::abs(r[k] - double(k + 1)) < 1e-6);
  }
  double cn = 0;
  for (double x : coeffs) cn += x * x;
  double res = 0;
  for (cplx z : r) res += std::abs(polyval(coeffs, z));
  CHECK(res / std::sqrt(cn) <= 1e-8);
}

TEST_CASE("polyroots reconstruction property") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> roots(1 + trial % 8);
    for (double& x : roots) x = u(rng);
    auto coeffs = oracle::poly_from_roots(roots);
    auto r = polyroots(coeffs);
    REQUIRE(r.size() == roots.size());
    // rebuild prod (x - r_k) with complex arithmetic
    std::vector<cplx> c{1.0};
    for (cplx z : r) {
      std::vector<cplx> next(c.size() + 1, 0.0);
      for (std::size_t k = 0; k < c.size(); ++k) {
        next[k] -= z * c[k];
        next[k + 1] += c[k];
      }
      c = next;
    }
    double norm = 0;
    for (double x : coeffs) norm = std::max(norm, std::abs(x));
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
      CHECK(std::abs(c[k] - coeffs[k]) <= 1e-6 * norm);
    }
  }
}

TEST_CASE("inverse and solve") {
  std::mt19937_64 rng(17);
  auto a = random_matrix(rng, 5);
  auto ai = inverse(a);
  auto id = a * ai;
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j) CHECK(std::abs(id(i, j) - (i == j ? 1.0 : 0.0)) < 1e-12);
  CHECK_THROWS_AS(inverse(ComplexMatrix(3)), Error);
}

}  // TEST_SUITE
