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
#include <cstring>
#include <random>

#include "doctest.h"
#include "lyjump/error.hpp"
#include "lyjump/kato.hpp"
#include "lyjump/nophoton.hpp"
#include "oracle.hpp"

using namespace lyjump;

TEST_SUITE("nophoton") {

TEST_CASE("cache at the paper parameters") {
  auto p = oracle::he4_paper();
  auto c = SpectralCache::build(p);
  CHECK(c.spectral());
  CHECK(c.dim() == 4);
  CHECK(c.modes().size() == 4);
  CHECK(c.eigenvector_condition() < 10);
  // slowest mode, cross-checked with an independent eigensolver
  auto ref = oracle::eigenvalues(generator(p));
  CHECK(c.eigenvalues()[0].real() == doctest::Approx(ref[0].real()).epsilon(1e-6));
  CHECK(c.eigenvalues()[0].real() == doctest::Approx(46891.0332).epsilon(1e-6));
  CHECK(c.eigenvalues()[0].real() == doctest::Approx(4.7e4).epsilon(0.01));
  for (const cplx& z : c.eigenvalues()) CHECK(z.real() >= -1e-12 * p.gamma);

  ComplexVector sum(4, 0.0);
  for (const auto& v : c.modes())
    for (std::size_t i = 0; i < 4; ++i) sum[i] += v[i];
  sum[0] -= 1.0;
  CHECK(norm2(sum) <= 1e-10);
}

TEST_CASE("uncoupled ground state never emits") {
  AtomParams p = oracle::desk();
  p.omega_l = 0;
  auto c = SpectralCache::build(p);
  CHECK(c.p0(0) == doctest::Approx(1.0));
  for (double t : {0.1, 1.0, 10.0, 1e3, 1e6}) CHECK(c.p0(t) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(c.asymptotic_p0() == doctest::Approx(1.0).epsilon(1e-12));
  // one mode carries all of |1>
  bool found = false;
  for (std::size_t k = 0; k < c.dim(); ++k) {
    if (std::abs(c.eigenvalues()[k]) < 1e-12 && c.spectral()) {
      found = std::abs(c.modes()[k][0] - 1.0) < 1e-12;
    }
  }
  CHECK(found);
  try {
    c.sample_interval(0.5);
    FAIL("expected NoConvergence");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NoConvergence);
  }
}

TEST_CASE("p0 basics") {
  auto c = SpectralCache::build(oracle::desk());
  CHECK(c.p0(0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(c.waiting_density(0)) < 1e-12);
  CHECK_THROWS_AS(c.p0(-1), Error);
  CHECK_THROWS_AS(c.waiting_density(-1e-9), Error);
  CHECK(c.asymptotic_p0() < 1e-12);
}

TEST_CASE("spectral P0 agrees with the matrix exponential") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(0, 1);
  for (int k = 0; k < 100; ++k) {
    auto p = oracle::random_valid(rng);
    auto c = SpectralCache::build(p);
    double t = std::pow(10.0, -2 + 4 * u(rng));
    ComplexVector e1{1.0, 0.0, 0.0, 0.0};
    auto psi = expm_action(generator(p), e1, t);
    double pm = 0;
    for (cplx z : psi) pm += std::norm(z);
    CHECK(std::abs(c.p0(t) - pm) <= 1e-8);
    CHECK(std::abs(c.p0(t) - oracle::p0(generator(p), t)) <= 1e-8);
    CHECK(c.p0(t) <= 1 + 1e-12);
    CHECK(c.p0(t) >= 0);
  }
}

TEST_CASE("P0 is nonincreasing on a fine grid") {
  for (auto p : {oracle::desk(), oracle::he4_paper()}) {
    auto c = SpectralCache::build(p);
    double t_end = 10 / c.eigenvalues()[0].real();
    double prev = c.p0(0), worst = -1;
    for (int i = 1; i <= 10000; ++i) {
      double cur = c.p0(t_end * i / 10000);
      worst = std::max(worst, cur - prev);
      prev = cur;
    }
    CHECK(worst <= 1e-10);
  }
}

TEST_CASE("long-time P0 matches the closed form at the paper parameters") {
  auto p = oracle::he4_paper();
  auto c = SpectralCache::build(p);
  double t = 10 * default_t0(p);
  CHECK(c.p0(t) == doctest::Approx(p0_longtime(p, t)).epsilon(0.01));
  CHECK(c.p0(t) == doctest::Approx(4.9399009695e-7).epsilon(1e-8));
}

TEST_CASE("waiting density integrates to one and is non-negative") {
  auto c = SpectralCache::build(oracle::desk());
  auto w = [&](double t) { return c.waiting_density(t); };
  double slow = c.eigenvalues()[0].real();
  double total = oracle::integrate(w, 0, 50, 1e-11) + oracle::integrate(w, 50, 60 / slow, 1e-11);
  CHECK(total == doctest::Approx(1.0).epsilon(1e-6));
  for (int i = 0; i <= 2000; ++i) CHECK(c.waiting_density(i * 0.05) >= -1e-12);
  // w = -dP0/dt against a central difference
  for (double t : {0.3, 2.0, 30.0, 500.0}) {
    double h = 1e-5 * std::max(1.0, t);
    double fd = -(c.p0(t + h) - c.p0(t - h)) / (2 * h);
    CHECK(c.waiting_density(t) == doctest::Approx(fd).epsilon(1e-5));
  }
}

TEST_CASE("two-level waiting density matches the analytic 2x2 form") {
  AtomParams p{1, 0.3, -10, -100, 0, 5};
  auto c = SpectralCache::from_generator(two_level_generator(p), p.gamma);
  CHECK(c.spectral());
  for (double t : {0.0, 0.1, 0.5, 1.0, 2.5, 7.0, 15.0}) {
    double ref = oracle::two_level_density(p.gamma, p.delta2, p.omega_l, t);
    CHECK(std::abs(c.waiting_density(t) - ref) < 1e-12);
  }
}

TEST_CASE("near-defective generator falls back to the matrix exponential") {
  ComplexMatrix m{{1.0, 0.0}, {1.0, 1.0}};
  auto c = SpectralCache::from_generator(m, 1.0);
  CHECK_FALSE(c.spectral());
  for (double t : {0.0, 0.5, 2.0, 8.0}) {
    CHECK(c.p0(t) == doctest::Approx(std::exp(-2 * t) * (1 + t * t)).epsilon(1e-12));
    double w = 2 * std::exp(-2 * t) * (1 + t * t) - std::exp(-2 * t) * 2 * t;
    CHECK(c.waiting_density(t) == doctest::Approx(w).epsilon(1e-10));
  }
  double t = c.sample_interval(0.3);
  CHECK(c.p0(t) == doctest::Approx(0.3).epsilon(1e-9));
}

TEST_CASE("sample_interval inverts P0") {
  auto c = SpectralCache::build(oracle::desk());
  for (double ts : {0.05, 0.7, 3.0, 45.0, 900.0, 4000.0}) {
    double t = c.sample_interval(c.p0(ts));
    CHECK(t == doctest::Approx(ts).epsilon(1e-8));
  }
  CHECK(c.sample_interval(1 - 1e-12) < 1e-4);
  CHECK_THROWS_AS(c.sample_interval(0.0), Error);
  CHECK_THROWS_AS(c.sample_interval(1.0), Error);

  double prev = 0;
  for (int i = 999; i >= 1; --i) {
    double t = c.sample_interval(i / 1000.0);
    CHECK(t > prev);
    prev = t;
  }
}

TEST_CASE("deep tail is a single exponential") {
  auto p = oracle::he4_paper();
  auto c = SpectralCache::build(p);
  double w = std::pow(norm2(c.modes()[0]), 2);
  double u = 1e-9 * w;
  double expect = std::log(w / u) / (2 * c.eigenvalues()[0].real());
  CHECK(c.sample_interval(u) == doctest::Approx(expect).epsilon(0.01));
}

TEST_CASE("parallel curve equals the serial reference bit for bit") {
  auto c = SpectralCache::build(oracle::desk());
  auto grid = log_grid(1e-3, 1e4, 5000);
  REQUIRE(grid.size() == 5000);
  CHECK(grid.front() == doctest::Approx(1e-3));
  CHECK(grid.back() == doctest::Approx(1e4));
  auto a = p0_curve(c, grid);
  auto b = p0_curve_serial(c, grid);
  REQUIRE(a.size() == b.size());
  CHECK(std::memcmp(a.data(), b.data(), a.size() * sizeof(CurvePoint)) == 0);
  CHECK_THROWS_AS(log_grid(0, 1, 10), Error);
}

}  // TEST_SUITE
