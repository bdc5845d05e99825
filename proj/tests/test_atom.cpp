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
#include <numbers>
#include <random>

#include "doctest.h"
#include "lyjump/atom.hpp"
#include "oracle.hpp"

using namespace lyjump;

namespace {

constexpr cplx I{0, 1};

bool has_code(const std::vector<Warning>& ws, const std::string& code) {
  for (const auto& w : ws)
    if (w.code == code) return true;
  return false;
}

}  // namespace

TEST_SUITE("atom") {

TEST_CASE("validation") {
  AtomParams p = oracle::desk();
  CHECK_NOTHROW(validate(p));
  AtomParams q = p;
  q.gamma = 0;
  CHECK_THROWS_AS(validate(q), Error);
  q = p;
  q.delta3 = 0;
  try {
    validate(q);
    FAIL("expected ZeroDetuning");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ZeroDetuning);
  }
  q = p;
  q.delta4 = 5;  // |delta3| > |delta4|
  CHECK_THROWS_AS(validate(q), Error);
  q = p;
  q.omega = std::nan("");
  CHECK_THROWS_AS(validate(q), Error);
  // both detuning signs are accepted
  q = p;
  q.delta3 = 10;
  q.delta4 = 100;
  CHECK_NOTHROW(validate(q));
}

TEST_CASE("regime flags are warnings") {
  AtomParams p = oracle::desk();
  CHECK(in_regime(p));
  CHECK(regime_warnings(p).empty());
  p.omega_l = 20;  // above |delta3|
  CHECK_FALSE(in_regime(p));
  CHECK(has_code(regime_warnings(p), "laser_below_lamb_shift"));
  CHECK_NOTHROW(validate(p));
  p = oracle::desk();
  p.omega = 2;
  CHECK(has_code(regime_warnings(p), "weak_static_field"));
}

TEST_CASE("field strengths to Rabi frequencies") {
  He4Preset he;
  auto p = from_physical(he, 3.6e3, 2.9e6, 0);
  CHECK(p.omega == doctest::Approx(0.025 * he.gamma).epsilon(1e-14));
  CHECK(p.omega_l == doctest::Approx(5 * he.gamma).epsilon(1e-14));
  CHECK(p.omega == doctest::Approx(2.5e8).epsilon(1e-14));
  CHECK(p.omega_l == doctest::Approx(5e10).epsilon(1e-14));
  CHECK(p.delta3 == doctest::Approx(-2 * std::numbers::pi * 1.4e10).epsilon(1e-15));
  CHECK(p.delta4 == doctest::Approx(-2 * std::numbers::pi * 1.75e11).epsilon(1e-15));
  CHECK(p.delta3 < 0);

  CHECK(from_physical(he, 0, 2.9e6, 0).omega == 0);
  CHECK(from_physical(he, 1.8e3, 2.9e6, 0).omega == doctest::Approx(0.0125 * he.gamma).epsilon(1e-14));
  CHECK_THROWS_AS(from_physical(he, -1, 0, 0), Error);

  auto shifted = from_physical(he, 3.6e3, 2.9e6, 1e9);
  CHECK(shifted.delta3 - shifted.delta2 == doctest::Approx(p.delta3).epsilon(1e-12));
}

TEST_CASE("from_physical is linear in each field") {
  He4Preset he;
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0, 1e6);
  for (int k = 0; k < 50; ++k) {
    double f1 = u(rng), f2 = u(rng), l1 = u(rng), l2 = u(rng);
    auto a = from_physical(he, f1, l1, 0), b = from_physical(he, f2, l2, 0), s = from_physical(he, f1 + f2, l1 + l2, 0);
    CHECK(s.omega == doctest::Approx(a.omega + b.omega).epsilon(1e-13));
    CHECK(s.omega_l == doctest::Approx(a.omega_l + b.omega_l).epsilon(1e-13));
  }
}

TEST_CASE("generator entries") {
  AtomParams zero{2.0, 0, 0, 0, 0, 0};
  auto m0 = generator(zero);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      cplx want = (i == j && (i == 1 || i == 3)) ? cplx(1.0) : cplx(0.0);
      CHECK(m0(i, j) == want);
    }

  auto p = oracle::he4_paper();
  auto m = generator(p);
  CHECK(std::abs(m(1, 2) - I * 2.5e8) < 1e-4);
  CHECK(std::abs(m(0, 3) - (-I * 5e10 / std::sqrt(2.0))) < 1e-3);
  CHECK(m(0, 1) == I * 2.5e10);
  CHECK(m(1, 1) == cplx(5e9, 0));
  CHECK(m(2, 2) == -I * p.delta3);
  CHECK(std::abs(m(2, 3) + I * std::sqrt(2.0) * 2.5e8) < 1e-4);
  CHECK(m(3, 3) == cplx(5e9, -p.delta4));
  CHECK(m(0, 2) == cplx(0.0));
  CHECK(m(1, 3) == cplx(0.0));
}

TEST_CASE("generator is complex symmetric and splits into M0 + M1") {
  std::mt19937_64 rng(2);
  for (int k = 0; k < 100; ++k) {
    auto p = oracle::random_valid(rng);
    auto m = generator(p);
    auto mt = m.transpose();
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) CHECK(m(i, j) == mt(i, j));
    auto m0 = generator_unperturbed(p);
    CHECK(m0(1, 2) == cplx(0.0));
    CHECK(m0(2, 3) == cplx(0.0));
    auto m1 = m - m0;
    auto sum = m0 + m1;
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) CHECK(sum(i, j) == m(i, j));
  }
  AtomParams p = oracle::desk();
  p.omega = 0;
  auto a = generator(p), b = generator_unperturbed(p);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) CHECK(a(i, j) == b(i, j));
}

TEST_CASE("eigenvalues of M have non-negative real part") {
  std::mt19937_64 rng(4);
  for (int k = 0; k < 200; ++k) {
    auto p = oracle::random_valid(rng);
    for (cplx z : eigenvalues(generator(p))) CHECK(z.real() >= -1e-12 * p.gamma);
  }
}

TEST_CASE("dressed basis reproduces the truncated generator spectrum") {
  std::mt19937_64 rng(5);
  for (int k = 0; k < 100; ++k) {
    auto p = oracle::random_valid(rng);
    auto a = eigenvalues(dressed_hc3(p));
    auto b = oracle::eigenvalues(truncated_generator3(p));
    for (std::size_t i = 0; i < 3; ++i) CHECK(std::abs(a[i] - b[i]) < 1e-10);
  }
}

TEST_CASE("dressed basis special cases") {
  AtomParams p = oracle::desk();
  p.omega_l = 0;
  auto h = dressed_hc3(p);
  CHECK(h(0, 1) == cplx(0.0));
  CHECK(h(0, 2) == cplx(0.0));
  CHECK(h(1, 0) == cplx(0.0));
  CHECK(h(2, 0) == cplx(0.0));

  p = oracle::desk();
  p.delta2 = p.delta3;
  h = dressed_hc3(p);
  // only the decay part -i gamma/4 (times i) survives off the diagonal
  CHECK(std::abs(h(1, 2) - cplx(p.gamma / 4, 0)) < 1e-15);
  CHECK(std::abs(h(2, 1) - cplx(p.gamma / 4, 0)) < 1e-15);
}

TEST_CASE("two-level and truncated generators are blocks of M") {
  auto p = oracle::desk();
  auto m = generator(p);
  auto two = two_level_generator(p);
  auto three = truncated_generator3(p);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) CHECK(two(i, j) == m(i, j));
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) CHECK(three(i, j) == m(i, j));
}

}  // TEST_SUITE
