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

#include "doctest.h"
#include "lyjump/error.hpp"
#include "lyjump/kato.hpp"
#include "lyjump/lambshift.hpp"
#include "oracle.hpp"

using namespace lyjump;

namespace {

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no exception");
  return ErrorKind::InvalidArgument;
}

// td Omega^2 gamma x^2 D(x) - |x^2 alpha(x)|^2 in units of gamma^4, built from
// the forward closed forms instead of expanded coefficients.
double direct_value(double td, AtomParams p, double x) {
  p.delta3 = x;
  double a2 = std::norm(alpha(p));
  double d = re_lambda2(p) * 2 * x * x * a2 / (p.omega * p.omega * p.gamma);
  double g4 = std::pow(p.gamma, 4);
  return (td * p.omega * p.omega * p.gamma * x * x * d - x * x * x * x * a2) / g4;
}

bool contains(const InversionResult& r, double x, double rel) {
  for (const auto& c : r.candidates)
    if (std::abs(c.delta3 - x) <= rel * std::abs(x)) return c.admissible;
  return false;
}

}  // namespace

TEST_SUITE("lambshift") {

TEST_CASE("sextic matches the forward formula") {
  for (auto p : {oracle::he4_paper(), oracle::desk(), AtomParams{1, 0.4, 12, 70, 0.3, 3}}) {
    double td = td_forward(p);
    auto poly = td_polynomial(td, p);
    double norm = 0;
    for (double c : poly.coeffs) norm = std::max(norm, std::abs(c));
    CHECK(std::abs(poly(p.delta3)) <= 1e-8 * norm);
    for (double f : {-3.0, -0.7, 0.2, 1.5, 4.0}) {
      double x = f * p.delta3;
      double want = direct_value(td, p, x);
      CHECK(poly(x) == doctest::Approx(want).epsilon(1e-9).scale(1e-9 * norm));
    }
    double n6 = std::pow(p.gamma / p.delta4, 2);  // x^6 coefficient of |x^2 alpha|^2
    CHECK(poly.coeffs[6] != 0.0);
    CHECK(poly.coeffs[6] == doctest::Approx(-n6).epsilon(1e-14));
  }
}

TEST_CASE("sextic preconditions") {
  AtomParams p = oracle::he4_paper();
  double td = td_forward(p);
  p.omega = 0;
  CHECK(kind_of([&] { td_polynomial(td, p); }) == ErrorKind::ZeroOmega);
  CHECK(kind_of([&] { td_polynomial(-1, oracle::he4_paper()); }) == ErrorKind::InvalidArgument);
  CHECK(kind_of([&] { invert_td(-1, oracle::he4_paper()); }) == ErrorKind::NoAdmissibleRoot);
  CHECK(kind_of([&] { invert_td(td, p); }) == ErrorKind::ZeroOmega);
}

TEST_CASE("round trip at the paper parameters") {
  auto p = oracle::he4_paper();
  double td = predictions(p).t_dark;
  auto r = invert_td(td, p);
  CHECK(r.td == td);
  CHECK(contains(r, -2 * std::numbers::pi * 1.4e10, 1e-6));
  for (const auto& c : r.candidates) CHECK(c.residual <= 1e-6);
  for (std::size_t i = 1; i < r.candidates.size(); ++i) CHECK(r.candidates[i - 1].delta3 < r.candidates[i].delta3);
}

TEST_CASE("round trip at desk scale") {
  auto p = oracle::desk();
  auto r = invert_td(td_forward(p), p);
  CHECK(contains(r, -10, 1e-6));
}

TEST_CASE("round trip sweep over delta3") {
  auto base = oracle::he4_paper();
  double lo = -5 * std::abs(base.omega_l), hi = -0.9 * std::abs(base.delta4);
  for (int k = 0; k < 50; ++k) {
    AtomParams p = base;
    p.delta3 = lo + (hi - lo) * k / 49.0;
    auto r = invert_td(td_forward(p), p);
    CHECK_MESSAGE(contains(r, p.delta3, 1e-6), "delta3 = " << p.delta3);
  }
}

TEST_CASE("both detuning signs invert") {
  AtomParams p = oracle::desk();
  p.delta3 = 10;
  p.delta4 = 100;
  CHECK(contains(invert_td(td_forward(p), p), 10, 1e-6));
}

}  // TEST_SUITE
