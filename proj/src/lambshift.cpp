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

#include "lyjump/lambshift.hpp"

#include <algorithm>
#include <cmath>

#include "lyjump/error.hpp"
#include "lyjump/kato.hpp"
#include "lyjump/matkernel.hpp"

namespace lyjump {

namespace {

constexpr double kRealTolerance = 1e-6;
constexpr double kResidualTolerance = 1e-6;

double eval(const std::array<double, 7>& c, double y) {
  double s = 0;
  for (std::size_t k = c.size(); k-- > 0;) s = s * y + c[k];
  return s;
}

double eval_derivative(const std::array<double, 7>& c, double y) {
  double s = 0;
  for (std::size_t k = c.size(); k-- > 1;) s = s * y + static_cast<double>(k) * c[k];
  return s;
}

}  // namespace

double TdPolynomial::operator()(double delta3) const noexcept {
  return eval(coeffs, delta3 / scale);
}

TdPolynomial td_polynomial(double td, const AtomParams& p) {
  if (!(td > 0) || !std::isfinite(td)) {
    throw Error(ErrorKind::InvalidArgument, "td must be positive");
  }
  if (p.omega == 0) throw Error(ErrorKind::ZeroOmega, "omega = 0: T_D does not depend on delta3");
  if (p.delta4 == 0) throw Error(ErrorKind::ZeroDetuning, "delta4 must be nonzero");
  if (!(p.gamma > 0)) throw Error(ErrorKind::InvalidArgument, "gamma must be positive");

  // everything in units of gamma
  const double s = p.gamma;
  const double d2 = p.delta2 / s, d4 = p.delta4 / s;
  const double ol2 = (p.omega_l / s) * (p.omega_l / s);
  const double o2 = (p.omega / s) * (p.omega / s);
  const double tds = td * s;

  // x^2 alpha(x) = c3 x^3 + c2 x^2 + c1 x + c0
  const std::array<cplx, 4> c{
      cplx(-ol2 / 4 - ol2 * d2 / (2 * d4), -3 * ol2 / (8 * d4)),
      cplx(-d2 + 3 * ol2 / (4 * d4) + 1 / (4 * d4), -0.5 - d2 / (2 * d4)),
      cplx(1 + d2 / d4, 1 / d4),
      cplx(-1 / d4, 0),
  };
  const std::array<double, 3> bracket{1 + 3 / (4 * d4 * d4) + 2 * d2 * d2 / (d4 * d4),
                                      -2 / d4 - 4 * d2 / (d4 * d4), 3 / (d4 * d4)};

  TdPolynomial poly;
  poly.scale = s;
  for (std::size_t j = 0; j < 4; ++j)
    for (std::size_t k = 0; k < 4; ++k) {
      poly.coeffs[j + k] -= (c[j] * std::conj(c[k])).real();
    }
  for (std::size_t k = 0; k < 3; ++k) poly.coeffs[k + 2] += tds * o2 * bracket[k];
  return poly;
}

double td_forward(const AtomParams& p) { return 1 / (2 * re_lambda2(p)); }

InversionResult invert_td(double td, const AtomParams& p) {
  if (!(td > 0) || !std::isfinite(td)) {
    throw Error(ErrorKind::NoAdmissibleRoot, "td must be positive");
  }
  const TdPolynomial poly = td_polynomial(td, p);
  const ComplexVector roots = polyroots(poly.coeffs);

  InversionResult result;
  result.td = td;
  for (const cplx& r : roots) {
    if (std::abs(r.imag()) > kRealTolerance * std::abs(r)) continue;
    double y = r.real();
    for (int it = 0; it < 20; ++it) {
      const double d = eval_derivative(poly.coeffs, y);
      if (d == 0) break;
      const double step = eval(poly.coeffs, y) / d;
      if (!std::isfinite(step)) break;
      y -= step;
      if (std::abs(step) <= 4e-16 * std::abs(y)) break;
    }
    if (y == 0) continue;

    AtomParams q = p;
    q.delta3 = y * poly.scale;
    const double residual = std::abs(td_forward(q) - td) / td;
    if (!(residual <= kResidualTolerance)) continue;
    const double mag = std::abs(q.delta3);
    result.candidates.push_back(
        {q.delta3, residual, std::abs(p.omega_l) < mag && mag < std::abs(p.delta4)});
  }
  std::sort(result.candidates.begin(), result.candidates.end(),
            [](const auto& a, const auto& b) { return a.delta3 < b.delta3; });
  // a Newton-polished double root can appear twice
  result.candidates.erase(
      std::unique(result.candidates.begin(), result.candidates.end(),
                  [](const auto& a, const auto& b) {
                    return std::abs(a.delta3 - b.delta3) <= 1e-12 * std::abs(a.delta3);
                  }),
      result.candidates.end());

  const bool any = std::any_of(result.candidates.begin(), result.candidates.end(),
                               [](const auto& c) { return c.admissible; });
  if (!any) throw Error(ErrorKind::NoAdmissibleRoot, "no admissible real delta3 reproduces td");
  return result;
}

}  // namespace lyjump
