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

#include "lyjump/kato.hpp"

#include <cmath>
#include <string>

namespace lyjump {

namespace {

void require_detunings(const AtomParams& p) {
  if (p.delta3 == 0 || p.delta4 == 0) {
    throw Error(ErrorKind::ZeroDetuning, "delta3 and delta4 must be nonzero");
  }
}

// Denominator bracket shared by Re lambda2 and T_D.
double dark_bracket(const AtomParams& p) {
  const double g = p.gamma, d2 = p.delta2, d3 = p.delta3, d4 = p.delta4;
  return 1 - 2 * d3 / d4 + 3 * d3 * d3 / (d4 * d4) - 4 * d2 * d3 / (d4 * d4) +
         3 * g * g / (4 * d4 * d4) + 2 * d2 * d2 / (d4 * d4);
}

}  // namespace

cplx alpha(const AtomParams& p) {
  require_detunings(p);
  const double g = p.gamma, d2 = p.delta2, d3 = p.delta3, d4 = p.delta4, ol = p.omega_l;
  const double ol2 = ol * ol;
  const double re = 1 - d3 / d4 - ol2 / (4 * d3 * d3) - d2 / d3 + 3 * ol2 / (4 * d3 * d4) +
                    g * g / (4 * d3 * d4) + d2 / d4 - ol2 * d2 / (2 * d3 * d3 * d4);
  const double im = -(g / (2 * d3) - g / d4 + 3 * ol2 * g / (8 * d3 * d3 * d4) +
                      g * d2 / (2 * d3 * d4));
  return {re, im};
}

double re_lambda2(const AtomParams& p) {
  const double a2 = std::norm(alpha(p));
  return p.omega * p.omega * p.gamma / (2 * p.delta3 * p.delta3) * dark_bracket(p) / a2;
}

cplx lambda3_zeroth(const AtomParams& p) { return {p.gamma / 2, -p.delta4}; }

double dark_coefficient(const AtomParams& p) {
  const double a2 = std::norm(alpha(p));
  const double d2 = p.delta2, d3 = p.delta3, d4 = p.delta4, g = p.gamma;
  const double lead = 1 - 3 * d3 / d4 + 2 * d2 / d4;
  const double d3sq = d3 * d3;
  return p.omega * p.omega * p.omega_l * p.omega_l / (4 * d3sq * d3sq) *
         (lead * lead + 9 * g * g / (4 * d4 * d4)) / a2;
}

double p0_longtime(const AtomParams& p, double t) {
  if (!(t >= 10 / p.gamma)) {
    throw Error(ErrorKind::TooEarly, "long-time form needs t >= 10/gamma");
  }
  return std::exp(-2 * re_lambda2(p) * t) * dark_coefficient(p);
}

double p0_shorttime(const AtomParams& p, double t) {
  if (!(t >= 0)) throw Error(ErrorKind::NegativeTime, "time must be non-negative");
  const ComplexVector ground{1, 0};
  const ComplexVector psi = expm_action(two_level_generator(p), ground, t);
  return std::norm(psi[0]) + std::norm(psi[1]);
}

double tau_light(const AtomParams& p) {
  if (p.omega_l == 0) throw Error(ErrorKind::DegenerateRegime, "no laser drive (omega_l = 0)");
  const double ol2 = p.omega_l * p.omega_l;
  return (p.gamma * p.gamma + 2 * ol2 + 4 * p.delta2 * p.delta2) / (p.gamma * ol2);
}

double default_t0(const AtomParams& p) {
  return std::sqrt(1 / (2 * re_lambda2(p) * p.gamma));
}

ClosedFormPredictions predictions(const AtomParams& p, std::optional<double> t0) {
  validate(p);
  if (p.omega == 0) {
    throw Error(ErrorKind::DegenerateRegime, "omega = 0: no dark periods (t_dark infinite)");
  }
  if (p.omega_l == 0) {
    throw Error(ErrorKind::DegenerateRegime, "omega_l = 0: no fluorescence");
  }
  ClosedFormPredictions r;
  r.warnings = regime_warnings(p);
  r.alpha = alpha(p);
  r.re_lambda2 = re_lambda2(p);
  r.lambda3_zeroth = lambda3_zeroth(p);
  r.tau_l = tau_light(p);
  if (!(r.re_lambda2 > 0)) {
    throw Error(ErrorKind::DegenerateRegime, "closed-form Re lambda2 is not positive");
  }
  r.t_dark = 1 / (2 * r.re_lambda2);
  if (t0) {
    if (!(*t0 > 0) || !std::isfinite(*t0)) {
      throw Error(ErrorKind::InvalidArgument, "t0 must be positive");
    }
    r.t0 = *t0;
  } else {
    r.t0 = std::sqrt(r.t_dark / p.gamma);
  }
  if (!(r.t0 > 1 / p.gamma && r.t0 < r.t_dark)) {
    r.warnings.push_back({"t0_window", "t0 outside (1/gamma, t_dark)"});
  }
  r.p_dark = p0_longtime(p, r.t0);
  if (!(r.p_dark > 0 && r.p_dark < 1)) {
    r.warnings.push_back({"p_dark_range", "closed-form p outside (0, 1)"});
  }
  r.t_light = r.tau_l / r.p_dark;
  return r;
}

cplx lambda2_exact(const SpectralCache& cache) {
  // eigenvalues are sorted by ascending real part
  return cache.eigenvalues().front();
}

}  // namespace lyjump
