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

#include "lyjump/atom.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace lyjump {

namespace {

constexpr cplx I{0, 1};

}  // namespace

void validate(const AtomParams& p) {
  for (double v : {p.gamma, p.delta2, p.delta3, p.delta4, p.omega, p.omega_l}) {
    if (!std::isfinite(v)) throw Error(ErrorKind::InvalidArgument, "non-finite atom parameter");
  }
  if (!(p.gamma > 0)) throw Error(ErrorKind::InvalidArgument, "gamma must be positive");
  if (p.delta3 == 0 || p.delta4 == 0) {
    throw Error(ErrorKind::ZeroDetuning, "delta3 and delta4 must be nonzero");
  }
  if (!(std::abs(p.delta3) < std::abs(p.delta4))) {
    throw Error(ErrorKind::InvalidArgument, "|delta3| must be smaller than |delta4|");
  }
}

bool in_regime(const AtomParams& p) noexcept {
  return std::abs(p.omega) <= 0.2 * std::abs(p.omega_l) &&
         std::abs(p.omega_l) < std::abs(p.delta3);
}

std::vector<Warning> regime_warnings(const AtomParams& p) {
  std::vector<Warning> w;
  if (!(std::abs(p.omega) <= 0.2 * std::abs(p.omega_l))) {
    w.push_back({"weak_static_field",
                 "|omega| > 0.2 |omega_l|: closed forms assume a weak static field"});
  }
  if (!(std::abs(p.omega_l) < std::abs(p.delta3))) {
    w.push_back({"laser_below_lamb_shift",
                 "|omega_l| >= |delta3|: closed forms assume the laser Rabi frequency "
                 "below the 2s detuning"});
  }
  if (std::abs(p.delta2) > p.gamma) {
    w.push_back({"near_resonance", "|delta2| > gamma: laser not tuned near the 2p1/2 line"});
  }
  return w;
}

AtomParams from_physical(const He4Preset& preset, double field, double laser_field,
                         double delta2) {
  if (!(field >= 0) || !(laser_field >= 0)) {
    throw Error(ErrorKind::NegativeField, "field strengths must be non-negative");
  }
  constexpr double two_pi = 2 * std::numbers::pi;
  AtomParams p;
  p.gamma = preset.gamma;
  p.delta2 = delta2;
  p.delta3 = delta2 - two_pi * preset.lamb_shift_hz;
  p.delta4 = delta2 - two_pi * preset.fine_structure_hz;
  p.omega = preset.rabi_per_field_static * field;
  p.omega_l = preset.rabi_per_field_laser * laser_field;
  return p;
}

ComplexMatrix generator(const AtomParams& p) {
  const double s2 = std::numbers::sqrt2;
  ComplexMatrix m(4);
  m(0, 1) = m(1, 0) = I * (p.omega_l / 2);
  m(0, 3) = m(3, 0) = -I * (p.omega_l / s2);
  m(1, 1) = p.gamma / 2 - I * p.delta2;
  m(1, 2) = m(2, 1) = I * p.omega;
  m(2, 2) = -I * p.delta3;
  m(2, 3) = m(3, 2) = -I * (s2 * p.omega);
  m(3, 3) = p.gamma / 2 - I * p.delta4;
  return m;
}

ComplexMatrix generator_unperturbed(const AtomParams& p) {
  AtomParams q = p;
  q.omega = 0;
  return generator(q);
}

ComplexMatrix two_level_generator(const AtomParams& p) {
  return {{0, I * (p.omega_l / 2)}, {I * (p.omega_l / 2), p.gamma / 2 - I * p.delta2}};
}

ComplexMatrix truncated_generator3(const AtomParams& p) {
  const ComplexMatrix m = generator(p);
  ComplexMatrix t(3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) t(i, j) = m(i, j);
  return t;
}

ComplexMatrix dressed_hc3(const AtomParams& p) {
  // H_c / hbar in the dressed basis, then multiplied by i.
  const double c = p.omega_l / (2 * std::numbers::sqrt2);
  const cplx mix = -I * (p.gamma / 4) + (p.delta3 - p.delta2) / 2;
  const double centre = -(p.delta2 + p.delta3) / 2;
  const ComplexMatrix h{
      {0, c, c},
      {c, p.omega - I * (p.gamma / 4) + centre, mix},
      {c, mix, -p.omega - I * (p.gamma / 4) + centre},
  };
  return h * I;
}

}  // namespace lyjump
