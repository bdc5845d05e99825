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

// Reduced four-level description of a hydrogen-like ion driven on Lyman-alpha
// with a static field along the laser polarization. Basis order is
// |1> = 1s1/2, |2> = 2p1/2, |3> = 2s1/2, |4> = 2p3/2 (positive m only).

#pragma once

#include <vector>

#include "lyjump/error.hpp"
#include "lyjump/matkernel.hpp"

namespace lyjump {

/// All entries are angular frequencies in rad/s (gamma in s^-1).
struct AtomParams {
  double gamma = 0;    // Einstein coefficient of the 2p -> 1s decay
  double delta2 = 0;   // laser detuning from |2>, omega_L - omega_21
  double delta3 = 0;   // detuning from |3>; negative for the natural level order
  double delta4 = 0;   // detuning from |4>
  double omega = 0;    // static-field coupling between |2> and |3>
  double omega_l = 0;  // laser Rabi frequency on |1> <-> |2>

  friend bool operator==(const AtomParams&, const AtomParams&) = default;
};

/// Throws InvalidArgument when gamma <= 0, a detuning to |3>/|4> vanishes,
/// |delta3| >= |delta4|, or an entry is not finite.
void validate(const AtomParams& p);

/// True inside the perturbative window |omega| <= 0.2 |omega_l| < 0.2 |delta3|.
bool in_regime(const AtomParams& p) noexcept;

/// Structured warnings for every violated regime condition; empty when in regime.
std::vector<Warning> regime_warnings(const AtomParams& p);

/// Level data and field-to-Rabi calibration for 4He+.
struct He4Preset {
  double gamma = 1e10;               // s^-1
  double lamb_shift_hz = 1.4e10;     // 2s1/2 - 2p1/2
  double fine_structure_hz = 1.75e11;  // 2p3/2 - 2p1/2
  double rabi_per_field_laser = 5 * 1e10 / 2.9e6;      // rad/s per V/m
  double rabi_per_field_static = 0.025 * 1e10 / 3.6e3;  // rad/s per V/m
};

/// Field strengths in V/m to AtomParams. Detunings from the level splittings
/// are converted Hz -> rad/s with 2 pi. Throws NegativeField.
AtomParams from_physical(const He4Preset& preset, double field, double laser_field, double delta2);

/// Conditional generator M = (i/hbar) H_c in the basis |1>..|4>.
ComplexMatrix generator(const AtomParams& p);

/// M with omega = 0.
ComplexMatrix generator_unperturbed(const AtomParams& p);

/// Two-level generator on |1>, |2>: [[0, i omega_l/2], [i omega_l/2, gamma/2 - i delta2]].
ComplexMatrix two_level_generator(const AtomParams& p);

/// Leading 3x3 block of M (the 2p3/2 level dropped).
ComplexMatrix truncated_generator3(const AtomParams& p);

/// (i/hbar) H_c without 2p3/2 in the dressed basis |1>, (|2>+|3>)/sqrt2, (|2>-|3>)/sqrt2.
ComplexMatrix dressed_hc3(const AtomParams& p);

}  // namespace lyjump
