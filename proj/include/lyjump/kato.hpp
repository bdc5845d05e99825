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

// Perturbative (Kato) closed forms for the slow decay of the no-photon
// probability and the light/dark period statistics derived from it. Valid for
// |omega| << |omega_l| < |delta3| << |delta4| and |delta2| <= gamma; every
// formula is evaluated exactly as stated, the numeric eigensolve of M being the
// cross-check.

#pragma once

#include <optional>
#include <vector>

#include "lyjump/atom.hpp"
#include "lyjump/error.hpp"
#include "lyjump/nophoton.hpp"

namespace lyjump {

struct ClosedFormPredictions {
  cplx alpha;            // dimensionless
  double re_lambda2 = 0;  // s^-1, slow decay constant of the 2s-like mode
  cplx lambda3_zeroth;   // s^-1
  double tau_l = 0;      // s, mean photon spacing inside a light period
  double t_dark = 0;     // s, 1 / (2 Re lambda2)
  double t_light = 0;    // s, tau_l / p_dark
  double p_dark = 0;     // probability that an interval exceeds t0
  double t0 = 0;         // s, dark-period threshold
  std::vector<Warning> warnings;
};

/// The complex normalisation alpha. Throws ZeroDetuning when delta3 or delta4 is 0.
cplx alpha(const AtomParams& p);

/// Re lambda2, second order in omega/delta3. Throws ZeroDetuning.
double re_lambda2(const AtomParams& p);

/// gamma/2 - i delta4.
cplx lambda3_zeroth(const AtomParams& p);

/// Amplitude of the long-time tail: P0(t) ~ coefficient * exp(-2 Re lambda2 t).
double dark_coefficient(const AtomParams& p);

/// Long-time P0. Throws TooEarly for t < 10/gamma.
double p0_longtime(const AtomParams& p, double t);

/// Short-time P0 from the two-level (|1>, |2>) generator. Throws NegativeTime.
double p0_shorttime(const AtomParams& p, double t);

/// (gamma^2 + 2 omega_l^2 + 4 delta2^2) / (gamma omega_l^2). Throws DegenerateRegime for omega_l = 0.
double tau_light(const AtomParams& p);

/// Geometric mean of 1/gamma and t_dark.
double default_t0(const AtomParams& p);

/// All period statistics. t0 defaults to default_t0(p).
/// Throws ZeroDetuning, DegenerateRegime (omega or omega_l zero), TooEarly.
ClosedFormPredictions predictions(const AtomParams& p, std::optional<double> t0 = std::nullopt);

/// Eigenvalue of M with the smallest real part.
cplx lambda2_exact(const SpectralCache& cache);

}  // namespace lyjump
