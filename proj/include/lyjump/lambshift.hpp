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

// Recovering the 2s detuning delta3 (the Lamb-shift offset) from a measured
// mean dark-period duration by inverting T_D = 1 / (2 Re lambda2).
//
// With x = delta3, T_D(x) = x^2 |alpha(x)|^2 / (omega^2 gamma D(x)), where D is
// the quadratic bracket of Re lambda2. x^2 alpha(x) is a cubic in x, so
//
//   td omega^2 gamma x^2 D(x) - |x^2 alpha(x)|^2 = 0
//
// is a real sextic whose real roots are the detunings reproducing td.

#pragma once

#include <array>
#include <vector>

#include "lyjump/atom.hpp"

namespace lyjump {

/// Sextic in the scaled variable y = delta3 / scale (scale = gamma), ascending powers.
struct TdPolynomial {
  std::array<double, 7> coeffs{};
  double scale = 1;

  double operator()(double delta3) const noexcept;
};

/// delta3 in p is ignored. Throws ZeroOmega, ZeroDetuning (delta4 = 0),
/// InvalidArgument for td <= 0.
TdPolynomial td_polynomial(double td, const AtomParams& p);

/// Closed-form T_D for the parameters in p.
double td_forward(const AtomParams& p);

struct Lamb3Candidate {
  double delta3 = 0;     // rad/s
  double residual = 0;   // |T_D(delta3) - td| / td
  bool admissible = false;  // |omega_l| < |delta3| < |delta4|
};

struct InversionResult {
  double td = 0;
  std::vector<Lamb3Candidate> candidates;  // every real root with residual <= 1e-6, ascending
};

/// All real roots of td_polynomial that reproduce td, flagged for
/// admissibility. Throws NoAdmissibleRoot when none is admissible (including
/// td <= 0) and ZeroOmega.
InversionResult invert_td(double td, const AtomParams& p);

}  // namespace lyjump
