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

// Three-state rate equations for the emission-free subensemble (1s, 2p, 2s),
// their perturbative closed-form solution and a fixed-step RK4 reference.
//
//   P1' = -R_B P1 + R_B P2
//   P2' =  R_B P1 - (gamma + R_B + R_R) P2 + R_R P3
//   P3' =  R_R P2 - R_R P3
//
// Atoms that emit on the strong line leave the subensemble, so the total
// weight leaks at rate gamma P2.

#pragma once

#include <optional>
#include <vector>

namespace lyjump {

struct RateParams {
  double gamma = 1;  // s^-1
  double r_b = 0;    // stimulated rate on 2p <-> 1s, s^-1
  double r_r = 0;    // stimulated rate on 2s <-> 2p, s^-1
};

/// Throws InvalidArgument unless gamma > 0 and r_b, r_r >= 0.
void validate(const RateParams& rp);

/// True when r_r << r_b, gamma holds loosely (r_r <= 0.1 min(r_b, gamma)).
bool closed_form_valid(const RateParams& rp) noexcept;

struct RateState {
  double p1 = 0, p2 = 0, p3 = 0;
  double total() const noexcept { return p1 + p2 + p3; }
};

struct Mus {
  double mu1 = 0, mu2 = 0, mu3 = 0;
};

/// Decay constants of the closed form: mu1 > mu2 >= mu3 = r_r.
Mus mus(const RateParams& rp);

/// Closed-form populations from the ground state. Throws NegativeTime and
/// DegenerateRates when |mu1 - mu2| < 1e-12 mu1 or mu2 == mu3 or mu1 == mu3.
RateState closed_form(const RateParams& rp, double t);

/// Right-hand side of the rate equations.
RateState derivative(const RateParams& rp, const RateState& s) noexcept;

struct RateSample {
  double t = 0;
  RateState state;
};

/// Classical RK4 from (1, 0, 0) to t_end with uniform steps no longer than dt.
/// Returns every step including t = 0. Throws StepTooLarge when dt > 0.1/mu1.
std::vector<RateSample> integrate(const RateParams& rp, double t_end, double dt);

/// First sample time at which P3 exceeds both P1 and P2.
std::optional<double> dominance_time(const std::vector<RateSample>& trajectory);

}  // namespace lyjump
