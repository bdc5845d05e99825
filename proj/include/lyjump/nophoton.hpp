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

// No-photon probability P0(t) = || exp(-M t) |1> ||^2, the photon waiting-time
// density w = -dP0/dt, and inverse-CDF sampling of emission intervals.

#pragma once

#include <optional>
#include <span>
#include <vector>

#include "lyjump/atom.hpp"
#include "lyjump/matkernel.hpp"

namespace lyjump {

/// Modal expansion exp(-M t)|1> = sum_k exp(-lambda_k t) v_k of a conditional
/// generator, or the matrix-exponential fallback when M is near-defective.
/// Immutable once built; safe to share between threads.
class SpectralCache {
 public:
  /// Builds from the four-level generator of p (validated first).
  static SpectralCache build(const AtomParams& p);

  /// Builds from any generator whose first basis state is the post-emission
  /// state. rate_scale sets the initial bracket 1/rate_scale for sampling.
  static SpectralCache from_generator(const ComplexMatrix& m, double rate_scale);

  std::size_t dim() const noexcept { return generator_.dim(); }
  /// False when P0 is evaluated with expm_action instead of the modal sum.
  bool spectral() const noexcept { return spectral_; }
  const ComplexVector& eigenvalues() const noexcept { return values_; }
  const std::vector<ComplexVector>& modes() const noexcept { return modes_; }
  const ComplexMatrix& generator() const noexcept { return generator_; }
  const std::optional<AtomParams>& params() const noexcept { return params_; }
  double rate_scale() const noexcept { return rate_scale_; }
  double eigenvector_condition() const noexcept { return condition_; }

  /// exp(-M t)|1>.
  ComplexVector amplitude(double t) const;

  /// P0(t). Throws NegativeTime.
  double p0(double t) const;

  /// -dP0/dt in s^-1. Throws NegativeTime.
  double waiting_density(double t) const;

  /// P0(infinity): weight carried by modes with vanishing decay rate.
  double asymptotic_p0() const;

  /// The t with P0(t) = u, for u in (0, 1), to 1e-10 relative accuracy.
  /// Doubling bracket from 1/rate_scale, then Newton steps (using the waiting
  /// density) safeguarded by bisection.
  /// Throws NoConvergence after 200 iterations (e.g. when P0 never drops to u).
  double sample_interval(double u) const;

 private:
  SpectralCache() = default;

  // P0 and -dP0/dt in one pass over the modes.
  void evaluate(double t, double& p, double& w) const;

  ComplexMatrix generator_;
  ComplexVector values_;
  std::vector<ComplexVector> modes_;
  std::optional<AtomParams> params_;
  double rate_scale_ = 1;
  double condition_ = 1;
  bool spectral_ = false;
};

/// (P0, w) on a time grid. OpenMP-parallel over grid points.
struct CurvePoint {
  double t = 0;
  double p0 = 0;
  double density = 0;
};
std::vector<CurvePoint> p0_curve(const SpectralCache& cache, std::span<const double> times);

/// Single-threaded reference for p0_curve; results are bitwise identical.
std::vector<CurvePoint> p0_curve_serial(const SpectralCache& cache, std::span<const double> times);

/// n log-spaced points on [t_min, t_max], t_min > 0.
std::vector<double> log_grid(double t_min, double t_max, std::size_t n);

}  // namespace lyjump
