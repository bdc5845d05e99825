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

// Photon-emission trajectories as a renewal process and the light/dark
// period statistics extracted from them.
//
// Random numbers are counter based: interval i of a run with seed s uses
//
//   u(s, i) = ((mix64(s + (i + 1) * 0x9E3779B97F4A7C15) >> 11) + 0.5) * 2^-53
//
// where mix64 is the SplitMix64 output finalizer. u lies strictly inside
// (0, 1), and any index range can be generated independently of the others,
// so partitioned and multi-threaded runs reproduce a single-stream run exactly.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lyjump/atom.hpp"
#include "lyjump/kato.hpp"
#include "lyjump/nophoton.hpp"

namespace lyjump {

std::uint64_t mix64(std::uint64_t x) noexcept;

/// Uniform deviate in (0, 1) for (seed, index); see the header comment.
double uniform_at(std::uint64_t seed, std::uint64_t index) noexcept;

/// Intervals first .. first+count-1 of the stream `seed`. OpenMP-parallel.
std::vector<double> sample_intervals(const SpectralCache& cache, std::uint64_t seed,
                                     std::uint64_t first, std::size_t count);

/// Single-threaded reference for sample_intervals; bitwise identical output.
std::vector<double> sample_intervals_serial(const SpectralCache& cache, std::uint64_t seed,
                                            std::uint64_t first, std::size_t count);

struct Trajectory {
  std::vector<double> intervals;  // s, i.i.d. waiting times
  std::vector<double> times;      // s, photon times (cumulative sums, first photon at intervals[0])
  double duration = 0;            // s, time of the last photon
  std::uint64_t seed = 0;
  std::optional<AtomParams> params;
};

/// Throws DefectiveDistribution when P0 does not decay to zero (e.g. omega_l = 0)
/// and InvalidArgument for n_intervals == 0.
Trajectory simulate(const SpectralCache& cache, std::size_t n_intervals, std::uint64_t seed);

/// Same trajectory as simulate(), generated as `partitions` contiguous index
/// ranges that are sampled independently and concatenated in order.
Trajectory simulate_partitioned(const SpectralCache& cache, std::size_t n_intervals,
                                std::uint64_t seed, std::size_t partitions);

struct PeriodStats {
  double t0 = 0;
  std::size_t n_intervals = 0;
  std::size_t n_dark = 0;   // intervals longer than t0
  std::size_t n_light = 0;  // maximal runs of intervals <= t0
  double p_hat = 0;         // n_dark / n_intervals
  double se_p_hat = 0;
  std::optional<double> mean_dark;  // raw mean of the dark intervals
  std::optional<double> se_mean_dark;
  std::optional<double> mean_light;  // mean summed duration of a light run
  std::optional<double> se_mean_light;
  std::optional<double> tail_rate;  // 1 / mean(tau - t0 | tau > t0)
  std::optional<double> se_tail_rate;
  std::vector<double> light_periods;
};

/// Throws NoPhotons for an empty trajectory, InvalidArgument for t0 <= 0.
PeriodStats classify(std::span<const double> intervals, double t0);
PeriodStats classify(const Trajectory& traj, double t0);

struct Deviation {
  std::string quantity;
  std::optional<double> empirical;
  double predicted = 0;
  std::optional<double> relative;  // (empirical - predicted) / predicted
  std::optional<double> z;         // (empirical - predicted) / standard error
  std::optional<double> upper_bound;  // set instead of z when nothing was observed
  bool flagged = false;
};

struct ComparisonReport {
  std::vector<Deviation> items;
  bool consistent = true;  // no item flagged
};

/// Empirical statistics against the closed forms: mean light period vs t_light,
/// tail rate vs 2 Re lambda2, p_hat vs p_dark. An item is flagged when |z| exceeds
/// z_limit (or the prediction exceeds the 95% upper bound when n_dark = 0).
ComparisonReport compare(const PeriodStats& stats, const ClosedFormPredictions& pred,
                         double z_limit = 3.0);

}  // namespace lyjump
