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

#include "lyjump/jumps.hpp"

#include <algorithm>
#include <cmath>
#include <exception>

#include "lyjump/error.hpp"

namespace lyjump {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

void check_renewal(const SpectralCache& cache) {
  if (cache.params() && cache.params()->omega_l == 0) {
    throw Error(ErrorKind::DefectiveDistribution, "omega_l = 0: no photons are ever emitted");
  }
  if (cache.asymptotic_p0() > 1e-12) {
    throw Error(ErrorKind::DefectiveDistribution,
                "P0 does not decay to zero; waiting times are not a proper distribution");
  }
}

Trajectory assemble(std::vector<double> intervals, const SpectralCache& cache,
                    std::uint64_t seed) {
  Trajectory t;
  t.seed = seed;
  t.params = cache.params();
  t.times.resize(intervals.size());
  double clock = 0;
  for (std::size_t i = 0; i < intervals.size(); ++i) {
    clock += intervals[i];
    t.times[i] = clock;
  }
  t.duration = clock;
  t.intervals = std::move(intervals);
  return t;
}

struct Moments {
  std::size_t n = 0;
  double sum = 0;
  double sum_sq = 0;

  void add(double x) {
    ++n;
    sum += x;
    sum_sq += x * x;
  }
  double mean() const { return sum / static_cast<double>(n); }
  double std_error() const {
    if (n < 2) return std::nan("");
    const double m = mean();
    const double var = (sum_sq - static_cast<double>(n) * m * m) / static_cast<double>(n - 1);
    return std::sqrt(std::max(var, 0.0) / static_cast<double>(n));
  }
};

}  // namespace

std::uint64_t mix64(std::uint64_t x) noexcept {
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

double uniform_at(std::uint64_t seed, std::uint64_t index) noexcept {
  const std::uint64_t bits = mix64(seed + (index + 1) * kGolden);
  return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

std::vector<double> sample_intervals_serial(const SpectralCache& cache, std::uint64_t seed,
                                            std::uint64_t first, std::size_t count) {
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) {
    out[i] = cache.sample_interval(uniform_at(seed, first + i));
  }
  return out;
}

std::vector<double> sample_intervals(const SpectralCache& cache, std::uint64_t seed,
                                     std::uint64_t first, std::size_t count) {
  std::vector<double> out(count);
  const auto n = static_cast<std::ptrdiff_t>(count);
  std::exception_ptr failure;
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      out[i] = cache.sample_interval(uniform_at(seed, first + static_cast<std::uint64_t>(i)));
    } catch (...) {
#pragma omp critical(lyjump_sample_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

Trajectory simulate(const SpectralCache& cache, std::size_t n_intervals, std::uint64_t seed) {
  if (n_intervals == 0) throw Error(ErrorKind::InvalidArgument, "n_intervals must be >= 1");
  check_renewal(cache);
  return assemble(sample_intervals(cache, seed, 0, n_intervals), cache, seed);
}

Trajectory simulate_partitioned(const SpectralCache& cache, std::size_t n_intervals,
                                std::uint64_t seed, std::size_t partitions) {
  if (n_intervals == 0) throw Error(ErrorKind::InvalidArgument, "n_intervals must be >= 1");
  if (partitions == 0) throw Error(ErrorKind::InvalidArgument, "partitions must be >= 1");
  check_renewal(cache);

  std::vector<std::vector<double>> parts(partitions);
  const auto k = static_cast<std::ptrdiff_t>(partitions);
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t j = 0; j < k; ++j) {
    const std::size_t begin = n_intervals * static_cast<std::size_t>(j) / partitions;
    const std::size_t end = n_intervals * static_cast<std::size_t>(j + 1) / partitions;
    try {
      parts[j] = sample_intervals_serial(cache, seed, begin, end - begin);
    } catch (...) {
#pragma omp critical(lyjump_partition_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<double> merged;
  merged.reserve(n_intervals);
  for (auto& p : parts) merged.insert(merged.end(), p.begin(), p.end());
  return assemble(std::move(merged), cache, seed);
}

PeriodStats classify(std::span<const double> intervals, double t0) {
  if (intervals.empty()) throw Error(ErrorKind::NoPhotons, "trajectory has no intervals");
  if (!(t0 > 0)) throw Error(ErrorKind::InvalidArgument, "t0 must be positive");

  PeriodStats s;
  s.t0 = t0;
  s.n_intervals = intervals.size();
  Moments dark, excess, light;
  double run = 0;
  bool in_run = false;
  for (double tau : intervals) {
    if (tau > t0) {
      dark.add(tau);
      excess.add(tau - t0);
      if (in_run) {
        light.add(run);
        s.light_periods.push_back(run);
        run = 0;
        in_run = false;
      }
    } else {
      run += tau;
      in_run = true;
    }
  }
  if (in_run) {
    light.add(run);
    s.light_periods.push_back(run);
  }

  s.n_dark = dark.n;
  s.n_light = light.n;
  const double n = static_cast<double>(s.n_intervals);
  s.p_hat = static_cast<double>(s.n_dark) / n;
  s.se_p_hat = std::sqrt(s.p_hat * (1 - s.p_hat) / n);
  if (dark.n > 0) {
    s.mean_dark = dark.mean();
    if (dark.n >= 2) s.se_mean_dark = dark.std_error();
    const double mean_excess = excess.mean();
    if (mean_excess > 0) {
      s.tail_rate = 1 / mean_excess;
      s.se_tail_rate = *s.tail_rate / std::sqrt(static_cast<double>(dark.n));
    }
  }
  if (light.n > 0) {
    s.mean_light = light.mean();
    if (light.n >= 2) s.se_mean_light = light.std_error();
  }
  return s;
}

PeriodStats classify(const Trajectory& traj, double t0) { return classify(traj.intervals, t0); }

ComparisonReport compare(const PeriodStats& stats, const ClosedFormPredictions& pred,
                         double z_limit) {
  ComparisonReport report;
  auto add = [&](std::string name, std::optional<double> emp, std::optional<double> se,
                 double predicted) {
    Deviation d;
    d.quantity = std::move(name);
    d.empirical = emp;
    d.predicted = predicted;
    if (emp) {
      d.relative = (*emp - predicted) / predicted;
      if (se && *se > 0) {
        d.z = (*emp - predicted) / *se;
        d.flagged = std::abs(*d.z) > z_limit;
      }
    }
    report.items.push_back(std::move(d));
  };

  add("t_light", stats.mean_light, stats.se_mean_light, pred.t_light);
  add("tail_rate", stats.tail_rate, stats.se_tail_rate, 2 * pred.re_lambda2);

  if (stats.n_dark == 0) {
    // one-sided 95% bound for zero observed events ("rule of three")
    Deviation d;
    d.quantity = "p_dark";
    d.empirical = 0.0;
    d.predicted = pred.p_dark;
    d.upper_bound = 3.0 / static_cast<double>(stats.n_intervals);
    d.flagged = pred.p_dark > *d.upper_bound;
    report.items.push_back(std::move(d));
  } else {
    add("p_dark", stats.p_hat, stats.se_p_hat, pred.p_dark);
  }

  for (const auto& d : report.items) report.consistent = report.consistent && !d.flagged;
  return report;
}

}  // namespace lyjump
