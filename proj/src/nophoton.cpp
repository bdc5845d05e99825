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

#include "lyjump/nophoton.hpp"

#include <array>
#include <cmath>
#include <exception>
#include <string>

#include "lyjump/error.hpp"

namespace lyjump {

namespace {

constexpr double kModeSumTolerance = 1e-10;
constexpr int kMaxSampleIterations = 200;

void require_time(double t) {
  if (!(t >= 0)) throw Error(ErrorKind::NegativeTime, "time must be non-negative");
}

// exp(-z t) without going through std::exp(complex), which is slower.
inline cplx decay(const cplx& z, double t) {
  const double mag = std::exp(-z.real() * t);
  const double ph = -z.imag() * t;
  return {mag * std::cos(ph), mag * std::sin(ph)};
}

}  // namespace

SpectralCache SpectralCache::build(const AtomParams& p) {
  validate(p);
  SpectralCache c = from_generator(lyjump::generator(p), p.gamma);
  c.params_ = p;
  return c;
}

SpectralCache SpectralCache::from_generator(const ComplexMatrix& m, double rate_scale) {
  if (!(rate_scale > 0) || !std::isfinite(rate_scale)) {
    throw Error(ErrorKind::InvalidArgument, "rate_scale must be positive");
  }
  SpectralCache c;
  c.generator_ = m;
  c.rate_scale_ = rate_scale;

  const std::size_t n = m.dim();
  EigenSystem es = eigen_decompose(m);
  c.values_ = es.values;
  c.condition_ = es.condition;
  if (!(es.condition <= kNearDefectiveCondition)) return c;

  ComplexVector e1(n);
  e1[0] = 1;
  const ComplexVector a = solve(es.vectors, e1);
  c.modes_.assign(n, ComplexVector(n));
  ComplexVector sum(n);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      c.modes_[k][i] = a[k] * es.vectors(i, k);
      sum[i] += c.modes_[k][i];
    }
  }
  sum[0] -= 1;
  if (norm2(sum) > kModeSumTolerance) {
    c.modes_.clear();
    return c;
  }
  c.spectral_ = true;
  return c;
}

ComplexVector SpectralCache::amplitude(double t) const {
  require_time(t);
  const std::size_t n = dim();
  if (!spectral_) {
    ComplexVector e1(n);
    e1[0] = 1;
    return expm_action(generator_, e1, t);
  }
  ComplexVector psi(n);
  for (std::size_t k = 0; k < n; ++k) {
    const cplx f = decay(values_[k], t);
    for (std::size_t i = 0; i < n; ++i) psi[i] += f * modes_[k][i];
  }
  return psi;
}

double SpectralCache::p0(double t) const {
  require_time(t);
  if (spectral_) {
    double p = 0, w = 0;
    evaluate(t, p, w);
    return p;
  }
  const ComplexVector psi = amplitude(t);
  double s = 0;
  for (const auto& z : psi) s += std::norm(z);
  return s;
}

double SpectralCache::waiting_density(double t) const {
  require_time(t);
  if (spectral_) {
    double p = 0, w = 0;
    evaluate(t, p, w);
    return w;
  }
  // d/dt ||psi||^2 = -2 Re <psi, M psi>
  const ComplexVector psi = amplitude(t);
  const ComplexVector mpsi = generator_ * std::span<const cplx>(psi);
  cplx inner = 0;
  for (std::size_t i = 0; i < psi.size(); ++i) inner += std::conj(psi[i]) * mpsi[i];
  return 2 * inner.real();
}

double SpectralCache::asymptotic_p0() const {
  const std::size_t n = dim();
  const double tiny = 1e-12 * rate_scale_;
  ComplexVector rest(n);
  if (!spectral_) {
    // no modal weights available: evaluate far out in time instead
    for (const auto& v : values_) {
      if (v.real() <= tiny) return p0(1e6 / rate_scale_);
    }
    return 0;
  }
  for (std::size_t k = 0; k < n; ++k) {
    if (values_[k].real() > tiny) continue;
    for (std::size_t i = 0; i < n; ++i) rest[i] += modes_[k][i];
  }
  const double r = norm2(rest);
  return r * r;
}

double SpectralCache::sample_interval(double u) const {
  if (!(u > 0 && u < 1)) throw Error(ErrorKind::InvalidArgument, "u must lie in (0, 1)");
  int iterations = 0;
  auto step = [&] {
    if (++iterations > kMaxSampleIterations) {
      throw Error(ErrorKind::NoConvergence,
                  "interval sampling did not converge (is P0 bounded away from 0?)");
    }
  };

  double lo = 0;
  double hi = 1 / rate_scale_;
  double p = 0, w = 0;
  evaluate(hi, p, w);
  while (p > u) {
    step();
    lo = hi;
    hi *= 2;
    evaluate(hi, p, w);
  }

  // Newton inside the bracket, bisection whenever Newton leaves it or stalls.
  double t = 0.5 * (lo + hi);
  double last_width = hi - lo;
  while (true) {
    step();
    evaluate(t, p, w);
    const double f = p - u;
    if (f > 0) {
      lo = t;
    } else {
      hi = t;
    }
    double next = 0.5 * (lo + hi);
    if (w > 0) {
      const double tn = t + f / w;
      if (tn > lo && tn < hi && std::abs(tn - t) < 0.5 * last_width) {
        if (std::abs(tn - t) <= 1e-12 * tn) return tn;
        next = tn;
      }
    }
    last_width = std::abs(next - t);
    if (hi - lo <= 1e-10 * hi) {
      // bracket already tight: finish with one guarded Newton step
      t = 0.5 * (lo + hi);
      evaluate(t, p, w);
      if (w > 0) {
        const double tn = t + (p - u) / w;
        if (tn >= lo && tn <= hi) t = tn;
      }
      return t;
    }
    t = next;
  }
}

void SpectralCache::evaluate(double t, double& p, double& w) const {
  const std::size_t n = dim();
  if (!spectral_) {
    p = p0(t);
    w = waiting_density(t);
    return;
  }
  std::array<cplx, ComplexMatrix::kMaxDim> psi{}, mpsi{};
  // psi = sum_k e_k v_k and M psi = sum_k lambda_k e_k v_k, e_k = exp(-lambda_k t)
  for (std::size_t k = 0; k < n; ++k) {
    const cplx f = decay(values_[k], t);
    const cplx g = values_[k] * f;
    const ComplexVector& v = modes_[k];
    for (std::size_t i = 0; i < n; ++i) {
      psi[i] += f * v[i];
      mpsi[i] += g * v[i];
    }
  }
  double norm = 0;
  cplx inner = 0;
  for (std::size_t i = 0; i < n; ++i) {
    norm += std::norm(psi[i]);
    inner += std::conj(psi[i]) * mpsi[i];
  }
  p = norm;
  w = 2 * inner.real();  // -d/dt ||psi||^2
}

std::vector<CurvePoint> p0_curve_serial(const SpectralCache& cache, std::span<const double> times) {
  std::vector<CurvePoint> out(times.size());
  for (std::size_t i = 0; i < times.size(); ++i) {
    out[i] = {times[i], cache.p0(times[i]), cache.waiting_density(times[i])};
  }
  return out;
}

std::vector<CurvePoint> p0_curve(const SpectralCache& cache, std::span<const double> times) {
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(times.size());
  std::vector<CurvePoint> out(times.size());
  std::exception_ptr failure;
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      out[i] = {times[i], cache.p0(times[i]), cache.waiting_density(times[i])};
    } catch (...) {
#pragma omp critical(lyjump_curve_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

std::vector<double> log_grid(double t_min, double t_max, std::size_t n) {
  if (!(t_min > 0) || !(t_max >= t_min) || n == 0) {
    throw Error(ErrorKind::InvalidArgument, "log grid needs 0 < t_min <= t_max and n >= 1");
  }
  std::vector<double> g(n);
  if (n == 1) {
    g[0] = t_min;
    return g;
  }
  const double a = std::log(t_min), b = std::log(t_max);
  for (std::size_t i = 0; i < n; ++i) {
    g[i] = std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1));
  }
  g.back() = t_max;
  return g;
}

}  // namespace lyjump
