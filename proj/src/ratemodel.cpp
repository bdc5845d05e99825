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

#include "lyjump/ratemodel.hpp"

#include <algorithm>
#include <cmath>

#include "lyjump/error.hpp"

namespace lyjump {

void validate(const RateParams& rp) {
  if (!(rp.gamma > 0) || !std::isfinite(rp.gamma)) {
    throw Error(ErrorKind::InvalidArgument, "gamma must be positive");
  }
  if (!(rp.r_b >= 0) || !(rp.r_r >= 0) || !std::isfinite(rp.r_b) || !std::isfinite(rp.r_r)) {
    throw Error(ErrorKind::InvalidArgument, "rates must be non-negative");
  }
}

bool closed_form_valid(const RateParams& rp) noexcept {
  return rp.r_r <= 0.1 * std::min(rp.r_b, rp.gamma);
}

Mus mus(const RateParams& rp) {
  validate(rp);
  const double a = rp.gamma + rp.r_r;
  const double root = std::sqrt(a * a + 4 * rp.r_b * rp.r_b);
  const double sum = a + 2 * rp.r_b;
  return {0.5 * (sum + root), 0.5 * (sum - root), rp.r_r};
}

RateState closed_form(const RateParams& rp, double t) {
  if (!(t >= 0)) throw Error(ErrorKind::NegativeTime, "time must be non-negative");
  const auto [m1, m2, m3] = mus(rp);
  if (std::abs(m1 - m2) < 1e-12 * m1 || m2 == m3 || m1 == m3) {
    throw Error(ErrorKind::DegenerateRates, "coincident decay constants");
  }
  const double rb = rp.r_b, rr = rp.r_r;
  const double e1 = std::exp(-m1 * t), e2 = std::exp(-m2 * t), e3 = std::exp(-m3 * t);
  const double d12 = m1 - m2;

  RateState s;
  s.p1 = e2 * (m1 - rb) / d12 - e1 * (m2 - rb) / d12;
  s.p2 = rb / d12 * (e2 - e1);
  s.p3 = rr * rb / d12 * (e1 / (m1 - m3) - e2 / (m2 - m3)) +
         e3 * (rr * rb / ((m2 - m3) * d12) - rr * rb / ((m1 - m3) * d12));
  return s;
}

RateState derivative(const RateParams& rp, const RateState& s) noexcept {
  return {-rp.r_b * s.p1 + rp.r_b * s.p2,
          rp.r_b * s.p1 - (rp.gamma + rp.r_b + rp.r_r) * s.p2 + rp.r_r * s.p3,
          rp.r_r * s.p2 - rp.r_r * s.p3};
}

std::vector<RateSample> integrate(const RateParams& rp, double t_end, double dt) {
  const Mus m = mus(rp);
  if (!(dt > 0)) throw Error(ErrorKind::InvalidArgument, "dt must be positive");
  if (!(t_end >= 0)) throw Error(ErrorKind::NegativeTime, "t_end must be non-negative");
  if (dt > 0.1 / m.mu1) throw Error(ErrorKind::StepTooLarge, "dt exceeds 0.1/mu1");

  const auto steps = static_cast<std::size_t>(std::ceil(t_end / dt));
  const double h = steps > 0 ? t_end / static_cast<double>(steps) : 0.0;

  auto axpy = [](const RateState& y, double a, const RateState& k) {
    return RateState{y.p1 + a * k.p1, y.p2 + a * k.p2, y.p3 + a * k.p3};
  };

  std::vector<RateSample> out;
  out.reserve(steps + 1);
  RateState y{1, 0, 0};
  out.push_back({0, y});
  for (std::size_t i = 0; i < steps; ++i) {
    const RateState k1 = derivative(rp, y);
    const RateState k2 = derivative(rp, axpy(y, h / 2, k1));
    const RateState k3 = derivative(rp, axpy(y, h / 2, k2));
    const RateState k4 = derivative(rp, axpy(y, h, k3));
    y.p1 += h / 6 * (k1.p1 + 2 * k2.p1 + 2 * k3.p1 + k4.p1);
    y.p2 += h / 6 * (k1.p2 + 2 * k2.p2 + 2 * k3.p2 + k4.p2);
    y.p3 += h / 6 * (k1.p3 + 2 * k2.p3 + 2 * k3.p3 + k4.p3);
    out.push_back({h * static_cast<double>(i + 1), y});
  }
  return out;
}

std::optional<double> dominance_time(const std::vector<RateSample>& trajectory) {
  for (const auto& s : trajectory) {
    if (s.state.p3 > s.state.p1 && s.state.p3 > s.state.p2) return s.t;
  }
  return std::nullopt;
}

}  // namespace lyjump
