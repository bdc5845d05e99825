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

#include "lyjump/error.hpp"

namespace lyjump {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::InvalidConfig: return "InvalidConfig";
    case ErrorKind::NegativeField: return "NegativeField";
    case ErrorKind::NegativeTime: return "NegativeTime";
    case ErrorKind::ZeroDetuning: return "ZeroDetuning";
    case ErrorKind::ZeroOmega: return "ZeroOmega";
    case ErrorKind::DegenerateRegime: return "DegenerateRegime";
    case ErrorKind::DefectiveDistribution: return "DefectiveDistribution";
    case ErrorKind::StepTooLarge: return "StepTooLarge";
    case ErrorKind::NoPhotons: return "NoPhotons";
    case ErrorKind::NearDefective: return "NearDefective";
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::DegreeZero: return "DegreeZero";
    case ErrorKind::DegenerateRates: return "DegenerateRates";
    case ErrorKind::TooEarly: return "TooEarly";
    case ErrorKind::NoAdmissibleRoot: return "NoAdmissibleRoot";
  }
  return "Unknown";
}

bool is_validation_error(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument:
    case ErrorKind::InvalidConfig:
    case ErrorKind::NegativeField:
    case ErrorKind::NegativeTime:
    case ErrorKind::ZeroDetuning:
    case ErrorKind::ZeroOmega:
    case ErrorKind::DegenerateRegime:
    case ErrorKind::DefectiveDistribution:
    case ErrorKind::StepTooLarge:
    case ErrorKind::NoPhotons:
      return true;
    default:
      return false;
  }
}

}  // namespace lyjump
