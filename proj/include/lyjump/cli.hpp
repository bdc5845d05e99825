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

// Batch front end: JSON configuration plus flag overrides, mode dispatch and
// self-describing JSON / CSV artifacts.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lyjump/atom.hpp"
#include "lyjump/error.hpp"
#include "lyjump/ratemodel.hpp"
#include "json.hpp"

namespace lyjump::cli {

inline constexpr std::string_view kVersion = "0.1.0";

enum class Mode { Predict, Exact, Simulate, RateModel, InvertLamb, P0 };

std::optional<Mode> parse_mode(std::string_view name);
std::string_view mode_name(Mode m);

/// Field-strength input, mutually exclusive with direct AtomParams keys.
struct PhysicalInput {
  double field = 0;        // V/m
  double laser_field = 0;  // V/m
  double delta2 = 0;       // rad/s
};

struct RunConfig {
  Mode mode = Mode::Predict;
  AtomParams params;                     // fully resolved
  std::optional<PhysicalInput> physical;  // set when params came from fields
  std::uint64_t seed = 1;
  std::size_t n_intervals = 100000;
  std::optional<double> t0;  // s
  std::optional<std::string> out_dir;
  std::optional<double> td;  // s, invert-lamb input
  // ratemodel
  std::optional<double> r_b, r_r, t_end, dt;
  // p0 curve
  std::optional<double> t_min, t_max;
  std::size_t points = 200;
};

/// Command-line values that override the config file.
struct Overrides {
  std::optional<std::string> mode;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> n_intervals;
  std::optional<double> t0;
  std::optional<std::string> out_dir;
  std::optional<double> td;
};

/// Builds a RunConfig from a JSON document (may be an empty object) and
/// overrides. Frequencies take a `_rad_s` or `_hz` suffix (Hz is multiplied
/// by 2 pi); giving both spellings of one key, mixing field strengths with
/// direct parameters, or unknown keys raise InvalidConfig.
RunConfig resolve_config(const nlohmann::json& doc, const Overrides& ov);

/// Runs one mode. JSON results go to `out` (and to <out_dir>/<mode>.json when
/// out_dir is set); CSV goes to the out dir, or to `out` when none is given.
/// Throws lyjump::Error.
void run(const RunConfig& cfg, std::ostream& out);

/// Full command-line entry point; returns the process exit code
/// (0 ok, 2 validation error, 3 numerical error).
int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lyjump::cli
