// Copyright 2026 The quasijoint Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "quasijoint/interferometer.hpp"
#include "quasijoint/inversion.hpp"
#include "quasijoint/io.hpp"
#include "quasijoint/state.hpp"

#include <array>
#include <cstdint>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

namespace quasijoint {

enum class Mode { discrete, phase };
enum class OutputFormat { json, csv };
enum class StateForm { cartesian, polar };

/// Evenly spaced values start..stop (inclusive), written `start:stop:count`.
struct GridSpec {
    double start = 0;
    double stop = 0;
    int count = 1;

    std::vector<double> values() const;
    std::string to_string() const;
    static GridSpec parse(std::string_view text);

    bool operator==(const GridSpec&) const = default;
};

/// Everything a CLI run depends on. Config files and command-line flags both
/// go through `set(key, value)`, so a file and the equivalent flags resolve
/// to the same RunConfig.
///
/// Text form: one `key = value` per line, `#` starts a comment, values may be
/// double-quoted. Keys: state, polar, theta, vartheta, degrees, mode, n,
/// seed, format, theta_grid, vartheta_grid, phi_points, grid, epsilon,
/// threads.
struct RunConfig {
    StateForm state_form = StateForm::cartesian;
    /// cartesian: (Re a, Im a, Re b, Im b); polar: (|a|, arg a, |b|, arg b)
    /// with arguments in degrees.
    std::array<double, 4> state{1, 0, 0, 0};
    double theta = 0;
    double vartheta = 0;
    /// Angles (theta, vartheta and both grids) are in degrees when set.
    bool degrees = false;
    Mode mode = Mode::discrete;
    std::int64_t shots = 100000;
    std::uint64_t seed = 1;
    OutputFormat format = OutputFormat::json;
    GridSpec theta_grid{0, std::numbers::pi / 2, 91};
    GridSpec vartheta_grid{0, std::numbers::pi, 181};
    int phi_points = 256;
    bool grid = false;
    double epsilon = kSingularityEpsilon;
    int threads = 1;

    void set(std::string_view key, std::string_view value);

    std::string to_text() const;
    static RunConfig from_text(std::string_view text);
    static RunConfig from_file(const std::string& path);

    PureState<double> resolved_state() const;
    double theta_radians() const;
    double vartheta_radians() const;
    MarkerConfig<double> resolved_marker() const;
    std::vector<double> theta_grid_radians() const;
    std::vector<double> vartheta_grid_radians() const;

    /// Echo of the resolved configuration for reports.
    io::Json to_json() const;

    bool operator==(const RunConfig&) const = default;
};

}  // namespace quasijoint
