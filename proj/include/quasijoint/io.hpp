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

// Machine-readable output. Every floating-point number is written in
// scientific notation with 17 significant digits ("%.16e", C locale), which
// round-trips doubles exactly and keeps golden files byte-stable.

#pragma once

#include "quasijoint/analysis.hpp"
#include "quasijoint/sampling.hpp"

#include <nlohmann/json.hpp>

#include <iosfwd>
#include <string>

namespace quasijoint::io {

using Json = nlohmann::ordered_json;

std::string format_number(double value);

/// Serializes with two-space indentation; floats use format_number.
std::string dump_json(const Json& value);

/// Header `x,z,count`; rows (+1,+1), (+1,-1), (-1,+1), (-1,-1).
void write_counts_csv(std::ostream& out, const ShotCounts& counts);

/// Header `phi,z`; one row per shot.
void write_phase_shots_csv(std::ostream& out, const PhaseShots& shots);

/// Header `theta,vartheta,min_value,flag`; flag is `ok` or `singular`, and
/// singular rows leave min_value empty.
void write_scan_csv(std::ostream& out, const ScanGrid<double>& grid);

Json to_json(const BinaryDistribution<double>& d);
Json to_json(const PhaseDensity<double>& d);
Json to_json(const DiscreteJoint<double>& j);
Json to_json(const PhaseJoint<double>& j);
Json to_json(const NegativityReport<double>& r);
Json to_json(const BlochExpectations<double>& b);

}  // namespace quasijoint::io
