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

#include "quasijoint/io.hpp"

#include <fmt/format.h>

#include <cmath>
#include <ostream>

namespace quasijoint::io {

namespace {

void dump(const Json& v, std::string& out, int depth) {
    const auto indent = [&](int d) { out.append(static_cast<std::size_t>(2 * d), ' '); };
    switch (v.type()) {
        case Json::value_t::object: {
            if (v.empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            bool first = true;
            for (const auto& [key, item] : v.items()) {
                if (!first) out += ",\n";
                first = false;
                indent(depth + 1);
                out += Json(key).dump();
                out += ": ";
                dump(item, out, depth + 1);
            }
            out += "\n";
            indent(depth);
            out += "}";
            return;
        }
        case Json::value_t::array: {
            if (v.empty()) {
                out += "[]";
                return;
            }
            out += "[\n";
            for (std::size_t i = 0; i < v.size(); ++i) {
                if (i) out += ",\n";
                indent(depth + 1);
                dump(v[i], out, depth + 1);
            }
            out += "\n";
            indent(depth);
            out += "]";
            return;
        }
        case Json::value_t::number_float: {
            const double x = v.get<double>();
            out += std::isfinite(x) ? format_number(x) : "null";
            return;
        }
        default:
            out += v.dump();
    }
}

}  // namespace

std::string format_number(double value) {
    // -0.0 prints as 0 so that sign-of-zero noise never shows up in diffs.
    if (value == 0) value = 0;
    return fmt::format("{:.16e}", value);
}

std::string dump_json(const Json& value) {
    std::string out;
    dump(value, out, 0);
    out += "\n";
    return out;
}

void write_counts_csv(std::ostream& out, const ShotCounts& counts) {
    out << "x,z,count\n";
    for (int x : kOutcomes)
        for (int z : kOutcomes) out << x << ',' << z << ',' << counts(x, z) << '\n';
}

void write_phase_shots_csv(std::ostream& out, const PhaseShots& shots) {
    out << "phi,z\n";
    for (const auto& s : shots.shots) out << format_number(s.phi) << ',' << s.z << '\n';
}

void write_scan_csv(std::ostream& out, const ScanGrid<double>& grid) {
    out << "theta,vartheta,min_value,flag\n";
    for (const auto& c : grid.cells) {
        out << format_number(c.theta) << ',' << format_number(c.vartheta) << ',';
        if (c.min_value)
            out << format_number(*c.min_value) << ",ok\n";
        else
            out << ",singular\n";
    }
}

Json to_json(const BinaryDistribution<double>& d) {
    return Json{{"p_plus", d.p_plus}, {"p_minus", d.p_minus}, {"kind", to_string(d.kind)}};
}

Json to_json(const PhaseDensity<double>& d) {
    return Json{{"c0", d.c0}, {"c_cos", d.c_cos}, {"c_sin", d.c_sin}};
}

Json to_json(const DiscreteJoint<double>& j) {
    Json entries = Json::array();
    for (int x : kOutcomes)
        for (int z : kOutcomes) entries.push_back(Json{{"x", x}, {"z", z}, {"value", j(x, z)}});
    return Json{{"kind", to_string(j.kind)}, {"entries", entries}};
}

Json to_json(const PhaseJoint<double>& j) {
    Json slices = Json::array();
    for (int z : kOutcomes) {
        Json s = to_json(j.slice(z));
        s["z"] = z;
        slices.push_back(s);
    }
    return Json{{"kind", to_string(j.kind)}, {"slices", slices}};
}

Json to_json(const NegativityReport<double>& r) {
    Json argmin;
    if (const auto* d = std::get_if<DiscreteOutcome>(&r.argmin))
        argmin = Json{{"x", d->x}, {"z", d->z}};
    else {
        const auto& p = std::get<PhaseOutcome<double>>(r.argmin);
        argmin = Json{{"phi", p.phi}, {"z", p.z}};
    }
    return Json{{"min_value", r.min_value}, {"argmin", argmin}, {"total_negativity", r.total_negativity}};
}

Json to_json(const BlochExpectations<double>& b) { return Json{{"x", b.ex}, {"y", b.ey}, {"z", b.ez}}; }

}  // namespace quasijoint::io
