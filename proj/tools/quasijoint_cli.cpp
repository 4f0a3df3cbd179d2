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

// quasijoint: command-line front end.
//
//   exact        statistics of the unobserved state
//   operational  measured joint statistics with path marking
//   invert       reconstructed quasi-probability joint statistics
//   sample       finite-shot simulation and estimation
//   scan         minimum reconstructed value over a (theta, vartheta) grid
//
// Exit codes: 0 success, 2 invalid input, 3 singular inversion.

#include "CLI11.hpp"

#include "quasijoint/config.hpp"
#include "quasijoint/io.hpp"
#include "quasijoint/quasijoint.hpp"
#include "quasijoint/sampling.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

namespace {

using namespace quasijoint;
using io::Json;

constexpr int kExitInvalid = 2;
constexpr int kExitSingular = 3;

std::vector<double> phi_grid(int points) {
    std::vector<double> out(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) out[static_cast<std::size_t>(i)] = two_pi<double> * i / points;
    return out;
}

Json density_grid_json(const PhaseDensity<double>& d, int points) {
    Json rows = Json::array();
    for (double phi : phi_grid(points)) rows.push_back(Json{phi, d(phi)});
    return rows;
}

Json joint_grid_json(const PhaseJoint<double>& j, int points) {
    Json rows = Json::array();
    for (double phi : phi_grid(points))
        for (int z : kOutcomes) rows.push_back(Json{phi, z, j(phi, z)});
    return rows;
}

void write_density_csv(std::ostream& out, const PhaseDensity<double>& d, int points) {
    out << "phi,density\n";
    for (double phi : phi_grid(points)) out << io::format_number(phi) << ',' << io::format_number(d(phi)) << '\n';
}

void write_joint_csv(std::ostream& out, const DiscreteJoint<double>& j) {
    out << "x,z,value\n";
    for (int x : kOutcomes)
        for (int z : kOutcomes) out << x << ',' << z << ',' << io::format_number(j(x, z)) << '\n';
}

void write_phase_joint_csv(std::ostream& out, const PhaseJoint<double>& j, int points) {
    out << "phi,z,density\n";
    for (double phi : phi_grid(points))
        for (int z : kOutcomes)
            out << io::format_number(phi) << ',' << z << ',' << io::format_number(j(phi, z)) << '\n';
}

Json matrix_json(const Eigen::Matrix2d& m) {
    return Json{Json{m(0, 0), m(0, 1)}, Json{m(1, 0), m(1, 1)}};
}

Json gamma_json(const GammaCoefficients<double>& g) {
    return Json{{"g0_plus", g.g0_plus}, {"g0_minus", g.g0_minus}, {"gx_plus", g.gx_plus},
                {"gx_minus", g.gx_minus}, {"gz_plus", g.gz_plus},   {"gz_minus", g.gz_minus}};
}

Json report_header(const char* command, const RunConfig& cfg) {
    return Json{{"command", command}, {"config", cfg.to_json()}};
}

/// Writes the JSON report, or the CSV payload with the resolved config echoed
/// on stderr as comments.
template <typename CsvWriter>
void emit(const RunConfig& cfg, const Json& report, CsvWriter&& csv) {
    if (cfg.format == OutputFormat::json) {
        std::cout << io::dump_json(report);
        return;
    }
    std::istringstream echo(cfg.to_text());
    for (std::string line; std::getline(echo, line);) std::cerr << "# " << line << '\n';
    csv(std::cout);
}

int cmd_exact(const RunConfig& cfg) {
    const auto state = cfg.resolved_state();
    const auto phase = exact_phase_distribution(state);
    Json report = report_header("exact", cfg);
    report["bloch"] = io::to_json(bloch_from_state(state));
    report["path"] = io::to_json(exact_path_distribution(state));
    report["interference"] = io::to_json(exact_interference_distribution(state));
    report["phase_density"] = io::to_json(phase);
    if (cfg.grid) report["phase_grid"] = density_grid_json(phase, cfg.phi_points);
    emit(cfg, report, [&](std::ostream& out) { write_density_csv(out, phase, cfg.phi_points); });
    return 0;
}

int cmd_operational(const RunConfig& cfg) {
    const auto state = cfg.resolved_state();
    const auto marker = cfg.resolved_marker();
    Json report = report_header("operational", cfg);
    report["gamma"] = gamma_json(gamma_coefficients(marker));
    if (cfg.mode == Mode::discrete) {
        const auto joint = operational_joint_discrete(state, marker);
        report["joint"] = io::to_json(joint);
        report["marginal_x"] = io::to_json(marginal_x(joint));
        report["marginal_z"] = io::to_json(marginal_z(joint));
        emit(cfg, report, [&](std::ostream& out) { write_joint_csv(out, joint); });
    } else {
        const auto joint = operational_joint_phase(state, marker);
        report["joint"] = io::to_json(joint);
        report["marginal_phase"] = io::to_json(marginal_phase(joint));
        report["marginal_z"] = io::to_json(marginal_z_of_phase(joint));
        if (cfg.grid) report["grid"] = joint_grid_json(joint, cfg.phi_points);
        emit(cfg, report, [&](std::ostream& out) { write_phase_joint_csv(out, joint, cfg.phi_points); });
    }
    return 0;
}

// theta at or below epsilon goes through the unmarked limit formulas; any
// other configuration is inverted with the kernels and must be non-singular.
int cmd_invert(const RunConfig& cfg) {
    const auto state = cfg.resolved_state();
    const auto marker = cfg.resolved_marker();
    const double eps = cfg.epsilon;
    const bool limit = marker.theta() <= eps;

    Json report = report_header("invert", cfg);
    report["route"] = limit ? "limit" : "kernel";
    if (!limit) {
        const auto kx = mu_x_matrix(marker.theta(), eps);
        const auto kz = mu_z_matrix(marker, eps);
        report["kernels"] = Json{{"mu_x", matrix_json(kx.m)},
                                 {"mu_z", matrix_json(kz.m)},
                                 {"max_abs_entry", std::max(kx.max_abs_entry(), kz.max_abs_entry())}};
    }
    const auto delta = delta_coefficients(marker, eps);
    report["delta"] = Json{{"d_plus", delta.d_plus}, {"d_minus", delta.d_minus}};

    if (cfg.mode == Mode::discrete) {
        const auto quasi =
            limit ? quasi_joint_limit(state) : invert_joint_discrete(operational_joint_discrete(state, marker), marker, eps);
        report["quasi_joint"] = io::to_json(quasi);
        report["marginal_x"] = io::to_json(marginal_x(quasi));
        report["marginal_z"] = io::to_json(marginal_z(quasi));
        report["negativity"] = io::to_json(negativity_of(quasi));
        report["p_min_unmarked"] = p_min_discrete(state);
        emit(cfg, report, [&](std::ostream& out) { write_joint_csv(out, quasi); });
    } else {
        const auto quasi =
            limit ? quasi_joint_phase_limit(state) : invert_joint_phase(operational_joint_phase(state, marker), marker, eps);
        report["quasi_joint"] = io::to_json(quasi);
        report["marginal_phase"] = io::to_json(marginal_phase(quasi));
        report["marginal_z"] = io::to_json(marginal_z_of_phase(quasi));
        report["negativity"] = io::to_json(negativity_of(quasi));
        report["p_min_unmarked"] = p_min_phase(state);
        if (cfg.grid) report["grid"] = joint_grid_json(quasi, cfg.phi_points);
        emit(cfg, report, [&](std::ostream& out) { write_phase_joint_csv(out, quasi, cfg.phi_points); });
    }
    return 0;
}

void write_file(const std::string& path, const std::function<void(std::ostream&)>& writer) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot write '" + path + "'");
    writer(out);
}

int cmd_sample(const RunConfig& cfg, const std::string& out_path) {
    const auto state = cfg.resolved_state();
    const auto marker = cfg.resolved_marker();
    Json report = report_header("sample", cfg);

    if (cfg.mode == Mode::discrete) {
        const auto counts = sample_discrete(operational_joint_discrete(state, marker), cfg.shots, cfg.seed);
        auto csv = [&](std::ostream& out) { io::write_counts_csv(out, counts); };
        if (!out_path.empty()) write_file(out_path, csv);

        Json cells = Json::array();
        for (int x : kOutcomes)
            for (int z : kOutcomes) cells.push_back(Json{{"x", x}, {"z", z}, {"count", counts(x, z)}});
        report["counts"] = cells;
        try {
            const auto est = estimate_quasi_joint(counts, marker, cfg.epsilon);
            Json entries = Json::array();
            for (int x : kOutcomes)
                for (int z : kOutcomes)
                    entries.push_back(Json{{"x", x},
                                           {"z", z},
                                           {"value", est.value(x, z)},
                                           {"std_error", est.std_error(outcome_index(x), outcome_index(z))}});
            report["estimate"] = entries;
        } catch (const SingularityError& e) {
            report["estimate"] = nullptr;
            report["estimate_error"] = e.what();
        }
        if (!out_path.empty() || cfg.format == OutputFormat::json)
            std::cout << io::dump_json(report);
        else
            emit(cfg, report, csv);
    } else {
        const auto shots = sample_phase(operational_joint_phase(state, marker), cfg.shots, cfg.seed);
        auto csv = [&](std::ostream& out) { io::write_phase_shots_csv(out, shots); };
        if (!out_path.empty()) write_file(out_path, csv);

        // Per-slice counts and first-harmonic moments <cos phi>, <sin phi>.
        Json slices = Json::array();
        for (int z : kOutcomes) {
            std::int64_t n = 0;
            double sc = 0, ss = 0;
            for (const auto& s : shots.shots)
                if (s.z == z) {
                    ++n;
                    sc += std::cos(s.phi);
                    ss += std::sin(s.phi);
                }
            slices.push_back(Json{{"z", z},
                                  {"count", n},
                                  {"mean_cos", n ? sc / double(n) : 0.0},
                                  {"mean_sin", n ? ss / double(n) : 0.0}});
        }
        report["slices"] = slices;
        if (!out_path.empty() || cfg.format == OutputFormat::json)
            std::cout << io::dump_json(report);
        else
            emit(cfg, report, csv);
    }
    return 0;
}

int cmd_scan(const RunConfig& cfg) {
    const auto state = cfg.resolved_state();
    const auto grid = scan_negativity(state, cfg.theta_grid_radians(), cfg.vartheta_grid_radians(),
                                      static_cast<unsigned>(cfg.threads), cfg.epsilon);
    Json report = report_header("scan", cfg);
    Json cells = Json::array();
    const ScanCell<double>* best = nullptr;
    for (const auto& c : grid.cells) {
        cells.push_back(Json{{"theta", c.theta},
                             {"vartheta", c.vartheta},
                             {"min_value", c.min_value ? Json(*c.min_value) : Json(nullptr)},
                             {"flag", c.singular() ? "singular" : "ok"}});
        if (!c.singular() && (!best || *c.min_value < *best->min_value)) best = &c;
    }
    report["p_min_unmarked"] = p_min_discrete(state);
    report["minimum"] = best ? Json{{"theta", best->theta}, {"vartheta", best->vartheta}, {"min_value", *best->min_value}}
                             : Json(nullptr);
    report["cells"] = cells;
    emit(cfg, report, [&](std::ostream& out) { io::write_scan_csv(out, grid); });
    return 0;
}

struct Options {
    std::string config_path;
    std::string out_path;
    std::map<std::string, std::optional<std::string>> values;
    bool degrees = false;
    bool grid = false;
};

void add_run_options(CLI::App* cmd, Options& o) {
    cmd->add_option("--config", o.config_path, "key = value config file; flags override it");
    const std::pair<const char*, const char*> keyed[] = {
        {"state", "Amplitudes as Re(a),Im(a),Re(b),Im(b)"},
        {"polar", "Amplitudes as |a|,arg(a),|b|,arg(b) with arguments in degrees"},
        {"theta", "Marking angle (radians unless --degrees)"},
        {"vartheta", "Analyzer angle (radians unless --degrees)"},
        {"mode", "discrete or phase"},
        {"n", "Number of shots"},
        {"seed", "RNG seed"},
        {"format", "json or csv"},
        {"theta_grid", "Scan grid start:stop:count"},
        {"vartheta_grid", "Scan grid start:stop:count"},
        {"phi_points", "Phase grid resolution"},
        {"epsilon", "Singularity threshold"},
        {"threads", "Worker threads for scans"},
    };
    for (const auto& [key, help] : keyed) {
        std::string flag = std::string("--") + key;
        std::replace(flag.begin(), flag.end(), '_', '-');
        cmd->add_option(flag, o.values[key], help);
    }
    cmd->add_flag("--degrees", o.degrees, "Angles and grids are in degrees");
    cmd->add_flag("--grid", o.grid, "Include a phase grid in JSON output");
    cmd->add_option("--out", o.out_path, "Write shot records (CSV) to this file");
}

RunConfig resolve(const Options& o) {
    RunConfig cfg = o.config_path.empty() ? RunConfig{} : RunConfig::from_file(o.config_path);
    for (const auto& [key, value] : o.values)
        if (value) cfg.set(key, *value);
    if (o.degrees) cfg.degrees = true;
    if (o.grid) cfg.grid = true;
    // Validate eagerly so that bad states and angles exit with the same code
    // whichever subcommand runs.
    (void)cfg.resolved_state();
    (void)cfg.resolved_marker();
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Joint path/interference statistics of a marked Young interferometer"};
    app.require_subcommand(1);
    Options opts;
    auto* exact = app.add_subcommand("exact", "Statistics of the unobserved state");
    auto* operational = app.add_subcommand("operational", "Measured joint statistics");
    auto* invert = app.add_subcommand("invert", "Reconstructed quasi-probability joint statistics");
    auto* sample = app.add_subcommand("sample", "Finite-shot simulation and estimation");
    auto* scan = app.add_subcommand("scan", "Minimum reconstructed value over an angle grid");
    for (auto* cmd : {exact, operational, invert, sample, scan}) add_run_options(cmd, opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitInvalid;
    }

    try {
        const RunConfig cfg = resolve(opts);
        if (exact->parsed()) return cmd_exact(cfg);
        if (operational->parsed()) return cmd_operational(cfg);
        if (invert->parsed()) return cmd_invert(cfg);
        if (sample->parsed()) return cmd_sample(cfg, opts.out_path);
        return cmd_scan(cfg);
    } catch (const SingularityError& e) {
        std::cerr << "error: " << e.what() << " (|" << e.denominator() << "| = " << io::format_number(std::abs(e.value()))
                  << ")\n";
        return kExitSingular;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvalid;
    }
}
