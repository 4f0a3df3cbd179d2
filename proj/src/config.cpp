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

#include "quasijoint/config.hpp"

#include <fmt/format.h>

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace quasijoint {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value, std::string_view why) {
    throw ValidationError(fmt::format("invalid value for '{}': '{}' ({})", key, value, why));
}

template <typename T>
T parse_number(std::string_view key, std::string_view text) {
    text = trim(text);
    T out{};
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, out);
    if (ec != std::errc() || ptr != end || text.empty()) bad_value(key, text, "not a number");
    if constexpr (std::is_floating_point_v<T>)
        if (!std::isfinite(out)) bad_value(key, text, "not finite");
    return out;
}

bool parse_bool(std::string_view key, std::string_view text) {
    text = trim(text);
    if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
    if (text == "false" || text == "0" || text == "no" || text == "off") return false;
    bad_value(key, text, "expected true or false");
}

std::array<double, 4> parse_quad(std::string_view key, std::string_view text) {
    std::array<double, 4> out{};
    std::size_t i = 0;
    std::string_view rest = text;
    while (true) {
        const auto comma = rest.find(',');
        if (i == 4) bad_value(key, text, "expected four comma-separated numbers");
        out[i++] = parse_number<double>(key, rest.substr(0, comma));
        if (comma == std::string_view::npos) break;
        rest = rest.substr(comma + 1);
    }
    if (i != 4) bad_value(key, text, "expected four comma-separated numbers");
    return out;
}

std::string join_quad(const std::array<double, 4>& v) {
    return fmt::format("{},{},{},{}", io::format_number(v[0]), io::format_number(v[1]),
                       io::format_number(v[2]), io::format_number(v[3]));
}

double to_radians(double value, bool degrees) { return degrees ? value * std::numbers::pi / 180 : value; }

}  // namespace

std::vector<double> GridSpec::values() const {
    std::vector<double> out(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i)
        out[static_cast<std::size_t>(i)] = count == 1 ? start : start + (stop - start) * i / (count - 1);
    return out;
}

std::string GridSpec::to_string() const {
    return fmt::format("{}:{}:{}", io::format_number(start), io::format_number(stop), count);
}

GridSpec GridSpec::parse(std::string_view text) {
    const auto a = text.find(':');
    const auto b = a == std::string_view::npos ? a : text.find(':', a + 1);
    if (b == std::string_view::npos) bad_value("grid", text, "expected start:stop:count");
    GridSpec g{parse_number<double>("grid", text.substr(0, a)),
               parse_number<double>("grid", text.substr(a + 1, b - a - 1)),
               parse_number<int>("grid", text.substr(b + 1))};
    if (g.count < 1) bad_value("grid", text, "count must be at least 1");
    return g;
}

void RunConfig::set(std::string_view key, std::string_view raw) {
    std::string_view value = trim(raw);
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"')
        value = value.substr(1, value.size() - 2);

    if (key == "state") {
        state_form = StateForm::cartesian;
        state = parse_quad(key, value);
    } else if (key == "polar") {
        state_form = StateForm::polar;
        state = parse_quad(key, value);
    } else if (key == "theta") {
        theta = parse_number<double>(key, value);
    } else if (key == "vartheta") {
        vartheta = parse_number<double>(key, value);
    } else if (key == "degrees") {
        degrees = parse_bool(key, value);
    } else if (key == "mode") {
        if (value == "discrete")
            mode = Mode::discrete;
        else if (value == "phase")
            mode = Mode::phase;
        else
            bad_value(key, value, "expected discrete or phase");
    } else if (key == "n") {
        shots = parse_number<std::int64_t>(key, value);
        if (shots < 1) bad_value(key, value, "must be at least 1");
    } else if (key == "seed") {
        seed = parse_number<std::uint64_t>(key, value);
    } else if (key == "format") {
        if (value == "json")
            format = OutputFormat::json;
        else if (value == "csv")
            format = OutputFormat::csv;
        else
            bad_value(key, value, "expected json or csv");
    } else if (key == "theta_grid") {
        theta_grid = GridSpec::parse(value);
    } else if (key == "vartheta_grid") {
        vartheta_grid = GridSpec::parse(value);
    } else if (key == "phi_points") {
        phi_points = parse_number<int>(key, value);
        if (phi_points < 1) bad_value(key, value, "must be at least 1");
    } else if (key == "grid") {
        grid = parse_bool(key, value);
    } else if (key == "epsilon") {
        epsilon = parse_number<double>(key, value);
        if (epsilon < 0) bad_value(key, value, "must be nonnegative");
    } else if (key == "threads") {
        threads = parse_number<int>(key, value);
        if (threads < 1) bad_value(key, value, "must be at least 1");
    } else {
        throw ValidationError(fmt::format("unknown configuration key '{}'", key));
    }
}

std::string RunConfig::to_text() const {
    std::ostringstream out;
    out << (state_form == StateForm::cartesian ? "state" : "polar") << " = " << join_quad(state) << '\n'
        << "theta = " << io::format_number(theta) << '\n'
        << "vartheta = " << io::format_number(vartheta) << '\n'
        << "degrees = " << (degrees ? "true" : "false") << '\n'
        << "mode = " << (mode == Mode::discrete ? "discrete" : "phase") << '\n'
        << "n = " << shots << '\n'
        << "seed = " << seed << '\n'
        << "format = " << (format == OutputFormat::json ? "json" : "csv") << '\n'
        << "theta_grid = " << theta_grid.to_string() << '\n'
        << "vartheta_grid = " << vartheta_grid.to_string() << '\n'
        << "phi_points = " << phi_points << '\n'
        << "grid = " << (grid ? "true" : "false") << '\n'
        << "epsilon = " << io::format_number(epsilon) << '\n'
        << "threads = " << threads << '\n';
    return out.str();
}

RunConfig RunConfig::from_text(std::string_view text) {
    RunConfig cfg;
    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty() || line.front() == '[') continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ValidationError(fmt::format("config line {}: expected key = value", line_no));
        cfg.set(trim(line.substr(0, eq)), line.substr(eq + 1));
    }
    return cfg;
}

RunConfig RunConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open config file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return from_text(buf.str());
}

PureState<double> RunConfig::resolved_state() const {
    if (state_form == StateForm::polar)
        return PureState<double>::from_polar(state[0], to_radians(state[1], true), state[2],
                                             to_radians(state[3], true));
    return {{state[0], state[1]}, {state[2], state[3]}};
}

double RunConfig::theta_radians() const { return to_radians(theta, degrees); }
double RunConfig::vartheta_radians() const { return to_radians(vartheta, degrees); }

MarkerConfig<double> RunConfig::resolved_marker() const { return {theta_radians(), vartheta_radians()}; }

std::vector<double> RunConfig::theta_grid_radians() const {
    auto v = theta_grid.values();
    for (auto& x : v) x = to_radians(x, degrees);
    return v;
}

std::vector<double> RunConfig::vartheta_grid_radians() const {
    auto v = vartheta_grid.values();
    for (auto& x : v) x = to_radians(x, degrees);
    return v;
}

io::Json RunConfig::to_json() const {
    const auto s = resolved_state();
    const auto m = resolved_marker();
    return io::Json{
        {"state", {s.alpha().real(), s.alpha().imag(), s.beta().real(), s.beta().imag()}},
        {"theta", m.theta()},
        {"vartheta", m.vartheta()},
        {"mode", mode == Mode::discrete ? "discrete" : "phase"},
        {"n", shots},
        {"seed", seed},
        {"format", format == OutputFormat::json ? "json" : "csv"},
        {"theta_grid", {theta_grid_radians().front(), theta_grid_radians().back(), theta_grid.count}},
        {"vartheta_grid", {vartheta_grid_radians().front(), vartheta_grid_radians().back(), vartheta_grid.count}},
        {"phi_points", phi_points},
        {"grid", grid},
        {"epsilon", epsilon},
    };
}

}  // namespace quasijoint
