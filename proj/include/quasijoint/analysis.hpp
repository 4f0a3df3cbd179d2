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

#include "quasijoint/inversion.hpp"
#include "quasijoint/state.hpp"
#include "quasijoint/types.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <thread>
#include <variant>
#include <vector>

namespace quasijoint {

/// Minimum of the unmarked reconstructed joint table: 1/4 (1 - |<Z>| - |<X>|).
template <typename Scalar>
Scalar p_min_discrete(const PureState<Scalar>& state) {
    using std::abs;
    const auto b = bloch_from_state(state);
    return (1 - abs(b.ez) - abs(b.ex)) / 4;
}

/// Minimum of the unmarked reconstructed phase joint:
/// 1/(4 pi) (1 - |<Z>| - sqrt(<X>^2 + <Y>^2)).
template <typename Scalar>
Scalar p_min_phase(const PureState<Scalar>& state) {
    using std::abs;
    using std::hypot;
    const auto b = bloch_from_state(state);
    return (1 - abs(b.ez) - hypot(b.ex, b.ey)) / (2 * two_pi<Scalar>);
}

struct DiscreteOutcome {
    int x;
    int z;
};

template <typename Scalar = double>
struct PhaseOutcome {
    Scalar phi;
    int z;
};

template <typename Scalar = double>
struct NegativityReport {
    Scalar min_value{};
    std::variant<DiscreteOutcome, PhaseOutcome<Scalar>> argmin;
    /// Sum (discrete) or integral (phase) of the negative part, as a
    /// magnitude. A common nonclassicality measure; zero for any genuine
    /// probability distribution.
    Scalar total_negativity{};
};

/// Integral over one period of max(0, -d(phi)).
template <typename Scalar>
Scalar negative_part_integral(const PhaseDensity<Scalar>& d) {
    using std::acos;
    using std::sin;
    const Scalar r = d.amplitude();
    if (d.c0 >= r) return 0;
    if (d.c0 <= -r) return -two_pi<Scalar> * d.c0;
    // d < 0 on an arc of half-width pi - b around the trough, b = acos(-c0/r).
    const Scalar b = acos(-d.c0 / r);
    return -d.c0 * (two_pi<Scalar> - 2 * b) + 2 * r * sin(b);
}

template <typename Scalar>
NegativityReport<Scalar> negativity_of(const DiscreteJoint<Scalar>& j) {
    NegativityReport<Scalar> report;
    Eigen::Index row = 0, col = 0;
    report.min_value = j.values.minCoeff(&row, &col);
    report.argmin = DiscreteOutcome{index_outcome(int(row)), index_outcome(int(col))};
    report.total_negativity = (-j.values.array()).max(Scalar(0)).sum();
    return report;
}

template <typename Scalar>
NegativityReport<Scalar> negativity_of(const PhaseJoint<Scalar>& j) {
    using std::atan2;
    NegativityReport<Scalar> report;
    bool first = true;
    for (int z : kOutcomes) {
        const auto& s = j.slice(z);
        const Scalar m = s.minimum();
        if (first || m < report.min_value) {
            Scalar phi = atan2(-s.c_sin, -s.c_cos);
            if (phi < 0) phi += two_pi<Scalar>;
            report.min_value = m;
            report.argmin = PhaseOutcome<Scalar>{phi, z};
            first = false;
        }
        report.total_negativity += negative_part_integral(s);
    }
    return report;
}

template <typename Scalar = double>
struct ScanCell {
    Scalar theta{};
    Scalar vartheta{};
    /// Empty when the configuration is singular.
    std::optional<Scalar> min_value;

    bool singular() const { return !min_value.has_value(); }
};

/// Cells are ordered by theta, then vartheta.
template <typename Scalar = double>
struct ScanGrid {
    std::vector<Scalar> thetas;
    std::vector<Scalar> varthetas;
    std::vector<ScanCell<Scalar>> cells;

    const ScanCell<Scalar>& at(std::size_t i_theta, std::size_t i_vartheta) const {
        return cells[i_theta * varthetas.size() + i_vartheta];
    }
};

/// Minimum entry of the reconstructed joint table over a (theta, vartheta)
/// grid. Results do not depend on `threads`.
template <typename Scalar>
ScanGrid<Scalar> scan_negativity(const PureState<Scalar>& state, std::vector<Scalar> thetas,
                                 std::vector<Scalar> varthetas, unsigned threads = 1,
                                 Scalar eps = Scalar(kSingularityEpsilon)) {
    ScanGrid<Scalar> grid{std::move(thetas), std::move(varthetas), {}};
    const std::size_t nv = grid.varthetas.size();
    grid.cells.resize(grid.thetas.size() * nv);

    auto fill = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            auto& cell = grid.cells[i];
            cell.theta = grid.thetas[i / nv];
            cell.vartheta = grid.varthetas[i % nv];
            try {
                const MarkerConfig<Scalar> config(cell.theta, cell.vartheta);
                cell.min_value = quasi_joint_closed_form(state, config, eps).values.minCoeff();
            } catch (const SingularityError&) {
                cell.min_value.reset();
            }
        }
    };

    const std::size_t n = grid.cells.size();
    threads = std::max(1u, std::min<unsigned>(threads, unsigned(std::max<std::size_t>(n, 1))));
    if (threads == 1) {
        fill(0, n);
        return grid;
    }
    std::vector<std::jthread> workers;
    const std::size_t chunk = (n + threads - 1) / threads;
    for (std::size_t begin = 0; begin < n; begin += chunk)
        workers.emplace_back(fill, begin, std::min(n, begin + chunk));
    workers.clear();
    return grid;
}

}  // namespace quasijoint
