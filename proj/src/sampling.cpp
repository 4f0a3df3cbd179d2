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

#include "quasijoint/sampling.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <array>
#include <cmath>

namespace quasijoint {

namespace {

std::mt19937_64 make_engine(std::uint64_t seed, Stream stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffu), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream)};
    return std::mt19937_64(seq);
}

void require_samplable(Kind kind) {
    if (kind != Kind::operational) throw ValidationError("cannot sample from a quasi-probability");
}

// Index of the outcome hit by u in [0,1) given cumulative weights; cells with
// zero weight are never returned.
template <std::size_t N>
std::size_t draw_index(const std::array<double, N>& cumulative, double u) {
    const double target = u * cumulative.back();
    for (std::size_t i = 0; i + 1 < N; ++i)
        if (target < cumulative[i]) return i;
    return N - 1;
}

}  // namespace

RandomStream::RandomStream(std::uint64_t seed, Stream stream) : engine_(make_engine(seed, stream)) {}

double RandomStream::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

DiscreteJoint<double> ShotCounts::frequencies() const {
    if (total <= 0) throw ValidationError("shot counts are empty");
    return {n.cast<double>() / static_cast<double>(total), Kind::operational};
}

ShotCounts sample_discrete(const DiscreteJoint<double>& joint, std::int64_t n, std::uint64_t seed) {
    require_samplable(joint.kind);
    joint.validate();
    if (n < 1) throw ValidationError("number of shots must be at least 1");

    // Cells in (x, z) order (+,+), (+,-), (-,+), (-,-).
    std::array<double, 4> cumulative{};
    double acc = 0;
    for (std::size_t i = 0; i < 4; ++i) {
        acc += std::max(0.0, joint.values(i / 2, i % 2));
        cumulative[i] = acc;
    }

    ShotCounts counts;
    counts.total = n;
    counts.seed = seed;
    RandomStream rng(seed, Stream::discrete);
    for (std::int64_t shot = 0; shot < n; ++shot) {
        const std::size_t i = draw_index(cumulative, rng.uniform());
        ++counts.n(i / 2, i % 2);
    }
    return counts;
}

PhaseShots sample_phase(const PhaseJoint<double>& joint, std::int64_t n, std::uint64_t seed) {
    require_samplable(joint.kind);
    joint.validate();
    if (n < 1) throw ValidationError("number of shots must be at least 1");

    const std::array<double, 2> cumulative{std::max(0.0, joint.slices[0].total()),
                                           std::max(0.0, joint.slices[0].total()) +
                                               std::max(0.0, joint.slices[1].total())};
    RandomStream marker(seed, Stream::marker);
    RandomStream phase(seed, Stream::phase);

    PhaseShots out;
    out.total = n;
    out.seed = seed;
    out.shots.reserve(static_cast<std::size_t>(n));
    for (std::int64_t shot = 0; shot < n; ++shot) {
        const std::size_t zi = draw_index(cumulative, marker.uniform());
        const auto& slice = joint.slices[zi];
        const double envelope = slice.c0 + slice.amplitude();
        double phi = 0;
        while (true) {
            phi = two_pi<double> * phase.uniform();
            if (phi >= two_pi<double>) phi = 0;
            if (phase.uniform() * envelope < slice(phi)) break;
        }
        out.shots.push_back({phi, index_outcome(static_cast<int>(zi))});
    }
    return out;
}

Eigen::Matrix4d multinomial_covariance(const DiscreteJoint<double>& frequencies, std::int64_t total) {
    if (total <= 0) throw ValidationError("shot total must be positive");
    const Eigen::Vector4d p = frequencies.values.reshaped();
    Eigen::Matrix4d cov = p.asDiagonal();
    cov -= p * p.transpose();
    return cov / static_cast<double>(total);
}

EstimatedQuasiJoint estimate_quasi_joint(const ShotCounts& counts, const MarkerConfig<double>& config,
                                         double eps) {
    const DiscreteJoint<double> freq = counts.frequencies();
    EstimatedQuasiJoint est;
    est.value = invert_joint_discrete(freq, config, eps);

    // vec(mu_X F mu_Z^T) = (mu_Z (x) mu_X) vec(F) for column-major vec.
    const Eigen::Matrix4d kernel =
        Eigen::kroneckerProduct(mu_z_matrix(config, eps).m, mu_x_matrix(config.theta(), eps).m);
    const Eigen::Matrix4d cov = kernel * multinomial_covariance(freq, counts.total) * kernel.transpose();
    const Eigen::Vector4d se = cov.diagonal().cwiseMax(0.0).cwiseSqrt();
    est.std_error = se.reshaped(2, 2);
    return est;
}

}  // namespace quasijoint
