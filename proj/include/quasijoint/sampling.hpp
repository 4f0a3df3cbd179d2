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

// Finite-statistics simulation of the joint measurement.
//
// Random numbers come from std::mt19937_64, one engine per logical stream,
// each seeded with std::seed_seq{seed_lo32, seed_hi32, stream_id}. Both the
// engine and seed_seq are fully specified by the standard, and uniforms are
// formed from the top 53 bits of each draw, so shot sequences are identical
// across platforms and standard libraries.

#pragma once

#include "quasijoint/interferometer.hpp"
#include "quasijoint/inversion.hpp"
#include "quasijoint/types.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace quasijoint {

enum class Stream : std::uint32_t { discrete = 0, marker = 1, phase = 2 };

class RandomStream {
  public:
    RandomStream(std::uint64_t seed, Stream stream);

    /// Uniform on [0, 1) with 53 random bits.
    double uniform();

  private:
    std::mt19937_64 engine_;
};

struct ShotCounts {
    /// Same (x, z) layout as DiscreteJoint.
    Eigen::Matrix<std::int64_t, 2, 2> n = Eigen::Matrix<std::int64_t, 2, 2>::Zero();
    std::int64_t total = 0;
    std::uint64_t seed = 0;

    std::int64_t operator()(int x, int z) const { return n(outcome_index(x), outcome_index(z)); }

    DiscreteJoint<double> frequencies() const;
};

struct PhaseShot {
    double phi;  // [0, 2 pi)
    int z;
};

struct PhaseShots {
    std::vector<PhaseShot> shots;
    std::int64_t total = 0;
    std::uint64_t seed = 0;
};

struct EstimatedQuasiJoint {
    DiscreteJoint<double> value;
    /// First-order (delta-method) standard errors, same layout as value.
    Eigen::Matrix2d std_error = Eigen::Matrix2d::Zero();
};

/// Multinomial draw of n shots. Rejects quasi tables.
ShotCounts sample_discrete(const DiscreteJoint<double>& joint, std::int64_t n, std::uint64_t seed);

/// Draws z with weight 2 pi c0(z), then phi by rejection under the flat
/// envelope c0(z) + amplitude(z); acceptance is at least 1/2.
PhaseShots sample_phase(const PhaseJoint<double>& joint, std::int64_t n, std::uint64_t seed);

/// Applies the discrete inversion to empirical frequencies and propagates
/// the multinomial covariance through the kernel mu_Z (x) mu_X.
EstimatedQuasiJoint estimate_quasi_joint(const ShotCounts& counts, const MarkerConfig<double>& config,
                                         double eps = kSingularityEpsilon);

/// Plug-in multinomial covariance of the column-major vec(frequencies).
Eigen::Matrix4d multinomial_covariance(const DiscreteJoint<double>& frequencies, std::int64_t total);

}  // namespace quasijoint
