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

// Young interferometer with the crossed aperture marked on a spin (or
// polarization) degree of freedom. The upper aperture rotates the spin from
// |->> to cos(theta)|->> + sin(theta)|^>; the spin is then read out in a
// basis rotated by vartheta while the interference (or phase) is measured.
//
// Composite basis ordering, used by every projection in this library:
//
//   index 0: (upper, ->)   index 1: (upper, ^)
//   index 2: (lower, ->)   index 3: (lower, ^)
//
// i.e. kroneckerProduct(path, spin) with path {upper, lower}, spin {->, ^}.

#pragma once

#include "quasijoint/exact.hpp"
#include "quasijoint/state.hpp"
#include "quasijoint/types.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>
#include <utility>

namespace quasijoint {

/// Marking angle theta in [0, pi/2] (0: no marking, pi/2: full which-path
/// marking) and analyzer angle vartheta in [0, pi). vartheta and vartheta + pi
/// give the same analyzer up to a global sign, so vartheta is reduced mod pi.
template <typename Scalar = double>
class MarkerConfig {
  public:
    MarkerConfig() = default;

    MarkerConfig(Scalar theta, Scalar vartheta) : theta_(theta), vartheta_(vartheta) {
        using std::fmod;
        using std::isfinite;
        constexpr Scalar pi = std::numbers::pi_v<Scalar>;
        constexpr Scalar tol = Scalar(1e-12);
        if (!isfinite(theta_) || !isfinite(vartheta_))
            throw ValidationError("marker angles must be finite");
        if (theta_ < -tol || theta_ > pi / 2 + tol)
            throw ValidationError("marking angle theta must lie in [0, pi/2]");
        if (theta_ < 0) theta_ = 0;
        if (theta_ > pi / 2) theta_ = pi / 2;
        if (vartheta_ < 0 || vartheta_ >= pi) {
            vartheta_ = fmod(vartheta_, pi);
            if (vartheta_ < 0) vartheta_ += pi;
            if (vartheta_ >= pi) vartheta_ = 0;
        }
    }

    Scalar theta() const { return theta_; }
    Scalar vartheta() const { return vartheta_; }

  private:
    Scalar theta_{};
    Scalar vartheta_{};
};

/// Coefficients of the measured joint statistics,
///   P~(x,z) = 1/2 [g0(z) + x gx(z) <X> + z gz(z) <Z>].
template <typename Scalar = double>
struct GammaCoefficients {
    Scalar g0_plus{}, g0_minus{};
    Scalar gx_plus{}, gx_minus{};
    Scalar gz_plus{}, gz_minus{};

    Scalar g0(int z) const { return outcome_index(z) == 0 ? g0_plus : g0_minus; }
    Scalar gx(int z) const { return outcome_index(z) == 0 ? gx_plus : gx_minus; }
    Scalar gz(int z) const { return outcome_index(z) == 0 ? gz_plus : gz_minus; }
};

template <typename Scalar>
GammaCoefficients<Scalar> gamma_coefficients(const MarkerConfig<Scalar>& config) {
    using std::cos;
    using std::sin;
    const Scalar t = config.theta();
    const Scalar v = config.vartheta();
    const Scalar c_vt = cos(v - t), s_vt = sin(v - t);
    const Scalar c_v = cos(v), s_v = sin(v);
    GammaCoefficients<Scalar> g;
    g.g0_plus = (c_vt * c_vt + c_v * c_v) / 2;
    g.g0_minus = (s_vt * s_vt + s_v * s_v) / 2;
    g.gx_plus = c_vt * c_v;
    g.gx_minus = s_vt * s_v;
    g.gz_plus = (c_vt * c_vt - c_v * c_v) / 2;
    g.gz_minus = (-s_vt * s_vt + s_v * s_v) / 2;
    return g;
}

template <typename Scalar = double>
using CompositeState = Eigen::Matrix<std::complex<Scalar>, 4, 1>;

template <typename Scalar = double>
using SpinVector = Eigen::Matrix<Scalar, 2, 1>;

/// Path-spin entangled state after marking: (a cos t, a sin t, b, 0).
template <typename Scalar>
CompositeState<Scalar> entangled_state(const PureState<Scalar>& state, Scalar theta) {
    using std::cos;
    using std::sin;
    const SpinVector<Scalar> marked(cos(theta), sin(theta));
    const SpinVector<Scalar> unmarked(1, 0);
    CompositeState<Scalar> out;
    out.template head<2>() = state.alpha() * marked.template cast<std::complex<Scalar>>();
    out.template tail<2>() = state.beta() * unmarked.template cast<std::complex<Scalar>>();
    return out;
}

/// Analyzer basis |z~ = +1>, |z~ = -1> in the (->, ^) spin basis.
template <typename Scalar>
std::pair<SpinVector<Scalar>, SpinVector<Scalar>> analyzer_states(Scalar vartheta) {
    using std::cos;
    using std::sin;
    return {SpinVector<Scalar>(cos(vartheta), sin(vartheta)),
            SpinVector<Scalar>(-sin(vartheta), cos(vartheta))};
}

template <typename Scalar>
SpinVector<Scalar> analyzer_state(Scalar vartheta, int z) {
    auto [plus, minus] = analyzer_states(vartheta);
    return outcome_index(z) == 0 ? plus : minus;
}

/// Born-rule probability |<z~|<x|psi~>|^2, computed by explicit projection on
/// the four-dimensional composite state. This is the slow reference path for
/// the closed-form joint statistics.
template <typename Scalar>
Scalar born_probability_discrete(const PureState<Scalar>& state, const MarkerConfig<Scalar>& config,
                                 int x, int z) {
    using C = std::complex<Scalar>;
    const CompositeState<Scalar> psi = entangled_state(state, config.theta());
    const Eigen::Matrix<C, 2, 1> spin = analyzer_state(config.vartheta(), z).template cast<C>();
    const CompositeState<Scalar> bra = Eigen::kroneckerProduct(interference_vector<Scalar>(x), spin);
    return std::norm(bra.dot(psi));
}

template <typename Scalar>
DiscreteJoint<Scalar> born_joint_discrete(const PureState<Scalar>& state,
                                          const MarkerConfig<Scalar>& config) {
    DiscreteJoint<Scalar> j;
    for (int x : kOutcomes)
        for (int z : kOutcomes) j(x, z) = born_probability_discrete(state, config, x, z);
    return j;
}

/// Born-rule density |<z~|<phi|psi~>|^2 at a single phase value.
template <typename Scalar>
Scalar born_density_phase(const PureState<Scalar>& state, const MarkerConfig<Scalar>& config,
                          Scalar phi, int z) {
    using C = std::complex<Scalar>;
    const CompositeState<Scalar> psi = entangled_state(state, config.theta());
    const Eigen::Matrix<C, 2, 1> spin = analyzer_state(config.vartheta(), z).template cast<C>();
    const CompositeState<Scalar> bra = Eigen::kroneckerProduct(phase_vector(phi), spin);
    return std::norm(bra.dot(psi));
}

template <typename Scalar>
DiscreteJoint<Scalar> operational_joint_discrete(const PureState<Scalar>& state,
                                                 const MarkerConfig<Scalar>& config) {
    const auto g = gamma_coefficients(config);
    const auto b = bloch_from_state(state);
    DiscreteJoint<Scalar> j;
    j.kind = Kind::operational;
    for (int x : kOutcomes)
        for (int z : kOutcomes) j(x, z) = (g.g0(z) + x * g.gx(z) * b.ex + z * g.gz(z) * b.ez) / 2;
    return j;
}

template <typename Scalar>
PhaseJoint<Scalar> operational_joint_phase(const PureState<Scalar>& state,
                                           const MarkerConfig<Scalar>& config) {
    const auto g = gamma_coefficients(config);
    const auto b = bloch_from_state(state);
    const Scalar norm = 1 / two_pi<Scalar>;
    PhaseJoint<Scalar> j;
    j.kind = Kind::operational;
    for (int z : kOutcomes)
        j.slice(z) = {(g.g0(z) + z * g.gz(z) * b.ez) * norm, g.gx(z) * b.ex * norm,
                      g.gx(z) * b.ey * norm};
    return j;
}

template <typename Scalar>
BinaryDistribution<Scalar> marginal_x(const DiscreteJoint<Scalar>& j) {
    const Eigen::Matrix<Scalar, 2, 1> m = j.values.rowwise().sum();
    return BinaryDistribution<Scalar>::from_vector(m, j.kind);
}

template <typename Scalar>
BinaryDistribution<Scalar> marginal_z(const DiscreteJoint<Scalar>& j) {
    const Eigen::Matrix<Scalar, 2, 1> m = j.values.colwise().sum().transpose();
    return BinaryDistribution<Scalar>::from_vector(m, j.kind);
}

template <typename Scalar>
PhaseDensity<Scalar> marginal_phase(const PhaseJoint<Scalar>& j) {
    return j.slices[0] + j.slices[1];
}

template <typename Scalar>
BinaryDistribution<Scalar> marginal_z_of_phase(const PhaseJoint<Scalar>& j) {
    return {j.slices[0].total(), j.slices[1].total(), j.kind};
}

}  // namespace quasijoint
