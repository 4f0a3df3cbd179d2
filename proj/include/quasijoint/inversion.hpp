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

// Linear data inversion: undo the blurring that the simultaneous measurement
// adds to each observable, then apply the same kernels to the joint table.
// The result has exact marginals but is in general not a probability.

#pragma once

#include "quasijoint/exact.hpp"
#include "quasijoint/interferometer.hpp"
#include "quasijoint/state.hpp"
#include "quasijoint/types.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace quasijoint {

inline constexpr double kSingularityEpsilon = 1e-9;

/// A kernel denominator vanished; `denominator()` names it and `value()`
/// holds its magnitude at the offending configuration.
class SingularityError : public std::domain_error {
  public:
    SingularityError(const std::string& what, std::string denominator, double value)
        : std::domain_error(what), denominator_(std::move(denominator)), value_(value) {}

    const std::string& denominator() const { return denominator_; }
    double value() const { return value_; }

  private:
    std::string denominator_;
    double value_;
};

/// cos(theta) = 0: the marker fully resolves the path and the fringes are gone.
class SingularMarking : public SingularityError {
  public:
    explicit SingularMarking(double value)
        : SingularityError("singular marking: cos(theta) = 0, interference cannot be recovered",
                           "cos(theta)", value) {}
};

/// sin(theta) sin(2 vartheta - theta) = 0: the analyzer outcomes carry no
/// resolvable path information.
class SingularAnalyzer : public SingularityError {
  public:
    SingularAnalyzer(const std::string& factor, double value)
        : SingularityError("singular analyzer: " + factor + " = 0, path statistics cannot be recovered",
                           factor, value) {}
};

namespace detail {

template <typename Scalar>
void require_marking(Scalar theta, Scalar eps) {
    using std::abs;
    using std::cos;
    if (abs(cos(theta)) <= eps) throw SingularMarking(static_cast<double>(cos(theta)));
}

template <typename Scalar>
void require_analyzer(const MarkerConfig<Scalar>& c, Scalar eps) {
    using std::abs;
    using std::sin;
    const Scalar s_t = sin(c.theta());
    const Scalar s_a = sin(2 * c.vartheta() - c.theta());
    if (abs(s_t * s_a) > eps) return;
    if (abs(s_t) <= abs(s_a)) throw SingularAnalyzer("sin(theta)", static_cast<double>(s_t));
    throw SingularAnalyzer("sin(2*vartheta - theta)", static_cast<double>(s_a));
}

}  // namespace detail

enum class KernelLabel { mu_x, mu_z };

/// 2x2 kernel m(a, a') mapping measured to exact statistics, with the same
/// outcome indexing as BinaryDistribution.
template <typename Scalar = double>
struct InversionMatrix {
    Eigen::Matrix<Scalar, 2, 2> m;
    KernelLabel label;

    Scalar operator()(int a, int a_prime) const { return m(outcome_index(a), outcome_index(a_prime)); }

    /// Largest |entry|; grows without bound near singular configurations.
    Scalar max_abs_entry() const { return m.cwiseAbs().maxCoeff(); }
};

/// Forward X response R(x', x) = 1/2 (1 + x' x cos theta): exact -> measured.
template <typename Scalar>
Eigen::Matrix<Scalar, 2, 2> x_response_matrix(Scalar theta) {
    using std::cos;
    Eigen::Matrix<Scalar, 2, 2> r;
    for (int xp : kOutcomes)
        for (int x : kOutcomes) r(outcome_index(xp), outcome_index(x)) = (1 + xp * x * cos(theta)) / 2;
    return r;
}

/// Forward Z response read off the measured path marginal g0(z') + z' gz(z') <Z>.
template <typename Scalar>
Eigen::Matrix<Scalar, 2, 2> z_response_matrix(const MarkerConfig<Scalar>& config) {
    const auto g = gamma_coefficients(config);
    Eigen::Matrix<Scalar, 2, 2> r;
    for (int zp : kOutcomes)
        for (int z : kOutcomes) r(outcome_index(zp), outcome_index(z)) = g.g0(zp) + zp * z * g.gz(zp);
    return r;
}

template <typename Scalar>
InversionMatrix<Scalar> mu_x_matrix(Scalar theta, Scalar eps = Scalar(kSingularityEpsilon)) {
    using std::cos;
    detail::require_marking(theta, eps);
    InversionMatrix<Scalar> k{{}, KernelLabel::mu_x};
    const Scalar inv_cos = 1 / cos(theta);
    for (int x : kOutcomes)
        for (int xp : kOutcomes) k.m(outcome_index(x), outcome_index(xp)) = (1 + x * xp * inv_cos) / 2;
    return k;
}

template <typename Scalar>
InversionMatrix<Scalar> mu_z_matrix(const MarkerConfig<Scalar>& config,
                                    Scalar eps = Scalar(kSingularityEpsilon)) {
    using std::cos;
    using std::sin;
    detail::require_analyzer(config, eps);
    const Scalar t = config.theta();
    const Scalar v = config.vartheta();
    const Scalar den = sin(t) * sin(2 * v - t);
    const Scalar s_v = sin(v), c_v = cos(v), s_vt = sin(v - t), c_vt = cos(v - t);
    InversionMatrix<Scalar> k{{}, KernelLabel::mu_z};
    k.m(0, 0) = s_v * s_v / den;
    k.m(0, 1) = -c_v * c_v / den;
    k.m(1, 0) = -s_vt * s_vt / den;
    k.m(1, 1) = c_vt * c_vt / den;
    return k;
}

template <typename Scalar>
BinaryDistribution<Scalar> invert_marginal_x(const BinaryDistribution<Scalar>& p, Scalar theta,
                                             Scalar eps = Scalar(kSingularityEpsilon)) {
    const auto k = mu_x_matrix(theta, eps);
    return BinaryDistribution<Scalar>::from_vector(k.m * p.vector(), Kind::quasi);
}

template <typename Scalar>
BinaryDistribution<Scalar> invert_marginal_z(const BinaryDistribution<Scalar>& p,
                                             const MarkerConfig<Scalar>& config,
                                             Scalar eps = Scalar(kSingularityEpsilon)) {
    const auto k = mu_z_matrix(config, eps);
    return BinaryDistribution<Scalar>::from_vector(k.m * p.vector(), Kind::quasi);
}

/// P(x, z) = sum mu_X(x, x') mu_Z(z, z') P~(x', z'), i.e. mu_X * P~ * mu_Z^T.
template <typename Scalar>
DiscreteJoint<Scalar> invert_joint_discrete(const DiscreteJoint<Scalar>& j,
                                            const MarkerConfig<Scalar>& config,
                                            Scalar eps = Scalar(kSingularityEpsilon)) {
    if (j.kind != Kind::operational)
        throw ValidationError("inversion expects measured (operational) statistics");
    j.validate();
    const auto kx = mu_x_matrix(config.theta(), eps);
    const auto kz = mu_z_matrix(config, eps);
    return {kx.m * j.values * kz.m.transpose(), Kind::quasi};
}

/// Fringe factor of the reconstructed joint; d_plus + d_minus = 2.
template <typename Scalar = double>
struct DeltaCoefficients {
    Scalar d_plus{};
    Scalar d_minus{};

    Scalar operator()(int z) const { return outcome_index(z) == 0 ? d_plus : d_minus; }
};

/// At theta <= eps both factors take their limiting value 1.
template <typename Scalar>
DeltaCoefficients<Scalar> delta_coefficients(const MarkerConfig<Scalar>& config,
                                             Scalar eps = Scalar(kSingularityEpsilon)) {
    using std::abs;
    using std::cos;
    using std::sin;
    const Scalar t = config.theta();
    const Scalar v = config.vartheta();
    if (t <= eps) return {Scalar(1), Scalar(1)};
    detail::require_marking(t, eps);
    const Scalar s_a = sin(2 * v - t);
    if (abs(s_a) <= eps) throw SingularAnalyzer("sin(2*vartheta - theta)", static_cast<double>(s_a));
    const Scalar den = cos(t) * s_a;
    return {sin(2 * v) / den, sin(2 * v - 2 * t) / den};
}

/// P(x, z) = 1/4 (1 + z <Z> + x <X>): the unmarked limit theta -> 0.
template <typename Scalar>
DiscreteJoint<Scalar> quasi_joint_limit(const PureState<Scalar>& state) {
    const auto b = bloch_from_state(state);
    DiscreteJoint<Scalar> j;
    j.kind = Kind::quasi;
    for (int x : kOutcomes)
        for (int z : kOutcomes) j(x, z) = (1 + z * b.ez + x * b.ex) / 4;
    return j;
}

/// P(x, z) = 1/4 [1 + x delta(z) <X> + z <Z>]. theta <= eps takes the limit
/// formula; the matrix route rejects that case.
template <typename Scalar>
DiscreteJoint<Scalar> quasi_joint_closed_form(const PureState<Scalar>& state,
                                              const MarkerConfig<Scalar>& config,
                                              Scalar eps = Scalar(kSingularityEpsilon)) {
    if (config.theta() <= eps) return quasi_joint_limit(state);
    const auto d = delta_coefficients(config, eps);
    const auto b = bloch_from_state(state);
    DiscreteJoint<Scalar> j;
    j.kind = Kind::quasi;
    for (int x : kOutcomes)
        for (int z : kOutcomes) j(x, z) = (1 + x * d(z) * b.ex + z * b.ez) / 4;
    return j;
}

/// mu_Phi(phi, phi') = 1/(2 pi) [1 + (2 / cos theta) cos(phi - phi')].
/// Convolution leaves the constant term alone and divides the first
/// harmonic by cos theta.
template <typename Scalar = double>
struct PhaseKernel {
    Scalar theta{};
    Scalar k0{};    // 1/(2 pi)
    Scalar gain{};  // 1 / cos(theta)

    Scalar operator()(Scalar phi, Scalar phi_prime) const {
        using std::cos;
        return k0 * (1 + 2 * gain * cos(phi - phi_prime));
    }

    PhaseDensity<Scalar> apply(const PhaseDensity<Scalar>& d) const {
        return {d.c0, d.c_cos * gain, d.c_sin * gain};
    }
};

template <typename Scalar>
PhaseKernel<Scalar> mu_phi_kernel(Scalar theta, Scalar eps = Scalar(kSingularityEpsilon)) {
    using std::cos;
    detail::require_marking(theta, eps);
    return {theta, 1 / two_pi<Scalar>, 1 / cos(theta)};
}

template <typename Scalar>
PhaseDensity<Scalar> invert_phase_density(const PhaseDensity<Scalar>& d, Scalar theta,
                                          Scalar eps = Scalar(kSingularityEpsilon)) {
    return mu_phi_kernel(theta, eps).apply(d);
}

/// mu_Z mixes the z-slices, mu_Phi acts within each slice.
template <typename Scalar>
PhaseJoint<Scalar> invert_joint_phase(const PhaseJoint<Scalar>& j, const MarkerConfig<Scalar>& config,
                                      Scalar eps = Scalar(kSingularityEpsilon)) {
    if (j.kind != Kind::operational)
        throw ValidationError("inversion expects measured (operational) statistics");
    j.validate();
    const auto kz = mu_z_matrix(config, eps);
    const auto kphi = mu_phi_kernel(config.theta(), eps);
    PhaseJoint<Scalar> out;
    out.kind = Kind::quasi;
    for (int z : kOutcomes) {
        PhaseDensity<Scalar> mixed{};
        for (int zp : kOutcomes) mixed = mixed + j.slice(zp) * kz(z, zp);
        out.slice(z) = kphi.apply(mixed);
    }
    return out;
}

/// P(phi, z) = 1/(4 pi) [1 + cos(phi) <X> + sin(phi) <Y> + z <Z>].
template <typename Scalar>
PhaseJoint<Scalar> quasi_joint_phase_limit(const PureState<Scalar>& state) {
    const auto b = bloch_from_state(state);
    const Scalar norm = 1 / (2 * two_pi<Scalar>);
    PhaseJoint<Scalar> j;
    j.kind = Kind::quasi;
    for (int z : kOutcomes) j.slice(z) = {(1 + z * b.ez) * norm, b.ex * norm, b.ey * norm};
    return j;
}

/// P(phi, z) = 1/(4 pi) [1 + delta(z) (cos(phi) <X> + sin(phi) <Y>) + z <Z>].
template <typename Scalar>
PhaseJoint<Scalar> quasi_joint_phase_closed_form(const PureState<Scalar>& state,
                                                 const MarkerConfig<Scalar>& config,
                                                 Scalar eps = Scalar(kSingularityEpsilon)) {
    if (config.theta() <= eps) return quasi_joint_phase_limit(state);
    const auto d = delta_coefficients(config, eps);
    const auto b = bloch_from_state(state);
    const Scalar norm = 1 / (2 * two_pi<Scalar>);
    PhaseJoint<Scalar> j;
    j.kind = Kind::quasi;
    for (int z : kOutcomes)
        j.slice(z) = {(1 + z * b.ez) * norm, d(z) * b.ex * norm, d(z) * b.ey * norm};
    return j;
}

}  // namespace quasijoint
