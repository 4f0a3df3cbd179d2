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

#include "quasijoint/types.hpp"

#include <complex>

namespace quasijoint {

/// Inputs whose norm is within this distance of 1 are renormalized silently.
inline constexpr double kRenormalizeTolerance = 1e-6;

/// Pure state of a particle at the two apertures: alpha on the upper slit
/// (z = +1), beta on the lower slit (z = -1). Always unit norm.
template <typename Scalar = double>
class PureState {
  public:
    using Complex = std::complex<Scalar>;
    using Amplitudes = Eigen::Matrix<Complex, 2, 1>;

    PureState() : amplitudes_(Complex(1), Complex(0)) {}

    PureState(Complex alpha, Complex beta) : amplitudes_(alpha, beta) {
        if (!amplitudes_.allFinite()) throw ValidationError("state amplitudes must be finite");
        const Scalar norm = amplitudes_.norm();
        using std::abs;
        if (!(abs(norm - 1) <= Scalar(kRenormalizeTolerance)))
            throw ValidationError("state is not normalized (|alpha|^2 + |beta|^2 = " +
                                  std::to_string(static_cast<double>(norm * norm)) + ")");
        amplitudes_ /= norm;
    }

    /// Magnitude and phase (radians) for each amplitude.
    static PureState from_polar(Scalar mag_alpha, Scalar phase_alpha, Scalar mag_beta,
                                Scalar phase_beta) {
        return {std::polar(mag_alpha, phase_alpha), std::polar(mag_beta, phase_beta)};
    }

    const Complex& alpha() const { return amplitudes_(0); }
    const Complex& beta() const { return amplitudes_(1); }
    const Amplitudes& amplitudes() const { return amplitudes_; }

  private:
    Amplitudes amplitudes_;
};

/// Expectation values of the three Pauli observables.
template <typename Scalar = double>
struct BlochExpectations {
    Scalar ex{};
    Scalar ey{};
    Scalar ez{};

    Eigen::Matrix<Scalar, 3, 1> vector() const { return {ex, ey, ez}; }
};

template <typename Scalar>
BlochExpectations<Scalar> bloch_from_state(const PureState<Scalar>& state) {
    const auto& a = state.alpha();
    const auto& b = state.beta();
    // <X> = a b* + a* b, <Y> = i (a b* - a* b), <Z> = |a|^2 - |b|^2
    const auto cross = std::conj(a) * b;
    return {2 * cross.real(), 2 * cross.imag(), std::norm(a) - std::norm(b)};
}

}  // namespace quasijoint
