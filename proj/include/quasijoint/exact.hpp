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

// Statistics of path, interference and phase for an unobserved state.

#pragma once

#include "quasijoint/state.hpp"
#include "quasijoint/types.hpp"

namespace quasijoint {

/// Eigenvector |x> of X in the aperture basis: (1, x)/sqrt(2).
template <typename Scalar = double>
Eigen::Matrix<std::complex<Scalar>, 2, 1> interference_vector(int x) {
    const Scalar s = 1 / std::sqrt(Scalar(2));
    const Scalar sign = Scalar(index_outcome(outcome_index(x)));
    return {std::complex<Scalar>(s), std::complex<Scalar>(sign * s)};
}

/// Unnormalized phase POVM vector |phi> = (1, e^{i phi})/sqrt(2 pi).
template <typename Scalar>
Eigen::Matrix<std::complex<Scalar>, 2, 1> phase_vector(Scalar phi) {
    const Scalar s = 1 / std::sqrt(two_pi<Scalar>);
    return {std::complex<Scalar>(s), std::polar(s, phi)};
}

template <typename Scalar>
BinaryDistribution<Scalar> exact_path_distribution(const PureState<Scalar>& state) {
    const Scalar ez = bloch_from_state(state).ez;
    return {(1 + ez) / 2, (1 - ez) / 2, Kind::operational};
}

template <typename Scalar>
BinaryDistribution<Scalar> exact_interference_distribution(const PureState<Scalar>& state) {
    const Scalar ex = bloch_from_state(state).ex;
    return {(1 + ex) / 2, (1 - ex) / 2, Kind::operational};
}

template <typename Scalar>
PhaseDensity<Scalar> exact_phase_distribution(const PureState<Scalar>& state) {
    const auto b = bloch_from_state(state);
    const Scalar norm = 1 / two_pi<Scalar>;
    return {norm, b.ex * norm, b.ey * norm};
}

}  // namespace quasijoint
