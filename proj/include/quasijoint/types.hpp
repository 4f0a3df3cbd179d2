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

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace quasijoint {

/// Whether a distribution was measured (nonnegative) or reconstructed by
/// inversion (a quasi-probability that may go negative).
enum class Kind { operational, quasi };

inline const char* to_string(Kind kind) {
    return kind == Kind::operational ? "operational" : "quasi";
}

/// Raised when a value violates a domain invariant (bad state, bad angle,
/// unnormalized table, negative operational weight...).
class ValidationError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Dichotomic outcomes are +1 / -1. Storage index 0 holds +1, index 1 holds -1.
constexpr int outcome_index(int outcome) {
    if (outcome == 1) return 0;
    if (outcome == -1) return 1;
    throw ValidationError("dichotomic outcome must be +1 or -1");
}

constexpr int index_outcome(int index) { return index == 0 ? 1 : -1; }

inline constexpr std::array<int, 2> kOutcomes{1, -1};

template <typename Scalar>
inline constexpr Scalar two_pi = 2 * std::numbers::pi_v<Scalar>;

/// Probabilities of the two outcomes of a +-1 observable. Operational
/// distributions are checked to lie in [0,1]; quasi pairs (from inverting a
/// marginal) only need to sum to one.
template <typename Scalar = double>
struct BinaryDistribution {
    Scalar p_plus{};
    Scalar p_minus{};
    Kind kind = Kind::operational;

    static BinaryDistribution make(Scalar plus, Scalar minus, Kind kind = Kind::operational,
                                   Scalar tol = Scalar(1e-12)) {
        BinaryDistribution d{plus, minus, kind};
        d.validate(tol);
        return d;
    }

    void validate(Scalar tol = Scalar(1e-12)) const {
        using std::abs;
        if (!(abs(p_plus + p_minus - 1) <= tol))
            throw ValidationError("binary distribution does not sum to 1");
        if (kind == Kind::operational &&
            (p_plus < -tol || p_minus < -tol || p_plus > 1 + tol || p_minus > 1 + tol))
            throw ValidationError("operational probability outside [0,1]");
    }

    Scalar operator()(int outcome) const { return outcome_index(outcome) == 0 ? p_plus : p_minus; }

    Eigen::Matrix<Scalar, 2, 1> vector() const { return {p_plus, p_minus}; }

    static BinaryDistribution from_vector(const Eigen::Matrix<Scalar, 2, 1>& v, Kind kind) {
        return {v(0), v(1), kind};
    }
};

/// Density on [0, 2pi) of the form c0 + c_cos cos(phi) + c_sin sin(phi).
template <typename Scalar = double>
struct PhaseDensity {
    Scalar c0{};
    Scalar c_cos{};
    Scalar c_sin{};

    Scalar operator()(Scalar phi) const {
        using std::cos;
        using std::sin;
        return c0 + c_cos * cos(phi) + c_sin * sin(phi);
    }

    /// Integral over one period.
    Scalar total() const { return two_pi<Scalar> * c0; }

    /// Fringe amplitude sqrt(c_cos^2 + c_sin^2).
    Scalar amplitude() const {
        using std::hypot;
        return hypot(c_cos, c_sin);
    }

    /// Minimum over phi, attained at atan2(-c_sin, -c_cos).
    Scalar minimum() const { return c0 - amplitude(); }

    bool nonnegative(Scalar tol = Scalar(1e-12)) const { return minimum() >= -tol; }

    PhaseDensity operator+(const PhaseDensity& o) const {
        return {c0 + o.c0, c_cos + o.c_cos, c_sin + o.c_sin};
    }
    PhaseDensity operator*(Scalar s) const { return {c0 * s, c_cos * s, c_sin * s}; }
};

template <typename Scalar>
Scalar evaluate_phase_density(const PhaseDensity<Scalar>& d, Scalar phi) {
    return d(phi);
}

/// Joint table over (x, z) in {+1,-1}^2. Rows index x, columns index z, with
/// the storage convention of outcome_index.
template <typename Scalar = double>
struct DiscreteJoint {
    Eigen::Matrix<Scalar, 2, 2> values = Eigen::Matrix<Scalar, 2, 2>::Zero();
    Kind kind = Kind::operational;

    Scalar operator()(int x, int z) const { return values(outcome_index(x), outcome_index(z)); }
    Scalar& operator()(int x, int z) { return values(outcome_index(x), outcome_index(z)); }

    Scalar sum() const { return values.sum(); }

    void validate(Scalar tol = Scalar(1e-12)) const {
        using std::abs;
        if (!values.allFinite()) throw ValidationError("joint table has non-finite entries");
        if (!(abs(sum() - 1) <= tol)) throw ValidationError("joint table does not sum to 1");
        if (kind == Kind::operational && values.minCoeff() < -tol)
            throw ValidationError("operational joint has a negative entry");
    }
};

/// Joint density over (phi, z): one first-harmonic slice per marker outcome.
template <typename Scalar = double>
struct PhaseJoint {
    std::array<PhaseDensity<Scalar>, 2> slices{};
    Kind kind = Kind::operational;

    const PhaseDensity<Scalar>& slice(int z) const { return slices[outcome_index(z)]; }
    PhaseDensity<Scalar>& slice(int z) { return slices[outcome_index(z)]; }

    Scalar operator()(Scalar phi, int z) const { return slice(z)(phi); }

    void validate(Scalar tol = Scalar(1e-12)) const {
        using std::abs;
        if (!(abs(slices[0].total() + slices[1].total() - 1) <= tol))
            throw ValidationError("phase joint does not integrate to 1");
        if (kind == Kind::operational)
            for (const auto& s : slices)
                if (!s.nonnegative(tol)) throw ValidationError("operational phase slice goes negative");
    }
};

}  // namespace quasijoint
