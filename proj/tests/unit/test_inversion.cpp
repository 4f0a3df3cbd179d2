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

#include "../test_support.hpp"

#include <gtest/gtest.h>

using namespace quasijoint;
using namespace quasijoint::testing;

namespace {

// Kernel applied by 129-point trapezoid quadrature over phi'.
double convolve_by_quadrature(const PhaseKernel<double>& k, const PhaseDensity<double>& d, double phi) {
    return trapezoid_period([&](double pp) { return k(phi, pp) * d(pp); }, 129);
}

}  // namespace

TEST(MuX, Examples) {
    auto k = mu_x_matrix(0.0);
    EXPECT_LT((k.m - Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff(), 1e-15);

    k = mu_x_matrix(kPi / 3);
    EXPECT_NEAR(k(1, 1), 1.5, 1e-14);
    EXPECT_NEAR(k(-1, -1), 1.5, 1e-14);
    EXPECT_NEAR(k(1, -1), -0.5, 1e-14);
    EXPECT_NEAR(k(-1, 1), -0.5, 1e-14);
    EXPECT_LT((k.m * x_response_matrix(kPi / 3) - Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_EQ(k.label, KernelLabel::mu_x);

    EXPECT_THROW(mu_x_matrix(kPi / 2), SingularMarking);
}

TEST(MuZ, Examples) {
    auto k = mu_z_matrix(MarkerConfig<double>(kPi / 2, kPi / 2));
    EXPECT_LT((k.m - Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff(), 1e-15);

    EXPECT_THROW(mu_z_matrix(MarkerConfig<double>(0, 0.7)), SingularAnalyzer);

    k = mu_z_matrix(MarkerConfig<double>(kPi / 4, kPi / 4));
    EXPECT_NEAR(k(1, 1), 1, 1e-14);
    EXPECT_NEAR(k(1, -1), -1, 1e-14);
    EXPECT_NEAR(k(-1, 1), 0, 1e-14);
    EXPECT_NEAR(k(-1, -1), 2, 1e-14);
}

TEST(MuZ, SingularOnAnalyzerLine) {
    try {
        mu_z_matrix(MarkerConfig<double>(0.6, 0.3));
        FAIL() << "expected SingularAnalyzer";
    } catch (const SingularAnalyzer& e) {
        EXPECT_EQ(e.denominator(), "sin(2*vartheta - theta)");
    }
    try {
        mu_z_matrix(MarkerConfig<double>(0, 0.3));
        FAIL() << "expected SingularAnalyzer";
    } catch (const SingularAnalyzer& e) {
        EXPECT_EQ(e.denominator(), "sin(theta)");
    }
}

TEST(MuZ, NearThresholdDiagnostic) {
    const auto k = mu_z_matrix(MarkerConfig<double>(1e-6, kPi / 4));
    EXPECT_GT(k.max_abs_entry(), 1e5);
    EXPECT_TRUE(k.m.allFinite());
    EXPECT_THROW(mu_z_matrix(MarkerConfig<double>(1e-6, kPi / 4), 1e-5), SingularAnalyzer);
}

TEST(Kernels, ColumnSumsAndLeftInverse) {
    std::mt19937_64 rng(31);
    for (int i = 0; i < 100; ++i) {
        const auto c = random_regular_config(rng);
        const auto kx = mu_x_matrix(c.theta());
        const auto kz = mu_z_matrix(c);
        for (int col = 0; col < 2; ++col) {
            EXPECT_NEAR(kx.m.col(col).sum(), 1, 1e-12);
            EXPECT_NEAR(kz.m.col(col).sum(), 1, 1e-10);
        }
        EXPECT_LT((kx.m * x_response_matrix(c.theta()) - Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff(), 1e-10);
        EXPECT_LT((kz.m * z_response_matrix(c) - Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff(), 1e-10);
    }
}

TEST(InvertMarginal, Examples) {
    const auto p = BinaryDistribution<double>::make(0.75, 0.25);
    const auto q = invert_marginal_x(p, kPi / 3);
    EXPECT_NEAR(q(1), 1, 1e-14);
    EXPECT_NEAR(q(-1), 0, 1e-14);
    EXPECT_EQ(q.kind, Kind::quasi);

    const auto r = BinaryDistribution<double>::make(0.3, 0.7);
    const auto rz = invert_marginal_z(r, MarkerConfig<double>(kPi / 2, kPi / 2));
    EXPECT_NEAR(rz(1), 0.3, 1e-15);
    EXPECT_NEAR(rz(-1), 0.7, 1e-15);

    const auto flat = BinaryDistribution<double>::make(0.5, 0.5);
    for (double t : {0.1, 0.7, 1.3}) {
        const auto f = invert_marginal_x(flat, t);
        EXPECT_NEAR(f(1), 0.5, 1e-14);
        EXPECT_NEAR(f(-1), 0.5, 1e-14);
    }
}

TEST(InvertMarginal, RecoversExactStatistics) {
    std::mt19937_64 rng(32);
    for (int i = 0; i < 500; ++i) {
        const auto s = random_state(rng);
        const auto c = random_regular_config(rng);
        const auto j = operational_joint_discrete(s, c);
        const auto px = invert_marginal_x(marginal_x(j), c.theta());
        const auto pz = invert_marginal_z(marginal_z(j), c);
        EXPECT_NEAR(px(1), exact_interference_distribution(s)(1), 1e-10);
        EXPECT_NEAR(pz(1), exact_path_distribution(s)(1), 1e-10);
        EXPECT_NEAR(pz(1) + pz(-1), 1, 1e-10);
    }
}

TEST(InvertMarginal, ArbitraryInputStaysNormalizedButMayLeaveUnitInterval) {
    const auto q = invert_marginal_x(BinaryDistribution<double>::make(0.95, 0.05), 1.2);
    EXPECT_NEAR(q(1) + q(-1), 1, 1e-12);
    EXPECT_GT(q(1), 1);
}

TEST(InvertJointDiscrete, Examples) {
    EXPECT_THROW(invert_joint_discrete(operational_joint_discrete(kUpper, MarkerConfig<double>(kPi / 2, kPi / 2)),
                                       MarkerConfig<double>(kPi / 2, kPi / 2)),
                 SingularMarking);

    const MarkerConfig<double> c(kPi / 4, kPi / 2);
    const auto q = invert_joint_discrete(operational_joint_discrete(kUpper, c), c);
    EXPECT_EQ(q.kind, Kind::quasi);
    EXPECT_NEAR(marginal_z(q)(1), 1, 1e-12);
    EXPECT_NEAR(marginal_z(q)(-1), 0, 1e-12);
    EXPECT_LT(max_diff(q, quasi_joint_closed_form(kUpper, c)), 1e-12);

    // Reference values from an independent Born-rule + kernel computation;
    // this configuration does not produce a negative entry.
    const MarkerConfig<double> c2(kPi / 4, kPi / 4);
    const auto q2 = invert_joint_discrete(operational_joint_discrete(kPiOver8State, c2), c2);
    EXPECT_NEAR(q2(1, 1), 0.78033008588991064, 1e-12);
    EXPECT_NEAR(q2(1, -1), 0.07322330470336313, 1e-12);
    EXPECT_NEAR(q2(-1, 1), 0.07322330470336313, 1e-12);
    EXPECT_NEAR(q2(-1, -1), 0.07322330470336313, 1e-12);
    EXPECT_LT(max_diff(q2, quasi_joint_closed_form(kPiOver8State, c2)), 1e-12);

    const MarkerConfig<double> c3(0.1, kPi / 4);
    const auto q3 = invert_joint_discrete(operational_joint_discrete(kPiOver8State, c3), c3);
    EXPECT_LT(q3.values.minCoeff(), -0.1);
}

TEST(InvertJointDiscrete, RejectsQuasiInput) {
    const MarkerConfig<double> c(0.5, 1.0);
    EXPECT_THROW(invert_joint_discrete(quasi_joint_closed_form(kPlusState, c), c), ValidationError);
}

TEST(InvertJointDiscrete, PipelineMatchesClosedFormAndExactMarginals) {
    std::mt19937_64 rng(33);
    for (int i = 0; i < 1000; ++i) {
        const auto s = random_state(rng);
        const auto c = random_regular_config(rng);
        const auto q = invert_joint_discrete(operational_joint_discrete(s, c), c);
        EXPECT_LT(max_diff(q, quasi_joint_closed_form(s, c)), 1e-10);
        EXPECT_NEAR(q.sum(), 1, 1e-12);
        EXPECT_NEAR(marginal_x(q)(1), exact_interference_distribution(s)(1), 1e-10);
        EXPECT_NEAR(marginal_z(q)(1), exact_path_distribution(s)(1), 1e-10);
    }
}

TEST(DeltaCoefficients, Examples) {
    auto d = delta_coefficients(MarkerConfig<double>(kPi / 4, kPi / 4));
    EXPECT_NEAR(d(1), 2, 1e-14);
    EXPECT_NEAR(d(-1), 0, 1e-14);
    d = delta_coefficients(MarkerConfig<double>(0, 0.4));
    EXPECT_EQ(d(1), 1);
    EXPECT_EQ(d(-1), 1);
    d = delta_coefficients(MarkerConfig<double>(kPi / 6, kPi / 3));
    EXPECT_NEAR(d(1), 1, 1e-14);
    EXPECT_NEAR(d(-1), 1, 1e-14);
    EXPECT_THROW(delta_coefficients(MarkerConfig<double>(kPi / 2, 1.0)), SingularMarking);
    EXPECT_THROW(delta_coefficients(MarkerConfig<double>(0.4, 0.2)), SingularAnalyzer);
}

TEST(DeltaCoefficients, SumToTwoOnGrid) {
    int checked = 0;
    for (int i = 0; i < 100; ++i)
        for (int k = 0; k < 100; ++k) {
            const double t = (kPi / 2) * (i + 0.5) / 100;
            const double v = kPi * k / 100;
            try {
                const auto d = delta_coefficients(MarkerConfig<double>(t, v));
                EXPECT_NEAR(d.d_plus + d.d_minus, 2, 1e-12);
                ++checked;
            } catch (const SingularityError&) {
            }
        }
    EXPECT_GT(checked, 9900);
}

TEST(QuasiJointClosedForm, LimitExamples) {
    auto q = quasi_joint_closed_form(kPlusState, MarkerConfig<double>(0, 1.0));
    EXPECT_NEAR(q(1, 1), 0.5, 1e-15);
    EXPECT_NEAR(q(1, -1), 0.5, 1e-15);
    EXPECT_NEAR(q(-1, 1), 0, 1e-15);
    EXPECT_NEAR(q(-1, -1), 0, 1e-15);

    q = quasi_joint_closed_form(kPiOver8State, MarkerConfig<double>(0, 0));
    EXPECT_NEAR(q.values.minCoeff(), (1 - std::sqrt(2.0)) / 4, 1e-15);
    EXPECT_NEAR(q.values.minCoeff(), -0.10355339059327376, 1e-15);
}

TEST(QuasiJointClosedForm, ContinuousAtSmallTheta) {
    std::mt19937_64 rng(34);
    for (int i = 0; i < 200; ++i) {
        const auto s = random_state(rng);
        std::uniform_real_distribution<double> v(0.05, kPi / 2 - 0.05);
        const MarkerConfig<double> c(1e-6, v(rng));
        EXPECT_LT(max_diff(quasi_joint_closed_form(s, c), quasi_joint_limit(s)), 1e-4);
        EXPECT_LT(max_diff(quasi_joint_phase_closed_form(s, c), quasi_joint_phase_limit(s)), 1e-4);
    }
}

TEST(PhaseKernel, Examples) {
    const double n = 1 / (2 * kPi);
    const PhaseDensity<double> d{n, 0.05, -0.03};
    EXPECT_LT(max_diff(invert_phase_density(d, 0.0), d), 1e-15);

    const PhaseDensity<double> blurred{n, n * std::cos(kPi / 3), 0};
    EXPECT_LT(max_diff(invert_phase_density(blurred, kPi / 3), PhaseDensity<double>{n, n, 0}), 1e-15);

    const PhaseDensity<double> flat{n, 0, 0};
    EXPECT_LT(max_diff(invert_phase_density(flat, 1.1), flat), 1e-15);

    EXPECT_THROW(mu_phi_kernel(kPi / 2), SingularMarking);
}

TEST(PhaseKernel, AnalyticConvolutionMatchesQuadrature) {
    const auto k = mu_phi_kernel(kPi / 3);
    const PhaseDensity<double> cos_term{0, 1, 0};
    for (double phi : {0.0, 0.3, 1.7, 4.0}) {
        EXPECT_NEAR(convolve_by_quadrature(k, cos_term, phi), std::cos(phi) / std::cos(kPi / 3), 1e-12);
    }

    std::mt19937_64 rng(35);
    for (int i = 0; i < 100; ++i) {
        const auto s = random_state(rng);
        const auto c = random_regular_config(rng);
        const auto measured = marginal_phase(operational_joint_phase(s, c));
        const auto recovered = invert_phase_density(measured, c.theta());
        EXPECT_LT(max_diff(recovered, exact_phase_distribution(s)), 1e-12);
        const auto kernel = mu_phi_kernel(c.theta());
        for (int g = 0; g < 16; ++g) {
            const double phi = 2 * kPi * g / 16;
            EXPECT_NEAR(convolve_by_quadrature(kernel, measured, phi), recovered(phi), 1e-8);
        }
    }
}

TEST(InvertJointPhase, Examples) {
    auto q = quasi_joint_phase_closed_form(kPlusIState, MarkerConfig<double>(0, 0.5));
    for (int z : kOutcomes) {
        const auto& s = q.slice(z);
        for (double phi : {0.0, 1.0, 2.0, 4.5})
            EXPECT_NEAR(s(phi), (1 + std::sin(phi)) / (4 * kPi), 1e-15);
    }

    const MarkerConfig<double> c(kPi / 4, kPi / 2);
    q = invert_joint_phase(operational_joint_phase(kUpper, c), c);
    EXPECT_NEAR(marginal_z_of_phase(q)(1), 1, 1e-12);
    EXPECT_NEAR(marginal_z_of_phase(q)(-1), 0, 1e-12);
    EXPECT_NEAR(marginal_phase(q).amplitude(), 0, 1e-12);

    const auto lim = quasi_joint_phase_closed_form(kPiOver8State, MarkerConfig<double>(0, 0));
    EXPECT_NEAR(std::min(lim.slices[0].minimum(), lim.slices[1].minimum()), (1 - std::sqrt(2.0)) / (4 * kPi), 1e-15);

    EXPECT_THROW(invert_joint_phase(operational_joint_phase(kUpper, MarkerConfig<double>(0, 0.3)),
                                    MarkerConfig<double>(0, 0.3)),
                 SingularAnalyzer);
}

TEST(InvertJointPhase, PipelineMatchesClosedFormAndExactMarginals) {
    std::mt19937_64 rng(36);
    for (int i = 0; i < 1000; ++i) {
        const auto s = random_state(rng);
        const auto c = random_regular_config(rng);
        const auto q = invert_joint_phase(operational_joint_phase(s, c), c);
        EXPECT_EQ(q.kind, Kind::quasi);
        EXPECT_LT(max_diff(q, quasi_joint_phase_closed_form(s, c)), 1e-10);
        EXPECT_LT(max_diff(marginal_phase(q), exact_phase_distribution(s)), 1e-10);
        EXPECT_NEAR(marginal_z_of_phase(q)(1), exact_path_distribution(s)(1), 1e-10);
    }
}
