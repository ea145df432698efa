// Copyright 2026 The lhvlab Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <lhvlab/measurements.hpp>

using namespace lhvlab;

namespace {

std::vector<CMatrix> trine() {
    std::vector<CMatrix> out;
    for (int k = 0; k < 3; ++k) {
        const double t = 2.0 * M_PI * k / 3.0;
        out.push_back((2.0 / 3.0) * projector_from_bloch({std::sin(t), 0.0, std::cos(t)}).mat());
    }
    return out;
}

Errc code_of(const std::function<void()> &f) {
    try {
        f();
    } catch (const Error &e) {
        return e.code();
    }
    ADD_FAILURE() << "no exception";
    return Errc::invalid_argument;
}

} // namespace

TEST(FineGrain, DegenerateHalfIdentitySplit) {
    const std::vector<CMatrix> raw{CMatrix::Identity(2, 2) / 2, CMatrix::Identity(2, 2) / 2};
    const Measurement m = fine_grain(raw);
    ASSERT_EQ(m.size(), 4u);
    EXPECT_EQ(m.outcomes(), 2);
    int per[2] = {0, 0};
    for (const Effect &e : m.effects()) {
        EXPECT_NEAR(e.eta, 0.5, 1e-14);
        ++per[e.outcome];
    }
    EXPECT_EQ(per[0], 2);
    EXPECT_EQ(per[1], 2);
    EXPECT_FALSE(m.projective());
}

TEST(FineGrain, ProjectiveUnchanged) {
    const std::vector<CMatrix> raw{projector_from_bloch({0, 0, 1}).mat(),
                                   projector_from_bloch({0, 0, -1}).mat()};
    const Measurement m = fine_grain(raw);
    ASSERT_EQ(m.size(), 2u);
    EXPECT_TRUE(m.projective());
    for (const Effect &e : m.effects()) {
        EXPECT_NEAR(e.eta, 1.0, 1e-14);
        EXPECT_LT(max_abs_diff(e.projector().mat(), raw[e.outcome]), 1e-14);
    }
}

TEST(FineGrain, Trine) {
    const Measurement m = fine_grain(trine());
    ASSERT_EQ(m.size(), 3u);
    for (const Effect &e : m.effects()) {
        EXPECT_NEAR(e.eta, 2.0 / 3.0, 1e-14);
    }
    EXPECT_NEAR(m.weight_sum(), 2.0, 1e-10);
}

TEST(FineGrain, RejectsBadInput) {
    EXPECT_EQ(code_of([] { fine_grain(std::vector<CMatrix>{CMatrix::Identity(2, 2) / 2}); }),
              Errc::invalid_measurement);
    CMatrix neg(2, 2), pos(2, 2);
    neg << -0.5, 0, 0, 0.5;
    pos << 1.5, 0, 0, 0.5;
    EXPECT_EQ(code_of([&] { fine_grain(std::vector<CMatrix>{neg, pos}); }),
              Errc::invalid_measurement);
}

// Coarse-graining the fine effects reproduces the raw POVM's Born statistics.
TEST(FineGrain, CoarseStatisticsPreserved) {
    Rng rng = make_stream(31);
    const Measurement m = fine_grain(trine());
    for (int i = 0; i < 50; ++i) {
        const CVector psi = haar_sample_ket(2, rng).vec();
        std::vector<double> fine(m.size()), coarse(m.outcomes());
        for (std::size_t k = 0; k < m.size(); ++k) {
            fine[k] = m[k].eta * m[k].overlap(psi);
        }
        m.coarse_grain(fine, coarse);
        const auto raw = trine();
        for (int a = 0; a < 3; ++a) {
            const double born = (psi.adjoint() * raw[a] * psi)(0, 0).real();
            EXPECT_NEAR(coarse[a], born, 1e-12);
        }
    }
}

TEST(RandomProjective, CompleteAndOrthogonal) {
    Rng rng = make_stream(32);
    for (int d = 2; d <= 5; ++d) {
        const Measurement m = random_projective(d, rng);
        EXPECT_TRUE(m.projective());
        EXPECT_LT(m.completeness_residual(), 1e-12);
        for (int a = 0; a < d; ++a) {
            for (int b = 0; b < d; ++b) {
                const CMatrix pa = m.coarse_operator(a), pb = m.coarse_operator(b);
                EXPECT_LT(max_abs_diff(pa * pb, a == b ? pa : CMatrix::Zero(d, d)), 1e-12);
            }
        }
    }
}

TEST(RandomProjective, HaarColumnMoment) {
    Rng rng = make_stream(33);
    const int d = 3, n = 100000;
    double s = 0.0, s2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = std::norm(random_projective(d, rng)[0].ket(0));
        s += x;
        s2 += x * x;
    }
    const double mean = s / n;
    EXPECT_LT(std::abs(mean - 1.0 / d), 4 * std::sqrt((s2 / n - mean * mean) / n));
}

TEST(RandomPovm, CompletenessAndWeightSum) {
    Rng rng = make_stream(34);
    for (int d = 2; d <= 4; ++d) {
        for (int k = d; k <= d + 3; ++k) {
            const Measurement m = random_povm(d, k, rng);
            EXPECT_EQ(m.outcomes(), k);
            EXPECT_LT(m.completeness_residual(), 1e-10);
            EXPECT_NEAR(m.weight_sum(), d, 1e-10);
        }
    }
}

TEST(RandomPovm, TooFewEffectsRejected) {
    Rng rng = make_stream(35);
    EXPECT_EQ(code_of([&] { random_povm(3, 2, rng); }), Errc::invalid_argument);
    EXPECT_EQ(code_of([&] { random_povm(2, 1, rng); }), Errc::invalid_argument);
}

// k = d draws are whitened into an orthonormal basis.
TEST(RandomPovm, SquareCaseIsProjective) {
    Rng rng = make_stream(36);
    for (int d = 2; d <= 4; ++d) {
        EXPECT_TRUE(random_povm(d, d, rng).projective());
    }
}

TEST(Transpose, RealMeasurementUnchanged) {
    const Measurement m = fine_grain(trine());
    const Measurement t = transpose_measurement(m);
    for (int a = 0; a < 3; ++a) {
        EXPECT_LT(max_abs_diff(m.coarse_operator(a), t.coarse_operator(a)), 1e-15);
    }
}

TEST(Transpose, DoubleTransposeIsIdentity) {
    Rng rng = make_stream(37);
    const Measurement m = random_povm(3, 5, rng);
    const Measurement tt = transpose_measurement(transpose_measurement(m));
    for (int a = 0; a < 5; ++a) {
        EXPECT_LT(max_abs_diff(m.coarse_operator(a), tt.coarse_operator(a)), 1e-15);
        EXPECT_LT(max_abs_diff(transpose_measurement(m).coarse_operator(a),
                               m.coarse_operator(a).transpose()),
                  1e-15);
    }
}

// sigma_y^T = -sigma_y, so its eigenprojectors swap.
TEST(Transpose, SigmaYEigenbasis) {
    const Measurement y = Measurement::qubit({0, 1, 0});
    const Measurement t = transpose_measurement(y);
    EXPECT_LT(max_abs_diff(t.coarse_operator(0), projector_from_bloch({0, -1, 0}).mat()), 1e-14);
    EXPECT_LT(max_abs_diff(t.coarse_operator(1), projector_from_bloch({0, 1, 0}).mat()), 1e-14);
}

TEST(Pullback, IdentityChannel) {
    Rng rng = make_stream(38);
    const Measurement m = random_povm(3, 4, rng);
    const Measurement p = dual_channel_pullback(m, std::vector<CMatrix>{CMatrix::Identity(3, 3)});
    for (int a = 0; a < 4; ++a) {
        EXPECT_LT(max_abs_diff(m.coarse_operator(a), p.coarse_operator(a)), 1e-12);
    }
}

TEST(Pullback, FullyDepolarizing) {
    Rng rng = make_stream(39);
    const int d = 3;
    std::vector<CMatrix> kraus;
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            CMatrix k = CMatrix::Zero(d, d);
            k(i, j) = 1.0 / std::sqrt(static_cast<double>(d));
            kraus.push_back(k);
        }
    }
    const Measurement m = random_povm(d, 4, rng);
    const Measurement p = dual_channel_pullback(m, kraus);
    for (int a = 0; a < 4; ++a) {
        const double tr = m.coarse_operator(a).trace().real();
        EXPECT_LT(max_abs_diff(p.coarse_operator(a), (tr / d) * CMatrix::Identity(d, d)), 1e-12);
    }
}

TEST(Pullback, RandomChannelsStayComplete) {
    Rng rng = make_stream(40);
    for (int trial = 0; trial < 20; ++trial) {
        // Stinespring: rows of a random isometry C^2 -> C^2 (x) C^3 give 3 Kraus ops.
        const CMatrix u = haar_unitary(6, rng);
        std::vector<CMatrix> kraus;
        for (int e = 0; e < 3; ++e) {
            CMatrix k(2, 2);
            for (int r = 0; r < 2; ++r) {
                for (int c = 0; c < 2; ++c) {
                    k(r, c) = u(r * 3 + e, c);
                }
            }
            kraus.push_back(k);
        }
        const Measurement p = dual_channel_pullback(random_povm(2, 3, rng), kraus);
        EXPECT_LT(p.completeness_residual(), 1e-10);
    }
}

TEST(Pullback, NonTracePreservingRejected) {
    const Measurement m = Measurement::computational(2);
    EXPECT_EQ(code_of([&] {
                  dual_channel_pullback(m, std::vector<CMatrix>{0.5 * CMatrix::Identity(2, 2)});
              }),
              Errc::invalid_channel);
}

TEST(Measurement, DichotomicSplitsComplement) {
    Rng rng = make_stream(41);
    const CVector v = haar_sample_ket(4, rng).vec();
    const Measurement m = Measurement::dichotomic(v);
    EXPECT_TRUE(m.projective());
    EXPECT_EQ(m.outcomes(), 2);
    EXPECT_LT(max_abs_diff(m.coarse_operator(0), v * v.adjoint()), 1e-12);
}
