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

/**
 * @file
 * Projective and generalized measurements, always stored fine-grained:
 * every effect is weight x rank-one projector, and each effect remembers
 * which coarse outcome it belongs to.
 */

#pragma once

#include <cmath>
#include <random>
#include <span>
#include <vector>

#include "qcore.hpp"

namespace lhvlab {

inline constexpr double kCompletenessTol = 1e-10;

/// eta * |v><v| contributing to coarse outcome `outcome`.
struct Effect {
    double eta = 1.0;
    CVector ket;
    int outcome = 0;

    [[nodiscard]] Operator projector() const { return Operator(ket * ket.adjoint()); }
    /// <lambda|P|lambda>
    [[nodiscard]] double overlap(const CVector &lambda) const {
        return std::norm(ket.dot(lambda));
    }
};

class Measurement {
  public:
    /// Validates completeness, weights in (0,1] and unit kets.
    Measurement(std::vector<Effect> effects, int outcomes)
        : effects_(std::move(effects)), outcomes_(outcomes) {
        require(!effects_.empty(), Errc::invalid_measurement, "measurement without effects");
        d_ = static_cast<int>(effects_.front().ket.size());
        require(d_ >= 1, Errc::invalid_dimension, "measurement dimension");
        require(outcomes_ >= 1, Errc::invalid_measurement, "outcome count");
        std::vector<bool> used(outcomes_, false);
        CMatrix sum = CMatrix::Zero(d_, d_);
        for (const Effect &e : effects_) {
            require(e.ket.size() == d_, Errc::invalid_measurement, "mixed effect dimensions");
            require(e.eta > 0.0 && e.eta <= 1.0 + kCompletenessTol, Errc::invalid_measurement,
                    "effect weight outside (0,1]");
            require(std::abs(e.ket.squaredNorm() - 1.0) < 1e-10, Errc::invalid_measurement,
                    "effect ket not normalized");
            require(e.outcome >= 0 && e.outcome < outcomes_, Errc::invalid_measurement,
                    "effect outcome label out of range");
            used[e.outcome] = true;
            sum += e.eta * e.ket * e.ket.adjoint();
        }
        require(max_abs_diff(sum, CMatrix::Identity(d_, d_)) < kCompletenessTol,
                Errc::invalid_measurement, "effects do not sum to the identity");
        projective_ = detect_projective();
    }

    [[nodiscard]] int dim() const { return d_; }
    [[nodiscard]] int outcomes() const { return outcomes_; }
    [[nodiscard]] bool projective() const { return projective_; }
    [[nodiscard]] const std::vector<Effect> &effects() const { return effects_; }
    [[nodiscard]] std::size_t size() const { return effects_.size(); }
    [[nodiscard]] const Effect &operator[](std::size_t i) const { return effects_[i]; }

    /// Coarse measurement operator A_a = sum over effects labelled a.
    [[nodiscard]] CMatrix coarse_operator(int a) const {
        CMatrix m = CMatrix::Zero(d_, d_);
        for (const Effect &e : effects_) {
            if (e.outcome == a) {
                m += e.eta * e.ket * e.ket.adjoint();
            }
        }
        return m;
    }

    [[nodiscard]] double weight_sum() const {
        double s = 0.0;
        for (const Effect &e : effects_) {
            s += e.eta;
        }
        return s;
    }

    [[nodiscard]] double completeness_residual() const {
        CMatrix sum = CMatrix::Zero(d_, d_);
        for (const Effect &e : effects_) {
            sum += e.eta * e.ket * e.ket.adjoint();
        }
        return max_abs_diff(sum, CMatrix::Identity(d_, d_));
    }

    /// Sums a per-effect vector into per-outcome bins.
    void coarse_grain(std::span<const double> fine, std::span<double> coarse) const {
        std::fill(coarse.begin(), coarse.begin() + outcomes_, 0.0);
        for (std::size_t i = 0; i < effects_.size(); ++i) {
            coarse[effects_[i].outcome] += fine[i];
        }
    }

    // Constructors for common cases.

    /// Rank-one PM onto the columns of `basis` (must be unitary).
    static Measurement from_basis(const CMatrix &basis) {
        std::vector<Effect> effects;
        for (Eigen::Index j = 0; j < basis.cols(); ++j) {
            effects.push_back({1.0, basis.col(j), static_cast<int>(j)});
        }
        const int k = static_cast<int>(effects.size());
        return {std::move(effects), k};
    }

    static Measurement computational(int d) { return from_basis(CMatrix::Identity(d, d)); }

    /// Qubit PM along `v`: outcome 0 <-> Bloch +v, outcome 1 <-> -v.
    static Measurement qubit(const BlochVector &v) {
        const BlochVector u = v.unit();
        std::vector<Effect> effects{{1.0, ket_from_bloch(u).vec(), 0},
                                    {1.0, ket_from_bloch(-u).vec(), 1}};
        return {std::move(effects), 2};
    }

    /// Dichotomic PM {P, 1 - P} for rank-one P = |v><v|, fine-grained:
    /// outcome 0 is P, outcome 1 collects a basis of the complement.
    static Measurement dichotomic(const CVector &v) {
        const int d = static_cast<int>(v.size());
        CMatrix basis = CMatrix::Identity(d, d);
        basis.col(0) = v;
        Eigen::HouseholderQR<CMatrix> qr(basis);
        CMatrix q = qr.householderQ();
        std::vector<Effect> effects{{1.0, v, 0}};
        for (int j = 1; j < d; ++j) {
            CVector w = q.col(j);
            w -= v * v.dot(w);
            effects.push_back({1.0, w.normalized(), 1});
        }
        return {std::move(effects), 2};
    }

  private:
    [[nodiscard]] bool detect_projective() const {
        for (const Effect &e : effects_) {
            if (std::abs(e.eta - 1.0) > 1e-10) {
                return false;
            }
        }
        for (std::size_t i = 0; i < effects_.size(); ++i) {
            for (std::size_t j = i + 1; j < effects_.size(); ++j) {
                if (std::abs(effects_[i].ket.dot(effects_[j].ket)) > 1e-10) {
                    return false;
                }
            }
        }
        return true;
    }

    std::vector<Effect> effects_;
    int outcomes_ = 0;
    int d_ = 0;
    bool projective_ = false;
};

/// Eigen-decomposes each PSD element into weight x rank-one effects; the
/// effect's outcome label is the index of the element it came from.
inline Measurement fine_grain(std::span<const CMatrix> raw, double drop_tol = 1e-12) {
    require(!raw.empty(), Errc::invalid_measurement, "empty POVM");
    const Eigen::Index d = raw[0].rows();
    CMatrix sum = CMatrix::Zero(d, d);
    std::vector<Effect> effects;
    for (std::size_t a = 0; a < raw.size(); ++a) {
        const CMatrix &m = raw[a];
        require(m.rows() == d && m.cols() == d, Errc::invalid_measurement,
                "POVM elements of different sizes");
        require((m - m.adjoint()).cwiseAbs().maxCoeff() < 1e-10, Errc::invalid_measurement,
                "POVM element not Hermitian");
        sum += m;
        Eigen::SelfAdjointEigenSolver<CMatrix> es(m);
        for (Eigen::Index i = 0; i < d; ++i) {
            const double w = es.eigenvalues()(i);
            require(w >= -1e-10, Errc::invalid_measurement, "POVM element not PSD");
            if (w > drop_tol) {
                effects.push_back({std::min(w, 1.0), es.eigenvectors().col(i),
                                   static_cast<int>(a)});
            }
        }
    }
    require(max_abs_diff(sum, CMatrix::Identity(d, d)) < kCompletenessTol,
            Errc::invalid_measurement, "POVM elements do not sum to the identity");
    return {std::move(effects), static_cast<int>(raw.size())};
}

inline Measurement fine_grain(const std::vector<CMatrix> &raw, double drop_tol = 1e-12) {
    return fine_grain(std::span<const CMatrix>(raw), drop_tol);
}

template <class URBG> Measurement random_projective(int d, URBG &rng) {
    require(d >= 2, Errc::invalid_dimension, "random PM needs d >= 2");
    return Measurement::from_basis(haar_unitary(d, rng));
}

/// k rank-one effects: Haar kets with Dirichlet weights, whitened by the
/// inverse square root of their sum so completeness is exact.
template <class URBG> Measurement random_povm(int d, int k, URBG &rng) {
    require(d >= 2, Errc::invalid_dimension, "random POVM needs d >= 2");
    require(k >= 2, Errc::invalid_argument, "random POVM needs k >= 2");
    require(k >= d, Errc::invalid_argument, "k < d rank-one effects cannot sum to the identity");
    std::exponential_distribution<double> expo(1.0);
    for (;;) {
        std::vector<CVector> kets;
        std::vector<double> w;
        CMatrix s = CMatrix::Zero(d, d);
        for (int i = 0; i < k; ++i) {
            kets.push_back(haar_sample_ket(d, rng).vec());
            w.push_back(expo(rng));
            s += w.back() * kets.back() * kets.back().adjoint();
        }
        if (hermitian_eigenvalues(s).minCoeff() < 1e-8) {
            continue;
        }
        const CMatrix inv_sqrt = hermitian_function(s, [](double x) { return 1.0 / std::sqrt(x); });
        std::vector<Effect> effects;
        for (int i = 0; i < k; ++i) {
            CVector u = inv_sqrt * kets[i];
            const double n2 = u.squaredNorm();
            effects.push_back({std::min(1.0, w[i] * n2), u / std::sqrt(n2), i});
        }
        return {std::move(effects), k};
    }
}

/// Entrywise transpose of every effect: (|v><v|)^T = |v*><v*|.
inline Measurement transpose_measurement(const Measurement &m) {
    std::vector<Effect> effects = m.effects();
    for (Effect &e : effects) {
        e.ket = e.ket.conjugate();
    }
    return {std::move(effects), m.outcomes()};
}

/// Effects pulled back through the dual of the channel with Kraus operators
/// `kraus` (each d_out x d_in): A'_a = sum_K K^dag A_a K, re-fine-grained.
inline Measurement dual_channel_pullback(const Measurement &m, std::span<const CMatrix> kraus) {
    require(!kraus.empty(), Errc::invalid_channel, "no Kraus operators");
    const Eigen::Index d_in = kraus[0].cols();
    CMatrix tp = CMatrix::Zero(d_in, d_in);
    for (const CMatrix &k : kraus) {
        require(k.cols() == d_in && k.rows() == m.dim(), Errc::invalid_channel,
                "Kraus operator shape mismatch");
        tp += k.adjoint() * k;
    }
    require(max_abs_diff(tp, CMatrix::Identity(d_in, d_in)) < kCompletenessTol,
            Errc::invalid_channel, "Kraus operators are not trace preserving");
    std::vector<CMatrix> pulled;
    for (int a = 0; a < m.outcomes(); ++a) {
        const CMatrix ma = m.coarse_operator(a);
        CMatrix acc = CMatrix::Zero(d_in, d_in);
        for (const CMatrix &k : kraus) {
            acc += k.adjoint() * ma * k;
        }
        pulled.push_back(0.5 * (acc + acc.adjoint()));
    }
    return fine_grain(pulled);
}

inline Measurement dual_channel_pullback(const Measurement &m, const std::vector<CMatrix> &kraus) {
    return dual_channel_pullback(m, std::span<const CMatrix>(kraus));
}

} // namespace lhvlab
