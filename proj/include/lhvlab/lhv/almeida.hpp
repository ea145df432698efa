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
 * Models for isotropic states and for arbitrary pure states mixed with
 * white noise. The latter preprocess the Haar ket at the source with the
 * measurement from Nielsen's conversion protocol, then let each party run
 * an isotropic-state response on its own preprocessed ket.
 *
 * The filtered ket X_k^* lambda goes to the party whose response is linear
 * in its effect (Alice here), since only such a response absorbs the
 * filter: <lambda|(X^dag A X)^T|lambda> = p_k <lambda_A|A^T|lambda_A>.
 * The deterministic (or Barrett-type) response runs on U_k lambda.
 */

#pragma once

#include "../states.hpp"
#include "model.hpp"
#include "werner.hpp"

namespace lhvlab {

/// Operators of the conversion |phi+> -> |psi> written in psi's Schmidt bases.
struct NielsenOperators {
    int d = 0;
    Eigen::VectorXd schmidt; ///< s_0 >= s_1 >= ... >= 0
    CMatrix basis_a;         ///< columns: Alice's Schmidt vectors
    CMatrix basis_b;         ///< columns: Bob's Schmidt vectors
    CMatrix s;               ///< diag(s_k)
    std::vector<CMatrix> u;  ///< U_k = sum_j |j><j+k mod d|
    std::vector<CMatrix> x;  ///< X_k = S U_k
    std::vector<CMatrix> m;  ///< M_k = X_k^dag X_k
    std::vector<CMatrix> n;  ///< N_k = X_k^T X_k^*

    /// |psi> rebuilt from its Schmidt data.
    [[nodiscard]] CVector psi() const {
        CVector out = CVector::Zero(d * d);
        for (int k = 0; k < d; ++k) {
            out += schmidt(k) * tensor_kets(basis_a.col(k), basis_b.col(k));
        }
        return out;
    }
};

/// Schmidt decomposition via the SVD of the coefficient matrix
/// C_ij = <ij|psi> = sum_k s_k A_ik B_jk, so A = U and B = conj(V).
inline NielsenOperators nielsen_operators(const Ket &psi, int d) {
    require(d >= 2 && psi.dim() == d * d, Errc::invalid_dimension,
            "psi must live on C^d (x) C^d");
    CMatrix c(d, d);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            c(i, j) = psi[i * d + j];
        }
    }
    Eigen::JacobiSVD<CMatrix> svd(c, Eigen::ComputeFullU | Eigen::ComputeFullV);
    NielsenOperators out;
    out.d = d;
    out.schmidt = svd.singularValues();
    require(out.schmidt(0) > 0.0, Errc::invalid_argument, "zero Schmidt vector");
    out.basis_a = svd.matrixU();
    out.basis_b = svd.matrixV().conjugate();
    out.s = CMatrix::Zero(d, d);
    for (int k = 0; k < d; ++k) {
        out.s(k, k) = out.schmidt(k);
    }
    for (int k = 0; k < d; ++k) {
        CMatrix uk = CMatrix::Zero(d, d);
        for (int j = 0; j < d; ++j) {
            uk(j, (j + k) % d) = 1.0;
        }
        const CMatrix xk = out.s * uk;
        out.u.push_back(uk);
        out.x.push_back(xk);
        out.m.push_back(xk.adjoint() * xk);
        out.n.push_back(xk.transpose() * xk.conjugate());
    }
    return out;
}

namespace detail {

class AlmeidaIsoPmModel final : public HaarKetModel {
  public:
    using HaarKetModel::HaarKetModel;
    [[nodiscard]] std::string name() const override { return "almeida-iso-pm"; }
    [[nodiscard]] std::unique_ptr<Responder> responder(int party,
                                                       const Measurement &m) const override {
        check(party, m);
        if (party == 0) {
            require(m.projective(), Errc::invalid_use,
                    "the isotropic model needs projective measurements");
            return std::make_unique<ExtremeOverlapResponder>(m, true, KetSource::shared);
        }
        require(m.projective(), Errc::invalid_use,
                "the isotropic model needs projective measurements");
        return std::make_unique<OverlapResponder>(transpose_measurement(m), KetSource::shared);
    }
};

/// Protocol P (weight q): Nielsen-preprocessed isotropic model.
/// Protocol Q (weight 1 - q): Alice measures (1 - sigma)/(d - 1), Bob 1/d.
class AlmeidaNoisyModel final : public LocalModel {
  public:
    AlmeidaNoisyModel(const Ket &psi, int d, bool povm)
        : ops_(nielsen_operators(psi, d)), d_(d), povm_(povm) {
        p_ = povm ? werner_p_povm(d) : isotropic_p_pm(d);
        q_ = noisy_mixing_weight(d, p_);
        const CMatrix rho = psi.vec() * psi.vec().adjoint();
        sigma_ = partial_trace(Operator(rho, {d, d}), {0}).mat();
    }

    [[nodiscard]] std::string name() const override {
        return povm_ ? "almeida-noisy-povm" : "almeida-noisy-pm";
    }
    [[nodiscard]] int parties() const override { return 2; }
    [[nodiscard]] int local_dim(int) const override { return d_; }

    /// Mixing parameter of the noisy state this model reproduces.
    [[nodiscard]] double simulated_p() const { return q_ * p_; }
    [[nodiscard]] double protocol_weight() const { return q_; }
    [[nodiscard]] const NielsenOperators &operators() const { return ops_; }

    void sample(Rng &rng, HiddenState &l) const override {
        std::uniform_real_distribution<double> u01(0.0, 1.0);
        if (u01(rng) >= q_) {
            l.branch = 1;
            return;
        }
        l.branch = 0;
        l.ket.resize(d_);
        haar_fill(l.ket, rng);
        // p_k = |S U_k lambda|^2 = sum_j s_j^2 |lambda_{j+k}|^2
        double pk[64];
        for (int k = 0; k < d_; ++k) {
            double acc = 0.0;
            for (int j = 0; j < d_; ++j) {
                acc += ops_.schmidt(j) * ops_.schmidt(j) * std::norm(l.ket((j + k) % d_));
            }
            pk[k] = acc;
        }
        const int k = sample_index(std::span<const double>(pk, d_), u01(rng));
        l.index = k;
        CVector shifted(d_), scaled(d_);
        for (int j = 0; j < d_; ++j) {
            shifted(j) = l.ket((j + k) % d_);
            scaled(j) = ops_.schmidt(j) * std::conj(shifted(j)) / std::sqrt(pk[k]);
        }
        // Alice answers linearly in her effect, so her filtered ket is
        // stored conjugated: <w|P^T|w> = <w*|P|w*>.
        l.ket_a.noalias() = ops_.basis_a * scaled;
        l.ket_b.noalias() = ops_.basis_b * shifted;
    }

    [[nodiscard]] std::unique_ptr<Responder> responder(int party,
                                                       const Measurement &m) const override {
        require(party == 0 || party == 1, Errc::invalid_argument, "party index out of range");
        require(m.dim() == d_, Errc::invalid_dimension, "measurement dimension mismatch");
        std::vector<std::unique_ptr<Responder>> branches;
        require(povm_ || m.projective(), Errc::invalid_use,
                "the projective noisy-state model needs projective measurements");
        if (party == 0) {
            branches.push_back(std::make_unique<OverlapResponder>(m, KetSource::alice));
            const CMatrix noise =
                (CMatrix::Identity(d_, d_) - sigma_) / static_cast<double>(d_ - 1);
            branches.push_back(std::make_unique<ConstantResponder>(born_marginal(noise, m)));
        } else {
            if (povm_) {
                branches.push_back(std::make_unique<BarrettAliceResponder>(m, KetSource::bob));
            } else {
                branches.push_back(
                    std::make_unique<ExtremeOverlapResponder>(m, true, KetSource::bob));
            }
            branches.push_back(std::make_unique<ConstantResponder>(
                born_marginal(CMatrix::Identity(d_, d_) / d_, m)));
        }
        return std::make_unique<BranchResponder>(std::move(branches));
    }

  private:
    NielsenOperators ops_;
    int d_;
    bool povm_;
    double p_ = 0.0;
    double q_ = 0.0;
    CMatrix sigma_;
};

} // namespace detail

/// Simulates isotropic_state(d, isotropic_p_pm(d)) for projective measurements.
inline ModelPtr almeida_iso_pm_model(int d) {
    return std::make_shared<detail::AlmeidaIsoPmModel>(d);
}

/// Simulates noisy_state(psi, thresholds(noisy, d).p_pm) for projective measurements.
inline std::shared_ptr<const detail::AlmeidaNoisyModel> almeida_noisy_pm_model(const Ket &psi,
                                                                               int d) {
    require(d <= 64, Errc::invalid_dimension, "d too large");
    return std::make_shared<detail::AlmeidaNoisyModel>(psi, d, false);
}

/// Simulates noisy_state(psi, thresholds(noisy, d).p_povm) for arbitrary POVMs.
inline std::shared_ptr<const detail::AlmeidaNoisyModel> almeida_noisy_povm_model(const Ket &psi,
                                                                                 int d) {
    require(d <= 64, Errc::invalid_dimension, "d too large");
    return std::make_shared<detail::AlmeidaNoisyModel>(psi, d, true);
}

} // namespace lhvlab
