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
 * The general local model: a sampler for the shared hidden state plus one
 * response function per party. A response depends only on the party's own
 * measurement and the hidden state, which is what makes the model local.
 *
 * Responders are built once per (party, measurement) so that anything that
 * does not depend on the hidden state (transposes, Bloch vectors, embedding
 * vectors) is precomputed outside the sampling loop.
 */

#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "../measurements.hpp"
#include "../qcore.hpp"

namespace lhvlab {

/// Union of every hidden-variable shape used by the models. Samplers fill
/// only the fields their responders read and reuse the storage between rounds.
struct HiddenState {
    CVector ket;                ///< |lambda> in C^d
    BlochVector bloch;          ///< point on the sphere (qubit models)
    std::vector<double> stream; ///< iid standard normals (Toner)
    int branch = 0;             ///< sub-protocol / mixture component
    int index = 0;              ///< side information, e.g. Nielsen outcome k
    CVector ket_a;              ///< party-specific preprocessed kets
    CVector ket_b;
};

/// Response function p(.|measurement, lambda) of one party.
class Responder {
  public:
    virtual ~Responder() = default;
    /// Length of the response vector: coarse outcomes, plus a trailing
    /// "no result" slot for abstain-capable models.
    [[nodiscard]] virtual int slots() const = 0;
    virtual void respond(const HiddenState &lambda, std::span<double> out) const = 0;
};

class LocalModel {
  public:
    virtual ~LocalModel() = default;
    [[nodiscard]] virtual std::string name() const = 0;
    [[nodiscard]] virtual int parties() const = 0;
    [[nodiscard]] virtual int local_dim(int party) const = 0;
    virtual void sample(Rng &rng, HiddenState &lambda) const = 0;
    [[nodiscard]] virtual std::unique_ptr<Responder> responder(int party,
                                                               const Measurement &m) const = 0;
    /// True when some party may decline to answer (last response slot).
    [[nodiscard]] virtual bool abstain_capable() const { return false; }
};

using ModelPtr = std::shared_ptr<const LocalModel>;

// ---------------------------------------------------------------------------
// Shared building blocks
// ---------------------------------------------------------------------------

/// Which ket of the hidden state a responder reads.
enum class KetSource { shared, alice, bob };

inline const CVector &select_ket(const HiddenState &l, KetSource s) {
    switch (s) {
    case KetSource::alice: return l.ket_a;
    case KetSource::bob: return l.ket_b;
    default: return l.ket;
    }
}

namespace detail {

/// Effect kets as columns plus their weights and groups, laid out for
/// tight overlap loops.
struct EffectTable {
    CMatrix kets; // d x k
    std::vector<double> eta;
    std::vector<int> group;
    int outcomes = 0;

    EffectTable() = default;
    explicit EffectTable(const Measurement &m)
        : kets(m.dim(), static_cast<Eigen::Index>(m.size())), outcomes(m.outcomes()) {
        for (std::size_t i = 0; i < m.size(); ++i) {
            kets.col(static_cast<Eigen::Index>(i)) = m[i].ket;
            eta.push_back(m[i].eta);
            group.push_back(m[i].outcome);
        }
    }

    [[nodiscard]] std::size_t size() const { return eta.size(); }

    /// |<v_i|lambda>|^2 for every effect i.
    void overlaps(const CVector &lambda, std::span<double> out) const {
        const Eigen::Index d = kets.rows();
        const cplx *l = lambda.data();
        for (std::size_t i = 0; i < eta.size(); ++i) {
            const cplx *v = kets.data() + static_cast<Eigen::Index>(i) * d;
            double re = 0.0, im = 0.0;
            for (Eigen::Index j = 0; j < d; ++j) {
                // conj(v_j) * l_j
                re += v[j].real() * l[j].real() + v[j].imag() * l[j].imag();
                im += v[j].real() * l[j].imag() - v[j].imag() * l[j].real();
            }
            out[i] = re * re + im * im;
        }
    }
};

/// Per-thread scratch for fine-grained intermediate values.
inline std::span<double> scratch(std::size_t n) {
    thread_local std::vector<double> buf;
    if (buf.size() < n) {
        buf.resize(n);
    }
    return {buf.data(), n};
}

inline void require_qubit_pm(const Measurement &m, const std::string &who) {
    require(m.dim() == 2 && m.projective() && m.size() == 2, Errc::invalid_use,
            who + " needs a two-outcome qubit projective measurement");
}

} // namespace detail

/// Deterministic choice of the outcome whose effect has the smallest
/// (or largest) overlap with the ket; ties go to the lowest effect index.
class ExtremeOverlapResponder final : public Responder {
  public:
    ExtremeOverlapResponder(const Measurement &m, bool pick_max, KetSource src)
        : table_(m), pick_max_(pick_max), src_(src) {}

    [[nodiscard]] int slots() const override { return table_.outcomes; }

    void respond(const HiddenState &l, std::span<double> out) const override {
        auto ov = detail::scratch(table_.size());
        table_.overlaps(select_ket(l, src_), ov);
        std::size_t best = 0;
        for (std::size_t i = 1; i < ov.size(); ++i) {
            if (pick_max_ ? ov[i] > ov[best] : ov[i] < ov[best]) {
                best = i;
            }
        }
        std::fill(out.begin(), out.begin() + slots(), 0.0);
        out[table_.group[best]] = 1.0;
    }

  private:
    detail::EffectTable table_;
    bool pick_max_;
    KetSource src_;
};

/// Born-like response <lambda|B_b|lambda> = sum_i xi_i <lambda|Q_i|lambda>.
/// Pass the transposed measurement for the isotropic-family responses.
class OverlapResponder final : public Responder {
  public:
    OverlapResponder(const Measurement &m, KetSource src) : table_(m), src_(src) {}

    [[nodiscard]] int slots() const override { return table_.outcomes; }

    void respond(const HiddenState &l, std::span<double> out) const override {
        auto ov = detail::scratch(table_.size());
        table_.overlaps(select_ket(l, src_), ov);
        std::fill(out.begin(), out.begin() + slots(), 0.0);
        double total = 0.0;
        for (std::size_t i = 0; i < ov.size(); ++i) {
            out[table_.group[i]] += table_.eta[i] * ov[i];
            total += table_.eta[i] * ov[i];
        }
        // <lambda|sum E|lambda> = 1 up to the completeness tolerance
        for (int a = 0; a < slots(); ++a) {
            out[a] /= total;
        }
    }

  private:
    detail::EffectTable table_;
    KetSource src_;
};

/// Fixed distribution independent of lambda.
class ConstantResponder final : public Responder {
  public:
    explicit ConstantResponder(std::vector<double> p) : p_(std::move(p)) {}
    [[nodiscard]] int slots() const override { return static_cast<int>(p_.size()); }
    void respond(const HiddenState &, std::span<double> out) const override {
        std::copy(p_.begin(), p_.end(), out.begin());
    }

  private:
    std::vector<double> p_;
};

/// Dispatches on HiddenState::branch.
class BranchResponder final : public Responder {
  public:
    explicit BranchResponder(std::vector<std::unique_ptr<Responder>> per_branch)
        : branches_(std::move(per_branch)) {}
    [[nodiscard]] int slots() const override { return branches_.front()->slots(); }
    void respond(const HiddenState &l, std::span<double> out) const override {
        branches_[l.branch]->respond(l, out);
    }

  private:
    std::vector<std::unique_ptr<Responder>> branches_;
};

/// Tr(rho A_a) for every coarse outcome of `m`.
inline std::vector<double> born_marginal(const CMatrix &rho, const Measurement &m) {
    std::vector<double> p(m.outcomes(), 0.0);
    for (const Effect &e : m.effects()) {
        p[e.outcome] += e.eta * (e.ket.adjoint() * rho * e.ket)(0, 0).real();
    }
    return p;
}

/// Draws an index from the probability vector `p` with one uniform variate.
/// Rounding slack beyond the last entry falls on the last nonzero entry.
inline int sample_index(std::span<const double> p, double u) {
    double acc = 0.0;
    int last = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] > 0.0) {
            acc += p[i];
            last = static_cast<int>(i);
            if (u < acc) {
                return last;
            }
        }
    }
    return last;
}

} // namespace lhvlab
