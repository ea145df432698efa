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
 * Lifting a model that handles two-outcome projective measurements into a
 * model for arbitrary POVMs on a noisier state. Each party picks one of its
 * rank-one effects k with probability eta_k/d and asks the base model about
 * the dichotomy {P_k, 1 - P_k}; on success it answers with k's outcome,
 * otherwise it measures its own local state sigma.
 */

#pragma once

#include <cstdint>

#include "model.hpp"

namespace lhvlab {

class LiftedResponder final : public Responder {
  public:
    LiftedResponder(const LocalModel &base, int party, const Measurement &m,
                    const CMatrix &sigma)
        : fallback_(born_marginal(sigma, m)), outcomes_(m.outcomes()) {
        const double d = m.dim();
        for (const Effect &e : m.effects()) {
            auto r = base.responder(party, Measurement::dichotomic(e.ket));
            require(r->slots() == 2, Errc::invalid_use,
                    "base model must answer two-outcome projective measurements");
            base_.push_back(std::move(r));
            weight_.push_back(e.eta / d);
            group_.push_back(e.outcome);
        }
    }

    [[nodiscard]] int slots() const override { return outcomes_; }

    void respond(const HiddenState &l, std::span<double> out) const override {
        std::fill(out.begin(), out.begin() + outcomes_, 0.0);
        double failed = 0.0;
        double b[2];
        for (std::size_t k = 0; k < base_.size(); ++k) {
            base_[k]->respond(l, b);
            out[group_[k]] += weight_[k] * b[0];
            failed += weight_[k] * b[1];
        }
        for (int a = 0; a < outcomes_; ++a) {
            out[a] += failed * fallback_[a];
        }
    }

    /// Probability that the base model answered +1 for the chosen effect.
    [[nodiscard]] double success_probability(const HiddenState &l) const {
        double s = 0.0;
        double b[2];
        for (std::size_t k = 0; k < base_.size(); ++k) {
            base_[k]->respond(l, b);
            s += weight_[k] * b[0];
        }
        return s;
    }

  private:
    std::vector<std::unique_ptr<Responder>> base_;
    std::vector<double> weight_;
    std::vector<int> group_;
    std::vector<double> fallback_;
    int outcomes_;
};

class LiftedModel final : public LocalModel {
  public:
    LiftedModel(ModelPtr base, std::vector<CMatrix> sigmas)
        : base_(std::move(base)), sigmas_(std::move(sigmas)) {
        require(base_ != nullptr, Errc::invalid_argument, "null base model");
        require(!base_->abstain_capable(), Errc::invalid_use,
                "base model must answer every dichotomic measurement");
        require(static_cast<int>(sigmas_.size()) == base_->parties(), Errc::invalid_argument,
                "need one local state per party");
        for (int i = 0; i < base_->parties(); ++i) {
            const int d = base_->local_dim(i);
            require(sigmas_[i].rows() == d && sigmas_[i].cols() == d, Errc::invalid_argument,
                    "local state dimension mismatch");
            DensityMatrix check(sigmas_[i], {d});
            (void)check;
        }
    }

    [[nodiscard]] std::string name() const override { return "lifted(" + base_->name() + ")"; }
    [[nodiscard]] int parties() const override { return base_->parties(); }
    [[nodiscard]] int local_dim(int party) const override { return base_->local_dim(party); }
    void sample(Rng &rng, HiddenState &l) const override { base_->sample(rng, l); }

    [[nodiscard]] std::unique_ptr<Responder> responder(int party,
                                                       const Measurement &m) const override {
        return lifted_responder(party, m);
    }

    [[nodiscard]] std::unique_ptr<LiftedResponder> lifted_responder(int party,
                                                                    const Measurement &m) const {
        require(party >= 0 && party < parties(), Errc::invalid_argument,
                "party index out of range");
        require(m.dim() == local_dim(party), Errc::invalid_dimension,
                "measurement dimension mismatch");
        return std::make_unique<LiftedResponder>(*base_, party, m, sigmas_[party]);
    }

    [[nodiscard]] const LocalModel &base() const { return *base_; }

  private:
    ModelPtr base_;
    std::vector<CMatrix> sigmas_;
};

using LiftedModelPtr = std::shared_ptr<const LiftedModel>;

/// Simulates multipartite_lift_state(rho, sigmas) whenever `base` simulates
/// rho for two-outcome projective measurements.
inline LiftedModelPtr multipartite_povm_model(ModelPtr base,
                                              const std::vector<DensityMatrix> &sigmas) {
    std::vector<CMatrix> mats;
    for (const DensityMatrix &s : sigmas) {
        mats.push_back(s.mat());
    }
    return std::make_shared<LiftedModel>(std::move(base), std::move(mats));
}

inline LiftedModelPtr hirsch_povm_model(ModelPtr base, const DensityMatrix &sigma_a,
                                        const DensityMatrix &sigma_b) {
    require(base && base->parties() == 2, Errc::invalid_argument, "base must be bipartite");
    return multipartite_povm_model(std::move(base), {sigma_a, sigma_b});
}

/// Observed frequency of each failure pattern (bit i set = party i fell
/// back to its local state) against the protocol weight (d-1)^|S| / d^N.
struct BranchAudit {
    std::vector<double> frequency;
    std::vector<double> std_err;
    std::vector<double> expected;
    std::int64_t samples = 0;

    [[nodiscard]] bool pass(double z = 4.0) const {
        for (std::size_t s = 0; s < frequency.size(); ++s) {
            if (std::abs(frequency[s] - expected[s]) > z * std_err[s]) {
                return false;
            }
        }
        return true;
    }
};

inline BranchAudit lift_branch_audit(const LiftedModel &model,
                                     const std::vector<Measurement> &measurements,
                                     std::int64_t samples, std::uint64_t seed) {
    const int n = model.parties();
    require(static_cast<int>(measurements.size()) == n, Errc::invalid_argument,
            "one measurement per party");
    std::vector<std::unique_ptr<LiftedResponder>> rs;
    for (int i = 0; i < n; ++i) {
        rs.push_back(model.lifted_responder(i, measurements[i]));
    }
    const std::size_t cells = std::size_t{1} << n;
    std::vector<std::int64_t> counts(cells, 0);
    Rng rng = make_stream(seed, 0);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    HiddenState l;
    for (std::int64_t t = 0; t < samples; ++t) {
        model.sample(rng, l);
        std::size_t mask = 0;
        for (int i = 0; i < n; ++i) {
            if (u01(rng) >= rs[i]->success_probability(l)) {
                mask |= std::size_t{1} << i;
            }
        }
        ++counts[mask];
    }
    BranchAudit out;
    out.samples = samples;
    for (std::size_t s = 0; s < cells; ++s) {
        const double f = static_cast<double>(counts[s]) / samples;
        double e = 1.0;
        for (int i = 0; i < n; ++i) {
            const double d = model.local_dim(i);
            e *= ((s >> i) & 1U) ? (d - 1.0) / d : 1.0 / d;
        }
        out.frequency.push_back(f);
        out.expected.push_back(e);
        // binomial SE at the expected value avoids a zero SE for empty cells
        out.std_err.push_back(std::sqrt(e * (1.0 - e) / samples));
    }
    return out;
}

} // namespace lhvlab
