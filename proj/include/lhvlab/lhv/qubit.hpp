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
 * Two-qubit models with a hidden unit vector on the Bloch sphere: the
 * abstaining singlet model of Gisin and Gisin, its non-abstaining variant
 * where Bob falls back to a fixed state, and a two-component mixture of
 * the latter.
 */

#pragma once

#include <optional>

#include "model.hpp"

namespace lhvlab {

namespace detail {

/// Bloch vectors of the two effects of a qubit PM.
struct QubitPm {
    BlochVector v[2];
    int group[2] = {0, 1};

    explicit QubitPm(const Measurement &m) {
        for (int i = 0; i < 2; ++i) {
            v[i] = bloch_from_ket(m[i].ket);
            group[i] = m[i].outcome;
        }
    }
};

} // namespace detail

/// Outputs -sgn(a . lambda): the effect anti-aligned with lambda.
class AntiSignResponder final : public Responder {
  public:
    AntiSignResponder(const Measurement &m, int slots) : pm_(m), slots_(slots) {
        detail::require_qubit_pm(m, "sphere model");
    }
    [[nodiscard]] int slots() const override { return slots_; }
    void respond(const HiddenState &l, std::span<double> out) const override {
        std::fill(out.begin(), out.begin() + slots_, 0.0);
        const int pick = pm_.v[0].dot(l.bloch) < pm_.v[1].dot(l.bloch) ? 0 : 1;
        out[pm_.group[pick]] = 1.0;
    }

  private:
    detail::QubitPm pm_;
    int slots_;
};

/// Outputs the effect aligned with lambda with probability |b . lambda|.
/// The remaining 1 - |b . lambda| either abstains (last slot) or is answered
/// by measuring the fixed state |eta>.
class AlignedResponder final : public Responder {
  public:
    AlignedResponder(const Measurement &m, std::optional<BlochVector> eta)
        : pm_(m), eta_(eta) {
        detail::require_qubit_pm(m, "sphere model");
        if (eta_) {
            for (int i = 0; i < 2; ++i) {
                fallback_[i] = 0.5 * (1.0 + pm_.v[i].dot(*eta_));
            }
        }
    }
    [[nodiscard]] int slots() const override { return eta_ ? 2 : 3; }
    void respond(const HiddenState &l, std::span<double> out) const override {
        std::fill(out.begin(), out.begin() + slots(), 0.0);
        const double c = pm_.v[0].dot(l.bloch);
        const double reject = 1.0 - std::abs(c);
        out[pm_.group[c > 0.0 ? 0 : 1]] += std::abs(c);
        if (eta_) {
            out[pm_.group[0]] += reject * fallback_[0];
            out[pm_.group[1]] += reject * fallback_[1];
        } else {
            out[2] = reject;
        }
    }

  private:
    detail::QubitPm pm_;
    std::optional<BlochVector> eta_;
    double fallback_[2] = {0.0, 0.0};
};

namespace detail {

class SphereModel : public LocalModel {
  public:
    [[nodiscard]] int parties() const override { return 2; }
    [[nodiscard]] int local_dim(int) const override { return 2; }
    void sample(Rng &rng, HiddenState &l) const override { l.bloch = uniform_sphere(rng); }

  protected:
    static void check(int party) {
        require(party == 0 || party == 1, Errc::invalid_argument, "party index out of range");
    }
};

class GisinGisinModel final : public SphereModel {
  public:
    [[nodiscard]] std::string name() const override { return "gisin-gisin"; }
    [[nodiscard]] bool abstain_capable() const override { return true; }
    [[nodiscard]] std::unique_ptr<Responder> responder(int party,
                                                       const Measurement &m) const override {
        check(party);
        if (party == 0) {
            return std::make_unique<AntiSignResponder>(m, 3);
        }
        return std::make_unique<AlignedResponder>(m, std::nullopt);
    }
};

class RaimatModel final : public SphereModel {
  public:
    explicit RaimatModel(const Ket &eta) : eta_(bloch_from_ket(eta.vec())) {
        require(eta.dim() == 2, Errc::invalid_dimension, "eta must be a qubit ket");
    }
    [[nodiscard]] std::string name() const override { return "raimat"; }
    [[nodiscard]] std::unique_ptr<Responder> responder(int party,
                                                       const Measurement &m) const override {
        check(party);
        if (party == 0) {
            return std::make_unique<AntiSignResponder>(m, 2);
        }
        return std::make_unique<AlignedResponder>(m, eta_);
    }

  private:
    BlochVector eta_;
};

/// 2/5 of the time the Raimat model with eta = |0> and the parties' roles
/// exchanged, 3/5 of the time the Raimat model with eta = |1>.
class BvqbModel final : public SphereModel {
  public:
    [[nodiscard]] std::string name() const override { return "bvqb"; }
    void sample(Rng &rng, HiddenState &l) const override {
        std::uniform_real_distribution<double> u01(0.0, 1.0);
        l.branch = u01(rng) < 0.4 ? 0 : 1;
        l.bloch = uniform_sphere(rng);
    }
    [[nodiscard]] std::unique_ptr<Responder> responder(int party,
                                                       const Measurement &m) const override {
        check(party);
        const BlochVector up{0, 0, 1};
        std::vector<std::unique_ptr<Responder>> branches;
        if (party == 0) {
            branches.push_back(std::make_unique<AlignedResponder>(m, up));
            branches.push_back(std::make_unique<AntiSignResponder>(m, 2));
        } else {
            branches.push_back(std::make_unique<AntiSignResponder>(m, 2));
            branches.push_back(std::make_unique<AlignedResponder>(m, -up));
        }
        return std::make_unique<BranchResponder>(std::move(branches));
    }
};

} // namespace detail

/// Singlet correlations on the accepted rounds; Bob abstains with
/// probability 1 - |b . lambda| (last response slot).
inline ModelPtr gisin_gisin_model() { return std::make_shared<detail::GisinGisinModel>(); }

/// Simulates raimat_state(1/2, eta) for qubit projective measurements.
inline ModelPtr raimat_model(const Ket &eta) { return std::make_shared<detail::RaimatModel>(eta); }

/// Simulates bvqb_state(1/2) for qubit projective measurements.
inline ModelPtr bvqb_model() { return std::make_shared<detail::BvqbModel>(); }

} // namespace lhvlab
