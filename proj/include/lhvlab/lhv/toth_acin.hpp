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
 * Three-qubit model for the toth_acin_class family: Werner-like responses
 * for Bob and Charlie, and for Alice a sign response on the rescaled Bloch
 * vector (a_1 p_1, a_2 p_2, a_3 p_3), blended with a fair coin by the
 * amount that vector falls short of unit length.
 */

#pragma once

#include <array>

#include "model.hpp"

namespace lhvlab {

class TothAcinAliceResponder final : public Responder {
  public:
    TothAcinAliceResponder(const Measurement &m, const std::array<double, 3> &a) {
        detail::require_qubit_pm(m, "Alice in the tripartite model");
        const BlochVector p = bloch_from_ket(m[0].ket);
        scaled_ = {a[0] * p.x, a[1] * p.y, a[2] * p.z};
        length_ = scaled_.norm();
        group_[0] = m[0].outcome;
        group_[1] = m[1].outcome;
    }

    [[nodiscard]] int slots() const override { return 2; }

    void respond(const HiddenState &l, std::span<double> out) const override {
        const double coin = 0.5 * (1.0 - length_);
        const bool first = scaled_.dot(l.bloch) < 0.0;
        out[group_[0]] = (first ? length_ : 0.0) + coin;
        out[group_[1]] = (first ? 0.0 : length_) + coin;
    }

  private:
    BlochVector scaled_;
    double length_ = 0.0;
    int group_[2] = {0, 1};
};

namespace detail {

class TothAcinModel final : public LocalModel {
  public:
    explicit TothAcinModel(const std::array<double, 3> &a) : a_(a) {
        for (double ai : a_) {
            require(ai >= -1.0 && ai <= 1.0, Errc::invalid_argument, "a_i must lie in [-1, 1]");
        }
    }
    [[nodiscard]] std::string name() const override { return "toth-acin"; }
    [[nodiscard]] int parties() const override { return 3; }
    [[nodiscard]] int local_dim(int) const override { return 2; }
    void sample(Rng &rng, HiddenState &l) const override {
        l.ket.resize(2);
        haar_fill(l.ket, rng);
        l.bloch = bloch_from_ket(l.ket);
    }
    [[nodiscard]] std::unique_ptr<Responder> responder(int party,
                                                       const Measurement &m) const override {
        require(party >= 0 && party < 3, Errc::invalid_argument, "party index out of range");
        require(m.dim() == 2, Errc::invalid_dimension, "qubit measurements only");
        if (party == 0) {
            return std::make_unique<TothAcinAliceResponder>(m, a_);
        }
        return std::make_unique<OverlapResponder>(m, KetSource::shared);
    }

  private:
    std::array<double, 3> a_;
};

} // namespace detail

/// Simulates toth_acin_class(a1, a2, a3): qubit PMs for Alice, arbitrary
/// qubit POVMs for Bob and Charlie.
inline ModelPtr toth_acin_model(double a1, double a2, double a3) {
    return std::make_shared<detail::TothAcinModel>(std::array<double, 3>{a1, a2, a3});
}

} // namespace lhvlab
