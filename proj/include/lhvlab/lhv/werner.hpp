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
 * Models for Werner states driven by a Haar-random ket: Werner's own model
 * for projective measurements and Barrett's extension to POVMs.
 */

#pragma once

#include "model.hpp"

namespace lhvlab {

/// Alice: weighted overlaps above 1/d are kept, the remaining mass is
/// spread in proportion to eta_a/d.
class BarrettAliceResponder final : public Responder {
  public:
    BarrettAliceResponder(const Measurement &m, KetSource src) : table_(m), src_(src) {
        // d in exact arithmetic; the actual sum keeps the response normalized
        for (double e : table_.eta) {
            eta_total_ += e;
        }
    }

    [[nodiscard]] int slots() const override { return table_.outcomes; }

    void respond(const HiddenState &l, std::span<double> out) const override {
        auto ov = detail::scratch(table_.size());
        table_.overlaps(select_ket(l, src_), ov);
        const double d = static_cast<double>(table_.kets.rows());
        std::fill(out.begin(), out.begin() + slots(), 0.0);
        double kept = 0.0;
        for (std::size_t i = 0; i < ov.size(); ++i) {
            if (ov[i] > 1.0 / d) {
                const double w = table_.eta[i] * ov[i];
                out[table_.group[i]] += w;
                kept += w;
            }
        }
        const double rest = 1.0 - kept;
        for (std::size_t i = 0; i < ov.size(); ++i) {
            out[table_.group[i]] += rest * table_.eta[i] / eta_total_;
        }
    }

  private:
    detail::EffectTable table_;
    KetSource src_;
    double eta_total_ = 0.0;
};

/// Bob: xi_b (1 - <lambda|Q_b|lambda>)/(d - 1).
class BarrettBobResponder final : public Responder {
  public:
    explicit BarrettBobResponder(const Measurement &m) : table_(m) {}

    [[nodiscard]] int slots() const override { return table_.outcomes; }

    void respond(const HiddenState &l, std::span<double> out) const override {
        auto ov = detail::scratch(table_.size());
        table_.overlaps(l.ket, ov);
        const double d = static_cast<double>(table_.kets.rows());
        std::fill(out.begin(), out.begin() + slots(), 0.0);
        double total = 0.0;
        for (std::size_t i = 0; i < ov.size(); ++i) {
            const double w = table_.eta[i] * (1.0 - ov[i]) / (d - 1.0);
            out[table_.group[i]] += w;
            total += w;
        }
        for (int b = 0; b < slots(); ++b) {
            out[b] /= total;
        }
    }

  private:
    detail::EffectTable table_;
};

namespace detail {

class HaarKetModel : public LocalModel {
  public:
    explicit HaarKetModel(int d) : d_(d) {
        require(d >= 2, Errc::invalid_dimension, "model needs d >= 2");
    }
    [[nodiscard]] int parties() const override { return 2; }
    [[nodiscard]] int local_dim(int) const override { return d_; }
    void sample(Rng &rng, HiddenState &l) const override {
        l.ket.resize(d_);
        haar_fill(l.ket, rng);
    }

  protected:
    void check(int party, const Measurement &m) const {
        require(party == 0 || party == 1, Errc::invalid_argument, "party index out of range");
        require(m.dim() == d_, Errc::invalid_dimension, "measurement dimension mismatch");
    }
    int d_;
};

class WernerModel final : public HaarKetModel {
  public:
    using HaarKetModel::HaarKetModel;
    [[nodiscard]] std::string name() const override { return "werner"; }
    [[nodiscard]] std::unique_ptr<Responder> responder(int party,
                                                       const Measurement &m) const override {
        check(party, m);
        if (party == 0) {
            require(m.projective(), Errc::invalid_use,
                    "Werner's model needs a projective measurement on Alice's side");
            return std::make_unique<ExtremeOverlapResponder>(m, false, KetSource::shared);
        }
        return std::make_unique<OverlapResponder>(m, KetSource::shared);
    }
};

class BarrettModel final : public HaarKetModel {
  public:
    using HaarKetModel::HaarKetModel;
    [[nodiscard]] std::string name() const override { return "barrett"; }
    [[nodiscard]] std::unique_ptr<Responder> responder(int party,
                                                       const Measurement &m) const override {
        check(party, m);
        if (party == 0) {
            return std::make_unique<BarrettAliceResponder>(m, KetSource::shared);
        }
        return std::make_unique<BarrettBobResponder>(m);
    }
};

} // namespace detail

/// Simulates werner_state(d, (d-1)/d): projective measurements for Alice,
/// arbitrary POVMs for Bob.
inline ModelPtr werner_model(int d) { return std::make_shared<detail::WernerModel>(d); }

/// Simulates werner_state(d, werner_p_povm(d)) for arbitrary POVMs.
inline ModelPtr barrett_model(int d) { return std::make_shared<detail::BarrettModel>(d); }

} // namespace lhvlab
