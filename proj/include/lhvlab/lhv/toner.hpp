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
 * Toner's model for two-qubit Werner states. Measurement directions are
 * embedded as unit vectors f(a), g(b) in R^D built from odd-degree
 * spherical harmonics, chosen so that f(a).g(b) = -sin(c3 a.b). Signs of
 * the projections of a shared Gaussian vector then have correlation
 * (2/pi) arcsin(f.g) = -(2 c3/pi) a.b.
 */

#pragma once

#include <cmath>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "model.hpp"

namespace lhvlab {

/// sqrt(c) * int_0^c x^{-3/2} sin x dx. With x = t^2 the integrand
/// becomes 2 sin(t^2)/t^2, which is smooth at the origin.
inline double c3_equation_lhs(double c) {
    auto f = [](double t) {
        const double t2 = t * t;
        return t2 < 1e-16 ? 2.0 : 2.0 * std::sin(t2) / t2;
    };
    const double integral =
        boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, 0.0, std::sqrt(c), 15,
                                                                      1e-15);
    return std::sqrt(c) * integral;
}

/// Root of c3_equation_lhs(c) = 2 on [0.1, pi/2] by bisection; the left
/// side is increasing there.
inline double solve_c3() {
    static const double root = [] {
        double lo = 0.1, hi = M_PI / 2;
        while (hi - lo > 1e-15) {
            const double mid = 0.5 * (lo + hi);
            (c3_equation_lhs(mid) < 2.0 ? lo : hi) = mid;
        }
        return 0.5 * (lo + hi);
    }();
    return root;
}

/// j_0(x) .. j_nmax(x) by downward recurrence, normalised by j_0 = sin x / x.
inline std::vector<double> spherical_bessel_j(int nmax, double x) {
    require(nmax >= 0 && x > 0.0, Errc::invalid_argument, "spherical Bessel arguments");
    const int start = nmax + 40 + static_cast<int>(x);
    std::vector<double> j(start + 2, 0.0);
    j[start + 1] = 0.0;
    j[start] = 1e-30;
    for (int n = start; n >= 1; --n) {
        j[n - 1] = (2.0 * n + 1.0) / x * j[n] - j[n + 1];
        if (std::abs(j[n - 1]) > 1e200) {
            for (int m = n - 1; m <= start + 1; ++m) {
                j[m] *= 1e-200;
            }
        }
    }
    const double scale = (std::sin(x) / x) / j[0];
    j.resize(nmax + 1);
    for (double &v : j) {
        v *= scale;
    }
    return j;
}

/// Y_l^m(theta, phi) for m = -l..l (index m + l), Condon-Shortley phase.
inline std::vector<cplx> spherical_harmonics(int l, double theta, double phi) {
    require(l >= 0, Errc::invalid_argument, "negative degree");
    const double x = std::cos(theta), s = std::sin(theta);
    std::vector<cplx> out(2 * l + 1);
    double pmm = 1.0 / std::sqrt(4.0 * M_PI);
    for (int m = 0; m <= l; ++m) {
        if (m > 0) {
            pmm *= -std::sqrt((2.0 * m + 1.0) / (2.0 * m)) * s;
        }
        // walk up in degree from P_m^m to P_l^m
        double prev2 = 0.0, prev = pmm;
        for (int ll = m + 1; ll <= l; ++ll) {
            const double a = std::sqrt((4.0 * ll * ll - 1.0) / (double(ll) * ll - double(m) * m));
            const double b = std::sqrt((double(ll - 1) * (ll - 1) - double(m) * m) /
                                       (4.0 * (ll - 1) * (ll - 1) - 1.0));
            const double cur = a * (x * prev - b * prev2);
            prev2 = prev;
            prev = cur;
        }
        const cplx y = prev * std::polar(1.0, m * phi);
        out[l + m] = y;
        if (m > 0) {
            out[l - m] = ((m % 2) ? -1.0 : 1.0) * std::conj(y);
        }
    }
    return out;
}

/// Truncated embeddings f, g; degrees l = 2k+1 for k = 0..K.
class TonerMaps {
  public:
    static constexpr double kNormTolerance = 1e-8;

    explicit TonerMaps(int K) : K_(K), c3_(solve_c3()) {
        require(K >= 0, Errc::invalid_argument, "truncation must be non-negative");
        const std::vector<double> j = spherical_bessel_j(2 * K + 1, c3_);
        double series = 0.0;
        for (int k = 0; k <= K; ++k) {
            // sqrt(4 pi^{3/2} J_{2k+3/2}(c3)/sqrt(2 c3)) = sqrt(4 pi j_{2k+1}(c3))
            amp_.push_back(std::sqrt(4.0 * M_PI * j[2 * k + 1]));
            series += (4.0 * k + 3.0) * j[2 * k + 1];
        }
        residual_ = std::abs(series - 1.0);
        require(residual_ < kNormTolerance, Errc::truncation_insufficient,
                "truncation K=" + std::to_string(K) + " leaves |f|^2 off by " +
                    std::to_string(residual_));
    }

    [[nodiscard]] int truncation() const { return K_; }
    [[nodiscard]] double c3() const { return c3_; }
    /// |1 - |f|^2| of the truncated series.
    [[nodiscard]] double norm_residual() const { return residual_; }
    [[nodiscard]] int dimension() const { return 2 * (K_ + 1) * (2 * K_ + 3); }

    [[nodiscard]] Eigen::VectorXd f(const BlochVector &a) const { return embed(a, true); }
    [[nodiscard]] Eigen::VectorXd g(const BlochVector &b) const { return embed(b, false); }

  private:
    [[nodiscard]] Eigen::VectorXd embed(const BlochVector &v, bool alice) const {
        const BlochVector u = v.unit();
        const double theta = std::acos(std::clamp(u.z, -1.0, 1.0));
        const double phi = std::atan2(u.y, u.x);
        Eigen::VectorXd out(dimension());
        Eigen::Index pos = 0;
        for (int k = 0; k <= K_; ++k) {
            const double sign = alice ? ((k % 2) ? 1.0 : -1.0) : 1.0; // (-1)^{k+1}
            for (const cplx &y : spherical_harmonics(2 * k + 1, theta, phi)) {
                out(pos++) = sign * amp_[k] * y.real();
                out(pos++) = sign * amp_[k] * y.imag();
            }
        }
        return out;
    }

    int K_;
    double c3_;
    double residual_ = 0.0;
    std::vector<double> amp_;
};

/// Outcome 0 (Bloch direction of the first effect) when v . lambda >= 0.
class GaussianSignResponder final : public Responder {
  public:
    GaussianSignResponder(Eigen::VectorXd v, int group0, int group1)
        : v_(std::move(v)), group_{group0, group1} {}
    [[nodiscard]] int slots() const override { return 2; }
    void respond(const HiddenState &l, std::span<double> out) const override {
        const Eigen::Map<const Eigen::VectorXd> lam(l.stream.data(), v_.size());
        const bool plus = v_.dot(lam) >= 0.0;
        out[group_[0]] = plus ? 1.0 : 0.0;
        out[group_[1]] = plus ? 0.0 : 1.0;
    }

  private:
    Eigen::VectorXd v_;
    int group_[2];
};

namespace detail {

class TonerModel final : public LocalModel {
  public:
    explicit TonerModel(int K) : maps_(K) {}
    [[nodiscard]] std::string name() const override { return "toner"; }
    [[nodiscard]] int parties() const override { return 2; }
    [[nodiscard]] int local_dim(int) const override { return 2; }
    [[nodiscard]] const TonerMaps &maps() const { return maps_; }

    void sample(Rng &rng, HiddenState &l) const override {
        std::normal_distribution<double> g;
        l.stream.resize(maps_.dimension());
        for (double &x : l.stream) {
            x = g(rng);
        }
    }

    [[nodiscard]] std::unique_ptr<Responder> responder(int party,
                                                       const Measurement &m) const override {
        require(party == 0 || party == 1, Errc::invalid_argument, "party index out of range");
        require_qubit_pm(m, "Toner's model");
        const BlochVector v = bloch_from_ket(m[0].ket);
        return std::make_unique<GaussianSignResponder>(party == 0 ? maps_.f(v) : maps_.g(v),
                                                       m[0].outcome, m[1].outcome);
    }

  private:
    TonerMaps maps_;
};

} // namespace detail

/// Simulates werner_state(2, 2 c3/pi) for qubit projective measurements.
inline std::shared_ptr<const detail::TonerModel> toner_model(int K = 25) {
    return std::make_shared<detail::TonerModel>(K);
}

} // namespace lhvlab
