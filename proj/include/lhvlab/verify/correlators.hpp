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
 * Two-outcome correlators: read off a behavior, and estimated for sign
 * responses to a shared Gaussian vector.
 */

#pragma once

#include <cmath>
#include <cstdint>

#include <Eigen/Dense>

#include "../qcore.hpp"
#include "behavior.hpp"
#include "parallel.hpp"

namespace lhvlab {

struct CorrelatorEstimate {
    double mean = 0.0;
    double std_err = 0.0;
    std::int64_t samples = 0;
};

/// <AB> = sum_{a,b} (+-1) p(a,b) for row t of a two-party, two-outcome
/// behavior; outcome 0 counts as +1.
inline CorrelatorEstimate correlator(const Behavior &b, std::size_t t) {
    require(b.parties == 2 && t < b.rows(), Errc::invalid_argument, "bipartite row expected");
    const auto shape = b.row_shape(t);
    require(shape[0] >= 2 && shape[1] >= 2, Errc::invalid_argument,
            "two outcomes per party expected");
    CorrelatorEstimate e;
    double accept = 0.0;
    for (int a = 0; a < 2; ++a) {
        for (int c = 0; c < 2; ++c) {
            const double p = b.p[t][a * shape[1] + c];
            e.mean += (a == c ? 1.0 : -1.0) * p;
            accept += p;
        }
    }
    e.samples = b.samples;
    if (!b.exact() && b.samples > 0) {
        // E[s^2] = accept for s in {-1, 0, +1}
        e.std_err = std::sqrt(std::max(accept - e.mean * e.mean, 0.0) / b.samples);
    }
    return e;
}

/// E[sgn(f.lambda) sgn(g.lambda)] for lambda a standard Gaussian vector.
/// Only the projection of lambda onto span{f, g} matters, and that is a
/// bivariate normal with correlation f.g/(|f||g|), so it is sampled
/// directly. Exact value: (2/pi) asin(f.g/(|f||g|)).
inline CorrelatorEstimate gaussian_sign_correlator(const Eigen::VectorXd &f,
                                                   const Eigen::VectorXd &g,
                                                   std::int64_t samples, std::uint64_t seed,
                                                   int threads = 0) {
    require(f.size() == g.size() && f.norm() > 0.0 && g.norm() > 0.0, Errc::invalid_argument,
            "nonzero vectors of equal length required");
    require(samples >= 1, Errc::invalid_argument, "sample count");
    const double rho = std::clamp(f.dot(g) / (f.norm() * g.norm()), -1.0, 1.0);
    const double perp = std::sqrt(1.0 - rho * rho);
    constexpr std::int64_t chunk = 1 << 16;
    const std::int64_t chunks = (samples + chunk - 1) / chunk;
    const auto parts = map_chunks(chunks, threads, [&](std::int64_t c) {
        Rng rng = make_stream(seed, static_cast<std::uint64_t>(c));
        std::normal_distribution<double> gauss;
        const std::int64_t n = std::min(samples, (c + 1) * chunk) - c * chunk;
        std::int64_t agree = 0;
        for (std::int64_t s = 0; s < n; ++s) {
            const double x = gauss(rng);
            const double y = rho * x + perp * gauss(rng);
            agree += ((x >= 0.0) == (y >= 0.0)) ? 1 : 0;
        }
        return agree;
    });
    std::int64_t agree = 0;
    for (std::int64_t a : parts) {
        agree += a;
    }
    CorrelatorEstimate e;
    e.samples = samples;
    const double n = static_cast<double>(samples);
    e.mean = (2.0 * agree - n) / n;
    e.std_err = std::sqrt(std::max(1.0 - e.mean * e.mean, 0.0) / n);
    return e;
}

} // namespace lhvlab
