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
 * Brute-force oracles for the simplex and sphere integrals that fix the
 * Werner/isotropic thresholds, plus the stored Grothendieck constants and
 * the chain of Werner-region constants.
 *
 * Simplex integrals are reported as ratios to the simplex volume N, i.e.
 * as expectations under the uniform (Dirichlet(1,...,1)) distribution.
 */

#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <string>

#include "../states.hpp"
#include "parallel.hpp"

namespace lhvlab {

enum class SimplexKind {
    J_u1,    ///< u1 1[u1 minimal]
    Jt_u1,   ///< u1 1[u1 >= 1/d]
    Jt_u1sq, ///< u1^2 1[u1 >= 1/d]
    Jcal_u1, ///< u1 1[u1 maximal]
};

inline constexpr std::array<SimplexKind, 4> kSimplexKinds = {
    SimplexKind::J_u1, SimplexKind::Jt_u1, SimplexKind::Jt_u1sq, SimplexKind::Jcal_u1};

inline std::string to_string(SimplexKind k) {
    switch (k) {
    case SimplexKind::J_u1: return "J_u1";
    case SimplexKind::Jt_u1: return "Jt_u1";
    case SimplexKind::Jt_u1sq: return "Jt_u1sq";
    case SimplexKind::Jcal_u1: return "Jcal_u1";
    }
    return "?";
}

inline SimplexKind simplex_kind_from_string(std::string_view s) {
    for (SimplexKind k : kSimplexKinds) {
        if (to_string(k) == s) {
            return k;
        }
    }
    throw Error(Errc::invalid_argument, "unknown simplex integral '" + std::string(s) + "'");
}

/// Closed forms, as ratios to N.
inline double simplex_closed_form(SimplexKind k, int d) {
    require(d >= 2, Errc::invalid_dimension, "d must be >= 2");
    const double dd = d;
    const double tail = std::pow((dd - 1.0) / dd, dd - 1.0);
    switch (k) {
    case SimplexKind::J_u1: return 1.0 / (dd * dd * dd);
    case SimplexKind::Jt_u1: return (2.0 * dd - 1.0) / (dd * dd) * tail;
    case SimplexKind::Jt_u1sq: return (5.0 * dd - 3.0) / ((dd + 1.0) * dd * dd) * tail;
    case SimplexKind::Jcal_u1: return harmonic(d) / (dd * dd);
    }
    return 0.0;
}

struct OracleEstimate {
    double estimate = 0.0;
    double std_err = 0.0;
    double exact = 0.0;
    /// |estimate - exact| / scale
    double rel_dev = 0.0;
    [[nodiscard]] bool pass(double rel_tol = 0.01) const { return rel_dev <= rel_tol; }
};

inline constexpr std::int64_t kOracleChunk = 1 << 16;

/// All four simplex ratios for one d from a single set of uniform samples.
inline std::array<OracleEstimate, 4> simplex_oracles(int d, std::int64_t samples,
                                                     std::uint64_t seed, int threads = 0) {
    require(d >= 2, Errc::invalid_dimension, "d must be >= 2");
    require(samples >= 1, Errc::invalid_argument, "sample count");
    using Acc = std::array<double, 8>; // (sum, sum of squares) per kind
    const std::int64_t chunks = (samples + kOracleChunk - 1) / kOracleChunk;
    const auto parts = map_chunks(chunks, threads, [&](std::int64_t c) {
        Acc acc{};
        Rng rng = make_stream(seed, static_cast<std::uint64_t>(c));
        std::exponential_distribution<double> ex(1.0);
        std::vector<double> u(d);
        const std::int64_t n = std::min(samples, (c + 1) * kOracleChunk) - c * kOracleChunk;
        for (std::int64_t s = 0; s < n; ++s) {
            double total = 0.0;
            for (double &v : u) {
                v = ex(rng);
                total += v;
            }
            const double u1 = u[0] / total;
            bool minimal = true, maximal = true;
            for (int i = 1; i < d; ++i) {
                minimal = minimal && u[0] <= u[i];
                maximal = maximal && u[0] >= u[i];
            }
            const bool above = u1 >= 1.0 / d;
            const double vals[4] = {minimal ? u1 : 0.0, above ? u1 : 0.0, above ? u1 * u1 : 0.0,
                                    maximal ? u1 : 0.0};
            for (int k = 0; k < 4; ++k) {
                acc[2 * k] += vals[k];
                acc[2 * k + 1] += vals[k] * vals[k];
            }
        }
        return acc;
    });
    Acc total{};
    for (const Acc &a : parts) {
        for (int i = 0; i < 8; ++i) {
            total[i] += a[i];
        }
    }
    std::array<OracleEstimate, 4> out;
    const double n = static_cast<double>(samples);
    for (int k = 0; k < 4; ++k) {
        OracleEstimate &e = out[k];
        e.estimate = total[2 * k] / n;
        e.std_err = std::sqrt(std::max(total[2 * k + 1] / n - e.estimate * e.estimate, 0.0) / n);
        e.exact = simplex_closed_form(kSimplexKinds[k], d);
        e.rel_dev = std::abs(e.estimate - e.exact) / e.exact;
    }
    return out;
}

inline OracleEstimate simplex_integral_oracle(SimplexKind kind, int d, std::int64_t samples,
                                              std::uint64_t seed, int threads = 0) {
    return simplex_oracles(d, samples, seed, threads)[static_cast<int>(kind)];
}

/// Area integrals over {lambda : x.lambda < 0} of y.lambda (exact -pi x.y)
/// and of (y.lambda)(z.lambda) (exact 2pi/3 y.z). Deviations are reported
/// relative to pi and 2pi/3 respectively, since the exact values may vanish.
struct BlochOracle {
    OracleEstimate linear;
    OracleEstimate quadratic;
};

inline BlochOracle bloch_halfsphere_oracle(const BlochVector &x, const BlochVector &y,
                                           const BlochVector &z, std::int64_t samples,
                                           std::uint64_t seed, int threads = 0) {
    for (const BlochVector *v : {&x, &y, &z}) {
        require(std::abs(v->norm() - 1.0) < 1e-9, Errc::invalid_argument, "unit vectors required");
    }
    require(samples >= 1, Errc::invalid_argument, "sample count");
    using Acc = std::array<double, 4>;
    const std::int64_t chunks = (samples + kOracleChunk - 1) / kOracleChunk;
    const auto parts = map_chunks(chunks, threads, [&](std::int64_t c) {
        Acc acc{};
        Rng rng = make_stream(seed, static_cast<std::uint64_t>(c));
        const std::int64_t n = std::min(samples, (c + 1) * kOracleChunk) - c * kOracleChunk;
        for (std::int64_t s = 0; s < n; ++s) {
            const BlochVector l = uniform_sphere(rng);
            if (x.dot(l) < 0.0) {
                const double a = y.dot(l), b = a * z.dot(l);
                acc[0] += a;
                acc[1] += a * a;
                acc[2] += b;
                acc[3] += b * b;
            }
        }
        return acc;
    });
    Acc total{};
    for (const Acc &a : parts) {
        for (int i = 0; i < 4; ++i) {
            total[i] += a[i];
        }
    }
    const double n = static_cast<double>(samples), area = 4.0 * M_PI;
    auto finish = [&](double s, double s2, double exact, double scale) {
        OracleEstimate e;
        const double mean = s / n;
        e.estimate = area * mean;
        e.std_err = area * std::sqrt(std::max(s2 / n - mean * mean, 0.0) / n);
        e.exact = exact;
        e.rel_dev = std::abs(e.estimate - exact) / scale;
        return e;
    };
    return {finish(total[0], total[1], -M_PI * x.dot(y), M_PI),
            finish(total[2], total[3], 2.0 * M_PI / 3.0 * y.dot(z), 2.0 * M_PI / 3.0)};
}

/// Stored Grothendieck-constant bounds.
struct GrothendieckConstants {
    double kg_lower = 1.6770;
    double kg_upper = 1.7822;
    double kg8_upper = 1.6641;
    double kg3_upper = 1.5163;
    double kg3_lower = 1.4170;
    double kg2 = M_SQRT2;
    /// Werner visibility below which some Bell inequality is violated.
    double vertesi_threshold = 0.7056;
};

inline GrothendieckConstants kg_constants() { return {}; }

/// Werner-region landmarks for d = 2, in increasing order.
struct RegionConstant {
    std::string name;
    double value;
};

inline std::vector<RegionConstant> werner_region_chain() {
    const GrothendieckConstants kg = kg_constants();
    return {{"separable", werner_p_sep(2)},
            {"barrett_povm", werner_p_povm(2)},
            {"werner_pm", werner_p_pm(2)},
            {"toner_pm", 0.6595},
            {"vertesi_violation", kg.vertesi_threshold},
            {"chsh", 1.0 / kg.kg2}};
}

inline bool strictly_increasing(const std::vector<RegionConstant> &chain) {
    for (std::size_t i = 1; i < chain.size(); ++i) {
        if (!(chain[i - 1].value < chain[i].value)) {
            return false;
        }
    }
    return true;
}

} // namespace lhvlab
