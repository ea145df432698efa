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
 * (N, m, d) Bell scenarios, linear Bell expressions, their classical bound
 * by vertex enumeration, and CHSH for two-qubit states.
 */

#pragma once

#include <array>
#include <cmath>
#include <cstdint>

#include "behavior.hpp"

namespace lhvlab {

struct Scenario {
    int N = 2; ///< parties
    int m = 2; ///< settings per party
    int d = 2; ///< outcomes per setting

    void validate() const {
        require(N >= 1 && m >= 1 && d >= 1, Errc::invalid_argument, "scenario sizes must be >= 1");
    }
    [[nodiscard]] std::int64_t setting_tuples() const { return ipow(m, N); }
    [[nodiscard]] std::int64_t outcome_tuples() const { return ipow(d, N); }

    static std::int64_t ipow(std::int64_t b, int e) {
        std::int64_t r = 1;
        for (int i = 0; i < e; ++i) {
            r *= b;
        }
        return r;
    }
};

/// Number of independent probabilities once normalisation and
/// no-signalling are imposed: [m(d-1)+1]^N - 1.
inline std::int64_t dof_count(const Scenario &s) {
    s.validate();
    return Scenario::ipow(static_cast<std::int64_t>(s.m) * (s.d - 1) + 1, s.N) - 1;
}

/// beta = sum_{x, a} T[x][a] p(a|x). Settings and outcomes are both
/// flattened with party 0 most significant; coefficients are stored as
/// T[x * d^N + a].
class BellInequality {
  public:
    BellInequality(Scenario s, std::vector<double> coefficients)
        : s_(s), t_(std::move(coefficients)) {
        s_.validate();
        require(static_cast<std::int64_t>(t_.size()) == s_.setting_tuples() * s_.outcome_tuples(),
                Errc::invalid_argument, "coefficient tensor has the wrong size");
    }

    [[nodiscard]] const Scenario &scenario() const { return s_; }
    [[nodiscard]] const std::vector<double> &coefficients() const { return t_; }
    [[nodiscard]] double coefficient(std::int64_t x, std::int64_t a) const {
        return t_[x * s_.outcome_tuples() + a];
    }

  private:
    Scenario s_;
    std::vector<double> t_;
};

inline constexpr std::int64_t kMaxVertices = 1000000;

namespace detail {

/// Party i's deterministic strategy as outcome per setting.
inline std::vector<std::vector<int>> decode_strategy(const Scenario &s, std::int64_t v) {
    const std::int64_t per = Scenario::ipow(s.d, s.m);
    std::vector<std::vector<int>> out(s.N, std::vector<int>(s.m));
    for (int i = s.N - 1; i >= 0; --i) {
        std::int64_t local = v % per;
        v /= per;
        for (int x = s.m - 1; x >= 0; --x) {
            out[i][x] = static_cast<int>(local % s.d);
            local /= s.d;
        }
    }
    return out;
}

inline std::int64_t vertex_count(const Scenario &s) {
    s.validate();
    const double approx = std::pow(std::pow(double(s.d), s.m), s.N);
    require(approx <= double(kMaxVertices), Errc::capacity_exceeded,
            "scenario has more than 1e6 deterministic strategies");
    return Scenario::ipow(Scenario::ipow(s.d, s.m), s.N);
}

} // namespace detail

/// Exact behavior of a deterministic strategy, laid out as the full product
/// of settings.
inline Behavior deterministic_behavior(const Scenario &s,
                                       const std::vector<std::vector<int>> &strategy) {
    s.validate();
    require(static_cast<int>(strategy.size()) == s.N, Errc::invalid_argument,
            "one strategy per party");
    Behavior b;
    b.parties = s.N;
    b.outcomes.assign(s.N, std::vector<int>(s.m, s.d));
    std::vector<int> digits;
    for (std::int64_t x = 0; x < s.setting_tuples(); ++x) {
        detail::unravel(static_cast<long>(x), std::vector<int>(s.N, s.m), digits);
        b.tuples.push_back(digits);
        std::vector<double> row(static_cast<std::size_t>(s.outcome_tuples()), 0.0);
        std::int64_t a = 0;
        for (int i = 0; i < s.N; ++i) {
            a = a * s.d + strategy[i][digits[i]];
        }
        row[static_cast<std::size_t>(a)] = 1.0;
        b.p.push_back(std::move(row));
    }
    return b;
}

/// beta of a behavior laid out as the full setting product in row-major
/// order (as produced by SettingPlan::product).
inline double evaluate(const BellInequality &ineq, const Behavior &b) {
    const Scenario &s = ineq.scenario();
    require(b.parties == s.N && static_cast<std::int64_t>(b.rows()) == s.setting_tuples(),
            Errc::invalid_argument, "behavior does not match the scenario");
    double beta = 0.0;
    for (std::int64_t x = 0; x < s.setting_tuples(); ++x) {
        require(static_cast<std::int64_t>(b.p[x].size()) == s.outcome_tuples(),
                Errc::invalid_argument, "behavior does not match the scenario");
        for (std::int64_t a = 0; a < s.outcome_tuples(); ++a) {
            beta += ineq.coefficient(x, a) * b.p[x][a];
        }
    }
    return beta;
}

/// Classical bound: maximum of beta over all deterministic strategies.
inline double local_bound(const BellInequality &ineq) {
    const Scenario &s = ineq.scenario();
    const std::int64_t vertices = detail::vertex_count(s);
    double best = -std::numeric_limits<double>::infinity();
    std::vector<int> digits;
    const std::vector<int> shape(s.N, s.m);
    for (std::int64_t v = 0; v < vertices; ++v) {
        const auto strat = detail::decode_strategy(s, v);
        double beta = 0.0;
        for (std::int64_t x = 0; x < s.setting_tuples(); ++x) {
            detail::unravel(static_cast<long>(x), shape, digits);
            std::int64_t a = 0;
            for (int i = 0; i < s.N; ++i) {
                a = a * s.d + strat[i][digits[i]];
            }
            beta += ineq.coefficient(x, a);
        }
        best = std::max(best, beta);
    }
    return best;
}

/// sum_{x,y} p(a xor b = x y | x y) with 0-based settings; bound 3.
inline BellInequality chsh_probability_form() {
    std::vector<double> t(16, 0.0);
    for (int x = 0; x < 2; ++x) {
        for (int y = 0; y < 2; ++y) {
            for (int a = 0; a < 2; ++a) {
                for (int b = 0; b < 2; ++b) {
                    if ((a ^ b) == (x & y)) {
                        t[(x * 2 + y) * 4 + a * 2 + b] = 1.0;
                    }
                }
            }
        }
    }
    return {Scenario{2, 2, 2}, std::move(t)};
}

/// E11 + E12 + E21 - E22 with E = p(a = b) - p(a != b); bound 2.
inline BellInequality chsh_correlator_form() {
    std::vector<double> t(16, 0.0);
    for (int x = 0; x < 2; ++x) {
        for (int y = 0; y < 2; ++y) {
            const double sign = (x == 1 && y == 1) ? -1.0 : 1.0;
            for (int a = 0; a < 2; ++a) {
                for (int b = 0; b < 2; ++b) {
                    t[(x * 2 + y) * 4 + a * 2 + b] = sign * (a == b ? 1.0 : -1.0);
                }
            }
        }
    }
    return {Scenario{2, 2, 2}, std::move(t)};
}

/// T_ij = Tr(rho sigma_i (x) sigma_j), so that <A B> = a^T T b.
inline Eigen::Matrix3d correlation_matrix(const DensityMatrix &rho) {
    require(rho.dims() == std::vector<int>{2, 2}, Errc::invalid_dimension,
            "two-qubit state required");
    Eigen::Matrix3d t;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            const CMatrix s = tensor({Operator(pauli(i)), Operator(pauli(j))}).mat();
            t(i, j) = (rho.mat() * s).trace().real();
        }
    }
    return t;
}

inline double chsh_value(const DensityMatrix &rho, const BlochVector &a1, const BlochVector &a2,
                         const BlochVector &b1, const BlochVector &b2) {
    const Eigen::Matrix3d t = correlation_matrix(rho);
    auto e = [&](const BlochVector &a, const BlochVector &b) {
        const Eigen::Vector3d av(a.x, a.y, a.z), bv(b.x, b.y, b.z);
        return av.dot(t * bv);
    };
    return std::abs(e(a1, b1) + e(a1, b2) + e(a2, b1) - e(a2, b2));
}

struct ChshResult {
    double value = 0.0;
    std::array<BlochVector, 4> settings; ///< a1, a2, b1, b2
};

/// Alternating maximisation over the four unit vectors, best of `restarts`
/// random starts. Each step maximises the expression exactly in one pair of
/// vectors with the other pair held fixed, so the value never decreases.
inline ChshResult maximize_chsh(const DensityMatrix &rho, int restarts = 20,
                                std::uint64_t seed = 0, double tol = 1e-12) {
    require(restarts >= 1, Errc::invalid_argument, "need at least one restart");
    const Eigen::Matrix3d t = correlation_matrix(rho);
    auto to_e = [](const BlochVector &v) { return Eigen::Vector3d(v.x, v.y, v.z); };
    auto to_b = [](const Eigen::Vector3d &v) { return BlochVector{v(0), v(1), v(2)}; };
    auto unit_or = [](const Eigen::Vector3d &v, const Eigen::Vector3d &keep) {
        const double n = v.norm();
        return n > 1e-14 ? Eigen::Vector3d(v / n) : keep;
    };
    auto value = [&](const Eigen::Vector3d &a1, const Eigen::Vector3d &a2,
                     const Eigen::Vector3d &b1, const Eigen::Vector3d &b2) {
        return a1.dot(t * (b1 + b2)) + a2.dot(t * (b1 - b2));
    };
    ChshResult best;
    best.value = -1.0;
    Rng rng = make_stream(seed, 0);
    for (int r = 0; r < restarts; ++r) {
        Eigen::Vector3d a1 = to_e(uniform_sphere(rng)), a2 = to_e(uniform_sphere(rng));
        Eigen::Vector3d b1 = to_e(uniform_sphere(rng)), b2 = to_e(uniform_sphere(rng));
        double prev = -std::numeric_limits<double>::infinity();
        for (int it = 0; it < 10000; ++it) {
            a1 = unit_or(t * (b1 + b2), a1);
            a2 = unit_or(t * (b1 - b2), a2);
            b1 = unit_or(t.transpose() * (a1 + a2), b1);
            b2 = unit_or(t.transpose() * (a1 - a2), b2);
            const double v = value(a1, a2, b1, b2);
            if (v - prev < tol) {
                prev = v;
                break;
            }
            prev = v;
        }
        if (prev > best.value) {
            best.value = prev;
            best.settings = {to_b(a1), to_b(a2), to_b(b1), to_b(b2)};
        }
    }
    best.value = std::max(best.value, 0.0);
    return best;
}

} // namespace lhvlab
