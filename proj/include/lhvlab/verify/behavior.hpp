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
 * Probability tables p(a_1..a_N | x_1..x_N), their exact quantum values,
 * closed-form family formulas, and the statistical comparison used to
 * decide whether a simulated table reproduces a target.
 */

#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "../measurements.hpp"
#include "../qcore.hpp"

namespace lhvlab {

/// Per-party setting lists plus the setting tuples that get a table row.
struct SettingPlan {
    std::vector<std::vector<Measurement>> settings; ///< settings[party][x]
    std::vector<std::vector<int>> tuples;           ///< tuples[t][party] = x

    [[nodiscard]] int parties() const { return static_cast<int>(settings.size()); }

    /// Tuple t uses setting t of every party; all lists must be equally long.
    static SettingPlan paired(std::vector<std::vector<Measurement>> settings) {
        require(!settings.empty(), Errc::invalid_argument, "plan without parties");
        const std::size_t n = settings.front().size();
        SettingPlan plan{std::move(settings), {}};
        for (const auto &s : plan.settings) {
            require(s.size() == n, Errc::invalid_argument, "paired plan needs equal list sizes");
        }
        for (std::size_t t = 0; t < n; ++t) {
            plan.tuples.emplace_back(plan.parties(), static_cast<int>(t));
        }
        return plan;
    }

    /// Every combination of settings.
    static SettingPlan product(std::vector<std::vector<Measurement>> settings) {
        require(!settings.empty(), Errc::invalid_argument, "plan without parties");
        SettingPlan plan{std::move(settings), {}};
        std::vector<int> x(plan.parties(), 0);
        for (;;) {
            plan.tuples.push_back(x);
            int i = plan.parties() - 1;
            while (i >= 0 && ++x[i] == static_cast<int>(plan.settings[i].size())) {
                x[i--] = 0;
            }
            if (i < 0) {
                break;
            }
        }
        return plan;
    }
};

/// Table of joint outcome probabilities; cells within a row are ordered
/// row-major with party 0 most significant.
struct Behavior {
    int parties = 0;
    std::vector<std::vector<int>> outcomes; ///< outcomes[party][x]
    std::vector<std::vector<int>> tuples;
    std::vector<std::vector<double>> p;
    std::vector<std::vector<double>> std_err; ///< empty for exact tables
    std::int64_t samples = 0;
    std::uint64_t seed = 0;

    [[nodiscard]] bool exact() const { return std_err.empty(); }
    [[nodiscard]] std::size_t rows() const { return tuples.size(); }

    [[nodiscard]] std::vector<int> row_shape(std::size_t t) const {
        std::vector<int> shape(parties);
        for (int i = 0; i < parties; ++i) {
            shape[i] = outcomes[i][tuples[t][i]];
        }
        return shape;
    }

    [[nodiscard]] std::string describe_cell(std::size_t t, std::size_t cell) const {
        std::vector<int> digits;
        detail::unravel(static_cast<long>(cell), row_shape(t), digits);
        std::ostringstream os;
        os << "x=(";
        for (int i = 0; i < parties; ++i) {
            os << (i ? "," : "") << tuples[t][i];
        }
        os << ") a=(";
        for (int i = 0; i < parties; ++i) {
            os << (i ? "," : "") << digits[i];
        }
        os << ")";
        return os.str();
    }

    /// Blank table with the plan's shape.
    static Behavior shaped_like(const SettingPlan &plan, int extra_slots = 0) {
        Behavior b;
        b.parties = plan.parties();
        for (const auto &list : plan.settings) {
            std::vector<int> o;
            for (const Measurement &m : list) {
                o.push_back(m.outcomes() + extra_slots);
            }
            b.outcomes.push_back(o);
        }
        b.tuples = plan.tuples;
        for (std::size_t t = 0; t < b.tuples.size(); ++t) {
            std::size_t cells = 1;
            for (int n : b.row_shape(t)) {
                cells *= n;
            }
            b.p.emplace_back(cells, 0.0);
        }
        return b;
    }
};

// ---------------------------------------------------------------------------
// Exact tables
// ---------------------------------------------------------------------------

namespace detail {

inline double trace_product(const CMatrix &rho, const CMatrix &x) {
    return (rho.cwiseProduct(x.transpose())).sum().real();
}

/// Fills every cell of an exact table from f(t, digits).
template <class F> Behavior tabulate(const SettingPlan &plan, F &&f) {
    Behavior b = Behavior::shaped_like(plan);
    std::vector<int> digits;
    for (std::size_t t = 0; t < b.rows(); ++t) {
        const auto shape = b.row_shape(t);
        for (std::size_t c = 0; c < b.p[t].size(); ++c) {
            detail::unravel(static_cast<long>(c), shape, digits);
            b.p[t][c] = f(t, digits);
        }
    }
    return b;
}

} // namespace detail

/// Tr[(A_{a_1} (x) ... (x) A_{a_N}) rho] for every tuple and outcome.
inline Behavior born_behavior(const DensityMatrix &rho, const SettingPlan &plan) {
    const int n = plan.parties();
    require(static_cast<int>(rho.dims().size()) == n, Errc::invalid_argument,
            "state has a different number of parties than the plan");
    std::vector<std::vector<std::vector<Operator>>> ops(n);
    for (int i = 0; i < n; ++i) {
        for (const Measurement &m : plan.settings[i]) {
            require(m.dim() == rho.dims()[i], Errc::invalid_argument,
                    "measurement dimension does not match the state");
            std::vector<Operator> per;
            for (int a = 0; a < m.outcomes(); ++a) {
                per.emplace_back(m.coarse_operator(a));
            }
            ops[i].push_back(std::move(per));
        }
    }
    return detail::tabulate(plan, [&](std::size_t t, const std::vector<int> &a) {
        std::vector<Operator> factors;
        for (int i = 0; i < n; ++i) {
            factors.push_back(ops[i][plan.tuples[t][i]][a[i]]);
        }
        return detail::trace_product(rho.mat(), tensor(std::span<const Operator>(factors)).mat());
    });
}

/// Werner-state statistics for arbitrary POVMs written through the weighted
/// rank-one effects: eta xi/(d(d-1)) [(d-1+p)/d - p |<v|w>|^2], summed over
/// each outcome's effects.
inline Behavior probs_werner2(int d, double p, const SettingPlan &plan) {
    require(plan.parties() == 2, Errc::invalid_argument, "Werner formula is bipartite");
    for (const auto &list : plan.settings) {
        for (const Measurement &m : list) {
            require(m.dim() == d, Errc::invalid_argument, "measurement dimension mismatch");
        }
    }
    return detail::tabulate(plan, [&](std::size_t t, const std::vector<int> &a) {
        const Measurement &ma = plan.settings[0][plan.tuples[t][0]];
        const Measurement &mb = plan.settings[1][plan.tuples[t][1]];
        double s = 0.0;
        for (const Effect &e : ma.effects()) {
            if (e.outcome != a[0]) {
                continue;
            }
            for (const Effect &f : mb.effects()) {
                if (f.outcome != a[1]) {
                    continue;
                }
                s += e.eta * f.eta / (d * (d - 1.0)) *
                     ((d - 1.0 + p) / d - p * std::norm(e.ket.dot(f.ket)));
            }
        }
        return s;
    });
}

/// (1/d^2)[(d+1)/d - Tr(P_a Q_b)] for projective measurements.
inline Behavior probs_werner(int d, const SettingPlan &plan) {
    for (const auto &list : plan.settings) {
        for (const Measurement &m : list) {
            require(m.projective(), Errc::invalid_argument,
                    "projective formula given a non-projective measurement");
        }
    }
    return probs_werner2(d, (d - 1.0) / d, plan);
}

/// Tripartite statistics of toth_acin_class(a) in Bloch form:
/// 1/8 - (1/16)(p'.q + p'.r) + (1/24) q.r with p' = (a_i p_i), each
/// effect contributing its weight.
inline Behavior probs_toth_acin(const std::array<double, 3> &acoef, const SettingPlan &plan) {
    require(plan.parties() == 3, Errc::invalid_argument, "tripartite formula");
    for (const auto &list : plan.settings) {
        for (const Measurement &m : list) {
            require(m.dim() == 2, Errc::invalid_argument, "qubit measurements only");
        }
    }
    return detail::tabulate(plan, [&](std::size_t t, const std::vector<int> &a) {
        const Measurement &m0 = plan.settings[0][plan.tuples[t][0]];
        const Measurement &m1 = plan.settings[1][plan.tuples[t][1]];
        const Measurement &m2 = plan.settings[2][plan.tuples[t][2]];
        double s = 0.0;
        for (const Effect &e0 : m0.effects()) {
            if (e0.outcome != a[0]) continue;
            const BlochVector p = bloch_from_ket(e0.ket);
            const BlochVector pp{acoef[0] * p.x, acoef[1] * p.y, acoef[2] * p.z};
            for (const Effect &e1 : m1.effects()) {
                if (e1.outcome != a[1]) continue;
                const BlochVector q = bloch_from_ket(e1.ket);
                for (const Effect &e2 : m2.effects()) {
                    if (e2.outcome != a[2]) continue;
                    const BlochVector r = bloch_from_ket(e2.ket);
                    s += e0.eta * e1.eta * e2.eta *
                         (1.0 / 8 - (pp.dot(q) + pp.dot(r)) / 16 + q.dot(r) / 24);
                }
            }
        }
        return s;
    });
}

/// The four contributions to the lifted two-party statistics:
/// [0] both succeed  (1/d^2) Tr(rho0 A_a (x) B_b)
/// [1] Bob falls back ((d-1)/d^2) Tr(rho_A A_a) Tr(sigma_B B_b)
/// [2] Alice falls back ((d-1)/d^2) Tr(sigma_A A_a) Tr(rho_B B_b)
/// [3] both fall back ((d-1)^2/d^2) Tr(sigma_A A_a) Tr(sigma_B B_b)
inline std::array<Behavior, 4> hirsch_terms(const DensityMatrix &rho0,
                                            const DensityMatrix &sigma_a,
                                            const DensityMatrix &sigma_b,
                                            const SettingPlan &plan) {
    require(plan.parties() == 2 && rho0.dims().size() == 2, Errc::invalid_argument,
            "lift formula is bipartite");
    const double d = rho0.dims()[0];
    const CMatrix ra = partial_trace(rho0, {0}).mat();
    const CMatrix rb = partial_trace(rho0, {1}).mat();
    auto marg = [&](int party, const CMatrix &s) {
        std::vector<std::vector<double>> out;
        for (const Measurement &m : plan.settings[party]) {
            std::vector<double> v(m.outcomes());
            for (int a = 0; a < m.outcomes(); ++a) {
                v[a] = detail::trace_product(s, m.coarse_operator(a));
            }
            out.push_back(v);
        }
        return out;
    };
    const auto ma_rho = marg(0, ra), mb_rho = marg(1, rb);
    const auto ma_sig = marg(0, sigma_a.mat()), mb_sig = marg(1, sigma_b.mat());
    const Behavior joint = born_behavior(rho0, plan);
    std::array<Behavior, 4> out;
    for (int term = 0; term < 4; ++term) {
        out[term] = detail::tabulate(plan, [&](std::size_t t, const std::vector<int> &a) {
            const int x = plan.tuples[t][0], y = plan.tuples[t][1];
            switch (term) {
            case 0: return joint.p[t][a[0] * plan.settings[1][y].outcomes() + a[1]] / (d * d);
            case 1: return (d - 1) / (d * d) * ma_rho[x][a[0]] * mb_sig[y][a[1]];
            case 2: return (d - 1) / (d * d) * ma_sig[x][a[0]] * mb_rho[y][a[1]];
            default: return (d - 1) * (d - 1) / (d * d) * ma_sig[x][a[0]] * mb_sig[y][a[1]];
            }
        });
    }
    return out;
}

inline Behavior probs_hirsch(const DensityMatrix &rho0, const DensityMatrix &sigma_a,
                             const DensityMatrix &sigma_b, const SettingPlan &plan) {
    auto terms = hirsch_terms(rho0, sigma_a, sigma_b, plan);
    Behavior sum = terms[0];
    for (int k = 1; k < 4; ++k) {
        for (std::size_t t = 0; t < sum.rows(); ++t) {
            for (std::size_t c = 0; c < sum.p[t].size(); ++c) {
                sum.p[t][c] += terms[k].p[t][c];
            }
        }
    }
    return sum;
}

// ---------------------------------------------------------------------------
// Comparison
// ---------------------------------------------------------------------------

inline constexpr double kZThreshold = 4.0;
inline constexpr double kAbsFloor = 1e-3;

struct CompareReport {
    double max_abs_dev = 0.0;
    double max_z = 0.0;
    std::vector<std::vector<double>> z; ///< per-cell deviation / combined SE (0 if SE = 0)
    std::size_t failures = 0;
    std::string worst_cell;
    bool pass = true;
};

inline void require_same_shape(const Behavior &a, const Behavior &b) {
    require(a.parties == b.parties && a.tuples == b.tuples && a.outcomes == b.outcomes,
            Errc::invalid_argument, "behaviors belong to different scenarios");
}

/// A cell passes iff |p1 - p2| < max(z * sqrt(se1^2 + se2^2), floor).
inline CompareReport compare(const Behavior &b1, const Behavior &b2, double zmax = kZThreshold,
                             double floor = kAbsFloor) {
    require_same_shape(b1, b2);
    CompareReport r;
    double worst = -1.0;
    for (std::size_t t = 0; t < b1.rows(); ++t) {
        std::vector<double> zs(b1.p[t].size(), 0.0);
        for (std::size_t c = 0; c < b1.p[t].size(); ++c) {
            const double dev = std::abs(b1.p[t][c] - b2.p[t][c]);
            const double s1 = b1.exact() ? 0.0 : b1.std_err[t][c];
            const double s2 = b2.exact() ? 0.0 : b2.std_err[t][c];
            const double se = std::sqrt(s1 * s1 + s2 * s2);
            zs[c] = se > 0.0 ? dev / se : 0.0;
            r.max_abs_dev = std::max(r.max_abs_dev, dev);
            r.max_z = std::max(r.max_z, zs[c]);
            const double tol = std::max(zmax * se, floor);
            if (!(dev < tol)) {
                ++r.failures;
                r.pass = false;
            }
            if (dev - tol > worst) {
                worst = dev - tol;
                r.worst_cell = b1.describe_cell(t, c);
            }
        }
        r.z.push_back(std::move(zs));
    }
    return r;
}

struct SignallingReport {
    bool pass = true;
    double max_dev = 0.0;
    std::string witness; ///< first violating marginal pair, empty on pass
};

/// Marginals on every proper subset of parties must not depend on the
/// settings of the others. Exact tables use 1e-10; simulated tables use
/// max(4 combined SE, 1e-3).
inline SignallingReport no_signalling_check(const Behavior &b, double exact_tol = 1e-10) {
    SignallingReport rep;
    const int n = b.parties;
    std::vector<int> digits;
    for (unsigned mask = 1; mask + 1 < (1U << n); ++mask) {
        std::vector<int> keep;
        for (int i = 0; i < n; ++i) {
            if ((mask >> i) & 1U) keep.push_back(i);
        }
        // marginal of each row on `keep`
        std::vector<std::vector<double>> marg(b.rows());
        std::map<std::vector<int>, std::size_t> first;
        for (std::size_t t = 0; t < b.rows(); ++t) {
            const auto shape = b.row_shape(t);
            std::vector<int> kshape;
            for (int i : keep) kshape.push_back(shape[i]);
            std::size_t kcells = 1;
            for (int s : kshape) kcells *= s;
            marg[t].assign(kcells, 0.0);
            for (std::size_t c = 0; c < b.p[t].size(); ++c) {
                detail::unravel(static_cast<long>(c), shape, digits);
                std::size_t k = 0;
                for (std::size_t j = 0; j < keep.size(); ++j) {
                    k = k * kshape[j] + digits[keep[j]];
                }
                marg[t][k] += b.p[t][c];
            }
            std::vector<int> key;
            for (int i : keep) key.push_back(b.tuples[t][i]);
            auto [it, inserted] = first.emplace(key, t);
            if (inserted) continue;
            const std::size_t r0 = it->second;
            for (std::size_t k = 0; k < marg[t].size(); ++k) {
                const double dev = std::abs(marg[t][k] - marg[r0][k]);
                double tol = exact_tol;
                if (!b.exact()) {
                    auto var = [&](double m) { return std::max(m * (1.0 - m), 0.0) / b.samples; };
                    tol = std::max(kZThreshold * std::sqrt(var(marg[t][k]) + var(marg[r0][k])),
                                   kAbsFloor);
                }
                rep.max_dev = std::max(rep.max_dev, dev);
                if (dev > tol && rep.pass) {
                    rep.pass = false;
                    std::ostringstream os;
                    os << "parties {";
                    for (std::size_t j = 0; j < keep.size(); ++j) os << (j ? "," : "") << keep[j];
                    os << "} marginal cell " << k << " differs between rows " << r0 << " and "
                       << t << " by " << dev;
                    rep.witness = os.str();
                }
            }
        }
    }
    return rep;
}

/// Largest |sum_a p - 1| over rows.
inline double normalization_error(const Behavior &b) {
    double e = 0.0;
    for (const auto &row : b.p) {
        double s = 0.0;
        for (double v : row) s += v;
        e = std::max(e, std::abs(s - 1.0));
    }
    return e;
}

} // namespace lhvlab
