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
 * State families with known local models, and their critical mixing
 * probabilities (separability, projective locality, POVM locality).
 */

#pragma once

#include <array>
#include <cmath>
#include <string>
#include <string_view>
#include <vector>

#include "qcore.hpp"

namespace lhvlab {

enum class Family {
    werner,
    isotropic,
    noisy,
    raimat,
    bvqb,
    hirsch_lift,
    toth_acin_class,
    multipartite_lift,
};

constexpr std::string_view to_string(Family f) {
    switch (f) {
    case Family::werner: return "werner";
    case Family::isotropic: return "isotropic";
    case Family::noisy: return "noisy";
    case Family::raimat: return "raimat";
    case Family::bvqb: return "bvqb";
    case Family::hirsch_lift: return "hirsch-lift";
    case Family::toth_acin_class: return "toth-acin-class";
    case Family::multipartite_lift: return "multipartite-lift";
    }
    return "unknown";
}

inline Family family_from_string(std::string_view s) {
    for (Family f : {Family::werner, Family::isotropic, Family::noisy, Family::raimat,
                     Family::bvqb, Family::hirsch_lift, Family::toth_acin_class,
                     Family::multipartite_lift}) {
        if (to_string(f) == s) {
            return f;
        }
    }
    throw Error(Errc::invalid_argument, "unknown state family '" + std::string(s) + "'");
}

namespace detail {

inline void check_probability(double p, double hi = 1.0) {
    require(p >= 0.0 && p <= hi, Errc::invalid_argument, "mixing parameter out of range");
}

inline void check_local_dim(int d) {
    require(d >= 2, Errc::invalid_dimension, "local dimension must be >= 2");
}

inline CMatrix projector_matrix(const Ket &k) { return k.vec() * k.vec().adjoint(); }

} // namespace detail

// ---------------------------------------------------------------------------
// Constructors
// ---------------------------------------------------------------------------

/// p 2P^-/(d(d-1)) + (1-p) 1/d^2, with P^- the antisymmetric projector.
inline DensityMatrix werner_state(int d, double p) {
    detail::check_local_dim(d);
    detail::check_probability(p);
    const int n = d * d;
    const CMatrix id = CMatrix::Identity(n, n);
    const CMatrix two_pminus = id - swap_operator(d).mat();
    CMatrix m = (p / (d * (d - 1.0))) * two_pminus + ((1.0 - p) / n) * id;
    return {std::move(m), {d, d}};
}

/// p |phi+><phi+| + (1-p) 1/d^2
inline DensityMatrix isotropic_state(int d, double p) {
    detail::check_local_dim(d);
    detail::check_probability(p);
    const int n = d * d;
    CMatrix m = p * detail::projector_matrix(max_entangled(d)) +
                ((1.0 - p) / n) * CMatrix::Identity(n, n);
    return {std::move(m), {d, d}};
}

/// p rho + (1-p) 1/d^2 for a two-qudit rho.
inline DensityMatrix noisy_state(const DensityMatrix &rho, double p) {
    detail::check_probability(p);
    require(rho.dims().size() == 2 && rho.dims()[0] == rho.dims()[1], Errc::invalid_argument,
            "noisy_state needs a state on C^d (x) C^d");
    const int n = rho.side();
    CMatrix m = p * rho.mat() + ((1.0 - p) / n) * CMatrix::Identity(n, n);
    return {std::move(m), rho.dims()};
}

/// p |psi-><psi-| + (1-p) (1/2) (x) |eta><eta|
inline DensityMatrix raimat_state(double p, const Ket &eta) {
    detail::check_probability(p, 0.5);
    require(eta.dim() == 2, Errc::invalid_dimension, "eta must be a qubit ket");
    const Operator half_id(0.5 * CMatrix::Identity(2, 2));
    const Operator proj(detail::projector_matrix(eta));
    CMatrix m = p * detail::projector_matrix(singlet()) + (1.0 - p) * tensor({half_id, proj}).mat();
    return {std::move(m), {2, 2}};
}

/// p |psi-><psi-| + ((1-p)/5)(2 |0><0| (x) 1/2 + 3 (1/2) (x) |1><1|)
inline DensityMatrix bvqb_state(double p) {
    detail::check_probability(p, 0.5);
    const Operator half_id(0.5 * CMatrix::Identity(2, 2));
    const Operator p0 = Operator::projector(Ket::basis(2, 0));
    const Operator p1 = Operator::projector(Ket::basis(2, 1));
    CMatrix noise = 2.0 * tensor({p0, half_id}).mat() + 3.0 * tensor({half_id, p1}).mat();
    CMatrix m = p * detail::projector_matrix(singlet()) + ((1.0 - p) / 5.0) * noise;
    return {std::move(m), {2, 2}};
}

/// (1/d^N) sum_S (d-1)^|S| rho_{not S} (x) (x)_{i in S} sigma_i, factors kept
/// in party order. S = all parties contributes the product of the sigmas.
inline DensityMatrix multipartite_lift_state(const DensityMatrix &rho,
                                             const std::vector<DensityMatrix> &sigmas) {
    const auto &dims = rho.dims();
    const int n = static_cast<int>(dims.size());
    require(n >= 1 && static_cast<int>(sigmas.size()) == n, Errc::invalid_argument,
            "need one sigma per party");
    const int d = dims[0];
    for (int i = 0; i < n; ++i) {
        require(dims[i] == d, Errc::invalid_argument, "parties must share the local dimension");
        require(sigmas[i].side() == d, Errc::invalid_argument, "sigma dimension mismatch");
    }
    CMatrix acc = CMatrix::Zero(rho.side(), rho.side());
    for (unsigned mask = 0; mask < (1U << n); ++mask) {
        std::vector<int> kept, swapped;
        for (int i = 0; i < n; ++i) {
            ((mask >> i) & 1U ? swapped : kept).push_back(i);
        }
        std::vector<Operator> parts;
        if (!kept.empty()) {
            parts.push_back(kept.size() == static_cast<std::size_t>(n)
                                ? rho.op()
                                : partial_trace(rho.op(), kept));
        }
        for (int i : swapped) {
            parts.push_back(sigmas[i].op());
        }
        const Operator term = tensor(std::span<const Operator>(parts));
        // term's factor sequence is kept ++ swapped; move each party back home.
        std::vector<int> sequence(kept);
        sequence.insert(sequence.end(), swapped.begin(), swapped.end());
        std::vector<int> order(n);
        for (int pos = 0; pos < n; ++pos) {
            order[sequence[pos]] = pos;
        }
        const double w = std::pow(d - 1.0, static_cast<double>(swapped.size()));
        acc += w * permute_factors(term, order).mat();
    }
    acc /= std::pow(static_cast<double>(d), n);
    return {0.5 * (acc + acc.adjoint()), dims};
}

/// Two-party lift: (1/d^2)[rho0 + (d-1)(rho_A sigma_B + sigma_A rho_B) + (d-1)^2 sigma_A sigma_B].
inline DensityMatrix hirsch_lift_state(const DensityMatrix &rho0, const DensityMatrix &sigma_a,
                                       const DensityMatrix &sigma_b) {
    require(rho0.dims().size() == 2, Errc::invalid_argument, "rho0 must be bipartite");
    return multipartite_lift_state(rho0, {sigma_a, sigma_b});
}

/// 1/8 - (1/16) sum_i a_i (s_i s_i 1 + s_i 1 s_i) + (1/24) sum_i 1 s_i s_i
inline DensityMatrix toth_acin_class(double a1, double a2, double a3) {
    const std::array<double, 3> a{a1, a2, a3};
    for (double ai : a) {
        require(ai >= -1.0 && ai <= 1.0, Errc::invalid_argument, "a_i must lie in [-1, 1]");
    }
    const Operator id(CMatrix::Identity(2, 2));
    CMatrix m = CMatrix::Identity(8, 8) / 8.0;
    for (int i = 0; i < 3; ++i) {
        const Operator s(pauli(i));
        m -= (a[i] / 16.0) * (tensor({s, s, id}).mat() + tensor({s, id, s}).mat());
        m += (1.0 / 24.0) * tensor({id, s, s}).mat();
    }
    return {std::move(m), {2, 2, 2}};
}

/// Sufficient condition for genuine multipartite entanglement of the family.
inline bool toth_acin_gme(double a1, double a2, double a3) { return a1 + a2 + a3 > 2.0; }

/// Partial transpose on factor `which`.
inline Operator partial_transpose(const Operator &op, int which) {
    const auto &dims = op.dims();
    require(which >= 0 && which < op.factors(), Errc::invalid_argument, "factor index out of range");
    CMatrix out(op.side(), op.side());
    std::vector<int> rd, cd;
    std::vector<int> all(dims.size());
    std::iota(all.begin(), all.end(), 0);
    for (long r = 0; r < op.side(); ++r) {
        for (long c = 0; c < op.side(); ++c) {
            detail::unravel(r, dims, rd);
            detail::unravel(c, dims, cd);
            std::swap(rd[which], cd[which]);
            out(detail::ravel(rd, dims, all), detail::ravel(cd, dims, all)) = op.mat()(r, c);
        }
    }
    return {std::move(out), dims};
}

/// Sanity utility only: true when the partial transpose on the last factor is PSD.
inline bool ppt(const DensityMatrix &rho, double tol = 1e-10) {
    const Operator pt = partial_transpose(rho.op(), rho.op().factors() - 1);
    return hermitian_eigenvalues(pt.mat()).minCoeff() >= -tol;
}

// ---------------------------------------------------------------------------
// Critical probabilities
// ---------------------------------------------------------------------------

/// Closed interval; a point value has lo == hi.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    [[nodiscard]] bool is_point() const { return lo == hi; }
    static Interval point(double v) { return {v, v}; }
};

struct ThresholdTable {
    Family family = Family::werner;
    int d = 2;
    Interval p_sep;
    double p_pm = 0.0;
    double p_povm = 0.0;
};

inline double harmonic(int d) {
    double h = 0.0;
    for (int k = 1; k <= d; ++k) {
        h += 1.0 / k;
    }
    return h;
}

/// Weight of the noisy-state protocol over the product protocol, fixed by
/// q(1-p) = (1-q)/(d-1).
inline double noisy_mixing_weight(int d, double p) { return 1.0 / (1.0 + (1.0 - p) * (d - 1)); }

inline double werner_p_sep(int d) { return 1.0 / (d + 1.0); }
inline double werner_p_pm(int d) { return (d - 1.0) / d; }
/// (3d-1)/(d(d+1)) ((d-1)/d)^(d-1); shared by Werner and isotropic states.
inline double werner_p_povm(int d) {
    return (3.0 * d - 1.0) / (d * (d + 1.0)) * std::pow((d - 1.0) / d, d - 1.0);
}
inline double isotropic_p_pm(int d) { return (harmonic(d) - 1.0) / (d - 1.0); }

inline ThresholdTable thresholds(Family family, int d) {
    detail::check_local_dim(d);
    ThresholdTable t;
    t.family = family;
    t.d = d;
    switch (family) {
    case Family::werner:
        t.p_sep = Interval::point(werner_p_sep(d));
        t.p_pm = werner_p_pm(d);
        t.p_povm = werner_p_povm(d);
        return t;
    case Family::isotropic:
        t.p_sep = Interval::point(1.0 / (d + 1.0));
        t.p_pm = isotropic_p_pm(d);
        t.p_povm = werner_p_povm(d);
        return t;
    case Family::noisy: {
        const double dd = static_cast<double>(d) * d;
        t.p_sep = {1.0 / (dd - 1.0), 2.0 / (dd + 2.0)};
        const double pm = isotropic_p_pm(d);
        const double povm = werner_p_povm(d);
        t.p_pm = pm * noisy_mixing_weight(d, pm);
        t.p_povm = povm * noisy_mixing_weight(d, povm);
        return t;
    }
    default:
        throw Error(Errc::invalid_argument,
                    "no threshold table for family '" + std::string(to_string(family)) + "'");
    }
}

inline ThresholdTable thresholds(std::string_view family, int d) {
    return thresholds(family_from_string(family), d);
}

} // namespace lhvlab
