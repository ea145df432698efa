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
 * JSON and CSV forms of the library's values.
 *
 *   operator     {"dims":[2,2],"re":[[...]],"im":[[...]]}   (row-major)
 *   ket          {"re":[...],"im":[...]}
 *   measurement  {"d":2,"projective":true,
 *                 "effects":[{"eta":1,"bloch":[0,0,1],"outcome":0},...]}
 *                qubit effects are written in Bloch form, larger ones as
 *                {"eta":..,"projector":<operator>,"outcome":..}
 *   family       {"family":"werner","d":3,"p":0.5}
 *   model        {"model":"barrett","d":3}
 *
 * Parsers raise Error(invalid_argument) on malformed documents; value
 * validation (trace, completeness, ...) is left to the constructors.
 */

#pragma once

#include <charconv>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "../measurements.hpp"
#include "../states.hpp"
#include "../verify/behavior.hpp"

namespace lhvlab {

using json = nlohmann::json;

namespace io {

namespace detail {

template <class F> auto guarded(const char *what, F f) -> decltype(f()) {
    try {
        return f();
    } catch (const nlohmann::json::exception &e) {
        throw Error(Errc::invalid_argument, std::string("malformed ") + what + ": " + e.what());
    }
}

inline json real_rows(const Eigen::MatrixXd &m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            row.push_back(m(i, j));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Eigen::MatrixXd real_matrix(const json &rows, Eigen::Index n) {
    require(rows.is_array() && static_cast<Eigen::Index>(rows.size()) == n,
            Errc::invalid_argument, "matrix row count does not match dims");
    Eigen::MatrixXd m(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const json &row = rows[static_cast<std::size_t>(i)];
        require(row.is_array() && static_cast<Eigen::Index>(row.size()) == n,
                Errc::invalid_argument, "matrix must be square");
        for (Eigen::Index j = 0; j < n; ++j) {
            m(i, j) = row[static_cast<std::size_t>(j)].get<double>();
        }
    }
    return m;
}

} // namespace detail

// ---------------------------------------------------------------------------
// Operators, kets, states
// ---------------------------------------------------------------------------

inline json to_json(const Operator &op) {
    return {{"dims", op.dims()},
            {"re", detail::real_rows(op.mat().real())},
            {"im", detail::real_rows(op.mat().imag())}};
}

inline json to_json(const DensityMatrix &rho) { return to_json(rho.op()); }

inline Operator operator_from_json(const json &j) {
    return detail::guarded("operator", [&] {
        const auto dims = j.at("dims").get<std::vector<int>>();
        require(!dims.empty(), Errc::invalid_argument, "operator needs dims");
        Eigen::Index n = 1;
        for (int d : dims) {
            require(d >= 1, Errc::invalid_argument, "dims must be positive");
            n *= d;
        }
        CMatrix m(n, n);
        m.real() = detail::real_matrix(j.at("re"), n);
        m.imag() = j.contains("im") ? detail::real_matrix(j.at("im"), n)
                                    : Eigen::MatrixXd::Zero(n, n);
        return Operator(std::move(m), dims);
    });
}

inline DensityMatrix density_from_json(const json &j) {
    return DensityMatrix(operator_from_json(j));
}

inline json to_json(const Ket &k) {
    json re = json::array(), im = json::array();
    for (Eigen::Index i = 0; i < k.vec().size(); ++i) {
        re.push_back(k.vec()(i).real());
        im.push_back(k.vec()(i).imag());
    }
    return {{"re", re}, {"im", im}};
}

inline Ket ket_from_json(const json &j) {
    return detail::guarded("ket", [&] {
        const auto re = j.at("re").get<std::vector<double>>();
        const auto im = j.contains("im") ? j.at("im").get<std::vector<double>>()
                                         : std::vector<double>(re.size(), 0.0);
        require(!re.empty() && re.size() == im.size(), Errc::invalid_argument,
                "ket re/im lengths differ");
        CVector v(static_cast<Eigen::Index>(re.size()));
        for (std::size_t i = 0; i < re.size(); ++i) {
            v(static_cast<Eigen::Index>(i)) = {re[i], im[i]};
        }
        return Ket(std::move(v));
    });
}

// ---------------------------------------------------------------------------
// Measurements
// ---------------------------------------------------------------------------

inline json to_json(const Measurement &m) {
    json effects = json::array();
    for (const Effect &e : m.effects()) {
        json je = {{"eta", e.eta}, {"outcome", e.outcome}};
        if (m.dim() == 2) {
            const BlochVector b = bloch_from_ket(e.ket);
            je["bloch"] = {b.x, b.y, b.z};
        } else {
            je["projector"] = to_json(e.projector());
        }
        effects.push_back(std::move(je));
    }
    return {{"d", m.dim()}, {"projective", m.projective()}, {"effects", effects}};
}

/// Unit ket spanning a rank-one projector (its largest column, normalised).
inline CVector ket_of_projector(const CMatrix &p) {
    Eigen::Index best = 0;
    p.colwise().norm().maxCoeff(&best);
    const double n = p.col(best).norm();
    require(n > 0.5, Errc::invalid_measurement, "effect projector is not rank one");
    return p.col(best) / n;
}

inline Measurement measurement_from_json(const json &j) {
    return detail::guarded("measurement", [&] {
        const int d = j.at("d").get<int>();
        std::vector<Effect> effects;
        int outcomes = 0;
        for (const json &je : j.at("effects")) {
            Effect e;
            e.eta = je.value("eta", 1.0);
            e.outcome = je.value("outcome", static_cast<int>(effects.size()));
            if (je.contains("bloch")) {
                require(d == 2, Errc::invalid_measurement, "Bloch effects need d = 2");
                const auto b = je.at("bloch").get<std::vector<double>>();
                require(b.size() == 3, Errc::invalid_argument, "Bloch vector needs 3 entries");
                e.ket = ket_from_bloch({b[0], b[1], b[2]}).vec();
            } else {
                const Operator p = operator_from_json(je.at("projector"));
                require(p.side() == d, Errc::invalid_measurement, "projector dimension");
                e.ket = ket_of_projector(p.mat());
            }
            outcomes = std::max(outcomes, e.outcome + 1);
            effects.push_back(std::move(e));
        }
        Measurement m(std::move(effects), outcomes);
        require(m.dim() == d, Errc::invalid_measurement, "measurement dimension");
        if (j.value("projective", false)) {
            require(m.projective(), Errc::invalid_measurement,
                    "marked projective but effects are not orthogonal projectors");
        }
        return m;
    });
}

// ---------------------------------------------------------------------------
// State families
// ---------------------------------------------------------------------------

/// A state family with its parameters.
struct FamilySpec {
    Family family = Family::werner;
    int d = 2;
    double p = 0.5;
    std::optional<Ket> psi;             ///< noisy: pure state on C^d (x) C^d
    std::optional<Ket> eta;             ///< raimat: qubit
    std::array<double, 3> a{1, 1, 1};   ///< toth-acin-class
};

inline json to_json(const FamilySpec &f) {
    json j = {{"family", std::string(to_string(f.family))}};
    switch (f.family) {
    case Family::toth_acin_class: j["a"] = f.a; break;
    case Family::bvqb:
    case Family::raimat: j["p"] = f.p; break;
    default:
        j["d"] = f.d;
        j["p"] = f.p;
    }
    if (f.psi) j["psi"] = to_json(*f.psi);
    if (f.eta) j["eta"] = to_json(*f.eta);
    return j;
}

inline FamilySpec family_from_json(const json &j) {
    return detail::guarded("family", [&] {
        FamilySpec f;
        f.family = family_from_string(j.at("family").get<std::string>());
        f.d = j.value("d", 2);
        f.p = j.value("p", 0.5);
        if (j.contains("psi")) f.psi = ket_from_json(j.at("psi"));
        if (j.contains("eta")) f.eta = ket_from_json(j.at("eta"));
        if (j.contains("a")) f.a = j.at("a").get<std::array<double, 3>>();
        return f;
    });
}

inline DensityMatrix make_state(const FamilySpec &f) {
    switch (f.family) {
    case Family::werner: return werner_state(f.d, f.p);
    case Family::isotropic: return isotropic_state(f.d, f.p);
    case Family::noisy:
        require(f.psi.has_value(), Errc::invalid_argument, "noisy family needs psi");
        return noisy_state(DensityMatrix::pure(*f.psi, {f.d, f.d}), f.p);
    case Family::raimat: return raimat_state(f.p, f.eta.value_or(Ket::basis(2, 0)));
    case Family::bvqb: return bvqb_state(f.p);
    case Family::toth_acin_class: return toth_acin_class(f.a[0], f.a[1], f.a[2]);
    default:
        throw Error(Errc::invalid_argument, "family '" + std::string(to_string(f.family)) +
                                                "' has no parameter descriptor");
    }
}

// ---------------------------------------------------------------------------
// Threshold tables
// ---------------------------------------------------------------------------

/// Shortest text that reads back as the same double.
inline std::string csv_number(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

inline std::string csv_header() { return "family,d,p_sep,p_pm,p_povm\n"; }

/// Point values print as numbers, intervals as the quoted field "[lo, hi]".
inline std::string csv_row(const ThresholdTable &t) {
    std::string sep = t.p_sep.is_point()
                          ? csv_number(t.p_sep.lo)
                          : "\"[" + csv_number(t.p_sep.lo) + ", " + csv_number(t.p_sep.hi) + "]\"";
    return std::string(to_string(t.family)) + "," + std::to_string(t.d) + "," + sep + "," +
           csv_number(t.p_pm) + "," + csv_number(t.p_povm) + "\n";
}

// ---------------------------------------------------------------------------
// Behaviors
// ---------------------------------------------------------------------------

/// Cell-by-cell comparison of a sampled behavior against a reference.
inline json behavior_report(const Behavior &sampled, const Behavior &reference,
                            const CompareReport &cmp) {
    json cells = json::array(), est = json::array(), se = json::array(), ref = json::array(),
         z = json::array();
    std::vector<int> digits;
    for (std::size_t t = 0; t < sampled.rows(); ++t) {
        const auto shape = sampled.row_shape(t);
        for (std::size_t c = 0; c < sampled.p[t].size(); ++c) {
            lhvlab::detail::unravel(static_cast<long>(c), shape, digits);
            cells.push_back({{"x", sampled.tuples[t]}, {"a", digits}});
            est.push_back(sampled.p[t][c]);
            se.push_back(sampled.exact() ? 0.0 : sampled.std_err[t][c]);
            ref.push_back(reference.p[t][c]);
            z.push_back(cmp.z[t][c]);
        }
    }
    return {{"cells", cells},       {"estimates", est},         {"std_errors", se},
            {"expected", ref},      {"z_scores", z},            {"max_abs_dev", cmp.max_abs_dev},
            {"max_z", cmp.max_z},   {"failures", cmp.failures}, {"worst_cell", cmp.worst_cell}};
}

} // namespace io
} // namespace lhvlab
