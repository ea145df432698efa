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
 * Dense complex linear algebra on tensor-product spaces: kets, operators,
 * density matrices, Haar sampling and the qubit Bloch representation.
 *
 * Matrices never exceed 64x64 here (three qudits with d <= 4), so
 * everything is dense and backed by Eigen.
 */

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "error.hpp"

namespace lhvlab {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// The engine every sampler in the library is driven by.
using Rng = std::mt19937_64;

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kTraceTol = 1e-12;
inline constexpr double kPsdTol = -1e-10;
inline constexpr double kNormTol = 1e-12;

/// Independent stream `stream` of the experiment seeded with `seed`.
/// Parallel workers partition work by stream id, never by sharing engines.
inline Rng make_stream(std::uint64_t seed, std::uint64_t stream = 0) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed),
                      static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream),
                      static_cast<std::uint32_t>(stream >> 32), 0x6c68766cU};
    return Rng(seq);
}

// ---------------------------------------------------------------------------
// Ket
// ---------------------------------------------------------------------------

/// Unit vector in C^d.
class Ket {
  public:
    /// Takes ownership of `amplitudes`; throws unless the squared norm is 1.
    explicit Ket(CVector amplitudes) : v_(std::move(amplitudes)) {
        require(v_.size() >= 1, Errc::invalid_dimension, "empty ket");
        require(std::abs(v_.squaredNorm() - 1.0) < kNormTol,
                Errc::invalid_argument, "ket is not normalized");
    }

    static Ket normalized(CVector amplitudes) {
        const double n = amplitudes.norm();
        require(n > 0.0, Errc::invalid_argument, "zero vector");
        return Ket(amplitudes / n);
    }

    static Ket basis(int d, int i) {
        require(d >= 1 && i >= 0 && i < d, Errc::invalid_argument,
                "basis index out of range");
        CVector v = CVector::Zero(d);
        v(i) = 1.0;
        return Ket(std::move(v));
    }

    [[nodiscard]] int dim() const { return static_cast<int>(v_.size()); }
    [[nodiscard]] const CVector &vec() const { return v_; }
    [[nodiscard]] cplx operator[](int i) const { return v_(i); }

  private:
    CVector v_;
};

// ---------------------------------------------------------------------------
// Operator
// ---------------------------------------------------------------------------

/// Square matrix acting on C^{d_1} (x) ... (x) C^{d_n}.
class Operator {
  public:
    Operator() = default;

    Operator(CMatrix m, std::vector<int> dims) : m_(std::move(m)), dims_(std::move(dims)) {
        require(m_.rows() == m_.cols(), Errc::invalid_argument, "operator must be square");
        require(!dims_.empty(), Errc::invalid_argument, "operator needs factor dims");
        const long prod = std::accumulate(dims_.begin(), dims_.end(), 1L,
                                          [](long a, int b) { return a * b; });
        require(prod == m_.rows(), Errc::invalid_dimension,
                "product of factor dimensions must equal matrix side");
    }

    /// Single-factor operator.
    explicit Operator(CMatrix m) : Operator(m, {static_cast<int>(m.rows())}) {}

    static Operator identity(std::vector<int> dims) {
        const int n = std::accumulate(dims.begin(), dims.end(), 1, std::multiplies<>());
        return {CMatrix::Identity(n, n), std::move(dims)};
    }

    static Operator projector(const Ket &k) {
        return Operator(k.vec() * k.vec().adjoint());
    }

    [[nodiscard]] const CMatrix &mat() const { return m_; }
    [[nodiscard]] const std::vector<int> &dims() const { return dims_; }
    [[nodiscard]] int side() const { return static_cast<int>(m_.rows()); }
    [[nodiscard]] int factors() const { return static_cast<int>(dims_.size()); }
    [[nodiscard]] cplx trace() const { return m_.trace(); }

    [[nodiscard]] bool is_hermitian(double tol = kHermitianTol) const {
        return (m_ - m_.adjoint()).cwiseAbs().maxCoeff() < tol;
    }

    [[nodiscard]] Operator adjoint() const { return {m_.adjoint(), dims_}; }
    [[nodiscard]] Operator transpose() const { return {m_.transpose(), dims_}; }
    [[nodiscard]] Operator conjugate() const { return {m_.conjugate(), dims_}; }

    friend Operator operator+(const Operator &a, const Operator &b) {
        require(a.dims_ == b.dims_, Errc::invalid_dimension, "dims mismatch in +");
        return {a.m_ + b.m_, a.dims_};
    }
    friend Operator operator-(const Operator &a, const Operator &b) {
        require(a.dims_ == b.dims_, Errc::invalid_dimension, "dims mismatch in -");
        return {a.m_ - b.m_, a.dims_};
    }
    friend Operator operator*(const Operator &a, const Operator &b) {
        require(a.dims_ == b.dims_, Errc::invalid_dimension, "dims mismatch in *");
        return {a.m_ * b.m_, a.dims_};
    }
    friend Operator operator*(cplx s, const Operator &a) { return {s * a.m_, a.dims_}; }
    friend Operator operator*(double s, const Operator &a) { return {s * a.m_, a.dims_}; }

  private:
    CMatrix m_;
    std::vector<int> dims_;
};

/// max_ij |a_ij - b_ij|
inline double max_abs_diff(const CMatrix &a, const CMatrix &b) {
    return (a - b).cwiseAbs().maxCoeff();
}
inline double max_abs_diff(const Operator &a, const Operator &b) {
    return max_abs_diff(a.mat(), b.mat());
}

/// Eigenvalues (ascending) of a Hermitian matrix.
inline Eigen::VectorXd hermitian_eigenvalues(const CMatrix &m) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(m, Eigen::EigenvaluesOnly);
    return es.eigenvalues();
}

/// f(M) for Hermitian M, applied through the spectral decomposition.
template <class F> CMatrix hermitian_function(const CMatrix &m, F &&f) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(m);
    Eigen::VectorXd vals = es.eigenvalues();
    for (Eigen::Index i = 0; i < vals.size(); ++i) {
        vals(i) = f(vals(i));
    }
    return es.eigenvectors() * vals.asDiagonal() * es.eigenvectors().adjoint();
}

// ---------------------------------------------------------------------------
// DensityMatrix
// ---------------------------------------------------------------------------

/// Trace-one positive semidefinite operator.
class DensityMatrix {
  public:
    explicit DensityMatrix(Operator op) : op_(std::move(op)) {
        require(op_.is_hermitian(), Errc::invalid_argument, "density matrix not Hermitian");
        require(std::abs(op_.trace() - cplx(1.0)) < kTraceTol, Errc::invalid_argument,
                "density matrix trace != 1");
        require(hermitian_eigenvalues(op_.mat()).minCoeff() >= kPsdTol,
                Errc::invalid_argument, "density matrix has a negative eigenvalue");
    }

    DensityMatrix(CMatrix m, std::vector<int> dims)
        : DensityMatrix(Operator(std::move(m), std::move(dims))) {}

    static DensityMatrix pure(const Ket &k) { return DensityMatrix(Operator::projector(k)); }

    static DensityMatrix pure(const Ket &k, std::vector<int> dims) {
        return {k.vec() * k.vec().adjoint(), std::move(dims)};
    }

    static DensityMatrix maximally_mixed(std::vector<int> dims) {
        Operator id = Operator::identity(std::move(dims));
        const double n = id.side();
        return DensityMatrix((1.0 / n) * id);
    }

    [[nodiscard]] const Operator &op() const { return op_; }
    [[nodiscard]] const CMatrix &mat() const { return op_.mat(); }
    [[nodiscard]] const std::vector<int> &dims() const { return op_.dims(); }
    [[nodiscard]] int side() const { return op_.side(); }

    /// Tr(rho X)
    [[nodiscard]] double expectation(const CMatrix &x) const {
        return (op_.mat() * x).trace().real();
    }

  private:
    Operator op_;
};

// ---------------------------------------------------------------------------
// Tensor structure
// ---------------------------------------------------------------------------

inline Operator tensor(std::span<const Operator> ops) {
    require(!ops.empty(), Errc::invalid_argument, "tensor of empty list");
    CMatrix acc = ops[0].mat();
    std::vector<int> dims = ops[0].dims();
    for (std::size_t i = 1; i < ops.size(); ++i) {
        const CMatrix &b = ops[i].mat();
        CMatrix next(acc.rows() * b.rows(), acc.cols() * b.cols());
        for (Eigen::Index r = 0; r < acc.rows(); ++r) {
            for (Eigen::Index c = 0; c < acc.cols(); ++c) {
                next.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = acc(r, c) * b;
            }
        }
        acc = std::move(next);
        dims.insert(dims.end(), ops[i].dims().begin(), ops[i].dims().end());
    }
    return {std::move(acc), std::move(dims)};
}

inline Operator tensor(std::initializer_list<Operator> ops) {
    return tensor(std::span<const Operator>(ops.begin(), ops.size()));
}

inline CVector tensor_kets(const CVector &a, const CVector &b) {
    CVector out(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        out.segment(i * b.size(), b.size()) = a(i) * b;
    }
    return out;
}

namespace detail {

/// Mixed-radix digits of `index` for the given factor dims (factor 0 most significant).
inline void unravel(long index, const std::vector<int> &dims, std::vector<int> &digits) {
    digits.resize(dims.size());
    for (std::size_t k = dims.size(); k-- > 0;) {
        digits[k] = static_cast<int>(index % dims[k]);
        index /= dims[k];
    }
}

inline long ravel(const std::vector<int> &digits, const std::vector<int> &dims,
                  const std::vector<int> &which) {
    long idx = 0;
    for (int k : which) {
        idx = idx * dims[k] + digits[k];
    }
    return idx;
}

} // namespace detail

/// Reduction onto the factors listed in `keep` (kept in ascending order).
inline Operator partial_trace(const Operator &op, std::vector<int> keep) {
    const auto &dims = op.dims();
    const int n = op.factors();
    require(!keep.empty(), Errc::invalid_argument, "partial trace must keep a factor");
    std::sort(keep.begin(), keep.end());
    require(std::adjacent_find(keep.begin(), keep.end()) == keep.end(),
            Errc::invalid_argument, "duplicate factor index");
    require(keep.front() >= 0 && keep.back() < n, Errc::invalid_argument,
            "factor index out of range");

    std::vector<int> traced;
    for (int k = 0; k < n; ++k) {
        if (!std::binary_search(keep.begin(), keep.end(), k)) {
            traced.push_back(k);
        }
    }
    std::vector<int> kept_dims;
    for (int k : keep) {
        kept_dims.push_back(dims[k]);
    }
    const int side = std::accumulate(kept_dims.begin(), kept_dims.end(), 1, std::multiplies<>());
    CMatrix out = CMatrix::Zero(side, side);
    std::vector<int> rd, cd;
    for (long r = 0; r < op.side(); ++r) {
        detail::unravel(r, dims, rd);
        const long rt = detail::ravel(rd, dims, traced);
        const long rk = detail::ravel(rd, dims, keep);
        for (long c = 0; c < op.side(); ++c) {
            detail::unravel(c, dims, cd);
            if (detail::ravel(cd, dims, traced) != rt) {
                continue;
            }
            out(rk, detail::ravel(cd, dims, keep)) += op.mat()(r, c);
        }
    }
    return {std::move(out), std::move(kept_dims)};
}

inline DensityMatrix partial_trace(const DensityMatrix &rho, std::vector<int> keep) {
    return DensityMatrix(partial_trace(rho.op(), std::move(keep)));
}

/// Reorders tensor factors: factor i of the result is factor `order[i]` of `op`.
inline Operator permute_factors(const Operator &op, const std::vector<int> &order) {
    const auto &dims = op.dims();
    require(order.size() == dims.size(), Errc::invalid_argument, "bad permutation size");
    std::vector<int> check(order);
    std::sort(check.begin(), check.end());
    for (std::size_t i = 0; i < check.size(); ++i) {
        require(check[i] == static_cast<int>(i), Errc::invalid_argument, "not a permutation");
    }
    std::vector<int> new_dims;
    for (int k : order) {
        new_dims.push_back(dims[k]);
    }
    CMatrix out(op.side(), op.side());
    std::vector<int> rd, cd;
    for (long r = 0; r < op.side(); ++r) {
        detail::unravel(r, dims, rd);
        const long nr = detail::ravel(rd, dims, order);
        for (long c = 0; c < op.side(); ++c) {
            detail::unravel(c, dims, cd);
            out(nr, detail::ravel(cd, dims, order)) = op.mat()(r, c);
        }
    }
    return {std::move(out), std::move(new_dims)};
}

// ---------------------------------------------------------------------------
// Standard operators
// ---------------------------------------------------------------------------

inline CMatrix pauli(int axis) {
    CMatrix s(2, 2);
    switch (axis) {
    case 0: s << 0, 1, 1, 0; break;
    case 1: s << 0, cplx(0, -1), cplx(0, 1), 0; break;
    case 2: s << 1, 0, 0, -1; break;
    default: throw Error(Errc::invalid_argument, "pauli axis must be 0, 1 or 2");
    }
    return s;
}

/// V |i>|j> = |j>|i> on C^d (x) C^d.
inline Operator swap_operator(int d) {
    CMatrix v = CMatrix::Zero(d * d, d * d);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            v(j * d + i, i * d + j) = 1.0;
        }
    }
    return {std::move(v), {d, d}};
}

/// (1/sqrt d) sum_i |ii>
inline Ket max_entangled(int d) {
    CVector v = CVector::Zero(d * d);
    for (int i = 0; i < d; ++i) {
        v(i * d + i) = 1.0 / std::sqrt(static_cast<double>(d));
    }
    return Ket(std::move(v));
}

/// (|01> - |10>)/sqrt 2
inline Ket singlet() {
    CVector v = CVector::Zero(4);
    v(1) = 1.0 / std::sqrt(2.0);
    v(2) = -1.0 / std::sqrt(2.0);
    return Ket(std::move(v));
}

// ---------------------------------------------------------------------------
// Haar sampling
// ---------------------------------------------------------------------------

/// Fills `out` (already sized d) with a unitarily invariant unit vector.
template <class URBG> void haar_fill(CVector &out, URBG &rng) {
    std::normal_distribution<double> g;
    double n2 = 0.0;
    for (Eigen::Index i = 0; i < out.size(); ++i) {
        const double re = g(rng);
        const double im = g(rng);
        out(i) = cplx(re, im);
        n2 += re * re + im * im;
    }
    out /= std::sqrt(n2);
}

template <class URBG> Ket haar_sample_ket(int d, URBG &rng) {
    require(d >= 2, Errc::invalid_dimension, "Haar ket needs d >= 2");
    CVector v(d);
    haar_fill(v, rng);
    return Ket::normalized(std::move(v));
}

/// Haar unitary: QR of a complex Ginibre matrix with the phases of R's
/// diagonal pushed into Q.
template <class URBG> CMatrix haar_unitary(int d, URBG &rng) {
    require(d >= 1, Errc::invalid_dimension, "unitary needs d >= 1");
    std::normal_distribution<double> g;
    CMatrix z(d, d);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            z(i, j) = cplx(g(rng), g(rng)) / std::sqrt(2.0);
        }
    }
    Eigen::HouseholderQR<CMatrix> qr(z);
    CMatrix q = qr.householderQ();
    CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < d; ++j) {
        const cplx rjj = r(j, j);
        const double a = std::abs(rjj);
        q.col(j) *= (a > 0.0 ? rjj / a : cplx(1.0));
    }
    return q;
}

// ---------------------------------------------------------------------------
// Bloch representation
// ---------------------------------------------------------------------------

struct BlochVector {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    [[nodiscard]] double norm() const { return std::sqrt(x * x + y * y + z * z); }
    [[nodiscard]] double dot(const BlochVector &o) const { return x * o.x + y * o.y + z * o.z; }
    [[nodiscard]] double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
    [[nodiscard]] BlochVector operator-() const { return {-x, -y, -z}; }
    [[nodiscard]] BlochVector scaled(double s) const { return {s * x, s * y, s * z}; }
    [[nodiscard]] BlochVector unit() const {
        const double n = norm();
        require(n > 0.0, Errc::invalid_argument, "zero Bloch vector has no direction");
        return scaled(1.0 / n);
    }
};

/// (1 + v.sigma)/2; a rank-one projector when |v| = 1.
inline Operator projector_from_bloch(const BlochVector &v) {
    require(v.norm() <= 1.0 + kNormTol, Errc::invalid_argument, "Bloch vector longer than 1");
    CMatrix m = 0.5 * (CMatrix::Identity(2, 2) + v.x * pauli(0) + v.y * pauli(1) + v.z * pauli(2));
    return Operator(std::move(m));
}

/// Inverse of `projector_from_bloch` for trace-one Hermitian 2x2 operators.
inline BlochVector bloch_from_operator(const Operator &op) {
    require(op.side() == 2, Errc::invalid_dimension, "Bloch vectors need a qubit operator");
    require(op.is_hermitian(1e-10), Errc::invalid_argument, "operator not Hermitian");
    const CMatrix &m = op.mat();
    const double tr = m.trace().real();
    require(tr > 0.0, Errc::invalid_argument, "operator has non-positive trace");
    return {(m * pauli(0)).trace().real() / tr, (m * pauli(1)).trace().real() / tr,
            (m * pauli(2)).trace().real() / tr};
}

/// Bloch vector of |k><k| for a qubit ket.
inline BlochVector bloch_from_ket(const CVector &k) {
    const cplx a = k(0);
    const cplx b = k(1);
    const cplx ab = std::conj(a) * b;
    return {2.0 * ab.real(), 2.0 * ab.imag(), std::norm(a) - std::norm(b)};
}

/// Ket whose projector has unit Bloch vector `v` (global phase fixed by a real first entry).
inline Ket ket_from_bloch(const BlochVector &v) {
    const BlochVector u = v.unit();
    const double theta = std::acos(std::clamp(u.z, -1.0, 1.0));
    const double phi = std::atan2(u.y, u.x);
    CVector k(2);
    k << std::cos(theta / 2), std::polar(std::sin(theta / 2), phi);
    return Ket::normalized(std::move(k));
}

/// Uniform point on the unit sphere in R^3.
template <class URBG> BlochVector uniform_sphere(URBG &rng) {
    std::normal_distribution<double> g;
    for (;;) {
        BlochVector v{g(rng), g(rng), g(rng)};
        const double n = v.norm();
        if (n > 1e-300) {
            return v.scaled(1.0 / n);
        }
    }
}

/// Point on the unit sphere with density (1 + lambda_3)/(4 pi).
/// lambda_3 = 2 sqrt(u) - 1 inverts the cdf ((1+t)/2)^2 of the third coordinate.
template <class URBG> BlochVector tilted_sphere(URBG &rng) {
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    const double t = 2.0 * std::sqrt(u01(rng)) - 1.0;
    const double phi = 2.0 * M_PI * u01(rng);
    const double s = std::sqrt(std::max(0.0, 1.0 - t * t));
    return {s * std::cos(phi), s * std::sin(phi), t};
}

} // namespace lhvlab
