// Copyright 2026 The definetti Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>

#include <Eigen/Dense>

namespace definetti {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Thrown when operands disagree on site dimension or site count.
class DimensionError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// Thrown when a hermitian-only routine is handed a non-hermitian operator.
class NotHermitianError : public std::domain_error {
   public:
    using std::domain_error::domain_error;
};

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kPsdTol = 1e-10;
inline constexpr double kTraceOneTol = 1e-10;
inline constexpr double kNormTol = 1e-12;

/// d^m, throwing std::overflow_error if it does not fit in 63 bits.
std::int64_t ipow(std::int64_t d, int m);

/// A unit vector on `sites` copies of C^site_dim. Site 1 is the most
/// significant index of the amplitude vector.
class PureState {
   public:
    PureState(int site_dim, int sites, Vector amplitudes);

    /// Normalizes `amplitudes` first; throws if the norm is zero.
    static PureState normalized(int site_dim, int sites, Vector amplitudes);
    static PureState basis(int site_dim, int sites, std::int64_t index);

    int site_dim() const { return site_dim_; }
    int sites() const { return sites_; }
    std::int64_t dim() const { return amplitudes_.size(); }
    const Vector& amplitudes() const { return amplitudes_; }
    cplx operator[](std::int64_t i) const { return amplitudes_[i]; }

    /// |this⟩^{⊗copies}
    PureState power(int copies) const;
    /// |this⟩ ⊗ |other⟩
    PureState tensor(const PureState& other) const;
    /// ⟨this|other⟩
    cplx inner(const PureState& other) const;

   private:
    int site_dim_;
    int sites_;
    Vector amplitudes_;
};

/// Dense square operator on `sites` copies of C^site_dim.
class Operator {
   public:
    Operator(int site_dim, int sites, Matrix entries);

    static Operator zero(int site_dim, int sites);
    static Operator identity(int site_dim, int sites);
    /// |v⟩⟨v|
    static Operator projector(const PureState& v);

    int site_dim() const { return site_dim_; }
    int sites() const { return sites_; }
    std::int64_t dim() const { return entries_.rows(); }
    const Matrix& matrix() const { return entries_; }

    cplx trace() const { return entries_.trace(); }
    /// Largest entrywise |a_ij - conj(a_ji)|.
    double hermitian_defect() const;
    bool is_hermitian(double tol = kHermitianTol) const;
    bool is_psd(double tol = kPsdTol) const;
    bool is_trace_one(double tol = kTraceOneTol) const;
    /// Largest entrywise modulus.
    double max_abs() const;

    Operator adjoint() const;
    /// ⟨v|A|v⟩
    cplx expectation(const PureState& v) const;

    Operator& operator+=(const Operator& other);
    Operator& operator-=(const Operator& other);
    Operator& operator*=(cplx s);

    friend Operator operator+(Operator a, const Operator& b) { return a += b; }
    friend Operator operator-(Operator a, const Operator& b) { return a -= b; }
    friend Operator operator*(Operator a, cplx s) { return a *= s; }
    friend Operator operator*(cplx s, Operator a) { return a *= s; }
    friend Operator operator*(const Operator& a, const Operator& b);

   private:
    int site_dim_;
    int sites_;
    Matrix entries_;
};

/// Kronecker product; the left factor occupies the leading sites.
Operator tensor(const Operator& a, const Operator& b);

/// Trace over the trailing `k` sites.
Operator partial_trace_last(const Operator& rho, int k);

/// (I ⊗ ⟨psi|^{⊗k}) rho (I ⊗ |psi⟩^{⊗k}) for a single-site `psi`.
Operator sandwich_bra_last(const Operator& rho, const PureState& psi, int k);

/// Sum of absolute eigenvalues. Hermitian input only.
double trace_norm(const Operator& a);

double min_eigenvalue(const Operator& a);

/// Eigenvalues in ascending order. Hermitian input only.
Eigen::VectorXd eigenvalues(const Operator& a);

/// Principal square root of a PSD operator; eigenvalues below zero are
/// clamped, so callers must validate PSD-ness within tolerance first.
Operator psd_sqrt(const Operator& a);

/// Operator that permutes two sites of an m-site register.
Operator swap_sites(int site_dim, int sites, int i, int j);

/// Random sampling helpers used by property suites and the CLI.
using Rng = std::mt19937_64;

/// Normalized complex Gaussian vector; Haar-distributed on the unit sphere.
PureState random_pure(int site_dim, int sites, Rng& rng);
/// Unitary drawn from the Haar measure (QR of a Ginibre matrix with phase fix).
Matrix random_unitary(std::int64_t dim, Rng& rng);
/// Random density operator of random rank in [1, dim].
Matrix random_density(std::int64_t dim, Rng& rng);
/// Random effect 0 <= X <= I: Haar eigenbasis, uniform eigenvalues in [0,1].
Matrix random_effect(std::int64_t dim, Rng& rng);

}  // namespace definetti
