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

#include "definetti/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace definetti {

namespace {

void require_same_shape(const Operator& a, const Operator& b, const char* what) {
    if (a.site_dim() != b.site_dim() || a.sites() != b.sites()) {
        throw DimensionError(std::string(what) + ": operands live on different registers");
    }
}

Matrix hermitian_part(const Matrix& m) { return (m + m.adjoint()) * 0.5; }

void require_hermitian(const Operator& a, const char* what) {
    if (!a.is_hermitian()) {
        throw NotHermitianError(std::string(what) + ": operator is not hermitian (defect " +
                                std::to_string(a.hermitian_defect()) + ")");
    }
}

cplx complex_normal(std::normal_distribution<double>& normal, Rng& rng) {
    double re = normal(rng);
    double im = normal(rng);
    return {re, im};
}

}  // namespace

std::int64_t ipow(std::int64_t d, int m) {
    if (m < 0) throw std::invalid_argument("ipow: negative exponent");
    std::int64_t out = 1;
    for (int i = 0; i < m; ++i) {
        if (__builtin_mul_overflow(out, d, &out)) throw std::overflow_error("ipow: d^m overflows");
    }
    return out;
}

// ---------------------------------------------------------------------------
// PureState

PureState::PureState(int site_dim, int sites, Vector amplitudes)
    : site_dim_(site_dim), sites_(sites), amplitudes_(std::move(amplitudes)) {
    if (site_dim < 1 || sites < 0) throw DimensionError("PureState: bad register shape");
    if (amplitudes_.size() != ipow(site_dim, sites)) {
        throw DimensionError("PureState: amplitude count must equal d^m");
    }
    if (std::abs(amplitudes_.norm() - 1.0) > kNormTol) {
        throw std::invalid_argument("PureState: vector is not normalized");
    }
}

PureState PureState::normalized(int site_dim, int sites, Vector amplitudes) {
    double norm = amplitudes.norm();
    if (!(norm > 0.0)) throw std::invalid_argument("PureState: zero vector");
    amplitudes /= norm;
    return PureState(site_dim, sites, std::move(amplitudes));
}

PureState PureState::basis(int site_dim, int sites, std::int64_t index) {
    Vector v = Vector::Zero(ipow(site_dim, sites));
    if (index < 0 || index >= v.size()) throw std::out_of_range("PureState::basis: index");
    v[index] = 1.0;
    return PureState(site_dim, sites, std::move(v));
}

PureState PureState::power(int copies) const {
    if (copies < 0) throw std::invalid_argument("PureState::power: negative copies");
    Vector out = Vector::Ones(1);
    for (int c = 0; c < copies; ++c) {
        Vector next(out.size() * amplitudes_.size());
        for (Eigen::Index i = 0; i < out.size(); ++i) {
            next.segment(i * amplitudes_.size(), amplitudes_.size()) = out[i] * amplitudes_;
        }
        out = std::move(next);
    }
    return PureState::normalized(site_dim_, sites_ * copies, std::move(out));
}

PureState PureState::tensor(const PureState& other) const {
    if (other.site_dim_ != site_dim_) throw DimensionError("PureState::tensor: site_dim mismatch");
    Vector out(amplitudes_.size() * other.amplitudes_.size());
    for (Eigen::Index i = 0; i < amplitudes_.size(); ++i) {
        out.segment(i * other.amplitudes_.size(), other.amplitudes_.size()) =
            amplitudes_[i] * other.amplitudes_;
    }
    return PureState::normalized(site_dim_, sites_ + other.sites_, std::move(out));
}

cplx PureState::inner(const PureState& other) const {
    if (other.site_dim_ != site_dim_ || other.sites_ != sites_) {
        throw DimensionError("PureState::inner: register mismatch");
    }
    return amplitudes_.dot(other.amplitudes_);
}

// ---------------------------------------------------------------------------
// Operator

Operator::Operator(int site_dim, int sites, Matrix entries)
    : site_dim_(site_dim), sites_(sites), entries_(std::move(entries)) {
    if (site_dim < 1 || sites < 0) throw DimensionError("Operator: bad register shape");
    std::int64_t side = ipow(site_dim, sites);
    if (entries_.rows() != side || entries_.cols() != side) {
        throw DimensionError("Operator: matrix must be square with side d^m");
    }
}

Operator Operator::zero(int site_dim, int sites) {
    std::int64_t side = ipow(site_dim, sites);
    return Operator(site_dim, sites, Matrix::Zero(side, side));
}

Operator Operator::identity(int site_dim, int sites) {
    std::int64_t side = ipow(site_dim, sites);
    return Operator(site_dim, sites, Matrix::Identity(side, side));
}

Operator Operator::projector(const PureState& v) {
    return Operator(v.site_dim(), v.sites(), v.amplitudes() * v.amplitudes().adjoint());
}

double Operator::hermitian_defect() const {
    if (entries_.size() == 0) return 0.0;
    return (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
}

bool Operator::is_hermitian(double tol) const { return hermitian_defect() <= tol; }

bool Operator::is_psd(double tol) const {
    return is_hermitian() && min_eigenvalue(*this) >= -tol;
}

bool Operator::is_trace_one(double tol) const { return std::abs(trace() - cplx(1.0)) <= tol; }

double Operator::max_abs() const {
    if (entries_.size() == 0) return 0.0;
    return entries_.cwiseAbs().maxCoeff();
}

Operator Operator::adjoint() const { return Operator(site_dim_, sites_, entries_.adjoint()); }

cplx Operator::expectation(const PureState& v) const {
    if (v.site_dim() != site_dim_ || v.sites() != sites_) {
        throw DimensionError("Operator::expectation: register mismatch");
    }
    return v.amplitudes().dot(entries_ * v.amplitudes());
}

Operator& Operator::operator+=(const Operator& other) {
    require_same_shape(*this, other, "operator+");
    entries_ += other.entries_;
    return *this;
}

Operator& Operator::operator-=(const Operator& other) {
    require_same_shape(*this, other, "operator-");
    entries_ -= other.entries_;
    return *this;
}

Operator& Operator::operator*=(cplx s) {
    entries_ *= s;
    return *this;
}

Operator operator*(const Operator& a, const Operator& b) {
    require_same_shape(a, b, "operator*");
    return Operator(a.site_dim_, a.sites_, a.entries_ * b.entries_);
}

// ---------------------------------------------------------------------------
// Free functions

Operator tensor(const Operator& a, const Operator& b) {
    if (a.site_dim() != b.site_dim()) throw DimensionError("tensor: site_dim mismatch");
    const Matrix& am = a.matrix();
    const Matrix& bm = b.matrix();
    const Eigen::Index nb = bm.rows();
    Matrix out(am.rows() * nb, am.cols() * nb);
    for (Eigen::Index i = 0; i < am.rows(); ++i) {
        for (Eigen::Index j = 0; j < am.cols(); ++j) {
            out.block(i * nb, j * nb, nb, nb) = am(i, j) * bm;
        }
    }
    return Operator(a.site_dim(), a.sites() + b.sites(), std::move(out));
}

Operator partial_trace_last(const Operator& rho, int k) {
    if (k < 0 || k > rho.sites()) throw std::out_of_range("partial_trace_last: k out of range");
    const std::int64_t kept = ipow(rho.site_dim(), rho.sites() - k);
    const std::int64_t traced = ipow(rho.site_dim(), k);
    const Matrix& m = rho.matrix();
    Matrix out(kept, kept);
    for (std::int64_t a = 0; a < kept; ++a) {
        for (std::int64_t b = 0; b < kept; ++b) {
            out(a, b) = m.block(a * traced, b * traced, traced, traced).trace();
        }
    }
    return Operator(rho.site_dim(), rho.sites() - k, std::move(out));
}

Operator sandwich_bra_last(const Operator& rho, const PureState& psi, int k) {
    if (psi.sites() != 1) throw DimensionError("sandwich_bra_last: psi must be single-site");
    if (psi.site_dim() != rho.site_dim()) throw DimensionError("sandwich_bra_last: site_dim mismatch");
    if (k < 0 || k > rho.sites()) throw DimensionError("sandwich_bra_last: k exceeds site count");
    const Vector phi = psi.power(k).amplitudes();
    const std::int64_t kept = ipow(rho.site_dim(), rho.sites() - k);
    const std::int64_t traced = phi.size();
    const Matrix& m = rho.matrix();
    Matrix out(kept, kept);
    for (std::int64_t a = 0; a < kept; ++a) {
        for (std::int64_t b = 0; b < kept; ++b) {
            out(a, b) = phi.dot(m.block(a * traced, b * traced, traced, traced) * phi);
        }
    }
    return Operator(rho.site_dim(), rho.sites() - k, std::move(out));
}

Eigen::VectorXd eigenvalues(const Operator& a) {
    require_hermitian(a, "eigenvalues");
    if (a.dim() == 0) return {};
    Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian_part(a.matrix()), Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw std::runtime_error("eigenvalues: solver failed");
    return solver.eigenvalues();
}

double trace_norm(const Operator& a) { return eigenvalues(a).cwiseAbs().sum(); }

double min_eigenvalue(const Operator& a) { return eigenvalues(a).minCoeff(); }

Operator psd_sqrt(const Operator& a) {
    require_hermitian(a, "psd_sqrt");
    Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian_part(a.matrix()));
    if (solver.info() != Eigen::Success) throw std::runtime_error("psd_sqrt: solver failed");
    Eigen::VectorXd roots = solver.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    const Matrix& u = solver.eigenvectors();
    return Operator(a.site_dim(), a.sites(), u * roots.asDiagonal() * u.adjoint());
}

Operator swap_sites(int site_dim, int sites, int i, int j) {
    if (i < 0 || j < 0 || i >= sites || j >= sites) throw std::out_of_range("swap_sites: site index");
    const std::int64_t side = ipow(site_dim, sites);
    Matrix out = Matrix::Zero(side, side);
    std::vector<int> digits(sites);
    for (std::int64_t idx = 0; idx < side; ++idx) {
        std::int64_t rest = idx;
        for (int s = sites - 1; s >= 0; --s) {
            digits[s] = static_cast<int>(rest % site_dim);
            rest /= site_dim;
        }
        std::swap(digits[i], digits[j]);
        std::int64_t target = 0;
        for (int s = 0; s < sites; ++s) target = target * site_dim + digits[s];
        out(target, idx) = 1.0;
    }
    return Operator(site_dim, sites, std::move(out));
}

PureState random_pure(int site_dim, int sites, Rng& rng) {
    std::normal_distribution<double> normal;
    Vector v(ipow(site_dim, sites));
    for (auto& x : v) x = complex_normal(normal, rng);
    return PureState::normalized(site_dim, sites, std::move(v));
}

Matrix random_unitary(std::int64_t dim, Rng& rng) {
    std::normal_distribution<double> normal;
    Matrix g(dim, dim);
    for (Eigen::Index i = 0; i < g.size(); ++i) g.data()[i] = complex_normal(normal, rng);
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index i = 0; i < dim; ++i) {
        cplx diag = r(i, i);
        double mag = std::abs(diag);
        if (mag > 0.0) q.col(i) *= diag / mag;
    }
    return q;
}

Matrix random_density(std::int64_t dim, Rng& rng) {
    std::normal_distribution<double> normal;
    std::uniform_int_distribution<std::int64_t> rank_dist(1, dim);
    const std::int64_t rank = rank_dist(rng);
    Matrix g(dim, rank);
    for (Eigen::Index i = 0; i < g.size(); ++i) g.data()[i] = complex_normal(normal, rng);
    Matrix rho = g * g.adjoint();
    rho = hermitian_part(rho);
    return rho / rho.trace().real();
}

Matrix random_effect(std::int64_t dim, Rng& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    Matrix u = random_unitary(dim, rng);
    Eigen::VectorXd eig(dim);
    for (auto& e : eig) e = unit(rng);
    Matrix x = u * eig.asDiagonal() * u.adjoint();
    return hermitian_part(x);
}

}  // namespace definetti
