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

#include <cstdint>
#include <vector>

#include "definetti/linalg.hpp"

namespace definetti {

/// Occupation numbers (m_1, ..., m_d) of a type class of site strings.
using OccupationVector = std::vector<int>;

/// Dimension of the symmetric subspace of (C^d)^{⊗n}: C(n+d-1, n).
/// Exact; throws std::overflow_error when the value exceeds 64 bits.
std::uint64_t sym_dim(int n, int d);

/// All occupation vectors of n particles over d levels, in descending
/// lexicographic order, so (n,0,...,0) comes first.
std::vector<OccupationVector> occupations(int n, int d);

/// Orthonormal Dicke basis of the symmetric subspace, one column per
/// occupation vector in the order of `occupations(n, d)`.
class DickeIsometry {
   public:
    DickeIsometry(int n, int d);

    int n() const { return n_; }
    int d() const { return d_; }
    std::int64_t columns() const { return columns_.cols(); }
    const Matrix& matrix() const { return columns_; }
    const std::vector<OccupationVector>& labels() const { return labels_; }

    /// V·c for coefficients in the Dicke basis.
    PureState embed(const Vector& coefficients) const;

   private:
    int n_;
    int d_;
    std::vector<OccupationVector> labels_;
    Matrix columns_;
};

DickeIsometry dicke_isometry(int n, int d);

/// Orthogonal projector onto the symmetric subspace, built as V·V†.
Operator symmetrizer(int n, int d);

/// Equal-amplitude superposition of every site string of type `m`.
PureState dicke_state(int n, int d, const OccupationVector& m);

/// Uniform on the unit sphere of the symmetric subspace of m sites.
PureState random_symmetric_pure(int m, int d, std::uint64_t seed);

/// (|0...0⟩ + |1...1⟩ + ... + |d-1...d-1⟩)/√d
PureState ghz_state(int m, int d);

}  // namespace definetti
