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

#include <vector>

#include "definetti/linalg.hpp"

namespace definetti {

/// Quantum Hamming weight projectors around the product state |ψ⟩^{⊗n}.
///
/// Q_i is the sum over all i-subsets S of ⊗_{s∉S}|ψ⟩⟨ψ| ⊗_{s∈S}(I-|ψ⟩⟨ψ|):
/// the projector onto vectors with exactly i sites orthogonal to ψ. The
/// individual subset projectors are never materialized.
class WeightProjectorFamily {
   public:
    WeightProjectorFamily(PureState psi, int n, std::vector<Operator> weights);

    const PureState& psi() const { return psi_; }
    int n() const { return n_; }
    /// Q_weight for weight in [0, n].
    const Operator& operator[](int weight) const { return weights_.at(weight); }
    const std::vector<Operator>& projectors() const { return weights_; }

   private:
    PureState psi_;
    int n_;
    std::vector<Operator> weights_;
};

WeightProjectorFamily weight_family(const PureState& psi, int n);

struct ThresholdProjectors {
    Operator below;     // Σ_{i<r} Q_i
    Operator at_least;  // I - below
};

/// Throws std::out_of_range unless 0 <= r <= n+1.
ThresholdProjectors threshold_projectors(const WeightProjectorFamily& family, int r);

inline constexpr double kSupportTol = 1e-10;

/// Smallest r such that tau carries at most `tol` trace mass on weights > r.
/// `tau` must be a density operator (PSD, unit trace within 1e-8).
int hamming_distance(const Operator& tau, const PureState& psi, double tol = kSupportTol);

/// Same, reusing a family already built for `psi` on tau's site count.
int hamming_distance(const Operator& tau, const WeightProjectorFamily& family,
                     double tol = kSupportTol);

/// Σ_{i>=r} C(n,i) x^{n-i} (1-x)^i: probability of at least r failures in
/// n trials with success probability x. Requires x in [0,1], 0 <= r <= n+1.
double tail_function(int n, int r, double x);

/// Exact C(n, i) as a double (exact while the value stays below 2^53).
double binomial(int n, int i);

}  // namespace definetti
