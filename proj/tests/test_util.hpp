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

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <vector>

#include "definetti/linalg.hpp"

namespace definetti::testing {

/// Diagonal operator; the site dimension is inferred as the smallest d >= 2
/// with d^m equal to the entry count (prime sizes become one site).
inline Operator diag(std::initializer_list<double> entries) {
    const auto n = static_cast<std::int64_t>(entries.size());
    Matrix m = Matrix::Zero(n, n);
    std::int64_t i = 0;
    for (double e : entries) m(i, i) = e, ++i;
    for (int d = 2; d <= n; ++d) {
        std::int64_t side = 1;
        int sites = 0;
        while (side < n) side *= d, ++sites;
        if (side == n) return Operator(d, sites, m);
    }
    return Operator(static_cast<int>(n), 1, m);
}

inline double max_diff(const Operator& a, const Operator& b) {
    return (a.matrix() - b.matrix()).cwiseAbs().maxCoeff();
}

/// Single-site qubit state with amplitudes (a, b), normalized.
inline PureState qubit(cplx a, cplx b) {
    Vector v(2);
    v << a, b;
    return PureState::normalized(2, 1, v);
}

/// Brute-force symmetrizer: average of all n! permutation operators, built
/// from adjacent swaps. Independent of the Dicke construction.
inline Operator brute_force_symmetrizer(int n, int d) {
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    const std::int64_t side = ipow(d, n);
    Matrix total = Matrix::Zero(side, side);
    long count = 0;
    std::vector<int> digits(n), moved(n);
    do {
        for (std::int64_t idx = 0; idx < side; ++idx) {
            std::int64_t rest = idx;
            for (int s = n - 1; s >= 0; --s) digits[s] = static_cast<int>(rest % d), rest /= d;
            for (int s = 0; s < n; ++s) moved[perm[s]] = digits[s];
            std::int64_t target = 0;
            for (int s = 0; s < n; ++s) target = target * d + moved[s];
            total(target, idx) += 1.0;
        }
        ++count;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return Operator(d, n, total / static_cast<double>(count));
}

}  // namespace definetti::testing
