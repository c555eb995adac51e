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

#include "definetti/symmetric.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>

namespace definetti {

namespace {

// Number of site strings with occupation m.
double multinomial(const OccupationVector& m) {
    // Product of C(prefix, m_i) over levels; exact in 128 bits at desk scale.
    unsigned __int128 count = 1;
    int prefix = 0;
    for (int c : m) {
        for (int i = 1; i <= c; ++i) count = count * static_cast<unsigned __int128>(prefix + i) / i;
        prefix += c;
    }
    return static_cast<double>(count);
}

void fill_occupations(int remaining, int level, OccupationVector& current,
                      std::vector<OccupationVector>& out) {
    const int d = static_cast<int>(current.size());
    if (level == d - 1) {
        current[level] = remaining;
        out.push_back(current);
        return;
    }
    for (int c = remaining; c >= 0; --c) {
        current[level] = c;
        fill_occupations(remaining - c, level + 1, current, out);
    }
}

void validate_occupation(int n, int d, const OccupationVector& m) {
    if (static_cast<int>(m.size()) != d) throw std::invalid_argument("occupation: length must equal d");
    int total = 0;
    for (int c : m) {
        if (c < 0) throw std::invalid_argument("occupation: negative count");
        total += c;
    }
    if (total != n) throw std::invalid_argument("occupation: counts must sum to n");
}

}  // namespace

std::uint64_t sym_dim(int n, int d) {
    if (n < 0 || d < 1) throw std::invalid_argument("sym_dim: need n >= 0, d >= 1");
    // C(n+d-1, d-1) built as a running product; each partial value is itself
    // a binomial coefficient, so the division is exact.
    unsigned __int128 value = 1;
    for (int i = 1; i <= d - 1; ++i) {
        value = value * static_cast<unsigned __int128>(n + i) / static_cast<unsigned __int128>(i);
        if (value > std::numeric_limits<std::uint64_t>::max()) {
            throw std::overflow_error("sym_dim: value exceeds 64 bits");
        }
    }
    return static_cast<std::uint64_t>(value);
}

std::vector<OccupationVector> occupations(int n, int d) {
    if (n < 0 || d < 1) throw std::invalid_argument("occupations: need n >= 0, d >= 1");
    std::vector<OccupationVector> out;
    OccupationVector current(d, 0);
    fill_occupations(n, 0, current, out);
    return out;
}

DickeIsometry::DickeIsometry(int n, int d) : n_(n), d_(d), labels_(occupations(n, d)) {
    const std::int64_t side = ipow(d, n);
    std::map<OccupationVector, std::int64_t> column_of;
    for (std::size_t j = 0; j < labels_.size(); ++j) column_of.emplace(labels_[j], j);

    columns_ = Matrix::Zero(side, static_cast<Eigen::Index>(labels_.size()));
    std::vector<double> amplitude(labels_.size());
    for (std::size_t j = 0; j < labels_.size(); ++j) {
        amplitude[j] = 1.0 / std::sqrt(multinomial(labels_[j]));
    }
    OccupationVector type(d);
    for (std::int64_t idx = 0; idx < side; ++idx) {
        std::fill(type.begin(), type.end(), 0);
        std::int64_t rest = idx;
        for (int s = 0; s < n; ++s) {
            ++type[rest % d];
            rest /= d;
        }
        const std::int64_t col = column_of.at(type);
        columns_(idx, col) = amplitude[col];
    }
}

PureState DickeIsometry::embed(const Vector& coefficients) const {
    if (coefficients.size() != columns_.cols()) throw DimensionError("DickeIsometry::embed: size");
    return PureState::normalized(d_, n_, columns_ * coefficients);
}

DickeIsometry dicke_isometry(int n, int d) { return DickeIsometry(n, d); }

Operator symmetrizer(int n, int d) {
    DickeIsometry v(n, d);
    return Operator(d, n, v.matrix() * v.matrix().adjoint());
}

PureState dicke_state(int n, int d, const OccupationVector& m) {
    validate_occupation(n, d, m);
    const std::int64_t side = ipow(d, n);
    const double amp = 1.0 / std::sqrt(multinomial(m));
    Vector v = Vector::Zero(side);
    OccupationVector type(d);
    for (std::int64_t idx = 0; idx < side; ++idx) {
        std::fill(type.begin(), type.end(), 0);
        std::int64_t rest = idx;
        for (int s = 0; s < n; ++s) {
            ++type[rest % d];
            rest /= d;
        }
        if (type == m) v[idx] = amp;
    }
    return PureState::normalized(d, n, std::move(v));
}

PureState random_symmetric_pure(int m, int d, std::uint64_t seed) {
    DickeIsometry v(m, d);
    Rng rng(seed);
    std::normal_distribution<double> normal;
    Vector c(v.columns());
    for (auto& x : c) {
        double re = normal(rng);
        double im = normal(rng);
        x = cplx(re, im);
    }
    return v.embed(c);
}

PureState ghz_state(int m, int d) {
    if (m < 1 || d < 1) throw std::invalid_argument("ghz_state: need m >= 1, d >= 1");
    const std::int64_t side = ipow(d, m);
    // |j...j⟩ sits at index j * (1 + d + ... + d^{m-1}).
    const std::int64_t stride = (side - 1) / std::max<std::int64_t>(d - 1, 1);
    Vector v = Vector::Zero(side);
    const double amp = 1.0 / std::sqrt(static_cast<double>(d));
    if (d == 1) {
        v[0] = 1.0;
    } else {
        for (int j = 0; j < d; ++j) v[j * stride] = amp;
    }
    return PureState::normalized(d, m, std::move(v));
}

}  // namespace definetti
