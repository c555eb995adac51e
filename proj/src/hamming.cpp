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

#include "definetti/hamming.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace definetti {

WeightProjectorFamily::WeightProjectorFamily(PureState psi, int n, std::vector<Operator> weights)
    : psi_(std::move(psi)), n_(n), weights_(std::move(weights)) {
    if (static_cast<int>(weights_.size()) != n_ + 1) {
        throw std::invalid_argument("WeightProjectorFamily: need n+1 weight projectors");
    }
}

WeightProjectorFamily weight_family(const PureState& psi, int n) {
    if (psi.sites() != 1) throw DimensionError("weight_family: psi must be single-site");
    if (n < 0) throw std::invalid_argument("weight_family: negative n");
    const int d = psi.site_dim();
    const Operator keep = Operator::projector(psi);
    const Operator flip = Operator::identity(d, 1) - keep;

    // Expand ⊗_s (keep + flip) one site at a time, bucketing by flip count.
    std::vector<Operator> buckets{Operator::identity(d, 0)};
    for (int site = 0; site < n; ++site) {
        std::vector<Operator> next;
        next.reserve(buckets.size() + 1);
        for (std::size_t w = 0; w <= buckets.size(); ++w) {
            if (w == 0) {
                next.push_back(tensor(buckets[0], keep));
            } else if (w == buckets.size()) {
                next.push_back(tensor(buckets[w - 1], flip));
            } else {
                next.push_back(tensor(buckets[w], keep) + tensor(buckets[w - 1], flip));
            }
        }
        buckets = std::move(next);
    }
    return WeightProjectorFamily(psi, n, std::move(buckets));
}

ThresholdProjectors threshold_projectors(const WeightProjectorFamily& family, int r) {
    const int n = family.n();
    if (r < 0 || r > n + 1) {
        throw std::out_of_range("threshold_projectors: r must lie in [0, n+1], got " + std::to_string(r));
    }
    const int d = family.psi().site_dim();
    Operator below = Operator::zero(d, n);
    for (int i = 0; i < r && i <= n; ++i) below += family[i];
    Operator at_least = Operator::identity(d, n) - below;
    return {std::move(below), std::move(at_least)};
}

int hamming_distance(const Operator& tau, const PureState& psi, double tol) {
    return hamming_distance(tau, weight_family(psi, tau.sites()), tol);
}

int hamming_distance(const Operator& tau, const WeightProjectorFamily& family, double tol) {
    if (tau.sites() != family.n() || tau.site_dim() != family.psi().site_dim()) {
        throw DimensionError("hamming_distance: tau and family live on different registers");
    }
    if (!tau.is_psd()) throw std::domain_error("hamming_distance: tau is not PSD");
    if (!tau.is_trace_one(1e-8)) throw std::domain_error("hamming_distance: tau is not normalized");

    const int n = family.n();
    std::vector<double> mass(n + 1);
    for (int i = 0; i <= n; ++i) {
        mass[i] = (family[i].matrix().cwiseProduct(tau.matrix().transpose())).sum().real();
    }
    // Walk down from the top weight while the mass above r stays negligible.
    double above = 0.0;
    int r = n;
    while (r > 0 && above + mass[r] <= tol) {
        above += mass[r];
        --r;
    }
    return r;
}

double binomial(int n, int i) {
    if (i < 0 || i > n) return 0.0;
    i = std::min(i, n - i);
    double out = 1.0;
    for (int j = 1; j <= i; ++j) out = out * (n - i + j) / j;
    return std::round(out);
}

double tail_function(int n, int r, double x) {
    if (n < 0) throw std::domain_error("tail_function: negative n");
    if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("tail_function: x must lie in [0, 1]");
    if (r < 0 || r > n + 1) throw std::domain_error("tail_function: r must lie in [0, n+1]");
    if (r == 0) return 1.0;
    const double fail = 1.0 - x;
    double total = 0.0;
    for (int i = r; i <= n; ++i) {
        total += binomial(n, i) * std::pow(x, n - i) * std::pow(fail, i);
    }
    return std::min(total, 1.0);
}

}  // namespace definetti
