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

#include "definetti/haar.hpp"

#include <numbers>
#include <stdexcept>

namespace definetti {

namespace {

// Neumaier summation; plain accumulation of 1e5 equal weights drifts past 1e-14.
double compensated_sum(const std::vector<double>& values) {
    double sum = 0.0, carry = 0.0;
    for (double v : values) {
        double t = sum + v;
        carry += std::abs(sum) >= std::abs(v) ? (sum - t) + v : (v - t) + sum;
        sum = t;
    }
    return sum + carry;
}

}  // namespace

QuadratureRule::QuadratureRule(int d, std::vector<PureState> nodes, std::vector<double> weights,
                               RuleKind kind, int exact_degree, std::uint64_t seed)
    : d_(d),
      nodes_(std::move(nodes)),
      weights_(std::move(weights)),
      kind_(kind),
      exact_degree_(exact_degree),
      seed_(seed) {
    if (nodes_.empty() || nodes_.size() != weights_.size()) {
        throw std::invalid_argument("QuadratureRule: need one weight per node");
    }
    for (double w : weights_) {
        if (!(w >= 0.0)) throw std::invalid_argument("QuadratureRule: negative weight");
    }
    if (std::abs(compensated_sum(weights_) - 1.0) > 1e-14) throw std::invalid_argument("QuadratureRule: weights must sum to 1");
    for (const auto& node : nodes_) {
        if (node.sites() != 1 || node.site_dim() != d_) {
            throw DimensionError("QuadratureRule: nodes must be single-site states in C^d");
        }
    }
}

std::string QuadratureRule::describe() const {
    if (is_exact()) return "exact:" + std::to_string(exact_degree_);
    return "mc:" + std::to_string(nodes_.size()) + ":" + std::to_string(seed_);
}

std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int points) {
    if (points < 1) throw std::invalid_argument("gauss_legendre: need at least one point");
    std::vector<double> x(points), w(points);
    const int half = (points + 1) / 2;
    for (int i = 0; i < half; ++i) {
        // Tricomi initial guess, then Newton on P_n.
        double z = std::cos(std::numbers::pi * (i + 0.75) / (points + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = z;
            for (int j = 2; j <= points; ++j) {
                double p2 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            dp = points * (z * p1 - p0) / (z * z - 1.0);
            double step = p1 / dp;
            z -= step;
            if (std::abs(step) < 1e-16) break;
        }
        if (points == 1) {
            z = 0.0;
            dp = 1.0;
        }
        x[i] = -z;
        x[points - 1 - i] = z;
        w[i] = w[points - 1 - i] = 2.0 / ((1.0 - z * z) * dp * dp);
    }
    return {x, w};
}

QuadratureRule exact_qubit_rule(int degree) {
    if (degree < 0) throw std::invalid_argument("exact_qubit_rule: negative degree");
    auto [polar, polar_w] = gauss_legendre(degree + 1);
    const int azimuths = 2 * degree + 2;
    std::vector<PureState> nodes;
    std::vector<double> weights;
    nodes.reserve(polar.size() * azimuths);
    weights.reserve(polar.size() * azimuths);
    for (std::size_t a = 0; a < polar.size(); ++a) {
        const double u = polar[a];
        const double up = std::sqrt((1.0 + u) / 2.0);
        const double down = std::sqrt((1.0 - u) / 2.0);
        for (int b = 0; b < azimuths; ++b) {
            const double phi = 2.0 * std::numbers::pi * b / azimuths;
            Vector v(2);
            v << up, std::polar(down, phi);
            nodes.push_back(PureState::normalized(2, 1, std::move(v)));
            weights.push_back(polar_w[a]);
        }
    }
    const double total = compensated_sum(weights);
    for (double& w : weights) w /= total;
    return QuadratureRule(2, std::move(nodes), std::move(weights), RuleKind::kExact, degree, 0);
}

QuadratureRule monte_carlo_rule(int d, std::int64_t samples, std::uint64_t seed) {
    if (samples < 1) throw std::invalid_argument("monte_carlo_rule: need at least one sample");
    if (d < 1) throw std::invalid_argument("monte_carlo_rule: need d >= 1");
    Rng rng(seed);
    std::vector<PureState> nodes;
    nodes.reserve(samples);
    for (std::int64_t s = 0; s < samples; ++s) nodes.push_back(random_pure(d, 1, rng));
    std::vector<double> weights(samples, 1.0 / static_cast<double>(samples));
    return QuadratureRule(d, std::move(nodes), std::move(weights), RuleKind::kMonteCarlo, 0, seed);
}

}  // namespace definetti
