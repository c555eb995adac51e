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

// Integration over the Haar measure on pure states of C^d.
//
// Qubits get an exact product rule on the Bloch sphere: Gauss-Legendre in
// the polar coordinate u = cos(polar angle) times equally spaced azimuths.
// A polynomial of degree t in the entries of |θ⟩⟨θ| is a polynomial of degree
// t in the Bloch coordinates, which that rule integrates without error.
// Larger d falls back to seeded Monte Carlo.

#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "definetti/linalg.hpp"

namespace definetti {

enum class RuleKind { kExact, kMonteCarlo };

class QuadratureRule {
   public:
    QuadratureRule(int d, std::vector<PureState> nodes, std::vector<double> weights, RuleKind kind,
                   int exact_degree, std::uint64_t seed);

    int d() const { return d_; }
    RuleKind kind() const { return kind_; }
    bool is_exact() const { return kind_ == RuleKind::kExact; }
    /// Polynomial degree integrated exactly; 0 for Monte Carlo rules.
    int exact_degree() const { return exact_degree_; }
    std::uint64_t seed() const { return seed_; }
    std::size_t size() const { return nodes_.size(); }
    const std::vector<PureState>& nodes() const { return nodes_; }
    const std::vector<double>& weights() const { return weights_; }

    /// "exact:<t>" or "mc:<samples>:<seed>"
    std::string describe() const;

   private:
    int d_;
    std::vector<PureState> nodes_;
    std::vector<double> weights_;
    RuleKind kind_;
    int exact_degree_;
    std::uint64_t seed_;
};

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int points);

QuadratureRule exact_qubit_rule(int degree);
QuadratureRule monte_carlo_rule(int d, std::int64_t samples, std::uint64_t seed);

namespace detail {

inline double max_abs(double x) { return std::abs(x); }
inline double max_abs(const Operator& x) { return x.max_abs(); }

// Entrywise Welford accumulator; complex entries use |x - mean|^2.
template <class T>
struct Welford;

template <>
struct Welford<double> {
    std::int64_t count = 0;
    double mean = 0.0;
    double m2 = 0.0;
    void push(double x) {
        ++count;
        double delta = x - mean;
        mean += delta / static_cast<double>(count);
        m2 += delta * (x - mean);
    }
    double standard_error() const {
        if (count < 2) return 0.0;
        double var = std::max(m2, 0.0) / static_cast<double>(count - 1);
        return std::sqrt(var / static_cast<double>(count));
    }
};

template <>
struct Welford<Operator> {
    std::int64_t count = 0;
    Matrix mean;
    Eigen::MatrixXd m2;
    void push(const Operator& x) {
        ++count;
        if (count == 1) {
            mean = x.matrix();
            m2 = Eigen::MatrixXd::Zero(mean.rows(), mean.cols());
            return;
        }
        Matrix delta = x.matrix() - mean;
        mean += delta / static_cast<double>(count);
        m2 += (delta.conjugate().cwiseProduct(x.matrix() - mean)).real();
    }
    double standard_error() const {
        if (count < 2) return 0.0;
        double worst = m2.cwiseMax(0.0).maxCoeff() / static_cast<double>(count - 1);
        return std::sqrt(worst / static_cast<double>(count));
    }
    /// Standard error of every entry, as a real matrix.
    Eigen::MatrixXd entry_errors() const {
        if (count < 2) return Eigen::MatrixXd::Zero(mean.rows(), mean.cols());
        return (m2.cwiseMax(0.0) / static_cast<double>(count - 1) / static_cast<double>(count))
            .cwiseSqrt();
    }
};

}  // namespace detail

/// Σ_j w_j f(θ_j), reduced in node order. `f` returns double or Operator.
template <class F>
auto integrate(const QuadratureRule& rule, F&& f)
    -> std::decay_t<std::invoke_result_t<F&, const PureState&>> {
    using Result = std::decay_t<std::invoke_result_t<F&, const PureState&>>;
    const auto& nodes = rule.nodes();
    const auto& weights = rule.weights();
    std::optional<Result> total;
    for (std::size_t j = 0; j < nodes.size(); ++j) {
        Result value = f(nodes[j]);
        if (!total) {
            total.emplace(value * weights[j]);
        } else {
            *total += value * weights[j];
        }
    }
    return std::move(*total);
}

/// Error estimate paired with `integrate`.
///
/// Exact rules return 0 when `polynomial_degree` is known and within the
/// rule's degree; otherwise the discrepancy (max entrywise for operators)
/// between the rule and the exact rule four degrees higher. Monte Carlo rules
/// return the sample standard error of the mean (max over entries).
template <class F>
double integration_error_estimate(const QuadratureRule& rule, F&& f,
                                  std::optional<int> polynomial_degree = std::nullopt) {
    using Result = std::decay_t<std::invoke_result_t<F&, const PureState&>>;
    if (rule.is_exact()) {
        if (polynomial_degree && *polynomial_degree <= rule.exact_degree()) return 0.0;
        Result coarse = integrate(rule, f);
        Result fine = integrate(exact_qubit_rule(rule.exact_degree() + 4), f);
        return detail::max_abs(coarse - fine);
    }
    detail::Welford<Result> acc;
    for (const auto& node : rule.nodes()) acc.push(f(node));
    return acc.standard_error();
}

}  // namespace definetti
