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

// Certification of the exponential de Finetti bound for a pure symmetric
// state ρ on n+k sites.
//
// For each single-site ψ the pipeline forms
//
//   ρ_ψ = (I ⊗ ⟨ψ|^{⊗k}) ρ (I ⊗ |ψ⟩^{⊗k}),   σ_ψ = P^{<r} ρ_ψ P^{<r},
//   τ_ψ = σ_ψ / Tr σ_ψ,
//
// the approximant A = c_{k,d} ∫ Tr(ρ_ψ) τ_ψ dψ, and compares the true
// distance ‖Tr_k ρ − A‖₁ with
//
//   chain bound     3 c_{k,d} (∫ Tr(P^{≥r} ρ_ψ) dψ)^{1/2}
//   explicit bound  3 c_{k,d} √c_{n+k,d} · exp(−(r/6) min(k/n, 1)).

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "definetti/haar.hpp"
#include "definetti/hamming.hpp"
#include "definetti/linalg.hpp"

namespace definetti {

/// An instance outside the hypotheses of the bound. Distinct from
/// a bound violation.
class InstanceError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

inline constexpr double kDefaultFallbackTol = 1e-12;
inline constexpr double kReportSlack = 1e-9;
inline constexpr double kInconclusiveFraction = 0.05;

/// A validated pure symmetric state on n+k sites with a radius r.
class Instance {
   public:
    /// Throws InstanceError when ρ is not a pure state supported on the
    /// symmetric subspace, or when the parameters are out of range.
    static Instance from_state(int d, int n, int k, int r, const PureState& state, std::string label);
    static Instance from_operator(int d, int n, int k, int r, Operator rho, std::string label);

    int d() const { return d_; }
    int n() const { return n_; }
    int k() const { return k_; }
    int r() const { return r_; }
    const Operator& rho() const { return rho_; }
    /// Unit vector with ρ = |state⟩⟨state|, up to a global phase.
    const PureState& state() const { return state_; }
    const std::string& label() const { return label_; }

    /// Copy with a different radius.
    Instance with_radius(int r) const;

   private:
    Instance(int d, int n, int k, int r, Operator rho, PureState state, std::string label);
    void validate() const;

    int d_, n_, k_, r_;
    Operator rho_;
    PureState state_;
    std::string label_;
};

/// (I ⊗ ⟨ψ|^{⊗k}) |state⟩: the unnormalized vector with ρ_ψ = |v⟩⟨v|.
Vector project_onto_psi(const Instance& inst, const PureState& psi);

Operator rho_psi(const Instance& inst, const PureState& psi);

/// c_{k,d} ∫ Tr ρ_ψ dψ; 1 whenever the rule integrates degree k exactly.
double nu_weight_normalization(const Instance& inst, const QuadratureRule& rule);

struct TauResult {
    double rho_trace;
    double sigma_trace;
    Operator tau;
    bool used_fallback;
};

/// σ_ψ and its normalization τ_ψ. When Tr σ_ψ <= fallback_tol (always for
/// r = 0), τ_ψ is replaced by |ψ⟩⟨ψ|^{⊗n}.
TauResult tau_psi(const Instance& inst, const PureState& psi, double fallback_tol = kDefaultFallbackTol);

struct ApproximantResult {
    Operator state;
    int fallback_nodes = 0;
    /// Nodes whose τ_ψ sits farther than allowed from |ψ⟩^{⊗n}: beyond r-1
    /// on the regular branch, beyond r on the fallback branch.
    int support_violations = 0;
    /// Largest Hamming distance seen on the regular branch (-1 if none).
    int max_regular_distance = -1;
};

ApproximantResult approximant_with_diagnostics(const Instance& inst, const QuadratureRule& rule,
                                               double fallback_tol = kDefaultFallbackTol);
Operator approximant(const Instance& inst, const QuadratureRule& rule,
                     double fallback_tol = kDefaultFallbackTol);

struct Estimate {
    double value = 0.0;
    double error = 0.0;
};

/// ‖Tr_k ρ − A‖₁ with a trace-norm integration error estimate: the distance
/// between A from `rule` and from the exact rule four degrees higher, or a
/// Frobenius-based standard error for Monte Carlo rules.
Estimate lhs_distance(const Instance& inst, const QuadratureRule& rule,
                      double fallback_tol = kDefaultFallbackTol);

/// ∫ Tr(P^{≥r} ρ_ψ) dψ
double chain_integral(const Instance& inst, const QuadratureRule& rule);
/// 3 c_{k,d} sqrt(max(0, chain_integral)). Exact rules must reach degree n+k.
double chain_bound(const Instance& inst, const QuadratureRule& rule);

double explicit_bound(int n, int k, int d, int r);

/// max over [0,1] of x^k · tail(n, r, x); throws std::logic_error if the
/// maximum exceeds exp(-(r/3) min(k/n, 1)) + 1e-12.
double g_max(int n, int k, int r);

/// ‖Tr_k ρ − c_{k,d} ∫ ρ_ψ dψ‖₁
double partial_trace_decomposition_error(const Instance& inst, const QuadratureRule& rule);

/// min eigenvalue of c_{n+k,d} ∫ |θ⟩⟨θ|^{⊗n} |⟨θ|ψ⟩|^{2k} dθ − ρ_ψ.
double check_operator_inequality(const Instance& inst, const PureState& psi, const QuadratureRule& rule);

struct GentleCheck {
    double lhs = 0.0;  // ‖ρ − √X ρ √X‖₁
    double rhs = 0.0;  // 2 √Tr ρ · √Tr(ρ(I − X))
};

GentleCheck check_gentle(const Operator& rho, const Operator& x);

/// x ln(x/y) + (1−x) ln((1−x)/(1−y)) with 0 ln 0 = 0.
double relative_entropy(double x, double y);

struct ChernoffCheck {
    double tail_slack = 0.0;     // min of e^{-r/3} − tail(n, r, x)
    double entropy_slack = 0.0;  // min of n·D(r/n ‖ 1−x) − r/3
};

inline constexpr int kChernoffGridPoints = 1000;

/// Grid over x in [1 − r/(3n), 1). Requires 1 <= r <= n.
ChernoffCheck check_chernoff_claim(int n, int r);

/// min{k/n, 1} <= 2k/(n+k) <= 2 min{k/n, 1}, compared in exact integers.
bool check_exponent_sandwich(int n, int k);
bool check_exponent_sandwich(const std::vector<std::pair<int, int>>& grid);

enum class Status { kPass, kViolation, kInconclusive };
std::string to_string(Status status);

struct VerificationReport {
    int d = 0, n = 0, k = 0, r = 0;
    std::string label;
    std::string rule;
    std::size_t nodes = 0;
    std::uint64_t seed = 0;
    double lhs = 0.0;
    double lhs_integration_error = 0.0;
    double chain_bound = 0.0;
    double explicit_bound = 0.0;
    double g_max_value = 0.0;
    double nu_normalization = 0.0;
    int fallback_node_count = 0;
    int support_violations = 0;
    Status status = Status::kViolation;
};

/// Status from the report's numbers: INCONCLUSIVE when the integration
/// error exceeds 5% of the chain bound, otherwise PASS iff
/// lhs − err <= chain + 1e-9 and chain <= explicit + 1e-9.
Status classify(double lhs, double err, double chain, double explicit_value);

VerificationReport verify(const Instance& inst, const QuadratureRule& rule,
                          double fallback_tol = kDefaultFallbackTol);

}  // namespace definetti
