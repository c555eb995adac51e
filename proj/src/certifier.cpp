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

#include "definetti/certifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "definetti/symmetric.hpp"

namespace definetti {

namespace {

constexpr double kRankTol = 1e-10;
constexpr double kSymmetricSupportTol = 1e-9;
constexpr double kEffectTol = 1e-10;
constexpr int kGmaxGridPoints = 10000;

double c_sym(int n, int d) { return static_cast<double>(sym_dim(n, d)); }

void require_exact_degree(const QuadratureRule& rule, int degree, const char* what) {
    if (rule.is_exact() && rule.exact_degree() < degree) {
        throw std::invalid_argument(std::string(what) + ": exact rule must reach degree n+k = " +
                                    std::to_string(degree) + ", got " + rule.describe());
    }
}

void require_rule_matches(const Instance& inst, const QuadratureRule& rule) {
    if (rule.d() != inst.d()) throw DimensionError("quadrature rule and instance disagree on d");
}

// Everything the pipeline needs from one quadrature node.
struct NodeTerms {
    double rho_trace = 0.0;    // ‖v‖²
    double sigma_trace = 0.0;  // ‖P^{<r} v‖²
    double tail_mass = 0.0;    // ‖P^{≥r} v‖² = Tr(P^{≥r} ρ_ψ)
    Vector tau;                // unit vector with τ_ψ = |tau⟩⟨tau|
    bool fallback = false;
};

NodeTerms evaluate_node(const Instance& inst, const PureState& psi, const WeightProjectorFamily& family,
                        double fallback_tol) {
    NodeTerms out;
    const Vector v = project_onto_psi(inst, psi);
    const ThresholdProjectors p = threshold_projectors(family, inst.r());
    const Vector kept = p.below.matrix() * v;
    const Vector dropped = p.at_least.matrix() * v;
    out.rho_trace = v.squaredNorm();
    out.sigma_trace = kept.squaredNorm();
    out.tail_mass = dropped.squaredNorm();
    if (out.sigma_trace > fallback_tol) {
        out.tau = kept / std::sqrt(out.sigma_trace);
    } else {
        out.tau = psi.power(inst.n()).amplitudes();
        out.fallback = true;
    }
    return out;
}

struct Accumulation {
    Matrix approximant;
    int fallback_nodes = 0;
    int support_violations = 0;
    int max_regular_distance = -1;
    std::optional<detail::Welford<Operator>> spread;
};

Accumulation accumulate(const Instance& inst, const QuadratureRule& rule, double fallback_tol,
                        bool track_support, bool track_spread) {
    require_rule_matches(inst, rule);
    const double ck = c_sym(inst.k(), inst.d());
    const std::int64_t side = ipow(inst.d(), inst.n());
    Accumulation acc;
    acc.approximant = Matrix::Zero(side, side);
    if (track_spread) acc.spread.emplace();
    const auto& nodes = rule.nodes();
    const auto& weights = rule.weights();
    for (std::size_t j = 0; j < nodes.size(); ++j) {
        const WeightProjectorFamily family = weight_family(nodes[j], inst.n());
        const NodeTerms terms = evaluate_node(inst, nodes[j], family, fallback_tol);
        const Matrix tau = terms.tau * terms.tau.adjoint();
        acc.approximant.noalias() += (ck * weights[j] * terms.rho_trace) * tau;
        if (terms.fallback) ++acc.fallback_nodes;
        if (track_support) {
            const int distance = hamming_distance(Operator(inst.d(), inst.n(), tau), family);
            const int allowed = terms.fallback ? inst.r() : std::max(inst.r() - 1, 0);
            if (distance > allowed) ++acc.support_violations;
            if (!terms.fallback) acc.max_regular_distance = std::max(acc.max_regular_distance, distance);
        }
        if (acc.spread) acc.spread->push(Operator(inst.d(), inst.n(), (ck * terms.rho_trace) * tau));
    }
    return acc;
}

// a/b <= c/d for positive denominators.
bool fraction_leq(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) { return a * d <= c * b; }

}  // namespace

// ---------------------------------------------------------------------------
// Instance

Instance::Instance(int d, int n, int k, int r, Operator rho, PureState state, std::string label)
    : d_(d), n_(n), k_(k), r_(r), rho_(std::move(rho)), state_(std::move(state)), label_(std::move(label)) {}

Instance Instance::from_state(int d, int n, int k, int r, const PureState& state, std::string label) {
    if (state.site_dim() != d || n < 1 || k < 1 || state.sites() != n + k) {
        throw InstanceError("instance: state must live on n+k sites of dimension d, with n, k >= 1");
    }
    Instance inst(d, n, k, r, Operator::projector(state), state, std::move(label));
    inst.validate();
    return inst;
}

Instance Instance::from_operator(int d, int n, int k, int r, Operator rho, std::string label) {
    if (rho.site_dim() != d || n < 1 || k < 1 || rho.sites() != n + k) {
        throw InstanceError("instance: rho must live on n+k sites of dimension d, with n, k >= 1");
    }
    if (!rho.is_hermitian()) throw InstanceError("instance: rho is not hermitian");
    Eigen::SelfAdjointEigenSolver<Matrix> solver(rho.matrix());
    const Eigen::Index top = solver.eigenvalues().size() - 1;
    Vector v = solver.eigenvectors().col(top);
    PureState state = PureState::normalized(d, n + k, std::move(v));
    Instance inst(d, n, k, r, std::move(rho), std::move(state), std::move(label));
    inst.validate();
    return inst;
}

void Instance::validate() const {
    if (r_ < 0 || r_ > n_) throw InstanceError("instance: r must lie in [0, n]");
    if (!rho_.is_hermitian()) throw InstanceError("instance: rho is not hermitian");
    if (!rho_.is_trace_one()) throw InstanceError("instance: rho does not have unit trace");
    const Eigen::VectorXd eig = eigenvalues(rho_);
    if (eig.minCoeff() < -kPsdTol) throw InstanceError("instance: rho is not positive semidefinite");
    if (eig.size() > 1 && eig[eig.size() - 2] > kRankTol) throw InstanceError("instance: rho is not pure");
    const Operator sym = symmetrizer(n_ + k_, d_);
    const double leak = trace_norm(sym * rho_ * sym - rho_);
    if (leak > kSymmetricSupportTol) {
        throw InstanceError("instance: rho is not supported on the symmetric subspace (leak " +
                            std::to_string(leak) + ")");
    }
}

Instance Instance::with_radius(int r) const {
    if (r < 0 || r > n_) throw InstanceError("instance: r must lie in [0, n]");
    Instance copy = *this;
    copy.r_ = r;
    return copy;
}

// ---------------------------------------------------------------------------
// Pipeline pieces

Vector project_onto_psi(const Instance& inst, const PureState& psi) {
    if (psi.sites() != 1 || psi.site_dim() != inst.d()) {
        throw DimensionError("project_onto_psi: psi must be a single site of dimension d");
    }
    const Vector phi = psi.power(inst.k()).amplitudes();
    const std::int64_t kept = ipow(inst.d(), inst.n());
    Eigen::Map<const Matrix> amplitudes(inst.state().amplitudes().data(), phi.size(), kept);
    return amplitudes.transpose() * phi.conjugate();
}

Operator rho_psi(const Instance& inst, const PureState& psi) {
    const Vector v = project_onto_psi(inst, psi);
    return Operator(inst.d(), inst.n(), v * v.adjoint());
}

double nu_weight_normalization(const Instance& inst, const QuadratureRule& rule) {
    require_rule_matches(inst, rule);
    return c_sym(inst.k(), inst.d()) *
           integrate(rule, [&](const PureState& psi) { return project_onto_psi(inst, psi).squaredNorm(); });
}

TauResult tau_psi(const Instance& inst, const PureState& psi, double fallback_tol) {
    const WeightProjectorFamily family = weight_family(psi, inst.n());
    NodeTerms terms = evaluate_node(inst, psi, family, fallback_tol);
    return {terms.rho_trace, terms.sigma_trace, Operator(inst.d(), inst.n(), terms.tau * terms.tau.adjoint()),
            terms.fallback};
}

ApproximantResult approximant_with_diagnostics(const Instance& inst, const QuadratureRule& rule,
                                               double fallback_tol) {
    Accumulation acc = accumulate(inst, rule, fallback_tol, /*track_support=*/true, /*track_spread=*/false);
    return {Operator(inst.d(), inst.n(), std::move(acc.approximant)), acc.fallback_nodes,
            acc.support_violations, acc.max_regular_distance};
}

Operator approximant(const Instance& inst, const QuadratureRule& rule, double fallback_tol) {
    Accumulation acc = accumulate(inst, rule, fallback_tol, false, false);
    return Operator(inst.d(), inst.n(), std::move(acc.approximant));
}

namespace {

Estimate lhs_from(const Instance& inst, const QuadratureRule& rule, double fallback_tol,
                  const Accumulation& acc) {
    const Operator truth = partial_trace_last(inst.rho(), inst.k());
    const Operator approx(inst.d(), inst.n(), acc.approximant);
    Estimate out;
    out.value = trace_norm(truth - approx);
    if (rule.is_exact()) {
        Accumulation finer = accumulate(inst, exact_qubit_rule(rule.exact_degree() + 4), fallback_tol, false, false);
        out.error = trace_norm(approx - Operator(inst.d(), inst.n(), std::move(finer.approximant)));
    } else {
        // ‖E‖₁ <= √D ‖E‖_F, with ‖E‖_F estimated from the entrywise standard errors.
        const Eigen::MatrixXd se = acc.spread->entry_errors();
        out.error = std::sqrt(static_cast<double>(se.rows())) * se.norm();
    }
    return out;
}

}  // namespace

Estimate lhs_distance(const Instance& inst, const QuadratureRule& rule, double fallback_tol) {
    Accumulation acc = accumulate(inst, rule, fallback_tol, false, !rule.is_exact());
    return lhs_from(inst, rule, fallback_tol, acc);
}

double chain_integral(const Instance& inst, const QuadratureRule& rule) {
    require_rule_matches(inst, rule);
    require_exact_degree(rule, inst.n() + inst.k(), "chain_bound");
    return integrate(rule, [&](const PureState& psi) {
        const WeightProjectorFamily family = weight_family(psi, inst.n());
        const Vector v = project_onto_psi(inst, psi);
        return (threshold_projectors(family, inst.r()).at_least.matrix() * v).squaredNorm();
    });
}

double chain_bound(const Instance& inst, const QuadratureRule& rule) {
    const double integral = chain_integral(inst, rule);
    return 3.0 * c_sym(inst.k(), inst.d()) * std::sqrt(std::max(0.0, integral));
}

double explicit_bound(int n, int k, int d, int r) {
    if (n < 1 || k < 1 || r < 0 || r > n) throw std::invalid_argument("explicit_bound: need n, k >= 1, 0 <= r <= n");
    const double rate = std::min(static_cast<double>(k) / n, 1.0);
    return 3.0 * c_sym(k, d) * std::sqrt(c_sym(n + k, d)) * std::exp(-(r / 6.0) * rate);
}

double g_max(int n, int k, int r) {
    if (n < 1 || k < 0 || r < 0 || r > n) throw std::invalid_argument("g_max: need n >= 1, k >= 0, 0 <= r <= n");
    auto g = [&](double x) { return std::pow(x, k) * tail_function(n, r, x); };
    int best = 0;
    double best_value = g(0.0);
    for (int i = 1; i <= kGmaxGridPoints; ++i) {
        const double value = g(static_cast<double>(i) / kGmaxGridPoints);
        if (value > best_value) {
            best_value = value;
            best = i;
        }
    }
    // Golden-section refinement on the two grid cells around the best point.
    double lo = std::max(0, best - 1) / static_cast<double>(kGmaxGridPoints);
    double hi = std::min(kGmaxGridPoints, best + 1) / static_cast<double>(kGmaxGridPoints);
    const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = hi - ratio * (hi - lo), b = lo + ratio * (hi - lo);
    double ga = g(a), gb = g(b);
    for (int iter = 0; iter < 100 && hi - lo > 1e-15; ++iter) {
        if (ga < gb) {
            lo = a;
            a = b;
            ga = gb;
            b = lo + ratio * (hi - lo);
            gb = g(b);
        } else {
            hi = b;
            b = a;
            gb = ga;
            a = hi - ratio * (hi - lo);
            ga = g(a);
        }
    }
    best_value = std::max({best_value, ga, gb});
    const double bound = std::exp(-(r / 3.0) * std::min(static_cast<double>(k) / n, 1.0));
    if (best_value > bound + 1e-12) {
        throw std::logic_error("g_max: maximum " + std::to_string(best_value) + " exceeds exp(-(r/3)min(k/n,1)) = " +
                               std::to_string(bound));
    }
    return best_value;
}

double partial_trace_decomposition_error(const Instance& inst, const QuadratureRule& rule) {
    require_rule_matches(inst, rule);
    const double ck = c_sym(inst.k(), inst.d());
    const Operator average = integrate(rule, [&](const PureState& psi) { return rho_psi(inst, psi); });
    return trace_norm(partial_trace_last(inst.rho(), inst.k()) - ck * average);
}

double check_operator_inequality(const Instance& inst, const PureState& psi, const QuadratureRule& rule) {
    require_rule_matches(inst, rule);
    require_exact_degree(rule, inst.n() + inst.k(), "check_operator_inequality");
    const double c_total = c_sym(inst.n() + inst.k(), inst.d());
    const Operator upper = integrate(rule, [&](const PureState& theta) {
        const double overlap = std::norm(theta.inner(psi));
        return Operator::projector(theta.power(inst.n())) * cplx(std::pow(overlap, inst.k()));
    });
    return min_eigenvalue(c_total * upper - rho_psi(inst, psi));
}

GentleCheck check_gentle(const Operator& rho, const Operator& x) {
    if (rho.dim() != x.dim()) throw DimensionError("check_gentle: rho and X differ in dimension");
    if (!rho.is_psd()) throw std::domain_error("check_gentle: rho is not PSD");
    const Eigen::VectorXd eig = eigenvalues(x);
    if (eig.minCoeff() < -kEffectTol || eig.maxCoeff() > 1.0 + kEffectTol) {
        throw std::domain_error("check_gentle: X must satisfy 0 <= X <= I");
    }
    const Operator root = psd_sqrt(x);
    const Operator disturbed = root * rho * root;
    Operator diff = rho - disturbed;
    // Products of hermitian factors drift off hermitian by rounding.
    diff = Operator(diff.site_dim(), diff.sites(), (diff.matrix() + diff.matrix().adjoint()) * 0.5);
    const Operator complement = Operator::identity(x.site_dim(), x.sites()) - x;
    GentleCheck out;
    out.lhs = trace_norm(diff);
    const double miss = std::max(0.0, (rho * complement).trace().real());
    out.rhs = 2.0 * std::sqrt(std::max(0.0, rho.trace().real())) * std::sqrt(miss);
    return out;
}

double relative_entropy(double x, double y) {
    if (!(x >= 0.0 && x <= 1.0 && y >= 0.0 && y <= 1.0)) throw std::domain_error("relative_entropy: arguments in [0,1]");
    auto term = [](double p, double q) {
        if (p == 0.0) return 0.0;
        if (q == 0.0) return std::numeric_limits<double>::infinity();
        return p * std::log(p / q);
    };
    return term(x, y) + term(1.0 - x, 1.0 - y);
}

ChernoffCheck check_chernoff_claim(int n, int r) {
    if (r < 1 || r > n) throw std::invalid_argument("check_chernoff_claim: need 1 <= r <= n");
    const double lo = 1.0 - r / (3.0 * n);
    const double target = std::exp(-r / 3.0);
    const double frequency = static_cast<double>(r) / n;
    ChernoffCheck out{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
    for (int j = 0; j < kChernoffGridPoints; ++j) {
        const double x = lo + (1.0 - lo) * j / kChernoffGridPoints;
        out.tail_slack = std::min(out.tail_slack, target - tail_function(n, r, x));
        out.entropy_slack = std::min(out.entropy_slack, n * relative_entropy(frequency, 1.0 - x) - r / 3.0);
    }
    return out;
}

bool check_exponent_sandwich(int n, int k) {
    if (n < 1 || k < 1) throw std::invalid_argument("check_exponent_sandwich: need n, k >= 1");
    // min{k/n, 1} as num/den.
    const std::int64_t num = std::min(k, n), den = n;
    const bool lower = fraction_leq(num, den, 2LL * k, n + k);
    const bool upper = fraction_leq(2LL * k, n + k, 2 * num, den);
    return lower && upper;
}

bool check_exponent_sandwich(const std::vector<std::pair<int, int>>& grid) {
    return std::all_of(grid.begin(), grid.end(), [](const auto& nk) { return check_exponent_sandwich(nk.first, nk.second); });
}

std::string to_string(Status status) {
    switch (status) {
        case Status::kPass: return "PASS";
        case Status::kViolation: return "VIOLATION";
        case Status::kInconclusive: return "INCONCLUSIVE";
    }
    return "UNKNOWN";
}

Status classify(double lhs, double err, double chain, double explicit_value) {
    if (err > kInconclusiveFraction * std::max(chain, 1e-6)) return Status::kInconclusive;
    if (lhs - err <= chain + kReportSlack && chain <= explicit_value + kReportSlack) return Status::kPass;
    return Status::kViolation;
}

VerificationReport verify(const Instance& inst, const QuadratureRule& rule, double fallback_tol) {
    VerificationReport report;
    report.d = inst.d();
    report.n = inst.n();
    report.k = inst.k();
    report.r = inst.r();
    report.label = inst.label();
    report.rule = rule.describe();
    report.nodes = rule.size();
    report.seed = rule.seed();

    Accumulation acc = accumulate(inst, rule, fallback_tol, /*track_support=*/true, !rule.is_exact());
    const Estimate lhs = lhs_from(inst, rule, fallback_tol, acc);
    report.lhs = lhs.value;
    report.lhs_integration_error = lhs.error;
    report.fallback_node_count = acc.fallback_nodes;
    report.support_violations = acc.support_violations;
    report.chain_bound = chain_bound(inst, rule);
    report.explicit_bound = explicit_bound(inst.n(), inst.k(), inst.d(), inst.r());
    report.g_max_value = g_max(inst.n(), inst.k(), inst.r());
    report.nu_normalization = nu_weight_normalization(inst, rule);
    report.status = classify(report.lhs, report.lhs_integration_error, report.chain_bound, report.explicit_bound);
    return report;
}

}  // namespace definetti
