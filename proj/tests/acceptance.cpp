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

// Acceptance run: one PASS/FAIL line per criterion, each with its time budget.
// Exit status is nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "definetti/certifier.hpp"
#include "definetti/haar.hpp"
#include "definetti/hamming.hpp"
#include "definetti/symmetric.hpp"

using namespace definetti;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;
};

std::string fmt(const char* format, double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, format, value);
    return buf;
}

// Criterion 1: c_{n,d} ∫|θ⟩⟨θ|^{⊗n} = Π^sym_n.
Outcome postselection() {
    Outcome out;
    double exact_err = 0.0;
    for (int n = 1; n <= 6; ++n) {
        const QuadratureRule rule = exact_qubit_rule(n);
        const Operator avg = integrate(rule, [&](const PureState& t) { return Operator::projector(t.power(n)); });
        exact_err = std::max(exact_err, (static_cast<double>(sym_dim(n, 2)) * avg - symmetrizer(n, 2)).max_abs());
    }
    // Seed 0 is the default Monte Carlo seed everywhere in the tool.
    const QuadratureRule mc = monte_carlo_rule(3, 100000, 0);
    auto integrand = [](const PureState& t) { return Operator::projector(t.power(2)); };
    const double c = static_cast<double>(sym_dim(2, 3));
    const double mc_err = (c * integrate(mc, integrand) - symmetrizer(2, 3)).max_abs();
    const double band = 3.0 * c * integration_error_estimate(mc, integrand);
    out.ok = exact_err <= 1e-11 && mc_err <= 5e-3;
    out.detail = "d=2 n<=6 max_err=" + fmt("%.3g", exact_err) + " (tol 1e-11); d=3 n=2 mc:100000:0 max_err=" +
                 fmt("%.3g", mc_err) + " (tol 5e-3, 3-sigma band " + fmt("%.3g", band) + ")";
    return out;
}

// Criterion 2: Tr(P^{≥r}|θ⟩⟨θ|^{⊗n}) = tail(n, r, |⟨θ|ψ⟩|²).
Outcome tail_identity() {
    Rng rng(2);
    double worst = 0.0;
    for (int pair = 0; pair < 100; ++pair) {
        const int d = 2 + pair % 2;
        const int n = 1 + (pair / 2) % 6;
        const PureState psi = random_pure(d, 1, rng);
        const PureState theta = random_pure(d, 1, rng);
        const WeightProjectorFamily family = weight_family(psi, n);
        const PureState prod = theta.power(n);
        const double x = std::norm(theta.inner(psi));
        for (int r = 0; r <= n + 1; ++r) {
            const double value = threshold_projectors(family, r).at_least.expectation(prod).real();
            worst = std::max(worst, std::abs(value - tail_function(n, r, x)));
        }
    }
    return {worst <= 1e-10, "100 pairs, d in {2,3}, n<=6, all r: max_err=" + fmt("%.3g", worst) + " (tol 1e-10)"};
}

// Criterion 3
Outcome chernoff() {
    double tail = std::numeric_limits<double>::infinity();
    double entropy = std::numeric_limits<double>::infinity();
    for (int n = 1; n <= 50; ++n) {
        for (int r = 1; r <= n; ++r) {
            const ChernoffCheck c = check_chernoff_claim(n, r);
            tail = std::min(tail, c.tail_slack);
            entropy = std::min(entropy, c.entropy_slack);
        }
    }
    return {tail >= -1e-12 && entropy >= -1e-12,
            "n<=50, 1<=r<=n: min(e^{-r/3} - tail)=" + fmt("%.3g", tail) + ", min(n D - r/3)=" + fmt("%.3g", entropy) +
                " (tol -1e-12)"};
}

// Criterion 4
Outcome gentle() {
    Rng rng(4);
    double worst = std::numeric_limits<double>::infinity();
    for (int trial = 0; trial < 200; ++trial) {
        const int dim = 1 + trial % 16;
        const Operator rho(dim, 1, random_density(dim, rng));
        const Operator x(dim, 1, random_effect(dim, rng));
        const GentleCheck g = check_gentle(rho, x);
        worst = std::min(worst, g.rhs - g.lhs);
    }
    return {worst >= -1e-10, "200 trials, dim<=16: min(rhs - lhs)=" + fmt("%.3g", worst) + " (tol -1e-10)"};
}

// Criterion 5
Outcome operator_inequality() {
    Rng rng(5);
    double worst = std::numeric_limits<double>::infinity();
    for (int c = 0; c < 20; ++c) {
        const int n = 1 + c % 4, k = 1 + (c / 4) % 4;
        const Instance inst =
            Instance::from_state(2, n, k, 0, random_symmetric_pure(n + k, 2, 500 + c), "random-sym");
        const PureState psi = random_pure(2, 1, rng);
        worst = std::min(worst, check_operator_inequality(inst, psi, exact_qubit_rule(n + k)));
    }
    return {worst >= -1e-9, "20 cases, d=2, n,k<=4: min eigenvalue=" + fmt("%.3g", worst) + " (tol -1e-9)"};
}

struct EndToEnd {
    Outcome bound;
    Outcome support;
};

// Criteria 6 and 8 share the same verification runs.
EndToEnd end_to_end() {
    struct Named {
        std::string label;
        PureState state;
    };
    std::vector<Named> states{{"product", PureState::basis(2, 8, 0)},
                              {"ghz", ghz_state(8, 2)},
                              {"dicke:4-4", dicke_state(8, 2, {4, 4})},
                              {"dicke:6-2", dicke_state(8, 2, {6, 2})}};
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        states.push_back({"random-sym:" + std::to_string(seed), random_symmetric_pure(8, 2, seed)});
    }

    EndToEnd out;
    const QuadratureRule rule = exact_qubit_rule(8);
    int cells = 0, passed = 0, violations = 0;
    double worst_margin = std::numeric_limits<double>::infinity();
    double worst_err_fraction = 0.0;
    for (const Named& s : states) {
        for (int r = 0; r <= 4; ++r) {
            const VerificationReport rep = verify(Instance::from_state(2, 4, 4, r, s.state, s.label), rule);
            ++cells;
            if (rep.status == Status::kPass) {
                ++passed;
            } else {
                std::printf("  cell %s r=%d: %s lhs=%.6g err=%.3g chain=%.6g explicit=%.6g\n", s.label.c_str(), r,
                            to_string(rep.status).c_str(), rep.lhs, rep.lhs_integration_error, rep.chain_bound,
                            rep.explicit_bound);
            }
            worst_margin = std::min(worst_margin, rep.chain_bound - (rep.lhs - rep.lhs_integration_error));
            worst_err_fraction = std::max(worst_err_fraction, rep.lhs_integration_error / rep.chain_bound);
            violations += rep.support_violations;
        }
    }

    const VerificationReport bell =
        verify(Instance::from_state(2, 1, 1, 1, ghz_state(2, 2), "ghz"), exact_qubit_rule(2));
    const double chain_dev = std::abs(bell.chain_bound - std::sqrt(6.0));
    const double explicit_dev = std::abs(bell.explicit_bound - 6.0 * std::sqrt(3.0) * std::exp(-1.0 / 6.0));
    const bool bell_ok = bell.lhs <= 1e-8 && chain_dev <= 1e-9 && explicit_dev <= 1e-9;

    out.bound.ok = passed == cells && bell_ok;
    out.bound.detail = std::to_string(passed) + "/" + std::to_string(cells) +
                         " cells PASS (n=k=4, r=0..4), min(chain - (lhs - err))=" + fmt("%.3g", worst_margin) +
                         ", max err/chain=" + fmt("%.3g", worst_err_fraction) + "; Bell lhs=" + fmt("%.3g", bell.lhs) +
                         " chain dev=" + fmt("%.3g", chain_dev) + " explicit dev=" + fmt("%.3g", explicit_dev);
    out.support.ok = violations == 0;
    out.support.detail = std::to_string(violations) + " nodes outside the allowed Hamming radius across " +
                         std::to_string(cells) + " cells x " + std::to_string(rule.size()) + " nodes";
    return out;
}

// Criterion 7
Outcome sandwich() {
    std::vector<std::pair<int, int>> grid;
    for (int n = 1; n <= 50; ++n)
        for (int k = 1; k <= 50; ++k) grid.emplace_back(n, k);
    return {check_exponent_sandwich(grid), "1<=n,k<=50 in exact integer arithmetic"};
}

struct Timed {
    Outcome outcome;
    double seconds;
};

Timed timed(const std::function<Outcome()>& f) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o = f();
    const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start;
    return {std::move(o), dt.count()};
}

bool report(int id, const char* name, const Outcome& o, double seconds, double budget) {
    const bool ok = o.ok && seconds < budget;
    std::printf("%s criterion %d (%s): %s [%.2f s, budget %.0f s]\n", ok ? "PASS" : "FAIL", id, name,
                o.detail.c_str(), seconds, budget);
    std::fflush(stdout);
    return ok;
}

}  // namespace

int main() {
    bool all = true;
    {
        const Timed t = timed(postselection);
        all &= report(1, "post-selection identity", t.outcome, t.seconds, 10);
    }
    {
        const Timed t = timed(tail_identity);
        all &= report(2, "tail identity", t.outcome, t.seconds, 30);
    }
    {
        const Timed t = timed(chernoff);
        all &= report(3, "chernoff claim", t.outcome, t.seconds, 60);
    }
    {
        const Timed t = timed(gentle);
        all &= report(4, "gentle measurement", t.outcome, t.seconds, 10);
    }
    {
        const Timed t = timed(operator_inequality);
        all &= report(5, "operator inequality", t.outcome, t.seconds, 60);
    }
    EndToEnd e2e;
    double e2e_seconds = 0.0;
    {
        const auto start = std::chrono::steady_clock::now();
        e2e = end_to_end();
        e2e_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        all &= report(6, "end-to-end bound", e2e.bound, e2e_seconds, 300);
    }
    {
        const Timed t = timed(sandwich);
        all &= report(7, "exponent sandwich", t.outcome, t.seconds, 1);
    }
    all &= report(8, "tau support", e2e.support, e2e_seconds, 300);
    std::printf("%s\n", all ? "ACCEPTANCE PASS" : "ACCEPTANCE FAIL");
    return all ? 0 : 1;
}
