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

#include "definetti/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

namespace definetti::cli {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

template <class Int>
Int parse_integer(const std::string& text, const char* what) {
    Int value{};
    const std::string t = trim(text);
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) {
        throw UsageError(std::string("invalid ") + what + ": '" + text + "'");
    }
    return value;
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::string piece;
    std::istringstream in(text);
    while (std::getline(in, piece, sep)) out.push_back(piece);
    if (!text.empty() && text.back() == sep) out.emplace_back();
    return out;
}

void write_text(const std::string& path, const std::string& text, std::ostream& fallback) {
    if (path.empty() || path == "-") {
        fallback << text;
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw UsageError("cannot open output file '" + path + "'");
    file << text;
}

}  // namespace

// ---------------------------------------------------------------------------
// Specs

std::string StateSpec::label() const {
    switch (kind) {
        case Kind::kProduct: return "product";
        case Kind::kGhz: return "ghz";
        case Kind::kRandomSymmetric: return "random-sym:" + std::to_string(seed);
        case Kind::kDicke: {
            std::string out = "dicke:";
            for (std::size_t i = 0; i < occupation.size(); ++i) {
                if (i) out += '-';
                out += std::to_string(occupation[i]);
            }
            return out;
        }
    }
    return "unknown";
}

PureState StateSpec::build(int sites, int d) const {
    switch (kind) {
        case Kind::kProduct: return PureState::basis(d, sites, 0);
        case Kind::kGhz: return ghz_state(sites, d);
        case Kind::kRandomSymmetric: return random_symmetric_pure(sites, d, seed);
        case Kind::kDicke:
            try {
                return dicke_state(sites, d, occupation);
            } catch (const std::invalid_argument& e) {
                throw UsageError("state " + label() + ": " + e.what() + " (n+k = " + std::to_string(sites) +
                                 ", d = " + std::to_string(d) + ")");
            }
    }
    throw UsageError("unknown state kind");
}

QuadratureRule RuleSpec::build(int d) const {
    if (exact) {
        if (d != 2) throw UsageError("exact rules exist only for d = 2");
        return exact_qubit_rule(degree);
    }
    return monte_carlo_rule(d, samples, seed);
}

StateSpec parse_state(const std::string& text) {
    StateSpec spec;
    const std::string t = trim(text);
    const auto colon = t.find(':');
    const std::string head = t.substr(0, colon);
    const std::string tail = colon == std::string::npos ? "" : t.substr(colon + 1);
    if (head == "product" && colon == std::string::npos) {
        spec.kind = StateSpec::Kind::kProduct;
    } else if (head == "ghz" && colon == std::string::npos) {
        spec.kind = StateSpec::Kind::kGhz;
    } else if (head == "random-sym" && !tail.empty()) {
        spec.kind = StateSpec::Kind::kRandomSymmetric;
        spec.seed = parse_integer<std::uint64_t>(tail, "state seed");
    } else if (head == "dicke" && !tail.empty()) {
        spec.kind = StateSpec::Kind::kDicke;
        std::string normalized = tail;
        std::replace(normalized.begin(), normalized.end(), ',', '-');
        for (const auto& part : split(normalized, '-')) {
            const int count = parse_integer<int>(part, "occupation");
            if (count < 0) throw UsageError("occupation counts must be nonnegative");
            spec.occupation.push_back(count);
        }
    } else {
        throw UsageError("unknown state '" + text + "' (product | ghz | dicke:<m1>-<m2>... | random-sym:<seed>)");
    }
    return spec;
}

RuleSpec parse_rule(const std::string& text) {
    const auto parts = split(trim(text), ':');
    RuleSpec spec;
    if (parts.size() == 2 && parts[0] == "exact") {
        spec.exact = true;
        spec.degree = parse_integer<int>(parts[1], "rule degree");
        if (spec.degree < 0) throw UsageError("rule degree must be nonnegative");
    } else if ((parts.size() == 2 || parts.size() == 3) && parts[0] == "mc") {
        spec.exact = false;
        spec.samples = parse_integer<std::int64_t>(parts[1], "sample count");
        if (spec.samples < 1) throw UsageError("sample count must be positive");
        if (parts.size() == 3) spec.seed = parse_integer<std::uint64_t>(parts[2], "rule seed");
    } else {
        throw UsageError("unknown rule '" + text + "' (exact:<degree> | mc:<samples>[:<seed>])");
    }
    return spec;
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    for (const auto& raw : split(trim(text), ',')) {
        const std::string item = trim(raw);
        const auto dots = item.find("..");
        if (dots == std::string::npos) {
            out.push_back(parse_integer<int>(item, "integer list entry"));
            continue;
        }
        const int lo = parse_integer<int>(item.substr(0, dots), "range start");
        const int hi = parse_integer<int>(item.substr(dots + 2), "range end");
        if (hi < lo) throw UsageError("empty range '" + item + "'");
        for (int v = lo; v <= hi; ++v) out.push_back(v);
    }
    if (out.empty()) throw UsageError("empty integer list");
    return out;
}

std::vector<std::string> read_config_file(const std::string& path) {
    std::ifstream file(path);
    if (!file) throw UsageError("cannot read config file '" + path + "'");
    std::vector<std::string> flags;
    std::string line;
    int line_no = 0;
    while (std::getline(file, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw UsageError(path + ":" + std::to_string(line_no) + ": expected key = value");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw UsageError(path + ":" + std::to_string(line_no) + ": empty key");
        if (key == "allow-large") {
            if (value == "true" || value == "1" || value == "yes") flags.push_back("--allow-large");
            continue;
        }
        flags.push_back("--" + key);
        flags.push_back(value);
    }
    return flags;
}

// ---------------------------------------------------------------------------
// RunConfig

void RunConfig::validate() const {
    if (d < 2) throw UsageError("d must be at least 2");
    if (n < 1) throw UsageError("n must be at least 1");
    if (k_list.empty()) throw UsageError("need at least one k");
    for (int k : k_list) {
        if (k < 1) throw UsageError("k must be at least 1");
        std::int64_t side = 0;
        try {
            side = ipow(d, n + k);
        } catch (const std::overflow_error&) {
            side = std::numeric_limits<std::int64_t>::max();
        }
        if (side > kDeskScaleLimit && !allow_large) {
            throw UsageError("d^(n+k) = " + std::to_string(d) + "^" + std::to_string(n + k) +
                             " exceeds the desk-scale limit 2^20; pass --allow-large to override");
        }
        const RuleSpec spec = rule_for(k);
        if (spec.exact && d != 2) throw UsageError("exact rules exist only for d = 2; use mc:<samples>");
        if (spec.exact && spec.degree < n + k) {
            throw UsageError("exact rule degree " + std::to_string(spec.degree) + " is below n+k = " +
                             std::to_string(n + k));
        }
    }
    for (int r : radii()) {
        if (r < 0 || r > n) throw UsageError("r = " + std::to_string(r) + " is outside [0, n]");
    }
    if (!(fallback_tol >= 0.0)) throw UsageError("fallback-tol must be nonnegative");
}

std::vector<int> RunConfig::radii() const {
    if (!r_list.empty()) return r_list;
    std::vector<int> all(n + 1);
    for (int r = 0; r <= n; ++r) all[r] = r;
    return all;
}

RuleSpec RunConfig::rule_for(int k) const {
    if (rule_given) return rule;
    if (d == 2) return RuleSpec{true, n + k, 0, 0};
    return RuleSpec{false, 0, 100000, 0};
}

// ---------------------------------------------------------------------------
// Output

std::string format_number(double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", value);
    return buf;
}

std::string csv_header() {
    return "d,n,k,r,state,lhs,lhs_err,chain_bound,explicit_bound,g_max,fallback_nodes,nodes,seed,status";
}

std::string csv_row(const VerificationReport& report) {
    std::ostringstream out;
    out << report.d << ',' << report.n << ',' << report.k << ',' << report.r << ',' << report.label << ','
        << format_number(report.lhs) << ',' << format_number(report.lhs_integration_error) << ','
        << format_number(report.chain_bound) << ',' << format_number(report.explicit_bound) << ','
        << format_number(report.g_max_value) << ',' << report.fallback_node_count << ',' << report.nodes << ','
        << report.seed << ',' << to_string(report.status);
    return out.str();
}

std::string json_document(const std::vector<VerificationReport>& reports) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& r : reports) {
        rows.push_back({{"d", r.d},
                        {"n", r.n},
                        {"k", r.k},
                        {"r", r.r},
                        {"state", r.label},
                        {"rule", r.rule},
                        {"lhs", r.lhs},
                        {"lhs_err", r.lhs_integration_error},
                        {"chain_bound", r.chain_bound},
                        {"explicit_bound", r.explicit_bound},
                        {"g_max", r.g_max_value},
                        {"nu_normalization", r.nu_normalization},
                        {"fallback_nodes", r.fallback_node_count},
                        {"support_violations", r.support_violations},
                        {"nodes", r.nodes},
                        {"seed", r.seed},
                        {"status", to_string(r.status)}});
    }
    nlohmann::ordered_json doc = {{"header", csv_header()}, {"rows", rows}};
    return doc.dump(2) + "\n";
}

std::vector<VerificationReport> run_cells(const RunConfig& config) {
    config.validate();
    std::vector<int> ks = config.k_list;
    std::sort(ks.begin(), ks.end());
    ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
    std::vector<int> rs = config.radii();
    std::sort(rs.begin(), rs.end());
    rs.erase(std::unique(rs.begin(), rs.end()), rs.end());

    std::vector<VerificationReport> reports;
    for (int k : ks) {
        const PureState state = config.state.build(config.n + k, config.d);
        const QuadratureRule rule = config.rule_for(k).build(config.d);
        Instance base = [&] {
            try {
                return Instance::from_state(config.d, config.n, k, 0, state, config.state.label());
            } catch (const InstanceError& e) {
                throw UsageError(e.what());
            }
        }();
        for (int r : rs) reports.push_back(verify(base.with_radius(r), rule, config.fallback_tol));
    }
    return reports;
}

int exit_code_for(const std::vector<VerificationReport>& reports) {
    bool inconclusive = false;
    for (const auto& r : reports) {
        if (r.status == Status::kViolation) return kExitViolation;
        if (r.status == Status::kInconclusive) inconclusive = true;
    }
    return inconclusive ? kExitInconclusive : kExitPass;
}

// ---------------------------------------------------------------------------
// check-props

namespace {

struct PropsOptions {
    int sym_max_n = 6;
    std::int64_t mc_samples = 100000;
    int gentle_trials = 200;
    int gentle_max_dim = 16;
    int chernoff_max_n = 50;
    int sandwich_max = 50;
    std::uint64_t seed = 0;
};

bool report_check(std::ostream& out, const std::string& name, double slack) {
    const bool ok = slack >= 0.0;
    out << (ok ? "ok   " : "FAIL ") << name << " slack=" << format_number(slack) << '\n';
    return ok;
}

bool run_property_checks(const PropsOptions& opt, std::ostream& out) {
    bool all = true;

    // Post-selection identity: c_{n,d} ∫|θ⟩⟨θ|^{⊗n} dθ = Π^sym_n.
    for (int n = 1; n <= opt.sym_max_n; ++n) {
        const QuadratureRule rule = exact_qubit_rule(n);
        const Operator avg = integrate(rule, [&](const PureState& t) { return Operator::projector(t.power(n)); });
        const double err = (static_cast<double>(sym_dim(n, 2)) * avg - symmetrizer(n, 2)).max_abs();
        all &= report_check(out, "postselection d=2 n=" + std::to_string(n) + " max_err=" + format_number(err),
                            1e-11 - err);
    }
    {
        const QuadratureRule rule = monte_carlo_rule(3, opt.mc_samples, opt.seed);
        auto integrand = [](const PureState& t) { return Operator::projector(t.power(2)); };
        const double c = static_cast<double>(sym_dim(2, 3));
        const double err = (c * integrate(rule, integrand) - symmetrizer(2, 3)).max_abs();
        // Fixed 5e-3 tolerance; the 3-sigma band of the largest entry is printed for context.
        const double band = 3.0 * c * integration_error_estimate(rule, integrand);
        all &= report_check(out, "postselection d=3 n=2 mc seed=" + std::to_string(opt.seed) + " max_err=" +
                                     format_number(err) + " band3=" + format_number(band),
                            5e-3 - err);
    }

    // Gentle measurement on random (ρ, X).
    {
        Rng rng(opt.seed);
        std::uniform_int_distribution<int> dim_dist(1, opt.gentle_max_dim);
        double worst = std::numeric_limits<double>::infinity();
        for (int t = 0; t < opt.gentle_trials; ++t) {
            const int dim = dim_dist(rng);
            const Operator rho(dim, 1, random_density(dim, rng));
            const Operator x(dim, 1, random_effect(dim, rng));
            const GentleCheck g = check_gentle(rho, x);
            worst = std::min(worst, g.rhs - g.lhs + 1e-10);
        }
        all &= report_check(out, "gentle trials=" + std::to_string(opt.gentle_trials), worst);
    }

    // Chernoff case-one claim.
    {
        double tail = std::numeric_limits<double>::infinity();
        double entropy = std::numeric_limits<double>::infinity();
        for (int n = 1; n <= opt.chernoff_max_n; ++n) {
            for (int r = 1; r <= n; ++r) {
                const ChernoffCheck c = check_chernoff_claim(n, r);
                tail = std::min(tail, c.tail_slack);
                entropy = std::min(entropy, c.entropy_slack);
            }
        }
        all &= report_check(out, "chernoff-tail n<=" + std::to_string(opt.chernoff_max_n), tail + 1e-12);
        all &= report_check(out, "chernoff-entropy n<=" + std::to_string(opt.chernoff_max_n), entropy + 1e-12);
    }

    // Exponent sandwich.
    {
        std::vector<std::pair<int, int>> grid;
        for (int n = 1; n <= opt.sandwich_max; ++n) {
            for (int k = 1; k <= opt.sandwich_max; ++k) grid.emplace_back(n, k);
        }
        const bool ok = check_exponent_sandwich(grid);
        out << (ok ? "ok   " : "FAIL ") << "exponent-sandwich n,k<=" << opt.sandwich_max << '\n';
        all &= ok;
    }
    return all;
}

// Inserts the flags from every --config file right after the subcommand name
// so explicit flags, which come later, take precedence.
std::vector<std::string> expand_config(const std::vector<std::string>& args) {
    std::vector<std::string> config_flags;
    std::vector<std::string> rest;
    for (std::size_t i = 0; i < args.size(); ++i) {
        const std::string& a = args[i];
        if (a == "--config") {
            if (i + 1 >= args.size()) throw UsageError("--config needs a path");
            auto flags = read_config_file(args[++i]);
            config_flags.insert(config_flags.end(), flags.begin(), flags.end());
        } else if (a.rfind("--config=", 0) == 0) {
            auto flags = read_config_file(a.substr(9));
            config_flags.insert(config_flags.end(), flags.begin(), flags.end());
        } else {
            rest.push_back(a);
        }
    }
    if (config_flags.empty() || rest.empty()) return rest;
    std::vector<std::string> out{rest.front()};
    out.insert(out.end(), config_flags.begin(), config_flags.end());
    out.insert(out.end(), rest.begin() + 1, rest.end());
    return out;
}

struct RawRunOptions {
    int d = 2;
    int n = 1;
    std::string k = "1";
    std::string r;
    std::string state = "product";
    std::string rule;
    double fallback_tol = kDefaultFallbackTol;
    bool allow_large = false;
    std::string output;
    std::string json;
    std::string format = "csv";
};

void add_run_options(CLI::App* cmd, RawRunOptions& raw) {
    auto last = [](CLI::Option* o) { o->multi_option_policy(CLI::MultiOptionPolicy::TakeLast); };
    last(cmd->add_option("--d", raw.d, "site dimension"));
    last(cmd->add_option("--n", raw.n, "sites kept"));
    last(cmd->add_option("--k", raw.k, "sites traced out (sweep accepts a list)"));
    last(cmd->add_option("--r", raw.r, "radius list, e.g. 0,1,2 or 0..4 (default: all of [0, n])"));
    last(cmd->add_option("--state", raw.state, "product | ghz | dicke:<m1>-<m2>... | random-sym:<seed>"));
    last(cmd->add_option("--rule", raw.rule, "exact:<degree> | mc:<samples>[:<seed>] (default exact:n+k for d=2)"));
    last(cmd->add_option("--fallback-tol", raw.fallback_tol, "Tr(sigma) threshold below which tau falls back"));
    last(cmd->add_option("--output", raw.output, "output path (default stdout)"));
    last(cmd->add_option("--json", raw.json, "also write the rows as a JSON document here"));
    last(cmd->add_option("--format", raw.format, "csv | json | both (both needs --json or writes JSON to stdout)")
             ->check(CLI::IsMember({"csv", "json", "both"})));
    cmd->add_flag("--allow-large", raw.allow_large, "lift the d^(n+k) <= 2^20 guard");
}

RunConfig to_config(const RawRunOptions& raw, bool allow_k_list) {
    RunConfig config;
    config.d = raw.d;
    config.n = raw.n;
    config.k_list = parse_int_list(raw.k);
    if (!allow_k_list && config.k_list.size() != 1) throw UsageError("verify takes a single k; use sweep for lists");
    if (!raw.r.empty()) config.r_list = parse_int_list(raw.r);
    config.state = parse_state(raw.state);
    if (!raw.rule.empty()) {
        config.rule = parse_rule(raw.rule);
        config.rule_given = true;
    }
    config.fallback_tol = raw.fallback_tol;
    config.allow_large = raw.allow_large;
    config.output = raw.output;
    config.json_output = raw.json;
    return config;
}

int emit(const RunConfig& config, const std::string& format, std::ostream& out) {
    const auto reports = run_cells(config);
    std::string csv = csv_header() + "\n";
    for (const auto& r : reports) csv += csv_row(r) + "\n";
    const std::string json = json_document(reports);
    if (format == "json") {
        write_text(config.output, json, out);
    } else {
        write_text(config.output, csv, out);
        if (format == "both" && config.json_output.empty()) write_text("", json, out);
    }
    if (!config.json_output.empty()) write_text(config.json_output, json, out);
    return exit_code_for(reports);
}

}  // namespace

int run(const std::vector<std::string>& args_in, std::ostream& out, std::ostream& err) {
    try {
        const std::vector<std::string> args = expand_config(args_in);

        CLI::App app{"Certify the exponential de Finetti bound on small symmetric states", "definetti"};
        app.require_subcommand(1);

        RawRunOptions verify_raw;
        CLI::App* verify_cmd = app.add_subcommand("verify", "certify one (d, n, k) instance for each r");
        add_run_options(verify_cmd, verify_raw);

        RawRunOptions sweep_raw;
        CLI::App* sweep_cmd = app.add_subcommand("sweep", "sweep k and r, rows sorted by (n, k, r)");
        add_run_options(sweep_cmd, sweep_raw);

        PropsOptions props;
        CLI::App* props_cmd = app.add_subcommand("check-props", "run the standalone property checks");
        props_cmd->add_option("--seed", props.seed, "seed for the random suites");
        props_cmd->add_option("--sym-max-n", props.sym_max_n, "largest n for the qubit symmetrizer check");
        props_cmd->add_option("--mc-samples", props.mc_samples, "samples for the d=3 symmetrizer check");
        props_cmd->add_option("--gentle-trials", props.gentle_trials, "random (rho, X) pairs");
        props_cmd->add_option("--chernoff-max-n", props.chernoff_max_n, "largest n in the Chernoff grid");
        props_cmd->add_option("--sandwich-max", props.sandwich_max, "largest n and k in the exponent grid");

        std::vector<const char*> argv{"definetti"};
        for (const auto& a : args) argv.push_back(a.c_str());
        try {
            app.parse(static_cast<int>(argv.size()), argv.data());
        } catch (const CLI::CallForHelp&) {
            out << app.help();
            return kExitPass;
        } catch (const CLI::ParseError& e) {
            if (e.get_exit_code() == 0) {
                out << app.help();
                return kExitPass;
            }
            err << "error: " << e.what() << "\n";
            return kExitUsage;
        }

        if (verify_cmd->parsed()) return emit(to_config(verify_raw, false), verify_raw.format, out);
        if (sweep_cmd->parsed()) return emit(to_config(sweep_raw, true), sweep_raw.format, out);
        if (props_cmd->parsed()) return run_property_checks(props, out) ? kExitPass : kExitViolation;
        err << "error: no subcommand\n";
        return kExitUsage;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const InstanceError& e) {
        err << "invalid instance: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
}

}  // namespace definetti::cli
