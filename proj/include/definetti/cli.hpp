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

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "definetti/certifier.hpp"
#include "definetti/haar.hpp"
#include "definetti/symmetric.hpp"

namespace definetti::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitInconclusive = 2;
inline constexpr int kExitUsage = 64;
inline constexpr int kExitInternal = 70;

inline constexpr std::int64_t kDeskScaleLimit = std::int64_t{1} << 20;

/// Bad flags, bad state/rule strings, or limits exceeded; maps to exit 64.
class UsageError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

struct StateSpec {
    enum class Kind { kProduct, kGhz, kDicke, kRandomSymmetric };
    Kind kind = Kind::kProduct;
    OccupationVector occupation;
    std::uint64_t seed = 0;

    /// product | ghz | dicke:<m1>-<m2>-... | random-sym:<seed>
    std::string label() const;
    PureState build(int sites, int d) const;
};

struct RuleSpec {
    bool exact = true;
    int degree = 0;
    std::int64_t samples = 0;
    std::uint64_t seed = 0;

    QuadratureRule build(int d) const;
};

struct RunConfig {
    int d = 2;
    int n = 1;
    std::vector<int> k_list{1};
    std::vector<int> r_list;  // empty means every r in [0, n]
    StateSpec state;
    RuleSpec rule;
    bool rule_given = false;  // otherwise exact:(n+k) for d = 2
    double fallback_tol = kDefaultFallbackTol;
    bool allow_large = false;
    std::string output;  // empty means stdout
    std::string json_output;

    /// Throws UsageError for out-of-range values.
    void validate() const;
    std::vector<int> radii() const;
    RuleSpec rule_for(int k) const;
};

/// Accepts "product", "ghz", "dicke:4-4" (also "dicke:4,4") and "random-sym:7".
StateSpec parse_state(const std::string& text);
/// Accepts "exact:<degree>" and "mc:<samples>[:<seed>]".
RuleSpec parse_rule(const std::string& text);
/// Accepts "1,2,5" and inclusive ranges "0..4", mixed freely.
std::vector<int> parse_int_list(const std::string& text);

/// `key = value` lines; '#' starts a comment. Returns equivalent flags.
std::vector<std::string> read_config_file(const std::string& path);

/// %.12g: 12 significant digits, correctly rounded.
std::string format_number(double value);

std::string csv_header();
std::string csv_row(const VerificationReport& report);
std::string json_document(const std::vector<VerificationReport>& reports);

/// Every (k, r) cell of the config, sorted by (n, k, r).
std::vector<VerificationReport> run_cells(const RunConfig& config);

int exit_code_for(const std::vector<VerificationReport>& reports);

/// Entry point shared by the binary and the tests.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace definetti::cli
