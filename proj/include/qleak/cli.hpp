// Copyright 2026 The qleak Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Ensemble files, quantity dispatch and report formatting for the qleak tool.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "qleak/errors.hpp"
#include "qleak/leakcore.hpp"
#include "qleak/solver.hpp"

namespace qleak::cli {

/// Malformed JSON.
class ParseError : public Error {
public:
    using Error::Error;
};
/// Missing, extra or mistyped fields.
class SchemaError : public Error {
public:
    using Error::Error;
};
/// Well-formed file whose content violates a state or prior invariant.
class InvariantError : public Error {
public:
    using Error::Error;
};
class UnknownQuantity : public Error {
public:
    using Error::Error;
};
class AlphaOutOfDomain : public Error {
public:
    using Error::Error;
};

CQState parse_ensemble_text(std::string_view text);
CQState parse_ensemble(const std::string& path);

/// The recognized quantity tags, sorted.
const std::vector<std::string>& quantity_tags();

/// Parses "inf", "infinity" (any case) or a nonnegative real.
double parse_alpha(std::string_view token);
/// Comma-separated list of alphas.
std::vector<double> parse_alpha_list(std::string_view list);

struct ReportRow {
    std::string quantity;
    double alpha = 0.0;
    ExtReal value;
    bool converged = true;
    int iterations = 0;
    double seconds = 0.0;
};

struct RunOptions {
    SolverConfig solver;
    /// Record wall-clock seconds per row; zero otherwise so output is reproducible.
    bool timing = false;
};

/// One row per distinct (quantity, alpha), sorted by quantity then alpha.
/// Divergence tags compare the states of the first two symbols.
std::vector<ReportRow> run(const std::vector<std::string>& quantities, const std::vector<double>& alphas,
                           const CQState& input, const RunOptions& opts = {});

std::string format_number(double v);
std::string to_csv(const std::vector<ReportRow>& rows);
std::string to_json(const std::vector<ReportRow>& rows);

struct AuditRow {
    std::string check;
    double alpha = 0.0;
    double solver = 0.0;
    double oracle = 0.0;
    double gap = 0.0;
    /// "PASS", "FAIL", or "SKIP:<reason>" when an oracle precondition does not hold.
    std::string status;
};

std::vector<AuditRow> audit(const CQState& input, const std::vector<double>& alphas, int resolution,
                            const SolverConfig& cfg = {});
std::string audit_csv(const std::vector<AuditRow>& rows);
std::string audit_json(const std::vector<AuditRow>& rows);

}  // namespace qleak::cli
