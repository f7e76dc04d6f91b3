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

// qleak: leakage quantities of a classical-quantum ensemble read from JSON.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qleak/cli.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitInput = 2;
constexpr int kExitNotConverged = 3;
constexpr int kExitAuditFail = 4;

std::string tag_list() {
    std::string s;
    for (const auto& t : qleak::cli::quantity_tags()) s += (s.empty() ? "" : ", ") + t;
    return s;
}

bool emit(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text << std::flush;
        return static_cast<bool>(std::cout);
    }
    std::ofstream out(path, std::ios::binary);
    out << text;
    return static_cast<bool>(out);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Measured Renyi leakage quantities of a classical-quantum ensemble."};
    std::string input, alphaList, output;
    std::vector<std::string> quantities;
    qleak::SolverConfig cfg;
    bool asJson = false, doAudit = false, timing = false;
    int resolution = 64;

    app.add_option("--input", input, "ensemble JSON file")->required();
    app.add_option("--quantity", quantities, "quantity tag, repeatable: " + tag_list());
    app.add_option("--alpha", alphaList, "comma-separated orders; 'inf' allowed")->required();
    app.add_option("--tol", cfg.tol, "relative solver tolerance")->capture_default_str()->check(CLI::PositiveNumber);
    app.add_option("--max-iter", cfg.maxIter, "iteration cap per solve")->capture_default_str()->check(CLI::PositiveNumber);
    app.add_option("--restarts", cfg.restarts, "random restarts of the measured-divergence solver")
        ->capture_default_str()
        ->check(CLI::NonNegativeNumber);
    app.add_option("--seed", cfg.seed, "seed for random restarts")->capture_default_str();
    app.add_option("--output", output, "output file (default stdout)");
    app.add_flag("--json", asJson, "emit a JSON array instead of CSV");
    app.add_flag("--audit", doAudit, "compare solver values against the brute-force oracles");
    app.add_option("--grid-resolution", resolution, "oracle grid resolution (>= 64)")
        ->capture_default_str()
        ->check(CLI::Range(64, 1 << 16));
    app.add_flag("--timing", timing, "record wall-clock seconds (otherwise 0 for reproducible output)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInput;
    }

    try {
        const std::vector<double> alphas = qleak::cli::parse_alpha_list(alphaList);
        const qleak::CQState ens = qleak::cli::parse_ensemble(input);
        if (doAudit) {
            const auto rows = qleak::cli::audit(ens, alphas, resolution, cfg);
            if (!emit(asJson ? qleak::cli::audit_json(rows) : qleak::cli::audit_csv(rows), output)) {
                std::cerr << "qleak: cannot write output\n";
                return kExitFailure;
            }
            for (const auto& r : rows)
                if (r.status == "FAIL") return kExitAuditFail;
            return kExitOk;
        }
        if (quantities.empty()) {
            std::cerr << "qleak: at least one --quantity is required (or --audit)\n";
            return kExitInput;
        }
        qleak::cli::RunOptions opts{cfg, timing};
        const auto rows = qleak::cli::run(quantities, alphas, ens, opts);
        if (!emit(asJson ? qleak::cli::to_json(rows) : qleak::cli::to_csv(rows), output)) {
            std::cerr << "qleak: cannot write output\n";
            return kExitFailure;
        }
        for (const auto& r : rows)
            if (!r.converged) return kExitNotConverged;
        return kExitOk;
    } catch (const qleak::Error& e) {
        std::cerr << "qleak: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "qleak: internal error: " << e.what() << "\n";
        return kExitFailure;
    }
}
