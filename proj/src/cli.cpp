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

#include "qleak/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"
#include "qleak/asymp.hpp"
#include "qleak/oracle.hpp"
#include "qleak/qdiv.hpp"

namespace qleak::cli {

using nlohmann::json;

namespace {

constexpr double kPriorSumTol = 1e-8;

std::string squote(const std::string& s) { return "'" + s + "'"; }

const json& field(const json& obj, const char* name) {
    auto it = obj.find(name);
    if (it == obj.end()) throw SchemaError(std::string("missing field '") + name + "'");
    return *it;
}

double number_at(const json& v, const std::string& path) {
    if (!v.is_number()) throw SchemaError(path + ": expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw InvariantError(path + ": value is not finite");
    return x;
}

ComplexMatrix parse_matrix(const json& m, int dim, const std::string& path) {
    if (!m.is_array() || static_cast<int>(m.size()) != dim)
        throw SchemaError(path + ": expected " + std::to_string(dim) + " rows");
    ComplexMatrix out(dim, dim);
    for (int i = 0; i < dim; ++i) {
        const json& row = m[static_cast<std::size_t>(i)];
        const std::string rp = path + "[" + std::to_string(i) + "]";
        if (!row.is_array() || static_cast<int>(row.size()) != dim)
            throw SchemaError(rp + ": expected " + std::to_string(dim) + " entries");
        for (int j = 0; j < dim; ++j) {
            const json& e = row[static_cast<std::size_t>(j)];
            const std::string ep = rp + "[" + std::to_string(j) + "]";
            if (!e.is_array() || e.size() != 2) throw SchemaError(ep + ": expected [re, im]");
            out(i, j) = Complex(number_at(e[0], ep + "[0]"), number_at(e[1], ep + "[1]"));
        }
    }
    return out;
}

// ------------------------------------------------------------------ quantities

struct Computed {
    ExtReal value;
    bool converged = true;
    int iterations = 0;
};

Computed from(const LeakageResult& r) { return {r.value, r.report.converged, r.report.iterations}; }
Computed from(const DivergenceResult& r) { return {r.value, r.report.converged, r.report.iterations}; }

struct PairView {
    const DensityMatrix& rho;
    const HermitianOperator& sigma;
};

PairView first_pair(const CQState& ens, const std::string& tag) {
    if (ens.size() < 2) throw ArityMismatch(tag + " compares the first two states; the alphabet has one symbol");
    return {ens.states()[0], ens.states()[1].op()};
}

enum class Domain { All, Positive, Leakage, HalfUp, AboveOne };

struct QuantityEntry {
    Domain domain;
    std::function<Computed(const CQState&, double, const SolverConfig&)> compute;
};

int largest_power(int dim) {
    int n = 1;
    while (n < 3 && std::pow(static_cast<double>(dim), n + 1) <= 64.0) ++n;
    return n;
}

const std::map<std::string, QuantityEntry>& registry() {
    static const std::map<std::string, QuantityEntry> reg = {
        {"alpha-gain", {Domain::Leakage, [](const CQState& e, double a, const SolverConfig& c) {
             return from(max_expected_alpha_gain(e, a, c));
         }}},
        {"alpha-leakage", {Domain::Leakage, [](const CQState& e, double a, const SolverConfig& c) {
             return from(alpha_leakage(e, a, c));
         }}},
        {"alpha-loss", {Domain::Leakage, [](const CQState& e, double a, const SolverConfig& c) {
             return from(min_expected_alpha_loss(e, a, c));
         }}},
        {"arimoto-capacity", {Domain::All, [](const CQState& e, double a, const SolverConfig& c) {
             return from(arimoto_capacity(e, a, c));
         }}},
        {"arimoto-information", {Domain::All, [](const CQState& e, double a, const SolverConfig& c) {
             return from(measured_arimoto_information(e, a, c));
         }}},
        {"capacity", {Domain::All, [](const CQState& e, double a, const SolverConfig& c) {
             return from(measured_capacity(e, a, c));
         }}},
        {"composition-gap", {Domain::Leakage, [](const CQState& e, double a, const SolverConfig& c) {
             // the mechanism composed with an independent copy of itself
             return Computed{composition_gap(product_mechanism(e, e), e, e, a, c), true, 0};
         }}},
        {"conditional-entropy", {Domain::All, [](const CQState& e, double a, const SolverConfig& c) {
             return from(measured_conditional_entropy(e, a, c));
         }}},
        {"max-alpha-leakage", {Domain::Leakage, [](const CQState& e, double a, const SolverConfig& c) {
             return from(maximal_alpha_leakage(e, a, c));
         }}},
        {"max-relative-entropy", {Domain::All, [](const CQState& e, double, const SolverConfig&) {
             PairView p = first_pair(e, "max-relative-entropy");
             return from(max_relative_entropy(p.rho, p.sigma));
         }}},
        {"measured-divergence", {Domain::All, [](const CQState& e, double a, const SolverConfig& c) {
             PairView p = first_pair(e, "measured-divergence");
             return from(measured(p.rho, p.sigma, a, c));
         }}},
        {"radius", {Domain::All, [](const CQState& e, double a, const SolverConfig& c) {
             return from(divergence_radius(e, a, c));
         }}},
        {"regularize-capacity", {Domain::AboveOne, [](const CQState& e, double a, const SolverConfig& c) {
             RegularizationTrace t = regularized_capacity_trend(e, a, 2, c);
             return Computed{t.perLetterValues.back(), t.report.converged, t.report.iterations};
         }}},
        {"regularize-divergence", {Domain::HalfUp, [](const CQState& e, double a, const SolverConfig& c) {
             PairView p = first_pair(e, "regularize-divergence");
             RegularizationTrace t = regularized_divergence_trace(p.rho, p.sigma, a, largest_power(e.dim()), c);
             return Computed{t.perLetterValues.back(), t.report.converged, t.report.iterations};
         }}},
        {"renyi-information", {Domain::All, [](const CQState& e, double a, const SolverConfig& c) {
             return from(measured_renyi_information(e, a, c));
         }}},
        {"sandwiched-capacity", {Domain::Positive, [](const CQState& e, double a, const SolverConfig& c) {
             CapacityTriple t = sandwiched_capacity_radius(e, a, c);
             return from(t.capacity);
         }}},
        {"sandwiched-divergence", {Domain::Positive, [](const CQState& e, double a, const SolverConfig&) {
             PairView p = first_pair(e, "sandwiched-divergence");
             return from(sandwiched(p.rho, p.sigma, a));
         }}},
        {"umegaki", {Domain::All, [](const CQState& e, double, const SolverConfig&) {
             PairView p = first_pair(e, "umegaki");
             return from(umegaki(p.rho, p.sigma));
         }}},
    };
    return reg;
}

void check_domain(const std::string& tag, Domain d, double a) {
    const std::string shown = format_number(a);
    switch (d) {
        case Domain::All:
            return;
        case Domain::Positive:
            if (a <= 0.0) throw AlphaOutOfDomain(tag + " is defined for alpha in (0, inf], got " + shown);
            return;
        case Domain::Leakage:
            if (a < 1.0) throw AlphaOutOfDomain(tag + " is defined for alpha in [1, inf], got " + shown);
            return;
        case Domain::HalfUp:
            if (a < 0.5) throw AlphaOutOfDomain(tag + " is computed for alpha in [1/2, inf], got " + shown);
            return;
        case Domain::AboveOne:
            if (a <= 1.0) throw AlphaOutOfDomain(tag + " is computed for alpha in (1, inf], got " + shown);
            return;
    }
}

std::string json_number(double v) {
    if (std::isinf(v)) return "\"" + format_number(v) + "\"";
    return format_number(v);
}

}  // namespace

CQState parse_ensemble_text(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
    if (!doc.is_object()) throw SchemaError("top level must be an object");
    for (auto it = doc.begin(); it != doc.end(); ++it)
        if (it.key() != "alphabet" && it.key() != "prior" && it.key() != "dim" && it.key() != "states")
            throw SchemaError("unexpected field " + squote(it.key()));

    const json& alphabet = field(doc, "alphabet");
    if (!alphabet.is_array() || alphabet.empty()) throw SchemaError("alphabet: expected a non-empty list of strings");
    std::vector<std::string> labels;
    std::set<std::string> seen;
    for (std::size_t i = 0; i < alphabet.size(); ++i) {
        if (!alphabet[i].is_string()) throw SchemaError("alphabet[" + std::to_string(i) + "]: expected a string");
        std::string l = alphabet[i].get<std::string>();
        if (!seen.insert(l).second)
            throw InvariantError("alphabet[" + std::to_string(i) + "]: duplicate label " + squote(l));
        labels.push_back(std::move(l));
    }

    const json& prior = field(doc, "prior");
    if (!prior.is_array()) throw SchemaError("prior: expected a list of numbers");
    if (prior.size() != labels.size())
        throw SchemaError("prior: " + std::to_string(prior.size()) + " entries for " + std::to_string(labels.size()) +
                          " symbols");
    std::vector<double> mass;
    double total = 0.0;
    for (std::size_t i = 0; i < prior.size(); ++i) {
        const double v = number_at(prior[i], "prior[" + std::to_string(i) + "]");
        if (v < 0.0) throw InvariantError("prior[" + std::to_string(i) + "] (" + squote(labels[i]) + ") is negative");
        mass.push_back(v);
        total += v;
    }
    if (std::abs(total - 1.0) > kPriorSumTol) throw InvariantError("prior sums to " + format_number(total));
    for (double& v : mass) v /= total;

    const json& dimField = field(doc, "dim");
    if (!dimField.is_number_integer() || dimField.get<long long>() < 1)
        throw SchemaError("dim: expected a positive integer");
    const int dim = static_cast<int>(dimField.get<long long>());

    const json& states = field(doc, "states");
    if (!states.is_object()) throw SchemaError("states: expected an object keyed by label");
    for (auto it = states.begin(); it != states.end(); ++it)
        if (!seen.count(it.key())) throw SchemaError("states: label " + squote(it.key()) + " is not in the alphabet");
    std::vector<DensityMatrix> rhos;
    for (const auto& l : labels) {
        auto it = states.find(l);
        if (it == states.end()) throw SchemaError("states: missing state for label " + squote(l));
        const std::string path = "states." + l;
        ComplexMatrix m = parse_matrix(*it, dim, path);
        try {
            rhos.emplace_back(std::move(m));
        } catch (const Error& e) {
            throw InvariantError(path + ": state for label " + squote(l) + " is invalid: " + e.what());
        }
    }
    return CQState(Distribution(labels, mass), std::move(rhos));
}

CQState parse_ensemble(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_ensemble_text(ss.str());
}

const std::vector<std::string>& quantity_tags() {
    static const std::vector<std::string> tags = [] {
        std::vector<std::string> t;
        for (const auto& [k, v] : registry()) t.push_back(k);
        return t;
    }();
    return tags;
}

double parse_alpha(std::string_view token) {
    std::string t(token);
    t.erase(0, t.find_first_not_of(" \t"));
    t.erase(t.find_last_not_of(" \t") + 1);
    std::string lower = t;
    std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
    if (lower == "inf" || lower == "infinity" || lower == "+inf") return kInf;
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(t, &used);
    } catch (const std::exception&) {
        throw AlphaOutOfDomain("alpha " + squote(t) + " is not a number");
    }
    if (used != t.size() || std::isnan(v) || std::isinf(v)) throw AlphaOutOfDomain("alpha " + squote(t) + " is not a number");
    if (v < 0.0) throw AlphaOutOfDomain("alpha must be in [0, inf], got " + t);
    return v;
}

std::vector<double> parse_alpha_list(std::string_view list) {
    std::vector<double> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = list.find(',', start);
        out.push_back(parse_alpha(list.substr(start, comma == std::string_view::npos ? list.npos : comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

std::vector<ReportRow> run(const std::vector<std::string>& quantities, const std::vector<double>& alphas,
                           const CQState& input, const RunOptions& opts) {
    const std::set<std::string> tags(quantities.begin(), quantities.end());
    const std::set<double> grid(alphas.begin(), alphas.end());
    const auto& reg = registry();
    // validate everything before any solve
    for (const auto& t : tags) {
        auto it = reg.find(t);
        if (it == reg.end()) throw UnknownQuantity("unknown quantity " + squote(t));
        for (double a : grid) check_domain(t, it->second.domain, a);
    }
    std::vector<ReportRow> rows;
    for (const auto& t : tags)
        for (double a : grid) {
            const auto start = std::chrono::steady_clock::now();
            Computed c = reg.at(t).compute(input, a, opts.solver);
            const std::chrono::duration<double> took = std::chrono::steady_clock::now() - start;
            rows.push_back({t, a, c.value, c.converged, c.iterations, opts.timing ? took.count() : 0.0});
        }
    return rows;
}

std::string format_number(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (v == 0.0) v = 0.0;  // no "-0"
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

std::string to_csv(const std::vector<ReportRow>& rows) {
    std::string out = "quantity,alpha,value,converged,iterations,seconds\n";
    for (const auto& r : rows)
        out += r.quantity + "," + format_number(r.alpha) + "," + format_number(r.value.value()) + "," +
               (r.converged ? "true" : "false") + "," + std::to_string(r.iterations) + "," + format_number(r.seconds) +
               "\n";
    return out;
}

std::string to_json(const std::vector<ReportRow>& rows) {
    std::string out = "[";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        out += (i ? ",\n " : "\n ");
        out += "{\"quantity\": \"" + r.quantity + "\", \"alpha\": " + json_number(r.alpha) +
               ", \"value\": " + json_number(r.value.value()) + ", \"converged\": " + (r.converged ? "true" : "false") +
               ", \"iterations\": " + std::to_string(r.iterations) + ", \"seconds\": " + json_number(r.seconds) + "}";
    }
    out += rows.empty() ? "]\n" : "\n]\n";
    return out;
}

// ------------------------------------------------------------------ audit

namespace {

constexpr double kHelstromTol = 1e-6;
constexpr double kGainBelowTol = 2e-3;
constexpr double kSolverTol = 1e-6;
constexpr double kBoundTol = 1e-9;
constexpr double kClassicalTol = 1e-4;
constexpr int kRadiusResolutionCap = 16;

bool commuting(const CQState& e) {
    for (std::size_t x = 0; x < e.size(); ++x)
        for (std::size_t y = x + 1; y < e.size(); ++y)
            if (commutator_norm(e.states()[x].matrix(), e.states()[y].matrix()) > 1e-10) return false;
    return true;
}

double signed_gap(double solver, double oracle) {
    if (std::isinf(solver) && std::isinf(oracle)) return 0.0;
    return solver - oracle;
}

AuditRow skip(std::string check, double alpha, const std::string& reason) {
    return {std::move(check), alpha, 0.0, 0.0, 0.0, "SKIP:" + reason};
}

AuditRow judged(std::string check, double alpha, double solver, double oracle, bool pass) {
    return {std::move(check), alpha, solver, oracle, signed_gap(solver, oracle), pass ? "PASS" : "FAIL"};
}

}  // namespace

std::vector<AuditRow> audit(const CQState& input, const std::vector<double>& alphas, int resolution,
                            const SolverConfig& cfg) {
    if (resolution < 64) throw DomainError("grid resolution must be at least 64");
    const std::set<double> grid(alphas.begin(), alphas.end());
    const bool qubit = input.dim() == 2;
    const bool binary = input.size() == 2;
    const bool classical = commuting(input);
    std::vector<AuditRow> rows;
    for (double a : grid) {
        // Helstrom at infinity, basis grid otherwise
        if (!(qubit && binary)) {
            rows.push_back(skip(std::isinf(a) ? "helstrom" : "grid-gain", a, "needs-binary-qubit"));
        } else if (a < 1.0) {
            rows.push_back(skip("grid-gain", a, "alpha-below-1"));
        } else {
            const double s = max_expected_alpha_gain(input, a, cfg).value.value();
            if (std::isinf(a)) {
                const double o = oracle::helstrom_guess(input.prior(), input.states()[0], input.states()[1]);
                rows.push_back(judged("helstrom", a, s, o, std::abs(s - o) <= kHelstromTol));
            } else {
                const double o = oracle::grid_alpha_gain(input, a, resolution);
                rows.push_back(judged("grid-gain", a, s, o, s >= o - kGainBelowTol && s <= o + kSolverTol));
            }
        }

        if (!qubit || input.size() < 2) {
            rows.push_back(skip("grid-divergence", a, qubit ? "needs-two-states" : "needs-qubit"));
        } else {
            const double s = measured(input.states()[0], input.states()[1].op(), a, cfg).value.value();
            const double o = oracle::grid_measured_divergence(input.states()[0], input.states()[1].op(), a,
                                                              resolution, true);
            rows.push_back(judged("grid-divergence", a, s, o, s >= o - kBoundTol));
        }

        if (!qubit) {
            rows.push_back(skip("grid-radius", a, "needs-qubit"));
        } else {
            const double s = divergence_radius(input, a, cfg).value.value();
            const double o = oracle::grid_radius(input, a, std::min(resolution, kRadiusResolutionCap), cfg);
            rows.push_back(judged("grid-radius", a, s, o, s <= o + kBoundTol));
        }

        struct ClassicalCheck {
            const char* name;
            oracle::Quantity q;
            std::function<double()> solve;
        };
        const std::vector<ClassicalCheck> checks = {
            {"classical-divergence", oracle::Quantity::Divergence,
             [&] { return measured(input.states()[0], input.states()[1].op(), a, cfg).value.value(); }},
            {"classical-conditional-entropy", oracle::Quantity::ConditionalEntropy,
             [&] { return measured_conditional_entropy(input, a, cfg).value.value(); }},
            {"classical-arimoto-information", oracle::Quantity::ArimotoInformation,
             [&] { return measured_arimoto_information(input, a, cfg).value.value(); }},
            {"classical-renyi-information", oracle::Quantity::RenyiInformation,
             [&] { return measured_renyi_information(input, a, cfg).value.value(); }},
            {"classical-capacity", oracle::Quantity::Capacity,
             [&] { return measured_capacity(input, a, cfg).value.value(); }},
        };
        for (const auto& c : checks) {
            if (!classical) {
                rows.push_back(skip(c.name, a, "not-commuting"));
            } else if (c.q == oracle::Quantity::Divergence && input.size() < 2) {
                rows.push_back(skip(c.name, a, "needs-two-states"));
            } else if (c.q == oracle::Quantity::Capacity && a == 0.0) {
                rows.push_back(skip(c.name, a, "alpha-zero"));
            } else {
                const double s = c.solve();
                const double o = oracle::classical_exhaustive(input, c.q, a);
                const double g = signed_gap(s, o);
                rows.push_back(judged(c.name, a, s, o, std::abs(g) <= kClassicalTol));
            }
        }
    }
    return rows;
}

std::string audit_csv(const std::vector<AuditRow>& rows) {
    std::string out = "check,alpha,solver,oracle,gap,status\n";
    for (const auto& r : rows)
        out += r.check + "," + format_number(r.alpha) + "," + format_number(r.solver) + "," + format_number(r.oracle) +
               "," + format_number(r.gap) + "," + r.status + "\n";
    return out;
}

std::string audit_json(const std::vector<AuditRow>& rows) {
    std::string out = "[";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        out += (i ? ",\n " : "\n ");
        out += "{\"check\": \"" + r.check + "\", \"alpha\": " + json_number(r.alpha) +
               ", \"solver\": " + json_number(r.solver) + ", \"oracle\": " + json_number(r.oracle) +
               ", \"gap\": " + json_number(r.gap) + ", \"status\": \"" + r.status + "\"}";
    }
    out += rows.empty() ? "]\n" : "\n]\n";
    return out;
}

}  // namespace qleak::cli
