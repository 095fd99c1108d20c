// Copyright 2026 The cqm-audit Authors
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

// cqm-audit: runs the principle audits, the reconstruction classifier and
// the exhaustive Rel purity oracle.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cqm/audit.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDeviation = 1;
constexpr int kExitUsage = 2;

struct Options {
    std::string theory = "all";
    cqm::Index max_dim = 3;
    cqm::Index samples = 200;
    std::uint64_t seed = 0;
    double tol = 1e-9;
    std::string format = "json";
    std::string out;
};

std::vector<cqm::TheoryHandle> selected_theories(const std::string& id) {
    if (id == "all") {
        std::vector<cqm::TheoryHandle> all;
        for (cqm::TheoryKind k : cqm::all_theories()) all.push_back(cqm::theory_handle(k));
        return all;
    }
    return {cqm::parse_theory(id)};
}

cqm::AuditConfig config_for(const Options& o, const cqm::TheoryHandle& theory) {
    return {theory, o.max_dim, o.samples, o.seed, cqm::Tolerance{o.tol, o.tol}};
}

void emit(const Options& o, const std::string& text) {
    if (o.out.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream file(o.out);
    if (!file) throw cqm::Error(cqm::ErrorKind::ParseError, "cannot open " + o.out + " for writing");
    file << text << '\n';
}

int cmd_audit(const Options& o) {
    bool all_match = true;
    cqm::Json runs = cqm::Json::array();
    std::string md;
    for (const auto& theory : selected_theories(o.theory)) {
        const cqm::AuditRun run = cqm::run_audit(config_for(o, theory));
        all_match = all_match && run.matches_expected();
        runs.push_back(cqm::to_json(run));
        md += cqm::to_markdown(run) + "\n";
        std::cerr << theory.id() << ": " << (run.matches_expected() ? "matches expected outcomes" : "DEVIATION") << '\n';
    }
    emit(o, o.format == "md" ? md : cqm::Json{{"audits", runs}, {"matches_expected", all_match}}.dump(2));
    return all_match ? kExitOk : kExitDeviation;
}

int cmd_reconstruct(const Options& o) {
    bool consistent = true;
    cqm::Json verdicts = cqm::Json::array();
    std::string md;
    for (const auto& theory : selected_theories(o.theory)) {
        const cqm::ReconstructionVerdict v = cqm::reconstruct_classify(config_for(o, theory));
        const bool quantum = theory.kind == cqm::TheoryKind::QuantC || theory.kind == cqm::TheoryKind::QuantR;
        consistent = consistent && v.classified == quantum;
        verdicts.push_back(cqm::to_json(v));
        md += cqm::to_markdown(v) + "\n";
        std::cerr << theory.id() << ": " << (v.classified ? v.target : v.caveat) << '\n';
    }
    emit(o, o.format == "md" ? md : cqm::Json{{"verdicts", verdicts}}.dump(2));
    return consistent ? kExitOk : kExitDeviation;
}

int cmd_oracle_rel(const Options& o) {
    if (o.max_dim > 2) throw cqm::Error(cqm::ErrorKind::TooLarge, "oracle-rel is limited to --max-dim <= 2");
    const cqm::TheoryHandle rel = cqm::parse_theory("rel");
    cqm::Json sizes = cqm::Json::array();
    cqm::Json counterexamples = cqm::Json::array();
    std::string md = "# Rel purity oracle\n\n| in | out | relations | pure | without pure dilation |\n|---|---|---|---|---|\n";
    for (cqm::Index in = 1; in <= o.max_dim; ++in) {
        for (cqm::Index out = 1; out <= o.max_dim; ++out) {
            const auto all = cqm::enumerate_morphisms(rel, in, out);
            cqm::Json pure = cqm::Json::array();
            for (const auto& f : cqm::pure_set_bruteforce(rel, in, out)) pure.push_back(cqm::matrix_to_json(f));
            std::size_t undilatable = 0;
            for (const auto& f : all) {
                if (cqm::rel_has_pure_dilation(f)) continue;
                ++undilatable;
                if (counterexamples.empty()) {
                    counterexamples.push_back({{"kind", "no_pure_dilation"}, {"relation", cqm::matrix_to_json(f)}});
                }
            }
            sizes.push_back({{"in", in},
                             {"out", out},
                             {"relations", all.size()},
                             {"pure", pure},
                             {"without_pure_dilation", undilatable}});
            md += "| " + std::to_string(in) + " | " + std::to_string(out) + " | " + std::to_string(all.size()) + " | " +
                  std::to_string(pure.size()) + " | " + std::to_string(undilatable) + " |\n";
        }
    }
    if (o.max_dim >= 2) {
        counterexamples.push_back({{"kind", "identity_not_pure"},
                                   {"identity", cqm::matrix_to_json(cqm::identity<cqm::Bool>(2))},
                                   {"dilation", cqm::matrix_to_json(cqm::copy_dilation<cqm::Bool>(2))}});
    }
    md += "\n" + std::to_string(counterexamples.size()) + " purification counterexample(s)\n";
    for (const auto& c : counterexamples) md += "\n```json\n" + c.dump() + "\n```\n";
    emit(o, o.format == "md" ? md : cqm::Json{{"sizes", sizes}, {"counterexamples", counterexamples}}.dump(2));
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Audit operational principles of process theories"};
    app.require_subcommand(1);
    Options o;
    const auto add_common = [&](CLI::App* cmd, bool with_theory) {
        if (with_theory) cmd->add_option("--theory", o.theory, "quant-c, quant-r, class, rel or all");
        cmd->add_option("--max-dim", o.max_dim, "largest object dimension")->check(CLI::PositiveNumber);
        cmd->add_option("--samples", o.samples, "random instances per check")->check(CLI::PositiveNumber);
        cmd->add_option("--seed", o.seed, "RNG seed (CQM_AUDIT_SEED overrides)");
        cmd->add_option("--tol", o.tol, "absolute and relative tolerance")->check(CLI::PositiveNumber);
        cmd->add_option("--format", o.format, "json or md")->check(CLI::IsMember({"json", "md"}));
        cmd->add_option("--out", o.out, "write the report here instead of stdout");
    };
    CLI::App* audit = app.add_subcommand("audit", "run every principle check");
    CLI::App* reconstruct = app.add_subcommand("reconstruct", "classify the theory's scalars");
    CLI::App* oracle = app.add_subcommand("oracle-rel", "enumerate small relations and their pure dilations");
    add_common(audit, true);
    add_common(reconstruct, true);
    add_common(oracle, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }
    if (const char* env = std::getenv("CQM_AUDIT_SEED")) {
        try {
            std::size_t used = 0;
            o.seed = std::stoull(env, &used);
            if (used != std::string(env).size()) throw std::invalid_argument("trailing characters");
        } catch (const std::exception&) {
            std::cerr << "CQM_AUDIT_SEED is not an unsigned integer: " << env << '\n';
            return kExitUsage;
        }
    }
    try {
        if (*audit) return cmd_audit(o);
        if (*reconstruct) return cmd_reconstruct(o);
        return cmd_oracle_rel(o);
    } catch (const cqm::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return e.kind() == cqm::ErrorKind::UnknownTheory || e.kind() == cqm::ErrorKind::TooLarge ? kExitUsage
                                                                                                : kExitDeviation;
    }
}
