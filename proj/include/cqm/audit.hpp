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

#pragma once

// Sampled checks of the operational principles against a theory, and the
// reconstruction classifier that reads off the scalar structure.

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cqm/io.hpp"
#include "cqm/phased.hpp"
#include "cqm/theories.hpp"

namespace cqm {

enum class Principle { StrongPurification, Kernels, PureExclusion, Conditioning, AlternateAxioms };
enum class Status { Pass, Fail, Unsupported };

std::string_view principle_id(Principle p);
std::optional<Principle> parse_principle(std::string_view id);
const std::vector<Principle>& all_principles();
std::string_view status_name(Status s);

struct AuditConfig {
    TheoryHandle theory;
    Index max_dim = 3;
    Index samples = 200;
    std::uint64_t seed = 0;
    Tolerance tol;
};

/// A counterexample (or, for passing reports, a constructed object such as an
/// environment unitary) together with the morphisms needed to replay it.
struct Witness {
    std::string kind;
    std::string note;
    std::vector<Json> morphisms;
};

struct PrincipleReport {
    TheoryHandle theory;
    Principle principle = Principle::StrongPurification;
    Status status = Status::Pass;
    std::vector<Witness> witnesses;
    Index samples_run = 0;
    Index max_dim = 0;
    std::uint64_t seed = 0;
    Tolerance tol;
    std::vector<AuditCheck> checks;
    std::vector<std::string> notes;
    double elapsed_ms = 0.0;
};

PrincipleReport check_strong_purification(const AuditConfig& config);
PrincipleReport check_kernels_principle(const AuditConfig& config);
PrincipleReport check_pure_exclusion(const AuditConfig& config);
PrincipleReport check_conditioning(const AuditConfig& config);
PrincipleReport check_alternate_axioms(const AuditConfig& config);
PrincipleReport check_principle(Principle p, const AuditConfig& config);

/// Re-runs the relevant check on a stored witness; true iff it is still a
/// counterexample.
bool replay_witness(const TheoryHandle& theory, const Witness& witness, Tolerance tol = {});

/// The outcome each theory is expected to produce.
Status expected_status(TheoryKind theory, Principle principle);
Json expected_matrix_json();

struct AuditRun {
    AuditConfig config;
    std::vector<PrincipleReport> reports;
    std::vector<std::string> deviations;

    bool matches_expected() const { return deviations.empty(); }
};

AuditRun run_audit(const AuditConfig& config);

struct ReconstructionVerdict {
    std::string theory;
    bool classified = false;
    std::string scalar_semiring;
    std::string difference_ring;
    std::optional<InvolutionClass> involution;
    std::string target;
    bool square_roots = false;
    bool bounded = false;
    bool probabilistic = false;
    std::string caveat;
};

ReconstructionVerdict reconstruct_classify(const AuditConfig& config);
/// Same, from an audit that has already been run.
ReconstructionVerdict reconstruct_classify(const AuditRun& run);

Json to_json(const Witness& w);
Witness witness_from_json(const Json& j);
/// with_timing = false drops elapsed_ms, leaving the deterministic payload.
Json to_json(const PrincipleReport& r, bool with_timing = true);
Json to_json(const AuditRun& run, bool with_timing = true);
Json to_json(const ReconstructionVerdict& v);
std::string to_markdown(const AuditRun& run);
std::string to_markdown(const ReconstructionVerdict& v);

}  // namespace cqm
