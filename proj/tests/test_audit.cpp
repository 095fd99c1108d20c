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

#include <gtest/gtest.h>

#include "cqm/audit.hpp"

using namespace cqm;

namespace {

AuditConfig config(TheoryKind kind, std::uint64_t seed = 3, Index samples = 40, Index max_dim = 2) {
    return {theory_handle(kind), max_dim, samples, seed, {}};
}

Json rel_matrix(std::initializer_list<int> bits, Index rows, Index cols) {
    Mat<Bool> m(rows, cols);
    auto it = bits.begin();
    for (Index i = 0; i < rows; ++i) {
        for (Index j = 0; j < cols; ++j) m(i, j) = Bool(*it++ != 0);
    }
    return matrix_to_json(m);
}

}  // namespace

TEST(audit, principle_ids) {
    for (Principle p : all_principles()) EXPECT_EQ(parse_principle(principle_id(p)), p);
    EXPECT_EQ(principle_id(Principle::StrongPurification), "strong_purification");
    EXPECT_FALSE(parse_principle("purity").has_value());
    EXPECT_EQ(status_name(Status::Unsupported), "unsupported");
}

TEST(audit, expected_matrix) {
    for (TheoryKind k : {TheoryKind::QuantC, TheoryKind::QuantR}) {
        for (Principle p : all_principles()) EXPECT_EQ(expected_status(k, p), Status::Pass);
    }
    EXPECT_EQ(expected_status(TheoryKind::Class, Principle::StrongPurification), Status::Fail);
    EXPECT_EQ(expected_status(TheoryKind::Class, Principle::AlternateAxioms), Status::Pass);
    EXPECT_EQ(expected_status(TheoryKind::Class, Principle::Kernels), Status::Pass);
    EXPECT_EQ(expected_status(TheoryKind::Rel, Principle::StrongPurification), Status::Fail);
    EXPECT_EQ(expected_status(TheoryKind::Rel, Principle::AlternateAxioms), Status::Fail);
    EXPECT_EQ(expected_status(TheoryKind::Rel, Principle::Conditioning), Status::Pass);
    const Json m = expected_matrix_json();
    EXPECT_EQ(m["rel"]["alternate_axioms"], "fail");
    EXPECT_EQ(m["quant-r"]["pure_exclusion"], "pass");
}

TEST(audit, runs_match_expected) {
    for (TheoryKind k : all_theories()) {
        const AuditRun run = run_audit(config(k));
        EXPECT_TRUE(run.matches_expected()) << theory_handle(k).id() << ": "
                                            << (run.deviations.empty() ? "" : run.deviations.front());
        ASSERT_EQ(run.reports.size(), all_principles().size());
        for (const auto& r : run.reports) {
            EXPECT_GT(r.samples_run, 0);
            if (r.status != Status::Fail) continue;
            ASSERT_FALSE(r.witnesses.empty());
            for (const auto& w : r.witnesses) {
                EXPECT_TRUE(replay_witness(run.config.theory, witness_from_json(to_json(w)))) << w.kind;
            }
        }
    }
}

TEST(audit, rel_cancellativity_witness) {
    const TheoryHandle rel = theory_handle(TheoryKind::Rel);
    const Witness w{"cancellativity", "", {rel_matrix({1}, 1, 1), rel_matrix({1}, 1, 1), rel_matrix({0}, 1, 1)}};
    EXPECT_TRUE(replay_witness(rel, w));
    const Witness not_one{"cancellativity", "", {rel_matrix({0}, 1, 1), rel_matrix({1}, 1, 1), rel_matrix({0}, 1, 1)}};
    EXPECT_FALSE(replay_witness(rel, not_one));
    EXPECT_FALSE(replay_witness(theory_handle(TheoryKind::QuantC), w));
    EXPECT_FALSE(replay_witness(rel, Witness{"cancellativity", "", {}}));
}

TEST(audit, identity_is_not_pure_in_rel) {
    const TheoryHandle rel = theory_handle(TheoryKind::Rel);
    // Tagging dilation of id_2: each input is paired with its own copy.
    const Witness w{"identity_pure", "", {rel_matrix({1, 0, 0, 1}, 2, 2), rel_matrix({1, 0, 0, 0, 0, 0, 0, 1}, 4, 2)}};
    EXPECT_TRUE(replay_witness(rel, w));
    const Witness trivial{"identity_pure", "", {rel_matrix({1}, 1, 1), rel_matrix({1}, 1, 1)}};
    EXPECT_FALSE(replay_witness(rel, trivial));
}

TEST(audit, deterministic_payload) {
    const AuditConfig c = config(TheoryKind::QuantC, 11, 20);
    const Json a = to_json(run_audit(c), false);
    const Json b = to_json(run_audit(c), false);
    EXPECT_EQ(a.dump(), b.dump());
    EXPECT_EQ(a.dump().find("elapsed_ms"), std::string::npos);
    EXPECT_NE(to_json(run_audit(c), true).dump().find("elapsed_ms"), std::string::npos);
}

TEST(audit, invalid_config) {
    AuditConfig c = config(TheoryKind::Rel);
    c.samples = 0;
    EXPECT_THROW(run_audit(c), Error);
    c = config(TheoryKind::Rel);
    c.max_dim = 0;
    EXPECT_THROW(check_kernels_principle(c), Error);
}

TEST(audit, reconstruction) {
    const ReconstructionVerdict qc = reconstruct_classify(config(TheoryKind::QuantC));
    EXPECT_TRUE(qc.classified);
    EXPECT_EQ(qc.target, "Quant over D(R)[i]");
    EXPECT_EQ(qc.involution, InvolutionClass::HasImaginaryUnit);
    EXPECT_TRUE(qc.probabilistic);

    const ReconstructionVerdict qr = reconstruct_classify(config(TheoryKind::QuantR));
    EXPECT_TRUE(qr.classified);
    EXPECT_EQ(qr.target, "Quant over D(R)");

    for (TheoryKind k : {TheoryKind::Class, TheoryKind::Rel}) {
        const ReconstructionVerdict v = reconstruct_classify(config(k));
        EXPECT_FALSE(v.classified);
        EXPECT_TRUE(v.target.empty());
        EXPECT_NE(v.caveat.find("strong_purification"), std::string::npos);
    }
    const ReconstructionVerdict rel = reconstruct_classify(config(TheoryKind::Rel));
    EXPECT_TRUE(rel.square_roots);
    EXPECT_FALSE(rel.bounded);
    EXPECT_FALSE(rel.probabilistic);
    EXPECT_NE(rel.caveat.find("alternate_axioms"), std::string::npos);
    EXPECT_EQ(to_json(qc)["target"], "Quant over D(R)[i]");
}

TEST(audit, markdown) {
    const AuditRun run = run_audit(config(TheoryKind::Rel));
    const std::string md = to_markdown(run);
    for (Principle p : all_principles()) EXPECT_NE(md.find(principle_id(p)), std::string::npos);
    EXPECT_NE(md.find("rel"), std::string::npos);
    EXPECT_NE(md.find("fail"), std::string::npos);
    const std::string verdict = to_markdown(reconstruct_classify(run));
    EXPECT_NE(verdict.find("boolean"), std::string::npos);
}
