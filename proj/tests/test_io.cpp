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

#include "cqm/io.hpp"
#include "cqm/random.hpp"
#include "cqm/theories.hpp"

using namespace cqm;

namespace {

using C = Complex;

template <class F>
ErrorKind kind_of(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    return ErrorKind::NoSolution;
}

}  // namespace

TEST(io, complex_entries_are_pairs) {
    Mat<C> m(1, 2);
    m << C(1, -2), C(0.5, 0);
    const Json j = matrix_to_json(m);
    EXPECT_EQ(j["ring"], "complex64");
    EXPECT_EQ(j["rows"], 1);
    EXPECT_EQ(j["cols"], 2);
    EXPECT_EQ(j["entries"][0], Json::array({1.0, -2.0}));
    EXPECT_FALSE(j.contains("kernel"));
    EXPECT_EQ(matrix_from_json<C>(j), m);
    EXPECT_TRUE(matrix_to_json(m, true)["kernel"].get<bool>());
}

TEST(io, matrix_round_trips) {
    Rng rng = split_rng(81, 0);
    for (int t = 0; t < 20; ++t) {
        const Mat<C> c = gaussian_matrix<C>(uniform_index(0, 3, rng), uniform_index(0, 3, rng), rng);
        EXPECT_EQ(matrix_from_json<C>(Json::parse(matrix_to_json(c).dump())), c);
        const Mat<double> r = gaussian_matrix<double>(2, 3, rng);
        EXPECT_EQ(matrix_from_json<double>(Json::parse(matrix_to_json(r).dump())), r);
    }
    Mat<NonNegRational> q(2, 1);
    q << NonNegRational(1, 3), NonNegRational(7);
    const Json jq = matrix_to_json(q);
    EXPECT_EQ(jq["entries"][0], "1/3");
    EXPECT_EQ(matrix_from_json<NonNegRational>(jq), q);
    Mat<Rational> z(1, 1);
    z << Rational(-5) / Rational(4);
    EXPECT_EQ(matrix_from_json<Rational>(matrix_to_json(z)), z);
    Mat<Bool> b(2, 2);
    b << Bool(true), Bool(false), Bool(false), Bool(true);
    EXPECT_EQ(matrix_to_json(b)["entries"], Json::array({1, 0, 0, 1}));
    EXPECT_EQ(matrix_from_json<Bool>(matrix_to_json(b)), b);
}

TEST(io, ring_mismatch_is_mixed_rings) {
    const Json j = matrix_to_json(identity<double>(2));
    EXPECT_EQ(ring_of_json(j), RingId::Real64);
    EXPECT_EQ(kind_of([&] { matrix_from_json<C>(j); }), ErrorKind::MixedRings);
    EXPECT_EQ(kind_of([&] { cpm_from_json<C>(cpm_to_json(identity_cpm<double>(2))); }), ErrorKind::MixedRings);
}

TEST(io, malformed_documents) {
    const Json good = matrix_to_json(identity<double>(2));
    Json j = good;
    j["entries"].erase(j["entries"].begin());
    EXPECT_EQ(kind_of([&] { matrix_from_json<double>(j); }), ErrorKind::ParseError);
    j = good;
    j.erase("ring");
    EXPECT_EQ(kind_of([&] { matrix_from_json<double>(j); }), ErrorKind::ParseError);
    j = good;
    j["rows"] = -1;
    EXPECT_EQ(kind_of([&] { matrix_from_json<double>(j); }), ErrorKind::ParseError);
    j = good;
    j["entries"][0] = "x";
    EXPECT_EQ(kind_of([&] { matrix_from_json<double>(j); }), ErrorKind::ParseError);
    EXPECT_EQ(kind_of([&] { matrix_from_json<double>(Json::array()); }), ErrorKind::ParseError);

    Json c = matrix_to_json(identity<C>(1));
    c["entries"][0] = Json::array({1.0});
    EXPECT_EQ(kind_of([&] { matrix_from_json<C>(c); }), ErrorKind::ParseError);
    Json b = matrix_to_json(identity<Bool>(1));
    b["entries"][0] = 2;
    EXPECT_EQ(kind_of([&] { matrix_from_json<Bool>(b); }), ErrorKind::ParseError);
    Json q = matrix_to_json(identity<NonNegRational>(1));
    q["entries"][0] = "-1/2";
    EXPECT_EQ(kind_of([&] { matrix_from_json<NonNegRational>(q); }), ErrorKind::ParseError);
    q["entries"][0] = "1/0";
    EXPECT_EQ(kind_of([&] { matrix_from_json<NonNegRational>(q); }), ErrorKind::ParseError);
}

TEST(io, parse_rational) {
    EXPECT_EQ(detail::parse_rational("3/6"), Rational(1) / Rational(2));
    EXPECT_EQ(detail::parse_rational("-4"), Rational(-4));
    EXPECT_EQ(kind_of([] { detail::parse_rational("a/b"); }), ErrorKind::ParseError);
    EXPECT_EQ(kind_of([] { detail::parse_rational(""); }), ErrorKind::ParseError);
}

TEST(io, cpm_round_trip) {
    Rng rng = split_rng(82, 0);
    for (int t = 0; t < 20; ++t) {
        const auto f = random_channel<C>(uniform_index(1, 3, rng), uniform_index(1, 3, rng), uniform_index(1, 3, rng), rng);
        const Json j = Json::parse(cpm_to_json(f).dump());
        EXPECT_TRUE(j.contains("doubled"));
        EXPECT_TRUE(approx_equal(cpm_from_json<C>(j), f));
        EXPECT_FALSE(cpm_to_json(f, false).contains("doubled"));
        EXPECT_TRUE(approx_equal(cpm_from_json<C>(cpm_to_json(f, false)), f));
    }
    const auto f = identity_cpm<double>(2);
    EXPECT_TRUE(approx_equal(cpm_from_json<double>(cpm_to_json(f)), f));
}

TEST(io, stored_doubled_form_is_verified) {
    Json j = cpm_to_json(identity_cpm<C>(2));
    j["doubled"]["entries"][0] = Json::array({2.0, 0.0});
    EXPECT_EQ(kind_of([&] { cpm_from_json<C>(j); }), ErrorKind::ParseError);
    j = cpm_to_json(identity_cpm<C>(2));
    j.erase("kraus");
    EXPECT_EQ(kind_of([&] { cpm_from_json<C>(j); }), ErrorKind::ParseError);
}

TEST(io, theory_morphism_round_trip) {
    Rng rng = split_rng(83, 0);
    for (TheoryKind kind : all_theories()) {
        const TheoryHandle h = theory_handle(kind);
        const TheoryMorphism f = sample_morphism(h, 2, 3, rng);
        const Json j = theory_morphism_to_json(f);
        EXPECT_EQ(ring_of_json(j), h.ring);
        const TheoryMorphism g = theory_morphism_from_json(h, Json::parse(j.dump()));
        EXPECT_EQ(g.in_dim(), 2);
        EXPECT_EQ(g.out_dim(), 3);
        EXPECT_EQ(theory_morphism_to_json(g), j) << h.id();
    }
    const Json rel = theory_morphism_to_json(discard_morphism(theory_handle(TheoryKind::Rel), 2));
    EXPECT_EQ(kind_of([&] { theory_morphism_from_json(theory_handle(TheoryKind::Class), rel); }), ErrorKind::MixedRings);
}
