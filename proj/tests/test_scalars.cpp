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

#include <cmath>

#include "cqm/random.hpp"
#include "cqm/scalars.hpp"

using namespace cqm;

namespace {

const Complex kI(0.0, 1.0);

void expect_near(Complex a, Complex b, double tol = 1e-12) { EXPECT_LE(std::abs(a - b), tol) << a << " vs " << b; }

template <class Fn>
void expect_kind(ErrorKind kind, Fn&& fn) {
    try {
        fn();
        ADD_FAILURE() << "expected " << to_string(kind);
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), kind) << e.what();
    }
}

Rational random_rational(Rng& rng, bool non_negative) {
    const auto num = static_cast<std::int64_t>(uniform_index(non_negative ? 0 : -20, 20, rng));
    const auto den = static_cast<std::int64_t>(uniform_index(1, 12, rng));
    return Rational(num, den);
}

}  // namespace

TEST(scalars, ring_ids_round_trip) {
    for (RingId id : {RingId::Complex64, RingId::Real64, RingId::NNRational, RingId::Rational, RingId::Boolean}) {
        EXPECT_EQ(parse_ring(ring_name(id)), id);
    }
    EXPECT_EQ(ring_name(RingId::NNRational), "nnrational");
    EXPECT_FALSE(parse_ring("quaternion").has_value());
}

TEST(scalars, is_positive) {
    EXPECT_TRUE(is_positive(Complex(2.0, 0.0)));
    EXPECT_FALSE(is_positive(kI));
    EXPECT_FALSE(is_positive(-1.0));
    EXPECT_TRUE(is_positive(Rational(4, 9)));
    EXPECT_FALSE(is_positive(Rational(2)));
    // Booleans: s is positive iff s = t t for some t, checked over both elements.
    for (bool s : {false, true}) {
        bool found = false;
        for (bool t : {false, true}) found = found || Bool(t) * Bool(t) == Bool(s);
        EXPECT_EQ(is_positive(Bool(s)), found);
    }
    EXPECT_TRUE(is_positive(NonNegRational(3, 7)));
}

TEST(scalars, polar_decompose) {
    const auto real = polar_decompose(-2.0);
    EXPECT_DOUBLE_EQ(real.radius, 2.0);
    EXPECT_DOUBLE_EQ(real.phase, -1.0);

    const auto c = polar_decompose(Complex(3.0, 4.0));
    expect_near(c.radius, Complex(std::hypot(3.0, 4.0), 0.0));
    expect_near(c.phase, Complex(0.6, 0.8));

    const auto one = polar_decompose(Complex(1.0, 0.0));
    expect_near(one.radius, 1.0);
    expect_near(one.phase, 1.0);

    expect_kind(ErrorKind::ZeroInput, [] { polar_decompose(Complex(0.0)); });
    expect_kind(ErrorKind::UnsupportedRing, [] { polar_decompose(Rational(2)); });
}

TEST(scalars, polar_round_trip_and_uniqueness) {
    Rng rng = split_rng(11, 0);
    for (int t = 0; t < 200; ++t) {
        const double r = uniform_real(0.1, 5.0, rng);
        const Complex u = random_phase<Complex>(rng);
        const auto p = polar_decompose(r * u);
        expect_near(p.radius * p.phase, r * u, 1e-12);
        EXPECT_TRUE(is_positive(p.radius));
        expect_near(std::conj(p.phase) * p.phase, 1.0);
        // Any other positive/unitary split of the same scalar is this one.
        expect_near(p.radius, r, 1e-12);
        expect_near(p.phase, u, 1e-12);
    }
}

TEST(scalars, selfadjoint_parts) {
    const auto a = selfadjoint_parts(Complex(3.0, 4.0));
    expect_near(a.re, 3.0);
    expect_near(a.im, 4.0);
    const auto b = selfadjoint_parts(Complex(5.0, 0.0));
    expect_near(b.re, 5.0);
    expect_near(b.im, 0.0);
    const auto c = selfadjoint_parts(kI);
    expect_near(c.re, 0.0);
    expect_near(c.im, 1.0);
    expect_kind(ErrorKind::UnsupportedRing, [] { selfadjoint_parts(2.0); });

    Rng rng = split_rng(12, 0);
    for (int t = 0; t < 100; ++t) {
        const Complex s = gaussian_scalar<Complex>(rng);
        const auto p = selfadjoint_parts(s);
        expect_near(std::conj(p.re), p.re);
        expect_near(std::conj(p.im), p.im);
        expect_near(p.re + kI * p.im, s);
    }
}

TEST(scalars, phased_ring_decompose) {
    const auto a = phased_ring_decompose(Complex(3.0), Complex(4.0));
    expect_near(a.c, std::sqrt(9.0 + 16.0));
    expect_near(a.c * a.d, 3.0);
    expect_near(a.c * a.e, 4.0);
    expect_near(a.d, 0.6);
    expect_near(a.e, 0.8);

    const auto b = phased_ring_decompose(2.0, 0.0);
    EXPECT_DOUBLE_EQ(b.c, 2.0);
    EXPECT_DOUBLE_EQ(b.d, 1.0);
    EXPECT_DOUBLE_EQ(b.e, 0.0);

    const auto c = phased_ring_decompose(1.0, 1.0);
    EXPECT_NEAR(c.c, std::sqrt(2.0), 1e-12);
    EXPECT_NEAR(c.c * c.d, 1.0, 1e-12);
    EXPECT_NEAR(c.c * c.e, 1.0, 1e-12);

    const auto z = phased_ring_decompose(0.0, 0.0);
    EXPECT_TRUE(z.degenerate);
    EXPECT_EQ(z.c, 0.0);
    expect_kind(ErrorKind::UnsupportedRing, [] { phased_ring_decompose(Rational(1), Rational(1)); });
}

TEST(scalars, difference_ring) {
    using D = DifferenceRingElement<NonNegRational>;
    EXPECT_TRUE(difference_ring_eq(D{3, 1}, D{5, 3}));
    EXPECT_FALSE(difference_ring_eq(D{3, 1}, D{1, 3}));
    const NonNegRational a(7, 2);
    EXPECT_TRUE(difference_ring_eq(difference_ring_lift(a) + D{0, a}, D{0, 0}));
    EXPECT_EQ(to_rational(canonical(D{2, 5})), Rational(-3));
    EXPECT_EQ(canonical(D{2, 5}).pos, NonNegRational(0));
}

TEST(scalars, difference_ring_matches_rationals) {
    Rng rng = split_rng(13, 0);
    for (int t = 0; t < 100; ++t) {
        const Rational p = random_rational(rng, false);
        const Rational q = random_rational(rng, false);
        // Lift each rational through a non-negative split.
        const auto lift = [](const Rational& r) {
            return r >= Rational(0) ? difference_ring_lift(NonNegRational(r)) : difference_ring_lift(NonNegRational(0), NonNegRational(-r));
        };
        EXPECT_EQ(to_rational(lift(p) + lift(q)), p + q);
        EXPECT_EQ(to_rational(lift(p) * lift(q)), p * q);
        EXPECT_EQ(to_rational(lift(p).negated()), -p);
        EXPECT_EQ(difference_ring_eq(lift(p), lift(q)), p == q);
    }
}

TEST(scalars, difference_ring_mixed_rings) {
    expect_kind(ErrorKind::MixedRings, [] { difference_ring_lift(AnyScalar(Complex(1.0)), AnyScalar(1.0)); });
    const AnyDifferenceElement d = difference_ring_lift(AnyScalar(Bool(true)), AnyScalar(Bool(false)));
    EXPECT_TRUE(std::holds_alternative<DifferenceRingElement<Bool>>(d));
}

TEST(scalars, classify_involution) {
    EXPECT_EQ(classify_involution<Complex>(), InvolutionClass::HasImaginaryUnit);
    EXPECT_EQ(classify_involution<double>(), InvolutionClass::TrivialInvolution);
    EXPECT_EQ(classify_involution<Rational>(), InvolutionClass::TrivialInvolution);
    expect_kind(ErrorKind::UnsupportedRing, [] { classify_involution<NonNegRational>(); });
    expect_kind(ErrorKind::UnsupportedRing, [] { classify_involution<Bool>(); });
}

TEST(scalars, involution_laws) {
    Rng rng = split_rng(14, 0);
    for (int t = 0; t < 100; ++t) {
        const Complex s = gaussian_scalar<Complex>(rng);
        const Complex u = gaussian_scalar<Complex>(rng);
        expect_near(conj(conj(s)), s, 0.0);
        expect_near(conj(s * u), conj(s) * conj(u), 1e-14);
        const Rational p = random_rational(rng, false);
        EXPECT_EQ(conj(conj(p)), p);
    }
    EXPECT_EQ(conj(Complex(0.0)), Complex(0.0));
    EXPECT_EQ(conj(Complex(1.0)), Complex(1.0));
    for (bool a : {false, true}) {
        for (bool b : {false, true}) EXPECT_EQ(conj(Bool(a) * Bool(b)), conj(Bool(a)) * conj(Bool(b)));
    }
}

TEST(scalars, semiring_axioms_exact_rings) {
    Rng rng = split_rng(15, 0);
    for (int t = 0; t < 100; ++t) {
        const NonNegRational a(random_rational(rng, true));
        const NonNegRational b(random_rational(rng, true));
        const NonNegRational c(random_rational(rng, true));
        EXPECT_EQ(a + b, b + a);
        EXPECT_EQ(a * b, b * a);
        EXPECT_EQ((a + b) + c, a + (b + c));
        EXPECT_EQ(a * (b + c), a * b + a * c);
    }
}

TEST(scalars, zero_sum_free) {
    static_assert(RingTraits<Bool>::zero_sum_free && RingTraits<NonNegRational>::zero_sum_free);
    static_assert(!RingTraits<Complex>::zero_sum_free && !RingTraits<Rational>::zero_sum_free);
    for (bool a : {false, true}) {
        for (bool b : {false, true}) {
            if (Bool(a) + Bool(b) == Bool(false)) EXPECT_TRUE(!a && !b);
        }
    }
    Rng rng = split_rng(16, 0);
    for (int t = 0; t < 200; ++t) {
        const NonNegRational a(random_rational(rng, true));
        const NonNegRational b(random_rational(rng, true));
        if (a + b == NonNegRational(0)) {
            EXPECT_EQ(a, NonNegRational(0));
            EXPECT_EQ(b, NonNegRational(0));
        }
    }
    EXPECT_EQ(NonNegRational(0) + NonNegRational(0), NonNegRational(0));
}

TEST(scalars, tolerance_is_hybrid) {
    const Tolerance tol;
    EXPECT_TRUE(approx_equal(1e6, 1e6 + 1e-4, tol));
    EXPECT_FALSE(approx_equal(1.0, 1.0 + 1e-6, tol));
    EXPECT_TRUE(approx_equal(Rational(1, 3), Rational(2, 6), tol));
    EXPECT_FALSE(approx_equal(Rational(1, 3), Rational(1, 3) + Rational(1, 1000000000), tol));
}

TEST(scalars, non_negative_rational_rejects_negatives) {
    expect_kind(ErrorKind::ParseError, [] { NonNegRational(Rational(-1)); });
}
