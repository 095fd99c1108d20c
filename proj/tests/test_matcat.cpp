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

#include "cqm/random.hpp"
#include "oracles.hpp"

using namespace cqm;

namespace {

using C = Complex;
using MC = Mat<C>;
using MR = Mat<double>;

MC col(std::initializer_list<C> xs) {
    MC v(static_cast<Index>(xs.size()), 1);
    Index i = 0;
    for (C x : xs) v(i++, 0) = x;
    return v;
}

}  // namespace

TEST(matcat, dagger_tensor_compose_examples) {
    MC i1(1, 1);
    i1 << C(0, 1);
    EXPECT_EQ(dagger(i1)(0, 0), C(0, -1));
    EXPECT_EQ(tensor(identity<C>(2), identity<C>(3)), identity<C>(6));
    EXPECT_EQ(compose(swap<C>(2, 2), swap<C>(2, 2)), identity<C>(4));
    MC sw(4, 4);
    sw << 1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 1;
    EXPECT_EQ(swap<C>(2, 2), sw);
    EXPECT_THROW(compose(identity<C>(2), identity<C>(3)), Error);
}

TEST(matcat, kronecker_is_left_factor_major) {
    Rng rng = split_rng(21, 0);
    const MC a = gaussian_matrix<C>(2, 3, rng);
    const MC b = gaussian_matrix<C>(3, 2, rng);
    EXPECT_LE(oracle::max_abs<C>(tensor(a, b) - oracle::kron<C>(a, b)), 1e-15);
    EXPECT_LE(oracle::max_abs<C>(dagger(a) - oracle::adjoint<C>(a)), 0.0);
    // swap(m, n) (a (x) b) = (b (x) a) swap for states
    const MC x = gaussian_matrix<C>(2, 1, rng);
    const MC y = gaussian_matrix<C>(3, 1, rng);
    EXPECT_TRUE(approx_equal<C>(compose(swap<C>(2, 3), tensor(x, y)), tensor(y, x)));
}

TEST(matcat, functor_laws_random) {
    Rng rng = split_rng(22, 0);
    for (int t = 0; t < 100; ++t) {
        const Index n = uniform_index(1, 4, rng), m = uniform_index(1, 4, rng), k = uniform_index(1, 4, rng);
        const MC f = gaussian_matrix<C>(m, n, rng);
        const MC g = gaussian_matrix<C>(k, m, rng);
        const MC fp = gaussian_matrix<C>(n, k, rng);
        const MC gp = gaussian_matrix<C>(m, n, rng);
        EXPECT_TRUE(approx_equal<C>(dagger(compose(g, f)), compose(dagger(f), dagger(g))));
        EXPECT_TRUE(approx_equal<C>(dagger(dagger(f)), f));
        EXPECT_TRUE(approx_equal<C>(compose(tensor(f, g), tensor(fp, gp)), tensor(compose(f, fp), compose(g, gp))));
        EXPECT_TRUE(approx_equal<C>(compose(g, f), oracle::matmul<C>(g, f)));
    }
}

TEST(matcat, biproducts) {
    const auto k = injections<C>(BiproductTag::of({1, 1}));
    ASSERT_EQ(k.size(), 2u);
    EXPECT_EQ(k[0], col({1, 0}));
    EXPECT_EQ(k[1], col({0, 1}));
    EXPECT_TRUE(is_zero<C>(compose(dagger(k[0]), k[1])));

    const MC h = copair<C>({identity<C>(1), identity<C>(1)});
    EXPECT_EQ(h, dagger(col({1, 1})));
    EXPECT_EQ(compose(h, k[0]), identity<C>(1));
    EXPECT_EQ(compose(h, k[1]), identity<C>(1));

    MC a(1, 1), b(1, 1);
    a << 2;
    b << 3;
    EXPECT_EQ(pair<C>({a, b}), col({2, 3}));

    EXPECT_THROW(copair<C>({identity<C>(1), identity<C>(2)}), Error);
}

TEST(matcat, copair_universal_property) {
    Rng rng = split_rng(23, 0);
    for (int t = 0; t < 50; ++t) {
        const Index n1 = uniform_index(1, 3, rng), n2 = uniform_index(1, 3, rng), m = uniform_index(1, 3, rng);
        const MC f = gaussian_matrix<C>(m, n1, rng);
        const MC g = gaussian_matrix<C>(m, n2, rng);
        const auto k = injections<C>(BiproductTag::of({n1, n2}));
        const MC h = copair<C>({f, g});
        EXPECT_EQ(compose(h, k[0]), f);
        EXPECT_EQ(compose(h, k[1]), g);
        // Any h' with the same two composites is h: its columns are pinned
        // down by the coordinate states.
        const MC hp = compose(f, dagger(k[0])) + compose(g, dagger(k[1]));
        EXPECT_TRUE(approx_equal<C>(hp, h));
        EXPECT_TRUE(is_isometry<C>(k[0]));
        EXPECT_TRUE(is_zero<C>(compose(dagger(k[1]), k[0])));
        EXPECT_EQ(pair<C>({dagger(f), dagger(g)}), dagger(h));
    }
}

TEST(matcat, snake_equations) {
    MC one(1, 1);
    one << 1;
    EXPECT_EQ(cup<C>(1), one);
    EXPECT_EQ(cup<C>(2), col({1, 0, 0, 1}));
    for (Index n = 1; n <= 5; ++n) {
        const MC left = compose(tensor(cap<C>(n), identity<C>(n)), tensor(identity<C>(n), cup<C>(n)));
        const MC right = compose(tensor(identity<C>(n), cap<C>(n)), tensor(cup<C>(n), identity<C>(n)));
        EXPECT_EQ(left, identity<C>(n));
        EXPECT_EQ(right, identity<C>(n));
    }
}

TEST(matcat, partial_transpose) {
    for (Index n = 1; n <= 3; ++n) EXPECT_EQ(partial_transpose<C>(partial_transpose<C>(identity<C>(n))), identity<C>(n));
    Rng rng = split_rng(24, 0);
    const MC f = gaussian_matrix<C>(3, 2, rng);
    EXPECT_TRUE(approx_equal<C>(partial_transpose<C>(f), MC(f.transpose())));
    EXPECT_TRUE(approx_equal<C>(partial_transpose<C>(partial_transpose<C>(f)), f));
}

TEST(matcat, isometries_unitaries_positives) {
    EXPECT_TRUE(is_unitary<C>(swap<C>(2, 2)));
    EXPECT_TRUE(is_isometry<C>(col({1, 0})));
    EXPECT_THROW(is_unitary<C>(col({1, 0})), Error);
    EXPECT_FALSE(is_isometry<C>(dagger(col({1, 0}))));

    MC p(2, 2);
    p << 2, 0, 0, 0;
    EXPECT_TRUE(is_positive_morphism<C>(p));
    MC g = MC::Zero(2, 2);
    g(0, 0) = std::sqrt(2.0);
    EXPECT_TRUE(approx_equal<C>(compose(dagger(g), g), p));
    MC neg(2, 2);
    neg << 1, 0, 0, -1;
    EXPECT_FALSE(is_positive_morphism<C>(neg));
    MC skew(2, 2);
    skew << 1, 1, 0, 1;
    EXPECT_FALSE(is_positive_morphism<C>(skew));
}

TEST(matcat, boolean_positivity_by_factor_search) {
    // Brute force over all 3x3 relations: p is positive iff p = g† g.
    for (std::uint64_t pm = 0; pm < 512; ++pm) {
        Mat<Bool> p(3, 3);
        for (Index i = 0; i < 9; ++i) p(i / 3, i % 3) = Bool(((pm >> i) & 1u) != 0);
        bool expected = false;
        for (std::uint64_t gm = 0; gm < 512 && !expected; ++gm) {
            Mat<Bool> g(3, 3);
            for (Index i = 0; i < 9; ++i) g(i / 3, i % 3) = Bool(((gm >> i) & 1u) != 0);
            expected = oracle::matmul<Bool>(oracle::adjoint<Bool>(g), g) == p;
        }
        EXPECT_EQ(is_positive_morphism<Bool>(p), expected) << pm;
    }
    EXPECT_THROW(is_positive_morphism<Bool>(identity<Bool>(4)), Error);
}

TEST(matcat, gram_schmidt) {
    MC v(2, 2);
    v << 1, 1, 0, 1;
    EXPECT_TRUE(approx_equal<C>(gram_schmidt<C>(v), identity<C>(2)));
    EXPECT_TRUE(approx_equal<C>(gram_schmidt<C>(identity<C>(3)), identity<C>(3)));
    MC dep(2, 2);
    dep << 1, 2, 1, 2;
    const MC q = gram_schmidt<C>(dep);
    ASSERT_EQ(q.cols(), 1);
    EXPECT_TRUE(approx_equal<C>(q, MC(col({1, 1}) / std::sqrt(2.0))));

    // An indefinite form is reported.
    const InnerProduct<C> minkowski = [](const MC& a, const MC& b) {
        return std::conj(a(0, 0)) * b(0, 0) - std::conj(a(1, 0)) * b(1, 0);
    };
    EXPECT_THROW(gram_schmidt<C>(col({0, 1}), minkowski), Error);
    EXPECT_THROW(gram_schmidt<Rational>(identity<Rational>(2)), Error);

    Rng rng = split_rng(25, 0);
    for (int t = 0; t < 100; ++t) {
        const Index n = uniform_index(1, 5, rng), k = uniform_index(1, 5, rng);
        const MC vs = gaussian_matrix<C>(n, k, rng);
        const MC g = gram_schmidt<C>(vs);
        EXPECT_EQ(g.cols(), std::min(n, k));
        EXPECT_TRUE(approx_equal<C>(compose(dagger(g), g), identity<C>(g.cols()), Tolerance{}.scaled(10.0)));
        EXPECT_TRUE(approx_equal<C>(compose(g, dagger(g)), oracle::range_projector<C>(vs), Tolerance{}.scaled(100.0)));
    }
}

TEST(matcat, homogeneity_solve) {
    const auto u = homogeneity_solve<C>(col({1, 0}), col({0, 1}));
    ASSERT_TRUE(u.has_value());
    EXPECT_TRUE(is_unitary<C>(*u));
    EXPECT_TRUE(approx_equal<C>(compose(*u, col({1, 0})), col({0, 1})));
    EXPECT_TRUE(approx_equal<C>(*u, (MC(2, 2) << 0, 1, 1, 0).finished()));

    const MC f = (MC(2, 2) << 1, 2, 3, 4).finished();
    const auto same = homogeneity_solve<C>(f, f);
    ASSERT_TRUE(same.has_value());
    EXPECT_TRUE(approx_equal<C>(compose(*same, f), f));

    const MC d = (MC(2, 2) << 1, 0, 0, 0).finished();
    const MC a = (MC(2, 2) << 0, 0, 1, 0).finished();
    const auto r = homogeneity_solve<C>(d, a);
    ASSERT_TRUE(r.has_value());
    EXPECT_LE(distance<C>(compose(*r, d), a), 1e-8);

    EXPECT_THROW(homogeneity_solve<C>(col({1, 0}), col({2, 0})), Error);

    Rng rng = split_rng(26, 0);
    for (int t = 0; t < 100; ++t) {
        const Index n = uniform_index(1, 4, rng), m = uniform_index(1, 4, rng);
        const Index rank = uniform_index(0, std::min(n, m), rng);
        const MC x = gaussian_matrix<C>(m, rank, rng) * gaussian_matrix<C>(rank, n, rng);
        const MC y = compose(random_unitary<C>(m, rng), x);
        const auto w = homogeneity_solve<C>(x, y);
        ASSERT_TRUE(w.has_value());
        EXPECT_TRUE(is_unitary<C>(*w, Tolerance{}.scaled(10.0)));
        EXPECT_LE(distance<C>(compose(*w, x), y), 1e-8);
    }
}

TEST(matcat, dagger_normalise_state) {
    const auto a = dagger_normalise_state<C>(col({3, 4}));
    EXPECT_TRUE(approx_equal<C>(a.sigma, col({0.6, 0.8})));
    EXPECT_NEAR(std::abs(a.r - C(5.0)), 0.0, 1e-12);
    const auto b = dagger_normalise_state<C>(col({0, 1}));
    EXPECT_TRUE(approx_equal<C>(b.sigma, col({0, 1})));
    EXPECT_NEAR(std::abs(b.r - C(1.0)), 0.0, 1e-12);
    const auto c = dagger_normalise_state<C>(col({C(0, 2), 0}));
    EXPECT_TRUE(approx_equal<C>(c.sigma, col({C(0, 1), 0})));
    EXPECT_NEAR(std::abs(c.r - C(2.0)), 0.0, 1e-12);
    EXPECT_THROW(dagger_normalise_state<C>(col({0, 0})), Error);
}

TEST(matcat, bound_scalar) {
    const MC f = (MC(2, 2) << 1, 0, 0, 2).finished();
    const C s = bound_scalar<C>(f);
    EXPECT_NEAR(std::abs(std::conj(s) * s - C(5.0)), 0.0, 1e-12);
    const MC probe = col({0, 1});
    EXPECT_LE((dagger(probe) * dagger(f) * f * probe)(0, 0).real(), 5.0);
    EXPECT_EQ(bound_scalar<C>(MC::Zero(2, 2)), C(0.0));
    const C s3 = bound_scalar<C>(identity<C>(3));
    EXPECT_NEAR((std::conj(s3) * s3).real(), 3.0, 1e-12);
}

TEST(matcat, zero_cancellation) {
    // Exhaustive over Boolean matrices with at most 2 rows and columns.
    for (Index r1 = 1; r1 <= 2; ++r1)
        for (Index c1 = 1; c1 <= 2; ++c1)
            for (Index r2 = 1; r2 <= 2; ++r2)
                for (Index c2 = 1; c2 <= 2; ++c2)
                    for (std::uint64_t fm = 0; fm < (1u << (r1 * c1)); ++fm)
                        for (std::uint64_t gm = 0; gm < (1u << (r2 * c2)); ++gm) {
                            Mat<Bool> f(r1, c1), g(r2, c2);
                            for (Index i = 0; i < r1 * c1; ++i) f(i / c1, i % c1) = Bool(((fm >> i) & 1u) != 0);
                            for (Index i = 0; i < r2 * c2; ++i) g(i / c2, i % c2) = Bool(((gm >> i) & 1u) != 0);
                            if (is_zero<Bool>(tensor(f, g))) EXPECT_TRUE(is_zero<Bool>(f) || is_zero<Bool>(g));
                        }
    Rng rng = split_rng(27, 0);
    for (int t = 0; t < 500; ++t) {
        const MC f = gaussian_matrix<C>(uniform_index(1, 3, rng), uniform_index(1, 3, rng), rng) * (t % 2 == 0 ? C(1e-6) : C(1.0));
        const MC g = gaussian_matrix<C>(uniform_index(1, 3, rng), uniform_index(1, 3, rng), rng) * (t % 3 == 0 ? C(1e-6) : C(1.0));
        const double fg = tensor(f, g).norm();
        EXPECT_NEAR(fg, f.norm() * g.norm(), 1e-12);
        if (fg <= Tolerance{}.abs) EXPECT_TRUE(f.norm() <= 1e-4 || g.norm() <= 1e-4);
    }
}

TEST(matcat, real_ring_instantiation) {
    Rng rng = split_rng(28, 0);
    const MR f = gaussian_matrix<double>(3, 2, rng);
    EXPECT_TRUE(approx_equal<double>(dagger(f), MR(f.transpose())));
    const auto u = homogeneity_solve<double>(f, compose(random_unitary<double>(3, rng), f));
    ASSERT_TRUE(u.has_value());
    EXPECT_TRUE(is_unitary<double>(*u, Tolerance{}.scaled(10.0)));
}
