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

// The four concrete theories the audit runs against: Quant over complex and
// real floats (CP maps), Class over non-negative rationals and Rel over the
// Boolean semiring (plain matrices).

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cqm/cpm.hpp"

namespace cqm {

enum class TheoryKind { QuantC, QuantR, Class, Rel };
enum class MorphismMode { Cpm, PlainMatrix };

struct TheoryHandle {
    TheoryKind kind = TheoryKind::QuantC;
    RingId ring = RingId::Complex64;
    MorphismMode mode = MorphismMode::Cpm;

    std::string id() const;
    bool operator==(const TheoryHandle&) const = default;
};

TheoryHandle theory_handle(TheoryKind kind);
/// "quant-c", "quant-r", "class" or "rel"; anything else throws UnknownTheory.
TheoryHandle parse_theory(std::string_view id);
const std::vector<TheoryKind>& all_theories();

using MorphismPayload = std::variant<CPMorphism<Complex>, CPMorphism<double>, Mat<NonNegRational>, Mat<Bool>>;

struct TheoryMorphism {
    TheoryHandle handle;
    MorphismPayload payload;

    Index in_dim() const;
    Index out_dim() const;
};

// ---------------------------------------------------------------------------
// Typed theory policies

template <class S>
struct QuantTheory {
    using Scalar = S;
    using Morphism = CPMorphism<S>;
    static constexpr TheoryKind kind = std::is_same_v<S, Complex> ? TheoryKind::QuantC : TheoryKind::QuantR;

    static Morphism discard(Index n) { return cqm::discard<S>(n); }
    static Morphism identity(Index n) { return identity_cpm<S>(n); }
    static Morphism compose(const Morphism& g, const Morphism& f) { return compose_cpm(g, f); }
    static Morphism tensor(const Morphism& f, const Morphism& g) { return tensor_cpm(f, g); }
    static Morphism add(const Morphism& f, const Morphism& g) { return add_cpm(f, g); }
    static bool equal(const Morphism& f, const Morphism& g, Tolerance tol) { return approx_equal(f, g, tol); }

    /// Kraus count 1-4 with Gaussian entries.
    static Morphism sample(Index in_dim, Index out_dim, Rng& rng) {
        return random_cp_map<S>(in_dim, out_dim, uniform_index(1, 4, rng), rng);
    }
};

template <class S>
struct ClassicalTheory {
    static_assert(RingTraits<S>::exact && RingTraits<S>::zero_sum_free);
    using Scalar = S;
    using Morphism = Mat<S>;
    static constexpr TheoryKind kind = std::is_same_v<S, Bool> ? TheoryKind::Rel : TheoryKind::Class;

    static Morphism discard(Index n) { return Mat<S>::Constant(1, n, S(1)); }
    static Morphism identity(Index n) { return cqm::identity<S>(n); }
    static Morphism compose(const Morphism& g, const Morphism& f) { return cqm::compose(g, f); }
    static Morphism tensor(const Morphism& f, const Morphism& g) { return cqm::tensor(f, g); }
    static Morphism add(const Morphism& f, const Morphism& g) {
        detail::require_same_shape(f, g, "add");
        return f + g;
    }
    static bool equal(const Morphism& f, const Morphism& g, Tolerance) {
        return f.rows() == g.rows() && f.cols() == g.cols() && f == g;
    }

    /// Class: entries k/4 for k = 0..4. Rel: uniform bits.
    static Morphism sample(Index in_dim, Index out_dim, Rng& rng) {
        Mat<S> m(out_dim, in_dim);
        for (Index j = 0; j < in_dim; ++j) {
            for (Index i = 0; i < out_dim; ++i) {
                if constexpr (std::is_same_v<S, Bool>) {
                    m(i, j) = Bool(uniform_index(0, 1, rng) == 1);
                } else {
                    m(i, j) = S(static_cast<int>(uniform_index(0, 4, rng)), 4);
                }
            }
        }
        return m;
    }
};

using QuantC = QuantTheory<Complex>;
using QuantR = QuantTheory<double>;
using Class = ClassicalTheory<NonNegRational>;
using Rel = ClassicalTheory<Bool>;

TheoryMorphism sample_morphism(const TheoryHandle& handle, Index in_dim, Index out_dim, Rng& rng);
TheoryMorphism discard_morphism(const TheoryHandle& handle, Index n);

// ---------------------------------------------------------------------------
// Classical purity. Over a zero-sum-free ring with no cancellation of
// supports, f is pure exactly when it has at most one nonzero entry; anything
// larger is refuted by its tagging dilation.

template <class S>
Index nonzero_count(const Mat<S>& f) {
    Index n = 0;
    for (Index j = 0; j < f.cols(); ++j) {
        for (Index i = 0; i < f.rows(); ++i) n += is_zero(f(i, j)) ? 0 : 1;
    }
    return n;
}

template <class S>
bool classical_is_pure(const Mat<S>& f) {
    return nonzero_count(f) <= 1;
}

/// (id (x) discard_C) g
template <class S>
Mat<S> classical_marginal(const Mat<S>& g, Index env_dim) {
    if (env_dim <= 0 || g.rows() % env_dim != 0) {
        throw Error(ErrorKind::DimensionMismatch, "marginal: environment does not divide the output");
    }
    return compose(tensor(identity<S>(g.rows() / env_dim), ClassicalTheory<S>::discard(env_dim)), g);
}

/// Whether a dilation g : A -> B (x) C of f equals f (x) rho for a causal state
/// rho. rho is forced by any nonzero entry of f.
template <class S>
bool is_product_dilation(const Mat<S>& f, const Mat<S>& g, Index env_dim) {
    if (g.cols() != f.cols() || g.rows() != f.rows() * env_dim) return false;
    for (Index a = 0; a < f.cols(); ++a) {
        for (Index b = 0; b < f.rows(); ++b) {
            if (is_zero(f(b, a))) continue;
            Mat<S> rho(env_dim, 1);
            for (Index c = 0; c < env_dim; ++c) rho(c, 0) = divide(g(b * env_dim + c, a), f(b, a));
            if (ClassicalTheory<S>::discard(env_dim) * rho != Mat<S>::Constant(1, 1, S(1))) return false;
            return tensor(f, rho) == g;
        }
    }
    return g == Mat<S>::Zero(g.rows(), g.cols());
}

/// Puts every nonzero entry of f on its own environment index; not a product
/// dilation once f has two or more nonzero entries.
template <class S>
std::pair<Mat<S>, Index> tagging_dilation(const Mat<S>& f) {
    const Index env = std::max<Index>(1, nonzero_count(f));
    Mat<S> g = Mat<S>::Zero(f.rows() * env, f.cols());
    Index tag = 0;
    for (Index a = 0; a < f.cols(); ++a) {
        for (Index b = 0; b < f.rows(); ++b) {
            if (is_zero(f(b, a))) continue;
            g(b * env + tag, a) = f(b, a);
            ++tag;
        }
    }
    return {g, env};
}

/// The copy map A -> A (x) A, a dilation of id_A that is not of product form
/// for dim A >= 2.
template <class S>
Mat<S> copy_dilation(Index n) {
    Mat<S> g = Mat<S>::Zero(n * n, n);
    for (Index a = 0; a < n; ++a) g(a * n + a, a) = S(1);
    return g;
}

template <class S>
bool leq_entrywise(const Mat<S>& a, const Mat<S>& b) {
    detail::require_same_shape(a, b, "leq_entrywise");
    for (Index j = 0; j < a.cols(); ++j) {
        for (Index i = 0; i < a.rows(); ++i) {
            if constexpr (std::is_same_v<S, Bool>) {
                if (a(i, j).value && !b(i, j).value) return false;
            } else {
                if (!(a(i, j) <= b(i, j))) return false;
            }
        }
    }
    return true;
}

/// discard . f <= discard, entrywise.
template <class S>
bool classical_subcausal(const Mat<S>& f) {
    using T = ClassicalTheory<S>;
    return leq_entrywise<S>(compose(T::discard(f.rows()), f), T::discard(f.cols()));
}

/// f = rho v0† + sigma v1† for orthonormal states v0, v1.
template <class S>
Mat<S> classical_conditioning(const Mat<S>& v0, const Mat<S>& v1, const Mat<S>& rho, const Mat<S>& sigma) {
    if (v0.cols() != 1 || v1.cols() != 1 || rho.cols() != 1 || sigma.cols() != 1 || v0.rows() != v1.rows() ||
        rho.rows() != sigma.rows()) {
        throw Error(ErrorKind::DimensionMismatch, "conditioning expects states of matching objects");
    }
    const Mat<S> one = identity<S>(1);
    if (compose(dagger(v0), v0) != one || compose(dagger(v1), v1) != one ||
        compose(dagger(v1), v0) != Mat<S>::Zero(1, 1)) {
        throw Error(ErrorKind::NotOrthonormal, "states are not orthonormal");
    }
    return compose(rho, dagger(v0)) + compose(sigma, dagger(v1));
}

/// f + g recovered from conditioning alone: condition the names of f and g on
/// the two basis states of a 2-element object C, bend the result into
/// h : A -> B (x) C and discard C.
template <class S>
Mat<S> classical_derived_coarse_grain(const Mat<S>& f, const Mat<S>& g) {
    detail::require_same_shape(f, g, "classical_derived_coarse_grain");
    const Index a = f.cols();
    const Index b = f.rows();
    const auto name = [&](const Mat<S>& m) { return compose(tensor(identity<S>(a), m), cup<S>(a)); };
    const Mat<S> k = classical_conditioning<S>(basis_state<S>(2, 0), basis_state<S>(2, 1), name(f), name(g));
    const Mat<S> h = compose(tensor(cap<S>(a), identity<S>(b * 2)),
                             compose(tensor(tensor(identity<S>(a), k), identity<S>(2)), tensor(identity<S>(a), cup<S>(2))));
    return classical_marginal<S>(h, 2);
}

// ---------------------------------------------------------------------------
// Rel enumeration. Bit i * cols + j of the mask is entry (i, j).

inline constexpr Index kRelEnumerationBits = 16;

Mat<Bool> rel_from_mask(Index rows, Index cols, std::uint64_t mask);
std::uint64_t rel_mask(const Mat<Bool>& f);

class RelMorphisms {
public:
    RelMorphisms(Index in_dim, Index out_dim);

    class iterator {
    public:
        using value_type = Mat<Bool>;
        using difference_type = std::ptrdiff_t;

        iterator(const RelMorphisms* owner, std::uint64_t mask) : owner_(owner), mask_(mask) {}
        Mat<Bool> operator*() const { return rel_from_mask(owner_->out_, owner_->in_, mask_); }
        iterator& operator++() {
            ++mask_;
            return *this;
        }
        bool operator==(const iterator& other) const { return mask_ == other.mask_; }

    private:
        const RelMorphisms* owner_;
        std::uint64_t mask_;
    };

    iterator begin() const { return {this, 0}; }
    iterator end() const { return {this, count_}; }
    std::uint64_t size() const { return count_; }

private:
    Index in_;
    Index out_;
    std::uint64_t count_;
};

/// All Boolean matrices in -> out; TooLarge past 2^16 of them.
RelMorphisms enumerate_morphisms(const TheoryHandle& handle, Index in_dim, Index out_dim);

/// The literal purity definition evaluated by enumeration: every dilation over
/// environments of size 1 and 2 is compared against every f (x) rho.
bool rel_is_pure_bruteforce(const Mat<Bool>& f);
std::vector<Mat<Bool>> pure_set_bruteforce(const TheoryHandle& handle, Index in_dim, Index out_dim);

/// Whether f has a dilation over an environment of size <= max_env that is pure.
bool rel_has_pure_dilation(const Mat<Bool>& f, Index max_env = 2);

/// Kernel of a Boolean relation found by searching all dagger monos and
/// testing the universal property on every probe state.
Mat<Bool> rel_kernel_bruteforce(const Mat<Bool>& f);

}  // namespace cqm
