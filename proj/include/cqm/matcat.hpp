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

// The dagger compact category Mat_S. A morphism n -> m is an m x n matrix so
// that composition is the matrix product. Objects are self-dual with the
// canonical basis cup.

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

#include "cqm/scalars.hpp"

namespace cqm {

using Index = Eigen::Index;

template <class S>
using Mat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;

namespace detail {

inline std::string dims(Index r, Index c) { return std::to_string(r) + "x" + std::to_string(c); }

template <class S>
void require_same_shape(const Mat<S>& a, const Mat<S>& b, const char* op) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw Error(ErrorKind::DimensionMismatch,
                    std::string(op) + ": " + dims(a.rows(), a.cols()) + " vs " + dims(b.rows(), b.cols()));
    }
}

}  // namespace detail

template <class S>
Mat<S> identity(Index n) {
    return Mat<S>::Identity(n, n);
}

template <class S>
Mat<S> zero_matrix(Index rows, Index cols) {
    return Mat<S>::Zero(rows, cols);
}

/// The basis state |i> : 1 -> n.
template <class S>
Mat<S> basis_state(Index n, Index i) {
    Mat<S> v = Mat<S>::Zero(n, 1);
    v(i, 0) = S(1);
    return v;
}

/// g . f
template <class S>
Mat<S> compose(const Mat<S>& g, const Mat<S>& f) {
    if (g.cols() != f.rows()) {
        throw Error(ErrorKind::DimensionMismatch,
                    "compose: " + detail::dims(g.rows(), g.cols()) + " after " + detail::dims(f.rows(), f.cols()));
    }
    return g * f;
}

template <class S>
Mat<S> dagger(const Mat<S>& f) {
    return f.unaryExpr([](const S& s) { return conj(s); }).transpose();
}

/// Entrywise involution, the conjugate f* of the compact structure.
template <class S>
Mat<S> conjugate(const Mat<S>& f) {
    return f.unaryExpr([](const S& s) { return conj(s); });
}

/// Kronecker product, left factor major.
template <class S>
Mat<S> tensor(const Mat<S>& f, const Mat<S>& g) {
    return Eigen::kroneckerProduct(f, g).eval();
}

/// The symmetry m (x) n -> n (x) m.
template <class S>
Mat<S> swap(Index m, Index n) {
    Mat<S> s = Mat<S>::Zero(m * n, m * n);
    for (Index i = 0; i < m; ++i) {
        for (Index j = 0; j < n; ++j) s(j * m + i, i * n + j) = S(1);
    }
    return s;
}

template <class S>
double frobenius_norm(const Mat<S>& a) {
    if constexpr (RingTraits<S>::floating) {
        return a.norm();
    } else {
        double acc = 0.0;
        for (Index i = 0; i < a.size(); ++i) {
            const double m = magnitude(a.data()[i]);
            acc += m * m;
        }
        return std::sqrt(acc);
    }
}

/// Frobenius distance for float rings; 0 or +inf for exact rings.
template <class S>
double distance(const Mat<S>& a, const Mat<S>& b) {
    detail::require_same_shape(a, b, "distance");
    if constexpr (RingTraits<S>::floating) {
        return (a - b).norm();
    } else {
        return a == b ? 0.0 : std::numeric_limits<double>::infinity();
    }
}

template <class S>
bool approx_equal(const Mat<S>& a, const Mat<S>& b, Tolerance tol = {}) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    if constexpr (RingTraits<S>::exact) {
        return a == b;
    } else {
        return distance(a, b) <= tol.bound(std::max(a.norm(), b.norm()));
    }
}

template <class S>
bool is_zero(const Mat<S>& a, Tolerance tol = {}) {
    if constexpr (RingTraits<S>::exact) {
        return a == Mat<S>::Zero(a.rows(), a.cols());
    } else {
        return a.norm() <= tol.abs;
    }
}

// ---------------------------------------------------------------------------
// Biproducts

/// Layout of an object n_1 + ... + n_k.
struct BiproductTag {
    std::vector<Index> summands;
    std::vector<Index> offsets;
    Index total = 0;

    static BiproductTag of(std::vector<Index> summands) {
        BiproductTag tag;
        tag.summands = std::move(summands);
        for (Index n : tag.summands) {
            tag.offsets.push_back(tag.total);
            tag.total += n;
        }
        return tag;
    }
};

/// Coprojections kappa_i : n_i -> total.
template <class S>
std::vector<Mat<S>> injections(const BiproductTag& tag) {
    std::vector<Mat<S>> out;
    for (std::size_t i = 0; i < tag.summands.size(); ++i) {
        Mat<S> k = Mat<S>::Zero(tag.total, tag.summands[i]);
        k.block(tag.offsets[i], 0, tag.summands[i], tag.summands[i]) = identity<S>(tag.summands[i]);
        out.push_back(std::move(k));
    }
    return out;
}

/// [f_1, ..., f_k] : n_1 + ... + n_k -> m, the unique map with [fs] . kappa_i = f_i.
template <class S>
Mat<S> copair(const std::vector<Mat<S>>& fs) {
    if (fs.empty()) throw Error(ErrorKind::DimensionMismatch, "copair of an empty family");
    const Index rows = fs.front().rows();
    Index cols = 0;
    for (const auto& f : fs) {
        if (f.rows() != rows) throw Error(ErrorKind::DimensionMismatch, "copair: codomains differ");
        cols += f.cols();
    }
    Mat<S> h(rows, cols);
    Index at = 0;
    for (const auto& f : fs) {
        h.middleCols(at, f.cols()) = f;
        at += f.cols();
    }
    return h;
}

/// <f_1, ..., f_k> : m -> n_1 + ... + n_k, the unique map with kappa_i† . <fs> = f_i.
template <class S>
Mat<S> pair(const std::vector<Mat<S>>& fs) {
    if (fs.empty()) throw Error(ErrorKind::DimensionMismatch, "pair of an empty family");
    const Index cols = fs.front().cols();
    Index rows = 0;
    for (const auto& f : fs) {
        if (f.cols() != cols) throw Error(ErrorKind::DimensionMismatch, "pair: domains differ");
        rows += f.rows();
    }
    Mat<S> h(rows, cols);
    Index at = 0;
    for (const auto& f : fs) {
        h.middleRows(at, f.rows()) = f;
        at += f.rows();
    }
    return h;
}

// ---------------------------------------------------------------------------
// Compact structure

/// cup_n : 1 -> n (x) n, sum_i |ii>.
template <class S>
Mat<S> cup(Index n) {
    Mat<S> c = Mat<S>::Zero(n * n, 1);
    for (Index i = 0; i < n; ++i) c(i * n + i, 0) = S(1);
    return c;
}

template <class S>
Mat<S> cap(Index n) {
    return dagger(cup<S>(n));
}

/// The transpose f^T : m -> n of f : n -> m, built by bending both wires.
template <class S>
Mat<S> partial_transpose(const Mat<S>& f) {
    const Index n = f.cols();
    const Index m = f.rows();
    const Mat<S> bent = compose(tensor(identity<S>(n), cap<S>(m)),
                                compose(tensor(tensor(identity<S>(n), f), identity<S>(m)),
                                        tensor(cup<S>(n), identity<S>(m))));
    return bent;
}

// ---------------------------------------------------------------------------
// Morphism predicates

template <class S>
bool is_self_adjoint(const Mat<S>& f, Tolerance tol = {}) {
    return f.rows() == f.cols() && approx_equal(f, dagger(f), tol);
}

template <class S>
bool is_isometry(const Mat<S>& f, Tolerance tol = {}) {
    return approx_equal<S>(compose(dagger(f), f), identity<S>(f.cols()), tol);
}

template <class S>
bool is_unitary(const Mat<S>& f, Tolerance tol = {}) {
    if (f.rows() != f.cols()) throw Error(ErrorKind::DimensionMismatch, "is_unitary needs a square matrix");
    return is_isometry(f, tol) && approx_equal<S>(compose(f, dagger(f)), identity<S>(f.rows()), tol);
}

/// For a Boolean p, searches for g with p = g† g. Rows of g are taken from the
/// nonempty subsets of the index set, so the search is exhaustive.
inline std::optional<Mat<Bool>> boolean_positive_factor(const Mat<Bool>& p) {
    const Index n = p.rows();
    if (n != p.cols()) throw Error(ErrorKind::DimensionMismatch, "positivity needs a square matrix");
    if (n > 3) throw Error(ErrorKind::TooLarge, "Boolean factor search is limited to dimension 3");
    const unsigned row_types = (1u << n) - 1;  // nonempty subsets
    for (unsigned choice = 0; choice < (1u << row_types); ++choice) {
        Mat<Bool> g = Mat<Bool>::Zero(std::popcount(choice), n);
        Index r = 0;
        for (unsigned t = 0; t < row_types; ++t) {
            if (!(choice & (1u << t))) continue;
            const unsigned subset = t + 1;
            for (Index j = 0; j < n; ++j) g(r, j) = Bool(((subset >> j) & 1u) != 0);
            ++r;
        }
        if (compose(dagger(g), g) == p) return g;
    }
    return std::nullopt;
}

/// p = g† g for some g. Floats: self-adjoint with spectrum >= -tol.
template <class S>
bool is_positive_morphism(const Mat<S>& p, Tolerance tol = {}) {
    if (p.rows() != p.cols()) throw Error(ErrorKind::DimensionMismatch, "is_positive_morphism needs a square matrix");
    if constexpr (RingTraits<S>::floating) {
        if (!is_self_adjoint(p, tol)) return false;
        if (p.rows() == 0) return true;
        const Mat<S> h = (p + dagger(p)) / 2.0;
        Eigen::SelfAdjointEigenSolver<Mat<S>> es(h, Eigen::EigenvaluesOnly);
        return es.eigenvalues().minCoeff() >= -tol.bound(p.norm());
    } else if constexpr (std::is_same_v<S, Bool>) {
        return boolean_positive_factor(p).has_value();
    } else {
        (void)tol;
        detail::unsupported<S>("positivity of morphisms");
    }
}

// ---------------------------------------------------------------------------
// Gram-Schmidt, homogeneity, normalisation

template <class S>
using InnerProduct = std::function<S(const Mat<S>&, const Mat<S>&)>;

template <class S>
S standard_inner(const Mat<S>& v, const Mat<S>& w) {
    return (dagger(v) * w)(0, 0);
}

namespace detail {

template <class S>
void require_gram_schmidt_ring() {
    if constexpr (!RingTraits<S>::floating) unsupported<S>("Gram-Schmidt");
}

}  // namespace detail

/// Orthonormalises the columns of `vectors` in order, w.r.t. `inner`
/// (default v† w). A residual whose norm is at most tol * max(1, |input|)
/// counts as zero and is dropped. `limit` caps the number of outputs.
template <class S>
Mat<S> gram_schmidt(const Mat<S>& vectors, const InnerProduct<S>& inner = standard_inner<S>, Tolerance tol = {},
                    Index limit = -1) {
    if constexpr (!RingTraits<S>::floating) {
        (void)vectors, (void)inner, (void)tol, (void)limit;
        detail::unsupported<S>("Gram-Schmidt");
    } else {
        const Index dim = vectors.rows();
        std::vector<Mat<S>> basis;
        for (Index c = 0; c < vectors.cols(); ++c) {
            if (limit >= 0 && static_cast<Index>(basis.size()) >= limit) break;
            Mat<S> v = vectors.col(c);
            const double input_norm = std::sqrt(std::max(0.0, real_part(inner(v, v))));
            const double scale = std::max(1.0, input_norm);
            // Two passes of modified Gram-Schmidt keep the output orthonormal to
            // working precision.
            for (int pass = 0; pass < 2; ++pass) {
                for (const auto& q : basis) v -= q * inner(q, v);
            }
            const double nn = real_part(inner(v, v));
            if (nn < -tol.abs * scale * scale) {
                throw Error(ErrorKind::DegenerateInner, "inner product is negative on a residual");
            }
            const double norm = std::sqrt(std::max(0.0, nn));
            if (norm <= tol.abs * scale) continue;
            basis.push_back(v / norm);
        }
        Mat<S> out(dim, static_cast<Index>(basis.size()));
        for (std::size_t i = 0; i < basis.size(); ++i) out.col(static_cast<Index>(i)) = basis[i];
        return out;
    }
}

/// Extends orthonormal columns q to an orthonormal basis of the ambient space
/// by orthonormalising the standard basis against them.
template <class S>
Mat<S> complete_basis(const Mat<S>& q, Tolerance tol = {}) {
    const Index n = q.rows();
    Mat<S> candidates(n, q.cols() + n);
    candidates << q, identity<S>(n);
    return gram_schmidt<S>(candidates, standard_inner<S>, tol, n);
}

/// Finds a unitary U with U f = g, given f† f = g† g. Returns nullopt when
/// the constructed U misses g by more than 10 tol.
template <class S>
std::optional<Mat<S>> homogeneity_solve(const Mat<S>& f, const Mat<S>& g, Tolerance tol = {}) {
    if constexpr (!RingTraits<S>::floating) {
        (void)f, (void)g, (void)tol;
        detail::unsupported<S>("homogeneity");
    } else {
        detail::require_same_shape(f, g, "homogeneity_solve");
        const Mat<S> ff = compose(dagger(f), f);
        const Mat<S> gg = compose(dagger(g), g);
        if (!approx_equal(ff, gg, tol.scaled(10.0))) {
            throw Error(ErrorKind::PrereqFailed, "f†f differs from g†g");
        }
        const Index n = f.cols();
        const Index m = f.rows();
        // Orthonormalise the domain for <v,w>' = (fv)†(fw); vectors in ker f drop out.
        const InnerProduct<S> pulled_back = [&](const Mat<S>& v, const Mat<S>& w) {
            return standard_inner<S>(f * v, f * w);
        };
        const Mat<S> frame = gram_schmidt<S>(identity<S>(n), pulled_back, tol);
        const Mat<S> a = complete_basis<S>(f * frame, tol);
        const Mat<S> b = complete_basis<S>(g * frame, tol);
        if (a.cols() != m || b.cols() != m) return std::nullopt;
        Mat<S> u = compose(b, dagger(a));
        const double residual = distance(compose(u, f), g);
        if (residual > 10.0 * tol.bound(std::max(1.0, g.norm()))) return std::nullopt;
        return u;
    }
}

template <class S>
struct NormalisedState {
    Mat<S> sigma;  ///< isometric state
    S r;           ///< scalar with psi = sigma r
};

template <class S>
NormalisedState<S> dagger_normalise_state(const Mat<S>& psi, Tolerance tol = {}) {
    detail::require_gram_schmidt_ring<S>();
    if (psi.cols() != 1) throw Error(ErrorKind::DimensionMismatch, "dagger_normalise_state expects a state");
    const S r = sqrt_positive<S>(standard_inner<S>(psi, psi), tol);
    if (magnitude(r) <= tol.abs) throw Error(ErrorKind::ZeroState, "cannot normalise the zero state");
    return {psi / r, r};
}

/// A scalar s with s† s = Tr(f† f); bounds f† f by (s† s) id.
template <class S>
S bound_scalar(const Mat<S>& f) {
    if constexpr (!RingTraits<S>::floating) {
        (void)f;
        detail::unsupported<S>("bound scalars");
    } else {
        return S(f.norm());
    }
}

}  // namespace cqm
