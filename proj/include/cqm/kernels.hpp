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

// Dagger kernels in Mat_S and the orthomodular lattice they form.
//
// Kernel arrows are stored in canonical form so that equality of kernels is
// equality of matrices. Over the floats the canonical basis of a subspace K
// is obtained by orthonormalising P_K e_1, P_K e_2, ... in index order; over
// the non-negative rationals and the Booleans every kernel is a coordinate
// inclusion with its columns in increasing coordinate order.

#include <vector>

#include "cqm/matcat.hpp"

namespace cqm {

/// An isometry K -> A, stored as a dim(A) x dim(K) matrix.
template <class S>
struct KernelArrow {
    Mat<S> arrow;

    Index ambient() const { return arrow.rows(); }
    Index dim() const { return arrow.cols(); }

    friend bool operator==(const KernelArrow& a, const KernelArrow& b) {
        return a.arrow.rows() == b.arrow.rows() && a.arrow.cols() == b.arrow.cols() && a.arrow == b.arrow;
    }
};

namespace detail {

template <class S>
void require_kernel_ring() {
    if constexpr (!RingTraits<S>::floating && !RingTraits<S>::coordinate_kernels) unsupported<S>("dagger kernels");
}

// Residuals of P e_i below this are skipped when building the canonical
// basis. A d-dimensional remainder always leaves some residual of norm at
// least 1/sqrt(n), so nothing is lost for n < 10^6.
inline constexpr double kCanonicalPivot = 1e-3;

template <class S>
Mat<S> canonical_from_projector(const Mat<S>& projector, Index rank) {
    const Index n = projector.rows();
    std::vector<Mat<S>> basis;
    for (double pivot : {kCanonicalPivot, 1e-8}) {
        basis.clear();
        for (Index i = 0; i < n && static_cast<Index>(basis.size()) < rank; ++i) {
            Mat<S> v = projector.col(i);
            for (int pass = 0; pass < 2; ++pass) {
                for (const auto& q : basis) v -= q * standard_inner<S>(q, v);
            }
            const double norm = v.norm();
            if (norm >= pivot) basis.push_back(v / norm);
        }
        if (static_cast<Index>(basis.size()) == rank) break;
    }
    Mat<S> out(n, static_cast<Index>(basis.size()));
    for (std::size_t i = 0; i < basis.size(); ++i) out.col(static_cast<Index>(i)) = basis[i];
    return out;
}

template <class S>
Mat<S> coordinate_inclusion(Index n, const std::vector<Index>& coords) {
    Mat<S> k = Mat<S>::Zero(n, static_cast<Index>(coords.size()));
    for (std::size_t j = 0; j < coords.size(); ++j) k(coords[j], static_cast<Index>(j)) = S(1);
    return k;
}

}  // namespace detail

/// Canonical orthonormal basis of the span of the columns of `vectors`.
template <class S>
KernelArrow<S> canonical_span(const Mat<S>& vectors, Tolerance tol = {}) {
    if constexpr (RingTraits<S>::floating) {
        const Mat<S> q = gram_schmidt<S>(vectors, standard_inner<S>, tol);
        return {detail::canonical_from_projector<S>(q * dagger(q), q.cols())};
    } else if constexpr (RingTraits<S>::coordinate_kernels) {
        // Only meaningful for coordinate spans: the support of the columns.
        std::vector<Index> coords;
        for (Index i = 0; i < vectors.rows(); ++i) {
            if (!(vectors.row(i) == Mat<S>::Zero(1, vectors.cols()))) coords.push_back(i);
        }
        return {detail::coordinate_inclusion<S>(vectors.rows(), coords)};
    } else {
        detail::unsupported<S>("canonical spans");
    }
}

/// The canonical representative of the subobject an isometry k represents.
template <class S>
KernelArrow<S> canonicalize(const Mat<S>& k, Tolerance tol = {}) {
    return canonical_span<S>(k, tol);
}

template <class S>
KernelArrow<S> kernel(const Mat<S>& f, Tolerance tol = {}) {
    detail::require_kernel_ring<S>();
    const Index n = f.cols();
    if constexpr (RingTraits<S>::floating) {
        const Mat<S> row_space = gram_schmidt<S>(dagger(f), standard_inner<S>, tol);
        const Mat<S> projector = identity<S>(n) - row_space * dagger(row_space);
        return {detail::canonical_from_projector<S>(projector, n - row_space.cols())};
    } else {
        (void)tol;
        std::vector<Index> coords;
        for (Index j = 0; j < n; ++j) {
            if (f.col(j) == Mat<S>::Zero(f.rows(), 1)) coords.push_back(j);
        }
        return {detail::coordinate_inclusion<S>(n, coords)};
    }
}

/// coker(f) = ker(f†)†
template <class S>
Mat<S> cokernel(const Mat<S>& f, Tolerance tol = {}) {
    return dagger(kernel<S>(dagger(f), tol).arrow);
}

/// im(f) = ker(coker(f))
template <class S>
KernelArrow<S> image(const Mat<S>& f, Tolerance tol = {}) {
    return kernel<S>(cokernel<S>(f, tol), tol);
}

/// coim(f) = coker(ker(f))
template <class S>
Mat<S> coimage(const Mat<S>& f, Tolerance tol = {}) {
    return cokernel<S>(kernel<S>(f, tol).arrow, tol);
}

/// k^perp = coker(k)†
template <class S>
KernelArrow<S> complement(const KernelArrow<S>& k, Tolerance tol = {}) {
    return {dagger(cokernel<S>(k.arrow, tol))};
}

template <class S>
bool same_kernel(const KernelArrow<S>& a, const KernelArrow<S>& b, Tolerance tol = {}) {
    return a.ambient() == b.ambient() && a.dim() == b.dim() && approx_equal(a.arrow, b.arrow, tol);
}

/// k is a kernel iff k = im(k).
template <class S>
bool is_kernel(const Mat<S>& k, Tolerance tol = {}) {
    if (!is_isometry(k, tol)) return false;
    const KernelArrow<S> im = image<S>(k, tol);
    return im.dim() == k.cols() && approx_equal<S>(compose(im.arrow, dagger(im.arrow)), compose(k, dagger(k)), tol);
}

template <class S>
KernelArrow<S> lattice_meet(const KernelArrow<S>& a, const KernelArrow<S>& b, Tolerance tol = {}) {
    if (a.ambient() != b.ambient()) throw Error(ErrorKind::DimensionMismatch, "meet of kernels on different objects");
    const Mat<S> stacked = pair<S>({dagger(complement(a, tol).arrow), dagger(complement(b, tol).arrow)});
    return kernel<S>(stacked, tol);
}

template <class S>
KernelArrow<S> lattice_join(const KernelArrow<S>& a, const KernelArrow<S>& b, Tolerance tol = {}) {
    if (a.ambient() != b.ambient()) throw Error(ErrorKind::DimensionMismatch, "join of kernels on different objects");
    return complement(lattice_meet(complement(a, tol), complement(b, tol), tol), tol);
}

/// a <= b iff a factors through b.
template <class S>
bool lattice_leq(const KernelArrow<S>& a, const KernelArrow<S>& b, Tolerance tol = {}) {
    if (a.ambient() != b.ambient()) throw Error(ErrorKind::DimensionMismatch, "comparing kernels on different objects");
    return approx_equal<S>(compose(b.arrow, compose(dagger(b.arrow), a.arrow)), a.arrow, tol);
}

struct KernelFactorisation {
    bool holds = true;
    Index checked = 0;
    Index skipped = 0;
    double max_residual = 0.0;
};

/// Every probe g with f g = 0 must factor as g = k (k† g).
template <class S>
KernelFactorisation verify_kernel_universal(const Mat<S>& f, const KernelArrow<S>& k, const std::vector<Mat<S>>& probes,
                                            Tolerance tol = {}) {
    KernelFactorisation out;
    if (!is_isometry(k.arrow, tol) || !is_zero(compose(f, k.arrow), tol.scaled(10.0))) {
        out.holds = false;
        return out;
    }
    for (const auto& g : probes) {
        const double scale = std::max(1.0, frobenius_norm(f) * frobenius_norm(g));
        const Mat<S> fg = compose(f, g);
        bool annihilated;
        if constexpr (RingTraits<S>::exact) {
            annihilated = is_zero(fg);
        } else {
            annihilated = fg.norm() <= tol.bound(scale);
        }
        if (!annihilated) {
            ++out.skipped;
            continue;
        }
        ++out.checked;
        const Mat<S> h = compose(dagger(k.arrow), g);
        const double residual = distance(compose(k.arrow, h), g);
        out.max_residual = std::max(out.max_residual, residual);
        if (residual > 10.0 * tol.bound(std::max(1.0, frobenius_norm(g)))) out.holds = false;
    }
    return out;
}

}  // namespace cqm
