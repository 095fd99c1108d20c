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

#include "cqm/theories.hpp"

#include <algorithm>

namespace cqm {

namespace {

struct TheoryRow {
    TheoryKind kind;
    std::string_view id;
    RingId ring;
    MorphismMode mode;
};

constexpr TheoryRow kTheories[] = {
    {TheoryKind::QuantC, "quant-c", RingId::Complex64, MorphismMode::Cpm},
    {TheoryKind::QuantR, "quant-r", RingId::Real64, MorphismMode::Cpm},
    {TheoryKind::Class, "class", RingId::NNRational, MorphismMode::PlainMatrix},
    {TheoryKind::Rel, "rel", RingId::Boolean, MorphismMode::PlainMatrix},
};

const TheoryRow& row_of(TheoryKind kind) {
    for (const auto& row : kTheories) {
        if (row.kind == kind) return row;
    }
    throw Error(ErrorKind::UnknownTheory, "unknown theory kind");
}

void require_rel(const TheoryHandle& handle) {
    if (handle.kind != TheoryKind::Rel) throw Error(ErrorKind::UnsupportedRing, "enumeration is only defined for rel");
}

}  // namespace

std::string TheoryHandle::id() const { return std::string(row_of(kind).id); }

TheoryHandle theory_handle(TheoryKind kind) {
    const TheoryRow& row = row_of(kind);
    return {row.kind, row.ring, row.mode};
}

TheoryHandle parse_theory(std::string_view id) {
    for (const auto& row : kTheories) {
        if (row.id == id) return {row.kind, row.ring, row.mode};
    }
    throw Error(ErrorKind::UnknownTheory, "unknown theory '" + std::string(id) + "'");
}

const std::vector<TheoryKind>& all_theories() {
    static const std::vector<TheoryKind> kinds{TheoryKind::QuantC, TheoryKind::QuantR, TheoryKind::Class,
                                               TheoryKind::Rel};
    return kinds;
}

Index TheoryMorphism::in_dim() const {
    return std::visit(
        [](const auto& m) -> Index {
            if constexpr (requires { m.in_dim(); }) {
                return m.in_dim();
            } else {
                return m.cols();
            }
        },
        payload);
}

Index TheoryMorphism::out_dim() const {
    return std::visit(
        [](const auto& m) -> Index {
            if constexpr (requires { m.out_dim(); }) {
                return m.out_dim();
            } else {
                return m.rows();
            }
        },
        payload);
}

TheoryMorphism sample_morphism(const TheoryHandle& handle, Index in_dim, Index out_dim, Rng& rng) {
    switch (handle.kind) {
        case TheoryKind::QuantC: return {handle, QuantC::sample(in_dim, out_dim, rng)};
        case TheoryKind::QuantR: return {handle, QuantR::sample(in_dim, out_dim, rng)};
        case TheoryKind::Class: return {handle, Class::sample(in_dim, out_dim, rng)};
        case TheoryKind::Rel: return {handle, Rel::sample(in_dim, out_dim, rng)};
    }
    throw Error(ErrorKind::UnknownTheory, "unknown theory kind");
}

TheoryMorphism discard_morphism(const TheoryHandle& handle, Index n) {
    switch (handle.kind) {
        case TheoryKind::QuantC: return {handle, QuantC::discard(n)};
        case TheoryKind::QuantR: return {handle, QuantR::discard(n)};
        case TheoryKind::Class: return {handle, Class::discard(n)};
        case TheoryKind::Rel: return {handle, Rel::discard(n)};
    }
    throw Error(ErrorKind::UnknownTheory, "unknown theory kind");
}

Mat<Bool> rel_from_mask(Index rows, Index cols, std::uint64_t mask) {
    Mat<Bool> m(rows, cols);
    for (Index i = 0; i < rows; ++i) {
        for (Index j = 0; j < cols; ++j) m(i, j) = Bool(((mask >> (i * cols + j)) & 1u) != 0);
    }
    return m;
}

std::uint64_t rel_mask(const Mat<Bool>& f) {
    std::uint64_t mask = 0;
    for (Index i = 0; i < f.rows(); ++i) {
        for (Index j = 0; j < f.cols(); ++j) {
            if (f(i, j).value) mask |= std::uint64_t{1} << (i * f.cols() + j);
        }
    }
    return mask;
}

RelMorphisms::RelMorphisms(Index in_dim, Index out_dim) : in_(in_dim), out_(out_dim) {
    if (in_dim < 0 || out_dim < 0) throw Error(ErrorKind::DimensionMismatch, "negative dimension");
    if (in_dim * out_dim > kRelEnumerationBits) {
        throw Error(ErrorKind::TooLarge, "enumeration of " + detail::dims(out_dim, in_dim) + " relations exceeds 2^16");
    }
    count_ = std::uint64_t{1} << (in_dim * out_dim);
}

RelMorphisms enumerate_morphisms(const TheoryHandle& handle, Index in_dim, Index out_dim) {
    require_rel(handle);
    return RelMorphisms(in_dim, out_dim);
}

bool rel_is_pure_bruteforce(const Mat<Bool>& f) {
    for (Index env = 1; env <= 2; ++env) {
        for (const Mat<Bool>& g : RelMorphisms(f.cols(), f.rows() * env)) {
            if (classical_marginal(g, env) == f && !is_product_dilation(f, g, env)) return false;
        }
    }
    return true;
}

std::vector<Mat<Bool>> pure_set_bruteforce(const TheoryHandle& handle, Index in_dim, Index out_dim) {
    require_rel(handle);
    if (in_dim > 2 || out_dim > 2) throw Error(ErrorKind::TooLarge, "brute-force purity is limited to dims <= 2");
    std::vector<Mat<Bool>> pure;
    for (const Mat<Bool>& f : RelMorphisms(in_dim, out_dim)) {
        if (rel_is_pure_bruteforce(f)) pure.push_back(f);
    }
    return pure;
}

bool rel_has_pure_dilation(const Mat<Bool>& f, Index max_env) {
    for (Index env = 1; env <= max_env; ++env) {
        for (const Mat<Bool>& g : RelMorphisms(f.cols(), f.rows() * env)) {
            if (classical_is_pure(g) && classical_marginal(g, env) == f) return true;
        }
    }
    return false;
}

Mat<Bool> rel_kernel_bruteforce(const Mat<Bool>& f) {
    const Index n = f.cols();
    std::vector<Mat<Bool>> annihilated;
    for (const Mat<Bool>& z : RelMorphisms(1, n)) {
        if (is_zero(compose(f, z))) annihilated.push_back(z);
    }
    for (Index j = n; j >= 0; --j) {
        for (const Mat<Bool>& k : RelMorphisms(j, n)) {
            if (compose(dagger(k), k) != identity<Bool>(j) || !is_zero(compose(f, k))) continue;
            const bool universal = std::all_of(annihilated.begin(), annihilated.end(), [&](const Mat<Bool>& z) {
                Index factorisations = 0;
                for (const Mat<Bool>& w : RelMorphisms(1, j)) factorisations += compose(k, w) == z ? 1 : 0;
                return factorisations == 1;
            });
            if (!universal) continue;
            // Order the columns by their (single) row so the result is comparable.
            std::vector<Index> rows;
            for (Index c = 0; c < j; ++c) {
                for (Index r = 0; r < n; ++r) {
                    if (k(r, c).value) {
                        rows.push_back(r);
                        break;
                    }
                }
            }
            std::vector<Index> order(static_cast<std::size_t>(j));
            for (Index c = 0; c < j; ++c) order[static_cast<std::size_t>(c)] = c;
            std::sort(order.begin(), order.end(), [&](Index a, Index b) {
                return rows[static_cast<std::size_t>(a)] < rows[static_cast<std::size_t>(b)];
            });
            Mat<Bool> sorted(n, j);
            for (Index c = 0; c < j; ++c) sorted.col(c) = k.col(order[static_cast<std::size_t>(c)]);
            return sorted;
        }
    }
    throw Error(ErrorKind::NoSolution, "no kernel found");
}

}  // namespace cqm
