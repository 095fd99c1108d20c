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

// Global phases, the phased biproduct I (+) I and its tensor with A, strong
// symmetry, and the sampled audits of quantum-category and phased-ring
// structure over the float rings.

#include <deque>
#include <string>
#include <vector>

#include "cqm/kernels.hpp"
#include "cqm/random.hpp"

namespace cqm {

/// One named property checked over a batch of instances.
struct AuditCheck {
    std::string name;
    bool passed = true;
    Index instances = 0;
    double max_residual = 0.0;
    std::string note;

    void record(bool ok, double residual = 0.0) {
        ++instances;
        passed = passed && ok;
        max_residual = std::max(max_residual, residual);
    }
};

struct AuditChecks {
    std::deque<AuditCheck> checks;  // add() hands out references

    AuditCheck& add(std::string name) {
        checks.emplace_back().name = std::move(name);
        return checks.back();
    }
    const AuditCheck* find(std::string_view name) const {
        for (const auto& c : checks) {
            if (c.name == name) return &c;
        }
        return nullptr;
    }
    bool passed() const {
        return std::all_of(checks.begin(), checks.end(), [](const AuditCheck& c) { return c.passed; });
    }
};

template <class S>
struct PhaseMatch {
    bool holds = false;
    S u{1};  ///< f = u g
};

/// f ~ g iff f = u g for a unitary scalar u. u is read off the largest entry of g.
template <class S>
PhaseMatch<S> eq_up_to_phase(const Mat<S>& f, const Mat<S>& g, Tolerance tol = {}) {
    detail::require_same_shape(f, g, "eq_up_to_phase");
    if (is_zero(g, tol)) return {is_zero(f, tol), S(1)};
    Index r = 0;
    Index c = 0;
    g.cwiseAbs().maxCoeff(&r, &c);
    const S u = f(r, c) / g(r, c);
    if (std::abs(magnitude(u) - 1.0) > tol.bound(1.0)) return {false, u};
    return {approx_equal<S>(f, u * g, tol), u};
}

/// A morphism modulo global phase, stored with its largest entry real positive.
template <class S>
class PhasedMorphism {
public:
    explicit PhasedMorphism(const Mat<S>& f) : rep_(f) {
        if (f.size() == 0) return;
        const double top = f.cwiseAbs().maxCoeff();
        if (top == 0.0) return;
        // First entry (column-major) within rounding of the maximum, so near
        // ties resolve the same way for phase-shifted inputs.
        for (Index k = 0; k < f.size(); ++k) {
            const S x = f.data()[k];
            if (magnitude(x) >= top * (1.0 - 1e-9)) {
                rep_ = f * (magnitude(x) / x);
                break;
            }
        }
    }

    const Mat<S>& rep() const { return rep_; }

    bool equals(const PhasedMorphism& other, Tolerance tol = {}) const {
        return rep_.rows() == other.rep_.rows() && rep_.cols() == other.rep_.cols() &&
               eq_up_to_phase<S>(rep_, other.rep_, tol).holds;
    }

private:
    Mat<S> rep_;
};

template <class S>
struct PhasedBiproductWitness {
    Index object_dim = 0;
    std::vector<Mat<S>> coprojections;
    std::string phase_parameters;
};

/// A (x) (I (+) I) with coprojections id_A (x) e_i.
template <class S>
PhasedBiproductWitness<S> tensor_phased_biproduct(Index a_dim) {
    if (a_dim < 1) throw Error(ErrorKind::DimensionMismatch, "tensor_phased_biproduct needs dim A >= 1");
    PhasedBiproductWitness<S> w;
    w.object_dim = 2 * a_dim;
    for (Index i = 0; i < 2; ++i) w.coprojections.push_back(tensor(identity<S>(a_dim), basis_state<S>(2, i)));
    w.phase_parameters = std::is_same_v<S, Complex> ? "id_A (x) diag(u, 1), |u| = 1" : "id_A (x) diag(+-1, 1)";
    return w;
}

/// The unique h with h (id_A (x) e_i) = f_i.
template <class S>
Mat<S> phased_copair(const PhasedBiproductWitness<S>& w, const Mat<S>& f, const Mat<S>& g) {
    const Mat<S> merged = copair<S>({f, g});
    const Index a = w.object_dim / 2;
    Mat<S> h(f.rows(), w.object_dim);
    for (Index i = 0; i < a; ++i) {
        h.col(2 * i) = merged.col(i);
        h.col(2 * i + 1) = merged.col(a + i);
    }
    return h;
}

/// The phase id_A (x) diag(u, 1).
template <class S>
Mat<S> biproduct_phase(Index a_dim, const S& u) {
    Mat<S> d = identity<S>(2);
    d(0, 0) = u;
    return tensor(identity<S>(a_dim), d);
}

template <class S>
bool is_biproduct_phase(const PhasedBiproductWitness<S>& w, const Mat<S>& u, Tolerance tol = {}) {
    if (!is_unitary(u, tol)) return false;
    return std::all_of(w.coprojections.begin(), w.coprojections.end(),
                       [&](const Mat<S>& k) { return eq_up_to_phase<S>(compose(u, k), k, tol).holds; });
}

/// Existence, uniqueness up to phase and dagger closure of the phased biproduct
/// A (x) (I (+) I) on random pairs f, g : A -> X.
template <class S>
AuditChecks phased_biproduct_audit(Index samples, Rng& rng, Tolerance tol = {}, Index a_dim = 1) {
    const PhasedBiproductWitness<S> w = tensor_phased_biproduct<S>(a_dim);
    const auto& k = w.coprojections;
    AuditChecks out;
    AuditCheck& existence = out.add("existence");
    AuditCheck& uniqueness = out.add("uniqueness_up_to_phase");
    AuditCheck& phase_shape = out.add("phase_shape");
    AuditCheck& closure = out.add("dagger_closure");
    AuditCheck& rejection = out.add("non_phase_rejected");
    phase_shape.note = w.phase_parameters;
    for (Index s = 0; s < samples; ++s) {
        const Index x = uniform_index(1, 3, rng);
        const Mat<S> f = gaussian_matrix<S>(x, a_dim, rng);
        const Mat<S> g = gaussian_matrix<S>(x, a_dim, rng);
        const Mat<S> h = phased_copair(w, f, g);
        existence.record(approx_equal<S>(compose(h, k[0]), f, tol) && approx_equal<S>(compose(h, k[1]), g, tol),
                         std::max(distance(compose(h, k[0]), f), distance(compose(h, k[1]), g)));

        // h' agrees with h on each coprojection up to an independent phase.
        const S c0 = random_phase<S>(rng);
        const S c1 = random_phase<S>(rng);
        const Mat<S> hp = phased_copair(w, Mat<S>(c0 * f), Mat<S>(c1 * g));
        const PhaseMatch<S> m0 = eq_up_to_phase<S>(compose(hp, k[0]), compose(h, k[0]), tol);
        const PhaseMatch<S> m1 = eq_up_to_phase<S>(compose(hp, k[1]), compose(h, k[1]), tol);
        const S u = m0.u / m1.u;
        const Mat<S> phase = biproduct_phase<S>(a_dim, u);
        const PhaseMatch<S> whole = eq_up_to_phase<S>(hp, compose(h, phase), tol);
        uniqueness.record(m0.holds && m1.holds && whole.holds, distance(hp, Mat<S>(whole.u * compose(h, phase))));
        phase_shape.record(is_biproduct_phase(w, phase, tol), std::abs(magnitude(u) - 1.0));
        closure.record(is_biproduct_phase(w, dagger(phase), tol));

        const Mat<S> doubled = S(2) * h;
        rejection.record(!eq_up_to_phase<S>(compose(doubled, k[0]), compose(h, k[0]), tol).holds);
    }
    return out;
}

/// Positive diagonal p, q on I (+) I with p = q U for a phase U force p = q;
/// and positive p ~ q forces p = q.
template <class S>
AuditChecks positive_cancellation_check(Index samples, Rng& rng, Tolerance tol = {}) {
    AuditChecks out;
    AuditCheck& cancel = out.add("positive_cancellation");
    AuditCheck& rigid = out.add("positive_phase_rigidity");
    for (Index s = 0; s < samples; ++s) {
        Mat<S> q = Mat<S>::Zero(2, 2);
        q(0, 0) = S(s % 4 == 0 ? 0.0 : uniform_real(0.1, 2.0, rng));
        q(1, 1) = S(uniform_real(0.1, 2.0, rng));
        const S u = s % 3 == 0 ? S(1) : random_phase<S>(rng);
        const Mat<S> p = compose(q, biproduct_phase<S>(1, u));
        // p is a valid instance only when it is positive; the non-instances
        // must fail positivity, otherwise cancellation would be violated.
        const bool instance = is_positive_morphism(p, tol);
        const bool forced = is_zero(q(0, 0), tol) || approx_equal<S>(u, S(1), tol);
        cancel.record(instance == forced && (!instance || approx_equal<S>(p, q, tol)), instance ? distance(p, q) : 0.0);

        const Index n = uniform_index(1, 3, rng);
        const Mat<S> a = gaussian_matrix<S>(n, n, rng);
        const Mat<S> pos = compose(a, dagger(a));
        const S theta = s % 2 == 0 ? S(1) : random_phase<S>(rng);
        const Mat<S> shifted = theta * pos;
        const bool related = eq_up_to_phase<S>(shifted, pos, tol).holds;
        const bool both_positive = is_positive_morphism(shifted, tol);
        rigid.record(related && (!both_positive || approx_equal<S>(shifted, pos, tol)));
    }
    return out;
}

/// A unitary U with U k0 = k0' and U k1 = k1'.
template <class S>
Mat<S> strong_symmetry_solve(const Mat<S>& k0, const Mat<S>& k1, const Mat<S>& k0p, const Mat<S>& k1p,
                             Tolerance tol = {}) {
    const Index n = k0.rows();
    if (k1.rows() != n || k0p.rows() != n || k1p.rows() != n || k0.cols() != 1 || k1.cols() != 1 || k0p.cols() != 1 ||
        k1p.cols() != 1) {
        throw Error(ErrorKind::DimensionMismatch, "strong symmetry expects two pairs of states on one object");
    }
    const Mat<S> a = copair<S>({k0, k1});
    const Mat<S> b = copair<S>({k0p, k1p});
    const Tolerance loose = tol.scaled(10.0);
    if (!is_isometry(a, loose) || !is_isometry(b, loose)) throw Error(ErrorKind::NotOrthonormal, "pairs must be orthonormal");
    const Mat<S> basis_a = complete_basis<S>(a, tol);
    const Mat<S> basis_b = complete_basis<S>(b, tol);
    return compose(basis_b, dagger(basis_a));
}

/// Sampled quantum-category structure of Mat_S for dims up to max_dim.
template <class S>
AuditChecks quantum_category_audit(Index max_dim, Index samples, Rng& rng, Tolerance tol = {}) {
    AuditChecks out;
    AuditCheck& normalisation = out.add("dagger_normalisation");
    AuditCheck& homogeneity = out.add("homogeneity");
    AuditCheck& inhabited = out.add("state_inhabited");
    AuditCheck& iso_kernel = out.add("isometry_is_kernel");
    AuditCheck& complement_unitary = out.add("kernel_complement_unitary");
    AuditCheck& pointed = out.add("well_pointedness");
    AuditCheck& bound = out.add("bound_scalar");
    for (Index n = 1; n <= max_dim; ++n) {
        const Mat<S> e0 = basis_state<S>(n, 0);
        inhabited.record(!is_zero(e0, tol) && approx_equal<S>(compose(dagger(e0), e0), identity<S>(1), tol));
    }
    for (Index s = 0; s < samples; ++s) {
        const Index n = uniform_index(1, max_dim, rng);
        const Index m = uniform_index(1, max_dim, rng);

        const Mat<S> psi = gaussian_matrix<S>(n, 1, rng);
        const NormalisedState<S> ns = dagger_normalise_state<S>(psi, tol);
        normalisation.record(is_isometry(ns.sigma, tol) && approx_equal<S>(Mat<S>(ns.sigma * ns.r), psi, tol),
                             distance(Mat<S>(ns.sigma * ns.r), psi));

        // Rank-deficient f every other sample.
        const Index rank = s % 2 == 0 ? std::min(n, m) : uniform_index(0, std::min(n, m), rng);
        const Mat<S> f = gaussian_matrix<S>(m, rank, rng) * gaussian_matrix<S>(rank, n, rng);
        const Mat<S> u0 = random_unitary<S>(m, rng);
        const Mat<S> g = compose(u0, f);
        const std::optional<Mat<S>> u = homogeneity_solve<S>(f, g, tol);
        const double residual = u ? distance(compose(*u, f), g) : std::numeric_limits<double>::infinity();
        homogeneity.record(u && is_unitary(*u, tol.scaled(10.0)) && residual <= 1e-8, residual);

        const Index k_dim = uniform_index(0, n, rng);
        const Mat<S> v = random_isometry<S>(n, k_dim, rng);
        iso_kernel.record(is_kernel(v, tol.scaled(10.0)));

        const KernelArrow<S> k = image<S>(gaussian_matrix<S>(n, k_dim, rng), tol);
        const KernelArrow<S> kp = complement(k, tol);
        const Mat<S> joined = k.dim() + kp.dim() == n ? copair<S>({k.arrow, kp.arrow}) : Mat<S>(Mat<S>::Zero(n, n + 1));
        complement_unitary.record(joined.cols() == n && is_unitary(joined, tol.scaled(10.0)));

        // Equal on every basis state implies equal, and a perturbed copy is
        // told apart by some basis state.
        const Mat<S> a = gaussian_matrix<S>(m, n, rng);
        Mat<S> b = a;
        b(uniform_index(0, m - 1, rng), uniform_index(0, n - 1, rng)) += S(0.5);
        const auto agree = [&](const Mat<S>& x, const Mat<S>& y) {
            for (Index i = 0; i < n; ++i) {
                if (!approx_equal<S>(compose(x, basis_state<S>(n, i)), compose(y, basis_state<S>(n, i)), tol)) return false;
            }
            return true;
        };
        pointed.record(agree(a, a) && approx_equal<S>(a, a, tol) && !agree(a, b));

        const S sb = bound_scalar<S>(a);
        double worst = 0.0;
        bool ok = approx_equal<S>(conj(sb) * sb, compose(dagger(a), a).trace(), tol.scaled(10.0));
        for (int t = 0; t < 4; ++t) {
            const Mat<S> probe = random_unit_vector<S>(n, rng);
            const double lhs = real_part(standard_inner<S>(compose(a, probe), compose(a, probe)));
            const double rhs = real_part(conj(sb) * sb);
            worst = std::max(worst, lhs - rhs);
            ok = ok && lhs <= rhs + tol.bound(rhs);
        }
        bound.record(ok, std::max(0.0, worst));
    }
    return out;
}

/// A(I, I) as a phased ring: no zero divisors, and a†a + b†b = c†c with
/// a = c d, b = c e.
template <class S>
AuditChecks phased_ring_audit(Index samples, Rng& rng, Tolerance tol = {}) {
    AuditChecks out;
    AuditCheck& domain = out.add("integral_domain");
    AuditCheck& decompose = out.add("phased_decomposition");
    for (Index s = 0; s < samples; ++s) {
        const S a = s % 5 == 0 ? S(0) : gaussian_scalar<S>(rng);
        const S b = s % 7 == 0 ? S(0) : gaussian_scalar<S>(rng);
        const S ab = a * b;
        domain.record(!is_zero(ab, tol) || is_zero(a, tol) || is_zero(b, tol));

        const PhasedRingDecomposition<S> p = phased_ring_decompose<S>(a, b, tol);
        if (p.degenerate) {
            decompose.record(is_zero(a, tol) && is_zero(b, tol));
            continue;
        }
        const double residual = std::max({magnitude(conj(p.c) * p.c - (conj(a) * a + conj(b) * b)),
                                          magnitude(p.c * p.d - a), magnitude(p.c * p.e - b)});
        decompose.record(residual <= 1e-8 && is_positive(p.c, tol), residual);
    }
    return out;
}

}  // namespace cqm
