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

// Quant_S = CPM(Mat_S) over the float rings. A morphism is carried as a Kraus
// family {M_i}; its identity is the doubled matrix sum_i conj(M_i) (x) M_i,
// which is what equality compares.

#include <algorithm>
#include <vector>

#include <Eigen/Eigenvalues>

#include "cqm/kernels.hpp"
#include "cqm/random.hpp"

namespace cqm {

template <class S>
    requires FloatingScalar<S>
class CPMorphism {
public:
    CPMorphism(Index in_dim, Index out_dim, std::vector<Mat<S>> kraus)
        : in_(in_dim), out_(out_dim), kraus_(std::move(kraus)), doubled_(Mat<S>::Zero(out_dim * out_dim, in_dim * in_dim)) {
        for (const auto& m : kraus_) {
            if (m.rows() != out_ || m.cols() != in_) {
                throw Error(ErrorKind::DimensionMismatch, "Kraus operator " + detail::dims(m.rows(), m.cols()) +
                                                              " in a map " + std::to_string(in_) + " -> " +
                                                              std::to_string(out_));
            }
            doubled_ += tensor(conjugate(m), m);
        }
    }

    Index in_dim() const { return in_; }
    Index out_dim() const { return out_; }
    const std::vector<Mat<S>>& kraus() const { return kraus_; }
    const Mat<S>& doubled() const { return doubled_; }

private:
    Index in_;
    Index out_;
    std::vector<Mat<S>> kraus_;
    Mat<S> doubled_;
};

struct EnvObject {
    Index dim = 0;
};

template <class S>
bool approx_equal(const CPMorphism<S>& a, const CPMorphism<S>& b, Tolerance tol = {}) {
    return a.in_dim() == b.in_dim() && a.out_dim() == b.out_dim() && approx_equal(a.doubled(), b.doubled(), tol);
}

template <class S>
double distance(const CPMorphism<S>& a, const CPMorphism<S>& b) {
    return distance(a.doubled(), b.doubled());
}

template <class S>
bool is_zero(const CPMorphism<S>& f, Tolerance tol = {}) {
    return is_zero(f.doubled(), tol);
}

/// Dbl(f) = f* (x) f
template <class S>
CPMorphism<S> dbl(const Mat<S>& f) {
    return CPMorphism<S>(f.cols(), f.rows(), {f});
}

template <class S>
CPMorphism<S> zero_cpm(Index in_dim, Index out_dim) {
    return CPMorphism<S>(in_dim, out_dim, {});
}

template <class S>
CPMorphism<S> identity_cpm(Index n) {
    return dbl<S>(identity<S>(n));
}

template <class S>
CPMorphism<S> compose_cpm(const CPMorphism<S>& g, const CPMorphism<S>& f) {
    if (g.in_dim() != f.out_dim()) throw Error(ErrorKind::DimensionMismatch, "compose_cpm: types do not match");
    std::vector<Mat<S>> kraus;
    for (const auto& n : g.kraus()) {
        for (const auto& m : f.kraus()) kraus.push_back(n * m);
    }
    return CPMorphism<S>(f.in_dim(), g.out_dim(), std::move(kraus));
}

template <class S>
CPMorphism<S> tensor_cpm(const CPMorphism<S>& f, const CPMorphism<S>& g) {
    std::vector<Mat<S>> kraus;
    for (const auto& m : f.kraus()) {
        for (const auto& n : g.kraus()) kraus.push_back(tensor(m, n));
    }
    return CPMorphism<S>(f.in_dim() * g.in_dim(), f.out_dim() * g.out_dim(), std::move(kraus));
}

template <class S>
CPMorphism<S> dagger_cpm(const CPMorphism<S>& f) {
    std::vector<Mat<S>> kraus;
    for (const auto& m : f.kraus()) kraus.push_back(dagger(m));
    return CPMorphism<S>(f.out_dim(), f.in_dim(), std::move(kraus));
}

/// Coarse-graining: the union of the two Kraus families, i.e. the marginal of
/// <f, g> over a biproduct environment.
template <class S>
CPMorphism<S> add_cpm(const CPMorphism<S>& f, const CPMorphism<S>& g) {
    if (f.in_dim() != g.in_dim() || f.out_dim() != g.out_dim()) {
        throw Error(ErrorKind::DimensionMismatch, "add_cpm: types do not match");
    }
    std::vector<Mat<S>> kraus = f.kraus();
    kraus.insert(kraus.end(), g.kraus().begin(), g.kraus().end());
    return CPMorphism<S>(f.in_dim(), f.out_dim(), std::move(kraus));
}

/// r . f for a non-negative real r.
template <class S>
CPMorphism<S> scale_cpm(const CPMorphism<S>& f, double r) {
    std::vector<Mat<S>> kraus;
    const double s = std::sqrt(std::max(0.0, r));
    for (const auto& m : f.kraus()) kraus.push_back(m * S(s));
    return CPMorphism<S>(f.in_dim(), f.out_dim(), std::move(kraus));
}

/// The trace effect, with Kraus operators <i|.
template <class S>
CPMorphism<S> discard(Index n) {
    std::vector<Mat<S>> kraus;
    for (Index i = 0; i < n; ++i) kraus.push_back(dagger(basis_state<S>(n, i)));
    return CPMorphism<S>(n, 1, std::move(kraus));
}

template <class S>
bool is_causal(const CPMorphism<S>& f, Tolerance tol = {}) {
    return approx_equal(compose_cpm(discard<S>(f.out_dim()), f), discard<S>(f.in_dim()), tol);
}

/// Action on a density matrix: rho -> sum_i M_i rho M_i†.
template <class S>
Mat<S> apply(const CPMorphism<S>& f, const Mat<S>& rho) {
    Mat<S> out = Mat<S>::Zero(f.out_dim(), f.out_dim());
    for (const auto& m : f.kraus()) out += m * rho * dagger(m);
    return out;
}

/// G_ij = <vec M_i, vec M_j>
template <class S>
Mat<S> kraus_gram(const CPMorphism<S>& f) {
    const auto k = static_cast<Index>(f.kraus().size());
    Mat<S> g(k, k);
    for (Index i = 0; i < k; ++i) {
        for (Index j = 0; j < k; ++j) {
            const auto& mi = f.kraus()[static_cast<std::size_t>(i)];
            const auto& mj = f.kraus()[static_cast<std::size_t>(j)];
            g(i, j) = mi.conjugate().cwiseProduct(mj).sum();
        }
    }
    return g;
}

namespace detail {

template <class S>
Eigen::VectorXd descending_spectrum(const Mat<S>& hermitian) {
    if (hermitian.rows() == 0) return Eigen::VectorXd();
    Eigen::SelfAdjointEigenSolver<Mat<S>> es(hermitian);
    return es.eigenvalues().reverse();
}

}  // namespace detail

/// Pure iff f = 0 or the Kraus family has rank one, decided by the spectrum of
/// its Gram matrix: lambda_2 <= tol (lambda_1 + 1).
template <class S>
bool is_pure(const CPMorphism<S>& f, Tolerance tol = {}) {
    if (f.kraus().size() <= 1) return true;
    const Eigen::VectorXd spec = detail::descending_spectrum<S>(kraus_gram(f));
    if (spec(0) <= tol.abs) return true;
    return spec(1) <= tol.abs * (spec(0) + 1.0);
}

/// For a pure f, a single operator V with dbl(V) = f (unique up to phase).
template <class S>
Mat<S> pure_representative(const CPMorphism<S>& f) {
    if (f.kraus().empty()) return Mat<S>::Zero(f.out_dim(), f.in_dim());
    if (f.kraus().size() == 1) return f.kraus().front();
    Eigen::SelfAdjointEigenSolver<Mat<S>> es(kraus_gram(f));
    const Index top = es.eigenvalues().size() - 1;
    const Mat<S> w = es.eigenvectors().col(top);
    Mat<S> v = Mat<S>::Zero(f.out_dim(), f.in_dim());
    for (std::size_t i = 0; i < f.kraus().size(); ++i) v += w(static_cast<Index>(i), 0) * f.kraus()[i];
    return v;
}

/// The state with density matrix rho (rho positive).
template <class S>
CPMorphism<S> state_from_density(const Mat<S>& rho) {
    const Index n = rho.rows();
    Eigen::SelfAdjointEigenSolver<Mat<S>> es((rho + dagger(rho)) / 2.0);
    std::vector<Mat<S>> kraus;
    for (Index i = 0; i < n; ++i) {
        const double lambda = es.eigenvalues()(i);
        if (lambda > 0) kraus.push_back(es.eigenvectors().col(i) * S(std::sqrt(lambda)));
    }
    return CPMorphism<S>(1, n, std::move(kraus));
}

/// rho on B (x) C  ->  rho_C
template <class S>
Mat<S> partial_trace_first(const Mat<S>& rho, Index first_dim, Index second_dim) {
    Mat<S> out = Mat<S>::Zero(second_dim, second_dim);
    for (Index b = 0; b < first_dim; ++b) out += rho.block(b * second_dim, b * second_dim, second_dim, second_dim);
    return out;
}

/// (id_B (x) discard_E) . g for g : A -> B (x) E
template <class S>
CPMorphism<S> marginal(const CPMorphism<S>& g, Index env_dim) {
    if (env_dim <= 0 || g.out_dim() % env_dim != 0) {
        throw Error(ErrorKind::DimensionMismatch, "marginal: environment does not divide the output");
    }
    return compose_cpm(tensor_cpm(identity_cpm<S>(g.out_dim() / env_dim), discard<S>(env_dim)), g);
}

template <class S>
struct Purification {
    CPMorphism<S> pure;
    EnvObject env;
    Mat<S> isometry;  ///< V : A -> B (x) E with pure = dbl(V)
};

/// Stinespring dilation V = sum_i M_i (x) |i>, environment dimension = Kraus count.
template <class S>
Purification<S> purify(const CPMorphism<S>& f) {
    const Index k = std::max<Index>(1, static_cast<Index>(f.kraus().size()));
    Mat<S> v = Mat<S>::Zero(f.out_dim() * k, f.in_dim());
    for (std::size_t i = 0; i < f.kraus().size(); ++i) v += tensor(f.kraus()[i], basis_state<S>(k, static_cast<Index>(i)));
    return {dbl(v), EnvObject{k}, v};
}

/// Extends the environment of a pure p : A -> B (x) E from `from` to `to`
/// dimensions by zero padding.
template <class S>
CPMorphism<S> pad_environment(const CPMorphism<S>& p, Index from, Index to) {
    if (to < from || p.out_dim() % from != 0) throw Error(ErrorKind::DimensionMismatch, "pad_environment");
    const Index b = p.out_dim() / from;
    const Mat<S> inclusion = injections<S>(BiproductTag::of({from, to - from})).front();
    return compose_cpm(dbl<S>(tensor(identity<S>(b), inclusion)), p);
}

template <class S>
struct EnvironmentUnitary {
    Mat<S> u;
    double residual = 0.0;
};

/// For pure purifications p1, p2 : A -> B (x) E of the same map, a unitary u
/// on E with (id (x) u) p1 = p2.
template <class S>
EnvironmentUnitary<S> essential_uniqueness_unitary(const CPMorphism<S>& p1, const CPMorphism<S>& p2, Index env_dim,
                                                   Tolerance tol = {}) {
    if (p1.in_dim() != p2.in_dim() || p1.out_dim() != p2.out_dim() || p1.out_dim() % env_dim != 0) {
        throw Error(ErrorKind::DimensionMismatch, "essential uniqueness needs purifications of equal type");
    }
    if (!is_pure(p1, tol) || !is_pure(p2, tol)) throw Error(ErrorKind::PrereqFailed, "inputs must be pure");
    if (!approx_equal(marginal(p1, env_dim), marginal(p2, env_dim), tol.scaled(10.0))) {
        throw Error(ErrorKind::PrereqFailed, "purifications have different marginals");
    }
    const Index a = p1.in_dim();
    const Index b = p1.out_dim() / env_dim;
    const Mat<S> v1 = pure_representative(p1);
    const Mat<S> v2 = pure_representative(p2);
    // Stack the environment Kraus components: x(j, (bb, aa)) = V((bb, j), aa).
    const auto stack = [&](const Mat<S>& v) {
        Mat<S> x(env_dim, b * a);
        for (Index j = 0; j < env_dim; ++j) {
            for (Index bb = 0; bb < b; ++bb) {
                for (Index aa = 0; aa < a; ++aa) x(j, bb * a + aa) = v(bb * env_dim + j, aa);
            }
        }
        return x;
    };
    const std::optional<Mat<S>> u = homogeneity_solve<S>(stack(v1), stack(v2), tol);
    if (!u) throw Error(ErrorKind::NoSolution, "no environment unitary within tolerance");
    const CPMorphism<S> moved = compose_cpm(dbl<S>(tensor(identity<S>(b), *u)), p1);
    return {*u, distance(moved, p2)};
}

/// Builds f with f . k0 = rho and f . k1 = sigma for orthonormal states k0, k1.
/// Mixed mode: f = rho . dbl(v0†) + sigma . dbl(v1†). Pure mode (rho, sigma
/// pure): f = dbl(psi v0† + phi v1†).
template <class S>
CPMorphism<S> conditioning(const CPMorphism<S>& k0, const CPMorphism<S>& k1, const CPMorphism<S>& rho,
                           const CPMorphism<S>& sigma, bool pure_mode, Tolerance tol = {}) {
    if (k0.in_dim() != 1 || k1.in_dim() != 1 || rho.in_dim() != 1 || sigma.in_dim() != 1 ||
        k0.out_dim() != k1.out_dim() || rho.out_dim() != sigma.out_dim()) {
        throw Error(ErrorKind::DimensionMismatch, "conditioning expects states of matching objects");
    }
    const Tolerance loose = tol.scaled(10.0);
    if (!is_pure(k0, tol) || !is_pure(k1, tol)) throw Error(ErrorKind::NotOrthonormal, "conditioning states must be pure");
    const Mat<S> v0 = pure_representative(k0);
    const Mat<S> v1 = pure_representative(k1);
    const bool orthonormal = approx_equal<S>(standard_inner<S>(v0, v0), S(1), loose) &&
                             approx_equal<S>(standard_inner<S>(v1, v1), S(1), loose) &&
                             magnitude(standard_inner<S>(v1, v0)) <= loose.abs;
    if (!orthonormal) throw Error(ErrorKind::NotOrthonormal, "states are not orthonormal");
    if (!pure_mode) {
        return add_cpm(compose_cpm(rho, dbl<S>(dagger(v0))), compose_cpm(sigma, dbl<S>(dagger(v1))));
    }
    if (!is_pure(rho, tol) || !is_pure(sigma, tol)) {
        throw Error(ErrorKind::PurityViolation, "pure conditioning needs pure targets");
    }
    return dbl<S>(pure_representative(rho) * dagger(v0) + pure_representative(sigma) * dagger(v1));
}

/// The coarse-graining f + g obtained without using +: purify f and g, form
/// h : A -> B (x) E (x) C by pure conditioning of their names on a qubit C
/// and bending the wires back, then discard E (x) C.
template <class S>
CPMorphism<S> derived_coarse_grain(const CPMorphism<S>& f, const CPMorphism<S>& g, Tolerance tol = {}) {
    if (f.in_dim() != g.in_dim() || f.out_dim() != g.out_dim()) {
        throw Error(ErrorKind::DimensionMismatch, "derived_coarse_grain: types do not match");
    }
    const Index a = f.in_dim();
    const Index b = f.out_dim();
    Purification<S> pf = purify(f);
    Purification<S> pg = purify(g);
    const Index env = std::max(pf.env.dim, pg.env.dim);
    const auto padded = [&](const Purification<S>& p) {
        return pure_representative(pad_environment(p.pure, p.env.dim, env));
    };
    const Mat<S> vf = padded(pf);
    const Mat<S> vg = padded(pg);
    const auto name = [&](const Mat<S>& v) { return compose(tensor(identity<S>(a), v), cup<S>(a)); };
    const CPMorphism<S> cond = conditioning(dbl<S>(basis_state<S>(2, 0)), dbl<S>(basis_state<S>(2, 1)),
                                            dbl<S>(name(vf)), dbl<S>(name(vg)), true, tol);
    const Mat<S> k = pure_representative(cond);  // C -> A (x) B (x) E
    const Index rest = b * env;
    const Mat<S> h = compose(tensor(cap<S>(a), identity<S>(rest * 2)),
                             compose(tensor(tensor(identity<S>(a), k), identity<S>(2)),
                                     tensor(identity<S>(a), cup<S>(2))));
    return marginal(dbl<S>(h), env * 2);
}

/// dbl of the joint null space of the Kraus operators.
template <class S>
KernelArrow<S> kernel_arrow_cpm(const CPMorphism<S>& f, Tolerance tol = {}) {
    if (f.kraus().empty()) return {identity<S>(f.in_dim())};
    return kernel<S>(pair<S>(f.kraus()), tol);
}

template <class S>
CPMorphism<S> kernel_cpm(const CPMorphism<S>& f, Tolerance tol = {}) {
    return dbl<S>(kernel_arrow_cpm(f, tol).arrow);
}

/// | discard . k† + discard . k^perp† - discard |
template <class S>
double causal_complement_residual(const KernelArrow<S>& k, Tolerance tol = {}) {
    const KernelArrow<S> kp = complement(k, tol);
    const CPMorphism<S> lhs = add_cpm(compose_cpm(discard<S>(k.dim()), dbl<S>(dagger(k.arrow))),
                                      compose_cpm(discard<S>(kp.dim()), dbl<S>(dagger(kp.arrow))));
    return distance(lhs, discard<S>(k.ambient()));
}

template <class S>
bool causal_complement_check(const KernelArrow<S>& k, Tolerance tol = {}) {
    return causal_complement_residual(k, tol) <= tol.bound(std::sqrt(static_cast<double>(k.ambient())));
}

/// A nonzero effect annihilating the causal pure state psi.
template <class S>
CPMorphism<S> pure_exclusion_witness(const CPMorphism<S>& psi, Tolerance tol = {}) {
    if (psi.in_dim() != 1) throw Error(ErrorKind::DimensionMismatch, "pure exclusion expects a state");
    if (psi.out_dim() <= 1) throw Error(ErrorKind::TrivialObject, "object of dimension <= 1 is trivial");
    if (!is_pure(psi, tol)) throw Error(ErrorKind::PrereqFailed, "state is not pure");
    const Mat<S> c = cokernel<S>(pure_representative(psi), tol);
    return compose_cpm(discard<S>(c.rows()), dbl<S>(c));
}

namespace detail {

template <class S>
Mat<S> sqrt_psd(const Mat<S>& p) {
    Eigen::SelfAdjointEigenSolver<Mat<S>> es(p);
    Eigen::VectorXd lambda = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return es.eigenvectors() * lambda.cast<S>().asDiagonal() * dagger(Mat<S>(es.eigenvectors()));
}

}  // namespace detail

/// Splits f = g + h through an operator 0 <= P <= 1 on the Kraus index space:
/// g has Kraus sqrt(P) M, h has sqrt(1 - P) M.
template <class S>
std::pair<CPMorphism<S>, CPMorphism<S>> split_cpm(const CPMorphism<S>& f, const Mat<S>& p) {
    const auto k = static_cast<Index>(f.kraus().size());
    const Mat<S> sp = detail::sqrt_psd<S>(p);
    const Mat<S> sq = detail::sqrt_psd<S>(identity<S>(k) - p);
    std::vector<Mat<S>> gk, hk;
    for (Index j = 0; j < k; ++j) {
        Mat<S> gj = Mat<S>::Zero(f.out_dim(), f.in_dim());
        Mat<S> hj = Mat<S>::Zero(f.out_dim(), f.in_dim());
        for (Index i = 0; i < k; ++i) {
            gj += sp(j, i) * f.kraus()[static_cast<std::size_t>(i)];
            hj += sq(j, i) * f.kraus()[static_cast<std::size_t>(i)];
        }
        gk.push_back(std::move(gj));
        hk.push_back(std::move(hj));
    }
    return {CPMorphism<S>(f.in_dim(), f.out_dim(), std::move(gk)), CPMorphism<S>(f.in_dim(), f.out_dim(), std::move(hk))};
}

/// |g - r f| for the best scalar r, relative to |f|.
template <class S>
double proportionality_defect(const CPMorphism<S>& g, const CPMorphism<S>& f) {
    const double ff = f.doubled().squaredNorm();
    if (ff == 0.0) return g.doubled().norm();
    const S r = f.doubled().cwiseProduct(g.doubled().conjugate()).sum() / ff;
    return (g.doubled() - conj(r) * f.doubled()).norm() / std::sqrt(ff);
}

/// Atomicity: every split f = g + h has g = r f. Trial 0 pinches onto the first
/// Kraus operator; later trials use random 0 <= P <= 1.
template <class S>
bool atomicity_check(const CPMorphism<S>& f, int trials, Rng& rng, Tolerance tol = {}) {
    const auto k = static_cast<Index>(f.kraus().size());
    if (k <= 1) return true;
    for (int t = 0; t < trials; ++t) {
        Mat<S> p;
        if (t == 0) {
            p = Mat<S>::Zero(k, k);
            p(0, 0) = S(1);
        } else {
            const Mat<S> w = random_unitary<S>(k, rng);
            Mat<S> lambda = Mat<S>::Zero(k, k);
            for (Index i = 0; i < k; ++i) lambda(i, i) = S(uniform_real(0.0, 1.0, rng));
            p = w * lambda * dagger(w);
        }
        const auto [g, h] = split_cpm(f, p);
        if (proportionality_defect(g, f) > 10.0 * tol.bound(1.0)) return false;
    }
    return true;
}

/// Random causal channel in -> out with `kraus_count` Kraus operators, raised
/// to ceil(in / out) when fewer could not be trace preserving.
template <class S>
CPMorphism<S> random_channel(Index in_dim, Index out_dim, Index kraus_count, Rng& rng) {
    if (out_dim <= 0 && in_dim > 0) throw Error(ErrorKind::DimensionMismatch, "no channel into the zero object");
    if (out_dim > 0) kraus_count = std::max(kraus_count, (in_dim + out_dim - 1) / out_dim);
    std::vector<Mat<S>> kraus;
    Mat<S> t = Mat<S>::Zero(in_dim, in_dim);
    for (Index i = 0; i < kraus_count; ++i) {
        kraus.push_back(gaussian_matrix<S>(out_dim, in_dim, rng));
        t += dagger(kraus.back()) * kraus.back();
    }
    Eigen::SelfAdjointEigenSolver<Mat<S>> es(t);
    const Mat<S> inv_sqrt = es.operatorInverseSqrt();
    for (auto& m : kraus) m = m * inv_sqrt;
    return CPMorphism<S>(in_dim, out_dim, std::move(kraus));
}

template <class S>
CPMorphism<S> random_cp_map(Index in_dim, Index out_dim, Index kraus_count, Rng& rng) {
    std::vector<Mat<S>> kraus;
    for (Index i = 0; i < kraus_count; ++i) kraus.push_back(gaussian_matrix<S>(out_dim, in_dim, rng));
    return CPMorphism<S>(in_dim, out_dim, std::move(kraus));
}

/// Literal purity test: every dilation g of f must equal f (x) rho for a causal
/// state rho. Dilations are produced as (id (x) chi) . purify(f) with chi the
/// identity (trial 0) or a random channel on the environment; rho is fitted as
/// the environment marginal on a basis input and the product is re-checked.
template <class S>
bool dilation_purity_oracle(const CPMorphism<S>& f, int trials, Rng& rng, Tolerance tol = {}) {
    if (is_zero(f, tol)) return true;
    const Purification<S> p = purify(f);
    const Index b = f.out_dim();
    // Basis input with the largest output trace; nonzero because f is.
    Index best = 0;
    double best_trace = -1.0;
    for (Index a = 0; a < f.in_dim(); ++a) {
        const Mat<S> in = basis_state<S>(f.in_dim(), a) * dagger(basis_state<S>(f.in_dim(), a));
        const double tr = real_part(apply(f, in).trace());
        if (tr > best_trace) {
            best_trace = tr;
            best = a;
        }
    }
    const Mat<S> probe = basis_state<S>(f.in_dim(), best) * dagger(basis_state<S>(f.in_dim(), best));
    for (int t = 0; t < trials; ++t) {
        CPMorphism<S> chi = identity_cpm<S>(p.env.dim);
        if (t > 0) {
            chi = random_channel<S>(p.env.dim, uniform_index(1, 3, rng), uniform_index(1, 3, rng), rng);
        }
        const Index c = chi.out_dim();
        const CPMorphism<S> g = compose_cpm(tensor_cpm(identity_cpm<S>(b), chi), p.pure);
        if (!approx_equal(marginal(g, c), f, tol.scaled(100.0))) continue;
        const Mat<S> rho = partial_trace_first<S>(apply(g, probe), b, c) / S(best_trace);
        const CPMorphism<S> product = tensor_cpm(f, state_from_density<S>(rho));
        const double scale = std::max(1.0, g.doubled().norm());
        if (distance(product, g) > 1e3 * tol.bound(scale)) return false;
    }
    return true;
}

/// discard - discard . f is an effect, i.e. 1 - sum_i M_i† M_i >= 0.
template <class S>
bool subcausal_check(const CPMorphism<S>& f, Tolerance tol = {}) {
    Mat<S> e = identity<S>(f.in_dim());
    for (const auto& m : f.kraus()) e -= dagger(m) * m;
    if (e.rows() == 0) return true;
    const Eigen::VectorXd spec = detail::descending_spectrum<S>((e + dagger(e)) / 2.0);
    return spec(spec.size() - 1) >= -tol.bound(1.0);
}

template <class S>
struct NormalisedCPState {
    CPMorphism<S> sigma;
    double r = 0.0;
};

/// rho = sigma . r with sigma causal and r = discard . rho.
template <class S>
NormalisedCPState<S> normalise_state(const CPMorphism<S>& rho, Tolerance tol = {}) {
    if (rho.in_dim() != 1) throw Error(ErrorKind::DimensionMismatch, "normalise_state expects a state");
    const double r = real_part(compose_cpm(discard<S>(rho.out_dim()), rho).doubled()(0, 0));
    if (r <= tol.abs) throw Error(ErrorKind::ZeroState, "cannot normalise the zero state");
    return {scale_cpm(rho, 1.0 / r), r};
}

}  // namespace cqm
