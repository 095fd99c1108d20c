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

// Involutive commutative semirings, tolerance-aware scalar equality and the
// scalar-level algebra: positives, polar decomposition, self-adjoint parts,
// phased-ring decomposition and the difference ring.

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <string_view>
#include <variant>

#include "cqm/error.hpp"
#include "cqm/semirings.hpp"

namespace cqm {

using Complex = std::complex<double>;

enum class RingId { Complex64, Real64, NNRational, Rational, Boolean };

constexpr std::string_view ring_name(RingId id) {
    switch (id) {
        case RingId::Complex64: return "complex64";
        case RingId::Real64: return "real64";
        case RingId::NNRational: return "nnrational";
        case RingId::Rational: return "rational";
        case RingId::Boolean: return "boolean";
    }
    return "";
}

inline std::optional<RingId> parse_ring(std::string_view name) {
    for (RingId id : {RingId::Complex64, RingId::Real64, RingId::NNRational, RingId::Rational,
                      RingId::Boolean}) {
        if (ring_name(id) == name) return id;
    }
    return std::nullopt;
}

/// Hybrid absolute/relative tolerance. Exact rings ignore it.
struct Tolerance {
    double abs = 1e-9;
    double rel = 1e-9;

    double bound(double scale = 0.0) const { return abs + rel * scale; }
    Tolerance scaled(double factor) const { return {abs * factor, rel * factor}; }
};

template <class S>
struct RingTraits;

template <>
struct RingTraits<Complex> {
    static constexpr RingId id = RingId::Complex64;
    static constexpr bool has_negatives = true;
    static constexpr bool has_square_roots = true;
    static constexpr bool all_nonzero_invertible = true;
    static constexpr bool bounded = true;
    static constexpr bool zero_sum_free = false;
    static constexpr bool exact = false;
    static constexpr bool floating = true;
    static constexpr bool coordinate_kernels = false;

    static Complex conj(const Complex& s) { return std::conj(s); }
    static double magnitude(const Complex& s) { return std::abs(s); }
    static std::optional<Complex> imaginary_unit() { return Complex(0.0, 1.0); }
};

template <>
struct RingTraits<double> {
    static constexpr RingId id = RingId::Real64;
    static constexpr bool has_negatives = true;
    static constexpr bool has_square_roots = true;
    static constexpr bool all_nonzero_invertible = true;
    static constexpr bool bounded = true;
    static constexpr bool zero_sum_free = false;
    static constexpr bool exact = false;
    static constexpr bool floating = true;
    static constexpr bool coordinate_kernels = false;

    static double conj(double s) { return s; }
    static double magnitude(double s) { return std::abs(s); }
    static std::optional<double> imaginary_unit() { return std::nullopt; }
};

template <>
struct RingTraits<NonNegRational> {
    static constexpr RingId id = RingId::NNRational;
    static constexpr bool has_negatives = false;
    static constexpr bool has_square_roots = false;
    static constexpr bool all_nonzero_invertible = true;
    static constexpr bool bounded = true;
    static constexpr bool zero_sum_free = true;
    static constexpr bool exact = true;
    static constexpr bool floating = false;
    static constexpr bool coordinate_kernels = true;

    static NonNegRational conj(const NonNegRational& s) { return s; }
    static double magnitude(const NonNegRational& s) { return s.value().to_double(); }
    static std::optional<NonNegRational> imaginary_unit() { return std::nullopt; }
};

template <>
struct RingTraits<Rational> {
    static constexpr RingId id = RingId::Rational;
    static constexpr bool has_negatives = true;
    static constexpr bool has_square_roots = false;
    static constexpr bool all_nonzero_invertible = true;
    static constexpr bool bounded = true;
    static constexpr bool zero_sum_free = false;
    static constexpr bool exact = true;
    static constexpr bool floating = false;
    static constexpr bool coordinate_kernels = false;

    static Rational conj(const Rational& s) { return s; }
    static double magnitude(const Rational& s) { return std::abs(s.to_double()); }
    static std::optional<Rational> imaginary_unit() { return std::nullopt; }
};

template <>
struct RingTraits<Bool> {
    static constexpr RingId id = RingId::Boolean;
    static constexpr bool has_negatives = false;
    // b = b * b for both elements, so every element is its own square root.
    static constexpr bool has_square_roots = true;
    static constexpr bool all_nonzero_invertible = true;
    // 1 = n + 1 for every n.
    static constexpr bool bounded = false;
    static constexpr bool zero_sum_free = true;
    static constexpr bool exact = true;
    static constexpr bool floating = false;
    static constexpr bool coordinate_kernels = true;

    static Bool conj(Bool s) { return s; }
    static double magnitude(Bool s) { return s.value ? 1.0 : 0.0; }
    static std::optional<Bool> imaginary_unit() { return std::nullopt; }
};

template <class S>
concept FloatingScalar = RingTraits<S>::floating;

template <class S>
concept ExactScalar = RingTraits<S>::exact;

template <class S>
S conj(const S& s) {
    return RingTraits<S>::conj(s);
}

template <class S>
double magnitude(const S& s) {
    return RingTraits<S>::magnitude(s);
}

template <class S>
S zero_scalar() {
    return S(0);
}

template <class S>
S one_scalar() {
    return S(1);
}

template <class S>
bool approx_equal(const S& a, const S& b, Tolerance tol = {}) {
    if constexpr (RingTraits<S>::exact) {
        return a == b;
    } else {
        const double scale = std::max(magnitude(a), magnitude(b));
        return std::abs(a - b) <= tol.bound(scale);
    }
}

template <class S>
bool is_zero(const S& s, Tolerance tol = {}) {
    if constexpr (RingTraits<S>::exact) {
        return s == S(0);
    } else {
        return magnitude(s) <= tol.abs;
    }
}

/// Real part of a float scalar; identity on the reals.
inline double real_part(const Complex& s) { return s.real(); }
inline double real_part(double s) { return s; }

namespace detail {

inline bool is_perfect_square(const boost::multiprecision::cpp_int& n) {
    if (n < 0) return false;
    const boost::multiprecision::cpp_int root = boost::multiprecision::sqrt(n);
    return root * root == n;
}

template <class S>
[[noreturn]] void unsupported(std::string_view what) {
    throw Error(ErrorKind::UnsupportedRing,
                std::string(what) + " is not available over " + std::string(ring_name(RingTraits<S>::id)));
}

}  // namespace detail

/// s is positive iff s = t† t for some t in the ring.
template <class S>
bool is_positive(const S& s, Tolerance tol = {}) {
    if constexpr (std::is_same_v<S, Complex>) {
        return std::abs(s.imag()) <= tol.bound(std::abs(s.real())) && s.real() >= -tol.abs;
    } else if constexpr (std::is_same_v<S, double>) {
        return s >= -tol.abs;
    } else if constexpr (std::is_same_v<S, Rational>) {
        return s >= Rational(0) && detail::is_perfect_square(s.numerator()) &&
               detail::is_perfect_square(s.denominator());
    } else {
        // Non-negative rationals are sums of squares; Booleans satisfy b = b*b.
        (void)tol;
        return true;
    }
}

/// Square root of a positive element.
template <class S>
S sqrt_positive(const S& s, Tolerance tol = {}) {
    if constexpr (std::is_same_v<S, Complex>) {
        if (!is_positive(s, tol)) throw Error(ErrorKind::PrereqFailed, "square root of a non-positive scalar");
        return Complex(std::sqrt(std::max(0.0, s.real())), 0.0);
    } else if constexpr (std::is_same_v<S, double>) {
        if (!is_positive(s, tol)) throw Error(ErrorKind::PrereqFailed, "square root of a negative scalar");
        return std::sqrt(std::max(0.0, s));
    } else if constexpr (std::is_same_v<S, Bool>) {
        return s;
    } else {
        detail::unsupported<S>("sqrt_on_positives");
    }
}

template <class S>
S divide(const S& a, const S& b) {
    if constexpr (std::is_same_v<S, Bool>) {
        if (!b.value) throw Error(ErrorKind::ZeroInput, "division by zero");
        return a;
    } else if constexpr (RingTraits<S>::exact) {
        if (b == S(0)) throw Error(ErrorKind::ZeroInput, "division by zero");
        return a / b;
    } else {
        return a / b;
    }
}

template <class S>
struct PolarDecomposition {
    S radius;  ///< positive part r = sqrt(s† s)
    S phase;   ///< unitary part u with s = r u
};

template <class S>
PolarDecomposition<S> polar_decompose(const S& s, Tolerance tol = {}) {
    if constexpr (!RingTraits<S>::has_square_roots) {
        detail::unsupported<S>("polar decomposition");
    } else {
        if (is_zero(s, tol)) throw Error(ErrorKind::ZeroInput, "polar decomposition of zero is not unique");
        const S r = sqrt_positive<S>(conj(s) * s, tol);
        return {r, divide(s, r)};
    }
}

template <class S>
struct SelfAdjointParts {
    S re;
    S im;
};

/// s = re + i*im with re, im self-adjoint. Needs an imaginary unit.
template <class S>
SelfAdjointParts<S> selfadjoint_parts(const S& s) {
    if constexpr (!std::is_same_v<S, Complex>) {
        (void)s;
        detail::unsupported<S>("self-adjoint decomposition (trivial involution)");
    } else {
        const Complex i(0.0, 1.0);
        return {0.5 * (s + std::conj(s)), (i / 2.0) * (std::conj(s) - s)};
    }
}

template <class S>
struct PhasedRingDecomposition {
    S c;
    S d;
    S e;
    bool degenerate = false;
};

/// Finds c with c†c = a†a + b†b together with a = c d and b = c e.
/// Both inputs zero gives the flagged degenerate solution c = d = e = 0.
template <class S>
PhasedRingDecomposition<S> phased_ring_decompose(const S& a, const S& b, Tolerance tol = {}) {
    if constexpr (!RingTraits<S>::floating) {
        (void)a;
        (void)b;
        (void)tol;
        detail::unsupported<S>("phased-ring decomposition");
    } else {
        if (is_zero(a, tol) && is_zero(b, tol)) return {S(0), S(0), S(0), true};
        const S c = sqrt_positive<S>(conj(a) * a + conj(b) * b, tol);
        return {c, a / c, b / c, false};
    }
}

/// Formal difference pos - neg over a semiring.
template <class S>
struct DifferenceRingElement {
    S pos{0};
    S neg{0};

    friend DifferenceRingElement operator+(const DifferenceRingElement& x, const DifferenceRingElement& y) {
        return {x.pos + y.pos, x.neg + y.neg};
    }
    friend DifferenceRingElement operator*(const DifferenceRingElement& x, const DifferenceRingElement& y) {
        return {x.pos * y.pos + x.neg * y.neg, x.pos * y.neg + x.neg * y.pos};
    }
    DifferenceRingElement negated() const { return {neg, pos}; }
};

template <class S>
DifferenceRingElement<S> difference_ring_lift(const S& a, const S& b = S(0)) {
    return {a, b};
}

/// (a,b) ~ (c,d) iff a + d = b + c.
template <class S>
bool difference_ring_eq(const DifferenceRingElement<S>& x, const DifferenceRingElement<S>& y, Tolerance tol = {}) {
    return approx_equal<S>(x.pos + y.neg, x.neg + y.pos, tol);
}

/// D(Q+) -> Q, sending (a,b) to a - b.
inline Rational to_rational(const DifferenceRingElement<NonNegRational>& x) {
    return x.pos.value() - x.neg.value();
}

/// Representative with at least one zero component (totally ordered semirings).
inline DifferenceRingElement<NonNegRational> canonical(const DifferenceRingElement<NonNegRational>& x) {
    const Rational v = to_rational(x);
    if (v >= Rational(0)) return {NonNegRational(v), NonNegRational(0)};
    return {NonNegRational(0), NonNegRational(-v)};
}

enum class InvolutionClass { TrivialInvolution, HasImaginaryUnit };

constexpr std::string_view to_string(InvolutionClass c) {
    return c == InvolutionClass::HasImaginaryUnit ? "HasImaginaryUnit" : "TrivialInvolution";
}

/// HasImaginaryUnit iff the ring contains a unitary i with i*i = -1.
template <class S>
InvolutionClass classify_involution(Tolerance tol = {}) {
    if constexpr (!RingTraits<S>::has_negatives) {
        (void)tol;
        detail::unsupported<S>("involution classification (no negatives)");
    } else {
        const std::optional<S> i = RingTraits<S>::imaginary_unit();
        if (i && approx_equal<S>(*i * *i, S(-1), tol) && approx_equal<S>(conj(*i) * *i, S(1), tol)) {
            return InvolutionClass::HasImaginaryUnit;
        }
        return InvolutionClass::TrivialInvolution;
    }
}

/// Runtime-typed scalar used where the ring is only known from a file or flag.
using AnyScalar = std::variant<Complex, double, NonNegRational, Rational, Bool>;

inline RingId ring_of(const AnyScalar& s) {
    return std::visit([](const auto& v) { return RingTraits<std::decay_t<decltype(v)>>::id; }, s);
}

using AnyDifferenceElement =
    std::variant<DifferenceRingElement<Complex>, DifferenceRingElement<double>,
                 DifferenceRingElement<NonNegRational>, DifferenceRingElement<Rational>,
                 DifferenceRingElement<Bool>>;

inline AnyDifferenceElement difference_ring_lift(const AnyScalar& a, const AnyScalar& b) {
    if (a.index() != b.index()) {
        throw Error(ErrorKind::MixedRings, std::string(ring_name(ring_of(a))) + " vs " +
                                               std::string(ring_name(ring_of(b))));
    }
    return std::visit(
        [&](const auto& x) -> AnyDifferenceElement {
            using S = std::decay_t<decltype(x)>;
            return difference_ring_lift<S>(x, std::get<S>(b));
        },
        a);
}

}  // namespace cqm
