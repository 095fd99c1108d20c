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

// Scalar types that are not built into Eigen: the Boolean semiring used by
// Rel, and exact (non-negative) rationals used by Class and the difference
// ring construction. Each type gets an Eigen::NumTraits specialisation so
// that it can sit inside Eigen::Matrix.

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>

#include <Eigen/Core>
#include <boost/multiprecision/cpp_int.hpp>

#include "cqm/error.hpp"

namespace cqm {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend,
                                                  boost::multiprecision::et_off>;

/// Exact rationals with the trivial involution.
class Rational {
public:
    Rational() = default;
    Rational(int v) : v_(v) {}  // NOLINT(google-explicit-constructor)
    Rational(std::int64_t num, std::int64_t den) : v_(BigRational(num) / BigRational(den)) {}
    explicit Rational(BigRational v) : v_(std::move(v)) {}

    const BigRational& value() const { return v_; }
    BigInt numerator() const { return boost::multiprecision::numerator(v_); }
    BigInt denominator() const { return boost::multiprecision::denominator(v_); }
    double to_double() const { return v_.convert_to<double>(); }
    std::string str() const { return v_.str(); }

    friend Rational operator+(const Rational& a, const Rational& b) { return Rational(a.v_ + b.v_); }
    friend Rational operator-(const Rational& a, const Rational& b) { return Rational(a.v_ - b.v_); }
    friend Rational operator*(const Rational& a, const Rational& b) { return Rational(a.v_ * b.v_); }
    friend Rational operator/(const Rational& a, const Rational& b) { return Rational(a.v_ / b.v_); }
    Rational operator-() const { return Rational(-v_); }
    Rational& operator+=(const Rational& b) {
        v_ += b.v_;
        return *this;
    }
    Rational& operator-=(const Rational& b) {
        v_ -= b.v_;
        return *this;
    }
    Rational& operator*=(const Rational& b) {
        v_ *= b.v_;
        return *this;
    }
    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend auto operator<=>(const Rational& a, const Rational& b) {
        return a.v_ < b.v_ ? std::strong_ordering::less
               : b.v_ < a.v_ ? std::strong_ordering::greater
                             : std::strong_ordering::equal;
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.v_; }

private:
    BigRational v_{0};
};

/// The Boolean semiring ({0,1}, or, and) with trivial involution.
struct Bool {
    bool value = false;

    constexpr Bool() = default;
    constexpr Bool(bool b) : value(b) {}  // NOLINT(google-explicit-constructor)
    constexpr Bool(int i) : value(i != 0) {}  // NOLINT(google-explicit-constructor)

    constexpr explicit operator bool() const { return value; }

    friend constexpr Bool operator+(Bool a, Bool b) { return Bool(a.value || b.value); }
    friend constexpr Bool operator*(Bool a, Bool b) { return Bool(a.value && b.value); }
    constexpr Bool& operator+=(Bool b) {
        value = value || b.value;
        return *this;
    }
    constexpr Bool& operator*=(Bool b) {
        value = value && b.value;
        return *this;
    }
    friend constexpr bool operator==(Bool a, Bool b) = default;

    friend std::ostream& operator<<(std::ostream& os, Bool b) { return os << (b.value ? 1 : 0); }
};

/// Exact non-negative rationals: a semiring without additive inverses.
class NonNegRational {
public:
    NonNegRational() = default;
    NonNegRational(int v) : NonNegRational(Rational(v)) {}  // NOLINT(google-explicit-constructor)
    NonNegRational(std::int64_t num, std::int64_t den) : NonNegRational(Rational(num) / Rational(den)) {}
    explicit NonNegRational(Rational v) : v_(std::move(v)) {
        if (v_ < Rational(0)) throw Error(ErrorKind::ParseError, "negative value for a non-negative rational");
    }

    const Rational& value() const { return v_; }
    std::string str() const { return v_.str(); }

    friend NonNegRational operator+(const NonNegRational& a, const NonNegRational& b) {
        return NonNegRational(a.v_ + b.v_, Unchecked{});
    }
    friend NonNegRational operator*(const NonNegRational& a, const NonNegRational& b) {
        return NonNegRational(a.v_ * b.v_, Unchecked{});
    }
    friend NonNegRational operator/(const NonNegRational& a, const NonNegRational& b) {
        return NonNegRational(a.v_ / b.v_, Unchecked{});
    }
    NonNegRational& operator+=(const NonNegRational& b) {
        v_ += b.v_;
        return *this;
    }
    NonNegRational& operator*=(const NonNegRational& b) {
        v_ *= b.v_;
        return *this;
    }
    friend bool operator==(const NonNegRational& a, const NonNegRational& b) { return a.v_ == b.v_; }
    friend bool operator<(const NonNegRational& a, const NonNegRational& b) { return a.v_ < b.v_; }
    friend bool operator<=(const NonNegRational& a, const NonNegRational& b) { return a.v_ <= b.v_; }

    friend std::ostream& operator<<(std::ostream& os, const NonNegRational& r) { return os << r.v_; }

private:
    struct Unchecked {};
    NonNegRational(Rational v, Unchecked) : v_(std::move(v)) {}

    Rational v_{0};
};

}  // namespace cqm

namespace Eigen {

template <>
struct NumTraits<cqm::Bool> {
    using Real = cqm::Bool;
    using NonInteger = cqm::Bool;
    using Literal = cqm::Bool;
    using Nested = cqm::Bool;
    enum {
        IsComplex = 0,
        IsInteger = 1,
        IsSigned = 0,
        RequireInitialization = 0,
        ReadCost = 1,
        AddCost = 1,
        MulCost = 1
    };
    static cqm::Bool epsilon() { return cqm::Bool(false); }
    static cqm::Bool dummy_precision() { return cqm::Bool(false); }
    static cqm::Bool highest() { return cqm::Bool(true); }
    static cqm::Bool lowest() { return cqm::Bool(false); }
    static int digits10() { return 0; }
};

template <>
struct NumTraits<cqm::Rational> {
    using Real = cqm::Rational;
    using NonInteger = cqm::Rational;
    using Literal = cqm::Rational;
    using Nested = cqm::Rational;
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 8,
        AddCost = 32,
        MulCost = 32
    };
    static cqm::Rational epsilon() { return cqm::Rational(0); }
    static cqm::Rational dummy_precision() { return cqm::Rational(0); }
    static int digits10() { return 0; }
};

template <>
struct NumTraits<cqm::NonNegRational> {
    using Real = cqm::NonNegRational;
    using NonInteger = cqm::NonNegRational;
    using Literal = cqm::NonNegRational;
    using Nested = cqm::NonNegRational;
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 0,
        RequireInitialization = 1,
        ReadCost = 8,
        AddCost = 32,
        MulCost = 32
    };
    static cqm::NonNegRational epsilon() { return cqm::NonNegRational(0); }
    static cqm::NonNegRational dummy_precision() { return cqm::NonNegRational(0); }
    static int digits10() { return 0; }
};

}  // namespace Eigen
