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

// JSON encodings. Matrices: {"ring","rows","cols","entries"} with row-major
// entries; complex entries are [re, im], rationals "p/q" strings, Booleans
// 0/1. CP maps: {"ring","in","out","kraus", optional "doubled"}.

#include <string>

#include <nlohmann/json.hpp>

#include "cqm/theories.hpp"

namespace cqm {

using Json = nlohmann::json;

namespace detail {

[[noreturn]] inline void parse_error(const std::string& what) { throw Error(ErrorKind::ParseError, what); }

Rational parse_rational(const std::string& text);

template <class S>
Json scalar_to_json(const S& s) {
    if constexpr (std::is_same_v<S, Complex>) {
        return Json::array({s.real(), s.imag()});
    } else if constexpr (std::is_same_v<S, double>) {
        return s;
    } else if constexpr (std::is_same_v<S, Bool>) {
        return s.value ? 1 : 0;
    } else {
        return s.str();
    }
}

template <class S>
S scalar_from_json(const Json& j) {
    if constexpr (std::is_same_v<S, Complex>) {
        if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) parse_error("complex entry must be [re, im]");
        return {j[0].get<double>(), j[1].get<double>()};
    } else if constexpr (std::is_same_v<S, double>) {
        if (!j.is_number()) parse_error("real entry must be a number");
        return j.get<double>();
    } else if constexpr (std::is_same_v<S, Bool>) {
        if (!j.is_number_integer() || (j.get<int>() != 0 && j.get<int>() != 1)) parse_error("boolean entry must be 0 or 1");
        return Bool(j.get<int>() == 1);
    } else {
        if (!j.is_string() && !j.is_number_integer()) parse_error("rational entry must be a \"p/q\" string");
        const Rational r = j.is_string() ? parse_rational(j.get<std::string>()) : Rational(j.get<int>());
        if constexpr (std::is_same_v<S, NonNegRational>) {
            return NonNegRational(r);
        } else {
            return r;
        }
    }
}

RingId require_ring(const Json& j);
Index require_dim(const Json& j, const char* key);

}  // namespace detail

/// Ring id recorded in a matrix or CP-map document.
RingId ring_of_json(const Json& j);

template <class S>
Json matrix_to_json(const Mat<S>& m, bool kernel = false) {
    Json entries = Json::array();
    for (Index i = 0; i < m.rows(); ++i) {
        for (Index j = 0; j < m.cols(); ++j) entries.push_back(detail::scalar_to_json(m(i, j)));
    }
    Json out{{"ring", ring_name(RingTraits<S>::id)}, {"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries}};
    if (kernel) out["kernel"] = true;
    return out;
}

template <class S>
Mat<S> matrix_from_json(const Json& j) {
    if (!j.is_object()) detail::parse_error("matrix must be an object");
    const RingId ring = detail::require_ring(j);
    if (ring != RingTraits<S>::id) {
        throw Error(ErrorKind::MixedRings, "expected " + std::string(ring_name(RingTraits<S>::id)) + ", found " +
                                               std::string(ring_name(ring)));
    }
    const Index rows = detail::require_dim(j, "rows");
    const Index cols = detail::require_dim(j, "cols");
    if (!j.contains("entries") || !j["entries"].is_array() ||
        j["entries"].size() != static_cast<std::size_t>(rows * cols)) {
        detail::parse_error("entries must hold rows * cols values");
    }
    Mat<S> m(rows, cols);
    for (Index i = 0; i < rows; ++i) {
        for (Index c = 0; c < cols; ++c) m(i, c) = detail::scalar_from_json<S>(j["entries"][static_cast<std::size_t>(i * cols + c)]);
    }
    return m;
}

template <class S>
Json cpm_to_json(const CPMorphism<S>& f, bool with_doubled = true) {
    Json kraus = Json::array();
    for (const auto& m : f.kraus()) kraus.push_back(matrix_to_json(m));
    Json out{{"ring", ring_name(RingTraits<S>::id)}, {"in", f.in_dim()}, {"out", f.out_dim()}, {"kraus", kraus}};
    if (with_doubled) out["doubled"] = matrix_to_json(f.doubled());
    return out;
}

/// The doubled form is recomputed; a stored "doubled" field must agree with it.
template <class S>
CPMorphism<S> cpm_from_json(const Json& j, Tolerance tol = {}) {
    if (!j.is_object()) detail::parse_error("CP map must be an object");
    const RingId ring = detail::require_ring(j);
    if (ring != RingTraits<S>::id) {
        throw Error(ErrorKind::MixedRings, "expected " + std::string(ring_name(RingTraits<S>::id)) + ", found " +
                                               std::string(ring_name(ring)));
    }
    if (!j.contains("kraus") || !j["kraus"].is_array()) detail::parse_error("CP map needs a \"kraus\" array");
    std::vector<Mat<S>> kraus;
    for (const auto& k : j["kraus"]) kraus.push_back(matrix_from_json<S>(k));
    CPMorphism<S> f(detail::require_dim(j, "in"), detail::require_dim(j, "out"), std::move(kraus));
    if (j.contains("doubled") && !approx_equal<S>(matrix_from_json<S>(j["doubled"]), f.doubled(), tol)) {
        detail::parse_error("stored doubled form disagrees with the Kraus operators");
    }
    return f;
}

Json theory_morphism_to_json(const TheoryMorphism& f);
TheoryMorphism theory_morphism_from_json(const TheoryHandle& handle, const Json& j);

}  // namespace cqm
