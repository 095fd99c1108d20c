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

#include "cqm/io.hpp"

#include <regex>

namespace cqm {

namespace detail {

Rational parse_rational(const std::string& text) {
    static const std::regex kShape(R"(-?[0-9]+(/[0-9]+)?)");
    if (!std::regex_match(text, kShape)) parse_error("malformed rational '" + text + "'");
    const auto slash = text.find('/');
    try {
        const BigInt num(text.substr(0, slash));
        const BigInt den = slash == std::string::npos ? BigInt(1) : BigInt(text.substr(slash + 1));
        if (den == 0) parse_error("zero denominator in '" + text + "'");
        return Rational(BigRational(num, den));
    } catch (const std::runtime_error&) {
        parse_error("malformed rational '" + text + "'");
    }
}

RingId require_ring(const Json& j) {
    if (!j.contains("ring") || !j["ring"].is_string()) parse_error("missing \"ring\"");
    const std::optional<RingId> ring = parse_ring(j["ring"].get<std::string>());
    if (!ring) throw Error(ErrorKind::UnsupportedRing, "unknown ring '" + j["ring"].get<std::string>() + "'");
    return *ring;
}

Index require_dim(const Json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number_integer() || j[key].get<Index>() < 0) {
        parse_error(std::string("missing or negative \"") + key + "\"");
    }
    return j[key].get<Index>();
}

}  // namespace detail

RingId ring_of_json(const Json& j) { return detail::require_ring(j); }

Json theory_morphism_to_json(const TheoryMorphism& f) {
    return std::visit(
        [](const auto& m) -> Json {
            if constexpr (requires { m.kraus(); }) {
                return cpm_to_json(m);
            } else {
                return matrix_to_json(m);
            }
        },
        f.payload);
}

TheoryMorphism theory_morphism_from_json(const TheoryHandle& handle, const Json& j) {
    switch (handle.kind) {
        case TheoryKind::QuantC: return {handle, cpm_from_json<Complex>(j)};
        case TheoryKind::QuantR: return {handle, cpm_from_json<double>(j)};
        case TheoryKind::Class: return {handle, matrix_from_json<NonNegRational>(j)};
        case TheoryKind::Rel: return {handle, matrix_from_json<Bool>(j)};
    }
    throw Error(ErrorKind::UnknownTheory, "unknown theory kind");
}

}  // namespace cqm
