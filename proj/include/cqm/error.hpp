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

#include <stdexcept>
#include <string>
#include <string_view>

namespace cqm {

enum class ErrorKind {
    DimensionMismatch,
    MixedRings,
    UnsupportedRing,
    ZeroInput,
    ZeroState,
    BothZero,
    DegenerateInner,
    PrereqFailed,
    NoSolution,
    NotOrthonormal,
    PurityViolation,
    TrivialObject,
    TooLarge,
    UnknownTheory,
    ParseError,
};

constexpr std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::MixedRings: return "MixedRings";
        case ErrorKind::UnsupportedRing: return "UnsupportedRing";
        case ErrorKind::ZeroInput: return "ZeroInput";
        case ErrorKind::ZeroState: return "ZeroState";
        case ErrorKind::BothZero: return "BothZero";
        case ErrorKind::DegenerateInner: return "DegenerateInner";
        case ErrorKind::PrereqFailed: return "PrereqFailed";
        case ErrorKind::NoSolution: return "NoSolution";
        case ErrorKind::NotOrthonormal: return "NotOrthonormal";
        case ErrorKind::PurityViolation: return "PurityViolation";
        case ErrorKind::TrivialObject: return "TrivialObject";
        case ErrorKind::TooLarge: return "TooLarge";
        case ErrorKind::UnknownTheory: return "UnknownTheory";
        case ErrorKind::ParseError: return "ParseError";
    }
    return "Unknown";
}

/// Every failure raised by the library carries a machine-checkable kind.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace cqm
