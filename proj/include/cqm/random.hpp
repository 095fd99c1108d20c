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

// Seeded sampling of float matrices, unitaries and isometries.

#include <cstdint>
#include <random>

#include <Eigen/QR>

#include "cqm/matcat.hpp"

namespace cqm {

using Rng = std::mt19937_64;

/// Independent stream for a named sub-task of a seeded run.
inline Rng split_rng(std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    return Rng(seq);
}

template <class S>
S gaussian_scalar(Rng& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    if constexpr (std::is_same_v<S, Complex>) {
        const double re = normal(rng);
        const double im = normal(rng);
        return Complex(re, im) / std::sqrt(2.0);
    } else {
        return normal(rng);
    }
}

template <class S>
Mat<S> gaussian_matrix(Index rows, Index cols, Rng& rng) {
    Mat<S> m(rows, cols);
    for (Index j = 0; j < cols; ++j) {
        for (Index i = 0; i < rows; ++i) m(i, j) = gaussian_scalar<S>(rng);
    }
    return m;
}

inline Index uniform_index(Index lo, Index hi, Rng& rng) {
    std::uniform_int_distribution<Index> dist(lo, hi);
    return dist(rng);
}

inline double uniform_real(double lo, double hi, Rng& rng) {
    std::uniform_real_distribution<double> dist(lo, hi);
    return dist(rng);
}

/// A unit scalar: e^{i theta} over the complex numbers, +-1 over the reals.
template <class S>
S random_phase(Rng& rng) {
    if constexpr (std::is_same_v<S, Complex>) {
        return std::polar(1.0, uniform_real(0.0, 2.0 * M_PI, rng));
    } else {
        return uniform_index(0, 1, rng) == 0 ? 1.0 : -1.0;
    }
}

/// Haar-distributed unitary: QR of a Gaussian matrix with the phases of R
/// moved into Q.
template <class S>
Mat<S> random_unitary(Index n, Rng& rng) {
    const Mat<S> z = gaussian_matrix<S>(n, n, rng);
    Eigen::HouseholderQR<Mat<S>> qr(z);
    Mat<S> q = qr.householderQ() * identity<S>(n);
    const Mat<S> r = qr.matrixQR().template triangularView<Eigen::Upper>();
    for (Index j = 0; j < n; ++j) {
        const double m = magnitude(r(j, j));
        if (m > 0) q.col(j) *= r(j, j) / m;
    }
    return q;
}

/// Isometry m -> n with m <= n.
template <class S>
Mat<S> random_isometry(Index n, Index m, Rng& rng) {
    return random_unitary<S>(n, rng).leftCols(m);
}

template <class S>
Mat<S> random_unit_vector(Index n, Rng& rng) {
    Mat<S> v = gaussian_matrix<S>(n, 1, rng);
    return v / v.norm();
}

}  // namespace cqm
