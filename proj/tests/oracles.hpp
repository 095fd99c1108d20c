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

// Reference implementations used only by the tests. They are written with
// plain loops or a different decomposition than the library so that the two
// can disagree.

#pragma once

#include <Eigen/SVD>

#include <cmath>
#include <vector>

#include "cqm/matcat.hpp"

namespace cqm::oracle {

template <class S>
Mat<S> matmul(const Mat<S>& a, const Mat<S>& b) {
    Mat<S> out = Mat<S>::Zero(a.rows(), b.cols());
    for (Index i = 0; i < a.rows(); ++i)
        for (Index j = 0; j < b.cols(); ++j)
            for (Index k = 0; k < a.cols(); ++k) out(i, j) += a(i, k) * b(k, j);
    return out;
}

template <class S>
Mat<S> kron(const Mat<S>& a, const Mat<S>& b) {
    Mat<S> out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Index i = 0; i < a.rows(); ++i)
        for (Index j = 0; j < a.cols(); ++j)
            for (Index k = 0; k < b.rows(); ++k)
                for (Index l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    return out;
}

template <class S>
Mat<S> adjoint(const Mat<S>& a) {
    Mat<S> out(a.cols(), a.rows());
    for (Index i = 0; i < a.rows(); ++i)
        for (Index j = 0; j < a.cols(); ++j) out(j, i) = conj(a(i, j));
    return out;
}

/// sum_i conj(M_i) (x) M_i
template <class S>
Mat<S> doubled(const std::vector<Mat<S>>& kraus, Index in, Index out) {
    Mat<S> d = Mat<S>::Zero(out * out, in * in);
    for (const auto& m : kraus) d += kron<S>(m.conjugate(), m);
    return d;
}

/// Orthogonal projector onto the null space, via SVD.
template <class S>
Mat<S> null_projector(const Mat<S>& f, double thresh = 1e-9) {
    const Index n = f.cols();
    if (f.rows() == 0 || n == 0) return Mat<S>::Identity(n, n);
    Eigen::JacobiSVD<Mat<S>> svd(f, Eigen::ComputeFullV);
    Mat<S> p = Mat<S>::Identity(n, n);
    const auto& sv = svd.singularValues();
    for (Index i = 0; i < sv.size(); ++i) {
        if (sv(i) > thresh * std::max(1.0, sv(0))) p -= svd.matrixV().col(i) * svd.matrixV().col(i).adjoint();
    }
    return p;
}

/// Projector onto the column span, via SVD.
template <class S>
Mat<S> range_projector(const Mat<S>& f, double thresh = 1e-9) {
    const Index m = f.rows();
    Mat<S> p = Mat<S>::Zero(m, m);
    if (f.cols() == 0 || m == 0) return p;
    Eigen::JacobiSVD<Mat<S>> svd(f, Eigen::ComputeFullU);
    const auto& sv = svd.singularValues();
    for (Index i = 0; i < sv.size(); ++i) {
        if (sv(i) > thresh * std::max(1.0, sv(0))) p += svd.matrixU().col(i) * svd.matrixU().col(i).adjoint();
    }
    return p;
}

/// Rank of the Choi matrix sum_i vec(M_i) vec(M_i)†, via SVD.
template <class S>
Index choi_rank(const std::vector<Mat<S>>& kraus, double thresh = 1e-7) {
    if (kraus.empty()) return 0;
    const Index d = kraus.front().size();
    Mat<S> vecs(d, static_cast<Index>(kraus.size()));
    for (std::size_t i = 0; i < kraus.size(); ++i) {
        vecs.col(static_cast<Index>(i)) = Eigen::Map<const Mat<S>>(kraus[i].data(), d, 1);
    }
    Eigen::JacobiSVD<Mat<S>> svd(vecs);
    const auto& sv = svd.singularValues();
    Index r = 0;
    for (Index i = 0; i < sv.size(); ++i) r += sv(i) > thresh * std::max(1.0, sv(0)) ? 1 : 0;
    return r;
}

template <class S>
double max_abs(const Mat<S>& a) {
    return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

}  // namespace cqm::oracle
