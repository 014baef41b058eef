// Copyright 2026 The Bargmann Toolkit Authors
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

#include <vector>

#include "bargmann/core.hpp"

namespace bargmann {

/// Ordered tuple of unit vectors sharing one dimension.
class StateTuple {
  public:
    static constexpr double norm_tol = 1e-10;

    explicit StateTuple(std::vector<Vector> vectors) : vectors_(std::move(vectors)) {
        if (vectors_.empty()) throw std::invalid_argument("StateTuple: no vectors");
        const Eigen::Index d = vectors_.front().size();
        if (d == 0) throw std::invalid_argument("StateTuple: zero-dimensional vectors");
        for (std::size_t i = 0; i < vectors_.size(); ++i) {
            if (vectors_[i].size() != d) throw std::invalid_argument("StateTuple: dimension mismatch");
            const double norm = vectors_[i].norm();
            if (std::abs(norm - 1.0) > norm_tol) {
                throw std::invalid_argument("StateTuple: vector " + std::to_string(i) +
                                            " has norm " + std::to_string(norm));
            }
        }
    }

    /// Normalizes each vector before validating. Zero vectors are rejected.
    static StateTuple normalized(std::vector<Vector> vectors) {
        for (auto& v : vectors) {
            const double norm = v.norm();
            if (norm == 0.0) throw std::invalid_argument("StateTuple: zero vector");
            v /= norm;
        }
        return StateTuple(std::move(vectors));
    }

    int n() const { return static_cast<int>(vectors_.size()); }
    int d() const { return static_cast<int>(vectors_.front().size()); }
    const Vector& operator[](int i) const { return vectors_[static_cast<std::size_t>(i)]; }
    const std::vector<Vector>& vectors() const { return vectors_; }

    /// <v_i|v_j>
    Complex overlap(int i, int j) const { return (*this)[i].dot((*this)[j]); }

  private:
    std::vector<Vector> vectors_;
};

}  // namespace bargmann
