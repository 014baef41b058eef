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

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Eigenvalues>

#include "bargmann/core.hpp"
#include "bargmann/geometry.hpp"
#include "bargmann/gram.hpp"
#include "bargmann/state_tuple.hpp"

namespace bargmann {

/// Ordered tuple of density matrices of a common dimension.
class MixedTuple {
  public:
    explicit MixedTuple(std::vector<Matrix> matrices) : matrices_(std::move(matrices)) {
        if (matrices_.empty()) throw std::invalid_argument("MixedTuple: no matrices");
        const Eigen::Index d = matrices_.front().rows();
        for (std::size_t i = 0; i < matrices_.size(); ++i) {
            const Matrix& m = matrices_[i];
            const std::string tag = "MixedTuple: matrix " + std::to_string(i);
            if (m.rows() != d || m.cols() != d) throw std::invalid_argument(tag + " has mismatched dimension");
            if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-12) throw std::invalid_argument(tag + " is not Hermitian");
            if (std::abs(m.trace() - 1.0) > 1e-10) throw std::invalid_argument(tag + " does not have unit trace");
            const Matrix h = 0.5 * (m + m.adjoint());
            const double lo = Eigen::SelfAdjointEigenSolver<Matrix>(h, Eigen::EigenvaluesOnly).eigenvalues().minCoeff();
            if (lo < -1e-10) throw std::invalid_argument(tag + " is not positive semidefinite");
        }
    }

    /// Rank-1 projectors |v_i><v_i| of a pure tuple.
    static MixedTuple projectors(const StateTuple& v) {
        std::vector<Matrix> ms;
        ms.reserve(static_cast<std::size_t>(v.n()));
        for (const auto& x : v.vectors()) ms.push_back(x * x.adjoint());
        return MixedTuple(std::move(ms));
    }

    int n() const { return static_cast<int>(matrices_.size()); }
    int d() const { return static_cast<int>(matrices_.front().rows()); }
    const Matrix& operator[](int i) const { return matrices_[static_cast<std::size_t>(i)]; }
    const std::vector<Matrix>& matrices() const { return matrices_; }

  private:
    std::vector<Matrix> matrices_;
};

/// Delta_V = <v_1|v_2><v_2|v_3> ... <v_n|v_1>.
inline Complex bargmann_invariant(const StateTuple& v) {
    Complex z{1.0, 0.0};
    const int n = v.n();
    for (int k = 0; k < n; ++k) z *= v.overlap(k, (k + 1) % n);
    return z;
}

/// Throws std::invalid_argument unless order is a permutation of 0..n-1.
inline void require_permutation(std::span<const int> order, int n) {
    if (static_cast<int>(order.size()) != n) throw std::invalid_argument("order must list every state once");
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (int i : order) {
        if (i < 0 || i >= n || seen[static_cast<std::size_t>(i)]) {
            throw std::invalid_argument("order is not a permutation");
        }
        seen[static_cast<std::size_t>(i)] = true;
    }
}

/// Delta in a caller-supplied cyclic order (a permutation of 0..n-1).
inline Complex bargmann_invariant(const StateTuple& v, std::span<const int> order) {
    const int n = v.n();
    require_permutation(order, n);
    Complex z{1.0, 0.0};
    for (int k = 0; k < n; ++k) z *= v.overlap(order[k], order[(k + 1) % n]);
    return z;
}

/// Tr(rho_1 rho_2 ... rho_n), accumulated left to right.
inline Complex multivariate_trace(const MixedTuple& r) {
    Matrix acc = r[0];
    for (int k = 1; k < r.n(); ++k) acc = acc * r[k];
    return acc.trace();
}

inline GramMatrix gram_of(const StateTuple& v) {
    const int n = v.n();
    Matrix g(n, n);
    for (int i = 0; i < n; ++i) {
        g(i, i) = {1.0, 0.0};
        for (int j = i + 1; j < n; ++j) {
            g(i, j) = v.overlap(i, j);
            g(j, i) = std::conj(g(i, j));
        }
    }
    return GramMatrix(std::move(g));
}

struct GaugePhases {
    std::vector<double> phases;  // phases[0] == 0
};

struct AlignedTuple {
    StateTuple tuple;
    GaugePhases gauge;
    /// Common argument of the aligned consecutive overlaps, arg(Delta) / n.
    double theta;
};

/// Rephases |u_i> = e^{i phi_i}|v_i> so every consecutive overlap has
/// argument theta = arg(Delta)/n, with phi_0 = 0 and
/// phi_i = phi_{i-1} + theta - arg<v_{i-1}|v_i>.
/// Throws alignment_undefined if some consecutive overlap vanishes.
inline AlignedTuple gauge_align(const StateTuple& v) {
    const int n = v.n();
    std::vector<Complex> overlaps(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        overlaps[static_cast<std::size_t>(k)] = v.overlap(k, (k + 1) % n);
        if (std::abs(overlaps[static_cast<std::size_t>(k)]) <= 1e-12) {
            throw alignment_undefined("gauge_align: overlap " + std::to_string(k) + " vanishes");
        }
    }
    const double theta = std::arg(bargmann_invariant(v)) / n;

    std::vector<double> phases(static_cast<std::size_t>(n), 0.0);
    for (int i = 1; i < n; ++i) {
        phases[static_cast<std::size_t>(i)] =
            wrap_angle(phases[static_cast<std::size_t>(i - 1)] + theta - std::arg(overlaps[static_cast<std::size_t>(i - 1)]));
    }

    std::vector<Vector> us;
    us.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) us.push_back(cis(phases[static_cast<std::size_t>(i)]) * v[i]);
    return {StateTuple(std::move(us)), GaugePhases{std::move(phases)}, theta};
}

struct GeometricPhase {
    /// Post-selection probability |Delta|^2.
    double probability;
    /// arg Delta; empty when |Delta| <= 1e-12.
    std::optional<double> phase;
};

inline GeometricPhase geometric_phase(const StateTuple& v) {
    const Complex delta = bargmann_invariant(v);
    const double m = std::abs(delta);
    GeometricPhase g{m * m, std::nullopt};
    if (m > 1e-12) g.phase = std::arg(delta);
    return g;
}

/// Whether a cyclic projection experiment with n projections can reach the
/// given post-selection probability and geometric phase.
inline MembershipVerdict phase_feasible(double probability, double phase, int n, double tol = default_tol) {
    if (!(probability >= 0.0 && probability <= 1.0)) {
        throw std::invalid_argument("phase_feasible: probability must lie in [0, 1]");
    }
    return region_contains(std::polar(std::sqrt(probability), phase), n, tol);
}

}  // namespace bargmann
