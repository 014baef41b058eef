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

// Witness synthesis for realizable order-n invariants:
//
//   * qutrit circulant:  |u_k> = a|0> + b w^k|1> + c y^k|2>, k = 0..n-1,
//     where (a^2, b^2, c^2) are the convex weights of the sector root over
//     {1, w, y}, w = omega_n, y = omega_n^ceil(n/2);
//   * qubit boundary:    |v_k> = cos(t)|0> + sin(t) w^k|1>, realizing the
//     boundary of B_n at a prescribed argument;
//   * qubit general:     (|x>, |v_1>, ..., |v_{n-1}>) with the |v_k> from the
//     boundary witness on the target's ray and |x> chosen in the numerical
//     range of V = |v_1><v_1| ... |v_{n-1}><v_{n-1}|.

#pragma once

#include <algorithm>
#include <array>
#include <limits>
#include <vector>

#include "bargmann/core.hpp"
#include "bargmann/geometry.hpp"
#include "bargmann/gram.hpp"
#include "bargmann/states.hpp"

namespace bargmann {

struct QutritCirculantWitness {
    CaratheodoryCoeffs coeffs;
    double a, b, c;
    /// Common consecutive overlap a^2 + b^2 w + c^2 y.
    Complex root;
    StateTuple tuple;
};

struct QubitBoundaryWitness {
    /// Mixing angle in [0, pi/2].
    double mixing;
    StateTuple tuple;
};

struct QubitGeneralWitness {
    QubitBoundaryWitness anchor;
    Eigen::Vector2cd x;
    /// (|x>, |v_1>, ..., |v_{n-1}>)
    StateTuple tuple;
    Eigen::Matrix2cd product_operator;
    /// |<x|V|x> - target|
    double residual;
};

/// The qubit states cos(t)|0> + sin(t) w^k |1>, k = 0..n-1.
inline StateTuple obg_tuple(double mixing, int n) {
    std::vector<Vector> vs;
    vs.reserve(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        Vector v(2);
        v << std::cos(mixing), std::sin(mixing) * root_of_unity_power(n, k);
        vs.push_back(std::move(v));
    }
    return StateTuple::normalized(std::move(vs));
}

inline QutritCirculantWitness realize_qutrit_circulant(Complex delta, int n, double tol = default_tol) {
    require_order(n, 3, "realize_qutrit_circulant");
    const MembershipVerdict verdict = region_contains(delta, n, tol);
    Complex z = sector_root(delta, n, tol);

    // A target accepted within tolerance just outside B_n has its root just
    // outside the first edge; pull it back radially onto the edge.
    if (verdict.classification == Classification::boundary && std::abs(z) > 0.0) {
        const double slack = std::cos(pi / n) - (z * cis(-pi / n)).real();
        if (slack < 0.0) z = std::polar(edge_radius(std::arg(z), n), std::arg(z));
    }

    const CaratheodoryCoeffs coeffs = caratheodory_decompose(z, n);
    const double a = std::sqrt(coeffs.a2);
    const double b = std::sqrt(coeffs.b2);
    const double c = std::sqrt(coeffs.c2);

    std::vector<Vector> us;
    us.reserve(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        Vector u(3);
        u << a, b * root_of_unity_power(n, k), c * root_of_unity_power(n, static_cast<long long>(k) * ((n + 1) / 2));
        us.push_back(std::move(u));
    }
    return {coeffs, a, b, c, coeffs.combine(n), StateTuple::normalized(std::move(us))};
}

/// Boundary witness at argument phi: the root on the first edge at
/// theta = wrap(phi - pi) is 1 + t (w - 1) and the mixing angle is
/// arcsin(sqrt(t)).
inline QubitBoundaryWitness realize_qubit_boundary(double phi, int n) {
    require_order(n, 3, "realize_qubit_boundary");
    const BoundaryCurve curve = BoundaryCurve::make(n);
    const Complex s = curve.root(wrap_angle(wrap_angle(phi) - pi));
    const double t = std::clamp(curve.segment_parameter(s), 0.0, 1.0);
    const double mixing = std::asin(std::sqrt(t));
    return {mixing, obg_tuple(mixing, n)};
}

/// <x|V|x> for x = cos(alpha)|0> + sin(alpha) e^{i beta}|1>, with partial
/// derivatives.
struct QuadraticFormEval {
    Complex value;
    Complex d_alpha;
    Complex d_beta;
};

inline Eigen::Vector2cd qubit_from_angles(double alpha, double beta) {
    return {Complex(std::cos(alpha), 0.0), std::sin(alpha) * cis(beta)};
}

inline QuadraticFormEval quadratic_form(const Eigen::Matrix2cd& v, double alpha, double beta) {
    const double c = std::cos(alpha);
    const double s = std::sin(alpha);
    const Complex e = cis(beta);
    const Complex off = e * v(0, 1) + std::conj(e) * v(1, 0);
    QuadraticFormEval out;
    out.value = c * c * v(0, 0) + c * s * off + s * s * v(1, 1);
    out.d_alpha = -2.0 * c * s * v(0, 0) + (c * c - s * s) * off + 2.0 * c * s * v(1, 1);
    out.d_beta = c * s * Complex(0.0, 1.0) * (e * v(0, 1) - std::conj(e) * v(1, 0));
    return out;
}

namespace detail {

struct NewtonResult {
    double alpha;
    double beta;
    double residual;
};

/// Damped Newton on (Re, Im)(<x|V|x> - target) = 0 over (alpha, beta), with
/// a Levenberg-Marquardt step where the Jacobian is near singular.
inline NewtonResult damped_newton(const Eigen::Matrix2cd& v, Complex target, double alpha, double beta) {
    constexpr int max_iter = 100;
    constexpr double converged = 1e-15;
    auto eval = quadratic_form(v, alpha, beta);
    double res = std::abs(eval.value - target);
    for (int it = 0; it < max_iter && res > converged; ++it) {
        const Complex f = eval.value - target;
        Eigen::Matrix2d j;
        j << eval.d_alpha.real(), eval.d_beta.real(), eval.d_alpha.imag(), eval.d_beta.imag();
        const Eigen::Vector2d rhs(-f.real(), -f.imag());

        Eigen::Vector2d step;
        const double scale = j.cwiseAbs().maxCoeff();
        if (std::abs(j.determinant()) > 1e-10 * std::max(1e-300, scale * scale)) {
            step = j.partialPivLu().solve(rhs);
        } else {
            const Eigen::Matrix2d jtj = j.transpose() * j;
            const double mu = 1e-6 * std::max(1.0, jtj.trace());
            step = (jtj + mu * Eigen::Matrix2d::Identity()).ldlt().solve(j.transpose() * rhs);
        }

        bool improved = false;
        for (double damp = 1.0; damp > 1e-6; damp *= 0.5) {
            const double a = alpha + damp * step[0];
            const double b = beta + damp * step[1];
            const auto trial = quadratic_form(v, a, b);
            const double tr = std::abs(trial.value - target);
            if (tr < res) {
                alpha = a;
                beta = b;
                eval = trial;
                res = tr;
                improved = true;
                break;
            }
        }
        if (!improved) break;
    }
    return {alpha, beta, res};
}

}  // namespace detail

/// Finds a unit qubit |x> with <x|V|x> = target: 64x64 grid seed over
/// (alpha, beta) in [0, pi/2] x [0, 2 pi), then damped Newton from the best
/// seeds. Throws solver_failed if the best residual exceeds max_residual.
inline Eigen::Vector2cd solve_numerical_range(const Eigen::Matrix2cd& v, Complex target,
                                              double max_residual = 1e-6, double* residual_out = nullptr) {
    constexpr int grid = 64;
    constexpr int restarts = 8;

    struct Seed {
        double residual, alpha, beta;
    };
    std::vector<Seed> seeds;
    seeds.reserve(grid * grid);
    for (int i = 0; i < grid; ++i) {
        const double alpha = (pi / 2.0) * i / (grid - 1);
        for (int j = 0; j < grid; ++j) {
            const double beta = two_pi * j / grid;
            seeds.push_back({std::abs(quadratic_form(v, alpha, beta).value - target), alpha, beta});
        }
    }
    std::partial_sort(seeds.begin(), seeds.begin() + restarts, seeds.end(),
                      [](const Seed& l, const Seed& r) { return l.residual < r.residual; });

    detail::NewtonResult best{seeds[0].alpha, seeds[0].beta, seeds[0].residual};
    for (int r = 0; r < restarts; ++r) {
        const auto res = detail::damped_newton(v, target, seeds[r].alpha, seeds[r].beta);
        if (res.residual < best.residual) best = res;
        if (best.residual <= 1e-14) break;
    }

    const Eigen::Vector2cd x = qubit_from_angles(best.alpha, best.beta);
    const double check = std::abs(x.dot(v * x) - target);
    if (residual_out) *residual_out = check;
    if (check > max_residual) {
        throw solver_failed("solve_numerical_range: no preimage found", check);
    }
    return x;
}

inline Eigen::Matrix2cd projector_product(const StateTuple& anchor) {
    Eigen::Matrix2cd v = Eigen::Matrix2cd::Identity();
    for (int k = 1; k < anchor.n(); ++k) {
        const Eigen::Vector2cd s = anchor[k];
        v = v * (s * s.adjoint());
    }
    return v;
}

/// Qubit witness for any delta in B_n (not necessarily circulant).
inline QubitGeneralWitness realize_qubit_general(Complex delta, int n, double tol = default_tol) {
    require_order(n, 3, "realize_qubit_general");
    const MembershipVerdict verdict = region_contains(delta, n, tol);
    if (!verdict.contained()) {
        throw not_realizable("realize_qubit_general: target lies outside B_" + std::to_string(n),
                             boundary_radius(std::arg(delta), n));
    }

    const bool zero = std::abs(delta) == 0.0;
    // For delta = 0 any anchor works; the edge midpoint keeps it a genuine qubit tuple.
    QubitBoundaryWitness anchor = realize_qubit_boundary(zero ? pi : std::arg(delta), n);
    const Eigen::Matrix2cd v = projector_product(anchor.tuple);

    Eigen::Vector2cd x;
    if (zero) {
        const Eigen::Vector2cd v1 = anchor.tuple[1];
        x << -std::conj(v1[1]), std::conj(v1[0]);
    } else if (verdict.classification == Classification::boundary) {
        x = anchor.tuple[0];
    } else {
        x = solve_numerical_range(v, delta);
    }

    std::vector<Vector> states;
    states.reserve(static_cast<std::size_t>(n));
    states.emplace_back(x);
    for (int k = 1; k < n; ++k) states.push_back(anchor.tuple[k]);
    StateTuple tuple = StateTuple::normalized(std::move(states));
    const double residual = std::abs(bargmann_invariant(tuple) - delta);
    return {std::move(anchor), x, std::move(tuple), v, residual};
}

/// <x|V|x> over a deterministic (alpha, beta) grid, alpha in [0, pi/2]
/// (endpoints included) and beta in [0, 2 pi). The grid has
/// ceil(sqrt(count)) alpha rows and enough beta columns to reach count, so
/// slightly more than count values may be returned.
inline std::vector<Complex> numerical_range_sample(const Eigen::Matrix2cd& v, int count) {
    if (count < 1) throw std::invalid_argument("numerical_range_sample: count must be positive");
    const int rows = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(count))));
    const int cols = (count + rows - 1) / rows;
    std::vector<Complex> out;
    out.reserve(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols));
    for (int i = 0; i < rows; ++i) {
        const double alpha = rows == 1 ? 0.0 : (pi / 2.0) * i / (rows - 1);
        for (int j = 0; j < cols; ++j) out.push_back(quadratic_form(v, alpha, two_pi * j / cols).value);
    }
    return out;
}

}  // namespace bargmann
