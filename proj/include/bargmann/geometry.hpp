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

// Geometry of the unit n-gon P_n (convex hull of the n-th roots of unity)
// and of the teardrop region B_n = { z^n : z in P_n } of order-n
// Bargmann invariants.
//
// Conventions:
//   * arguments live in [-pi, pi) (see wrap_angle);
//   * the "first edge" of P_n is the segment s(t) = 1 + t (omega_n - 1),
//     t in [0, 1]; every other edge maps onto the same curve under z -> z^n;
//   * the "sector triangle" is conv{0, 1, omega_n}.

#pragma once

#include <algorithm>
#include <array>
#include <limits>
#include <optional>
#include <string_view>
#include <vector>

#include "bargmann/core.hpp"

namespace bargmann {

enum class Classification { outside, boundary, interior, vertex };

constexpr std::string_view to_string(Classification c) {
    switch (c) {
        case Classification::outside: return "outside";
        case Classification::boundary: return "boundary";
        case Classification::interior: return "interior";
        case Classification::vertex: return "vertex";
    }
    return "unknown";
}

struct MembershipVerdict {
    Classification classification;
    /// Signed slack: positive inside, negative outside. For B_n with n >= 3
    /// this is the radial slack r_max(arg) - |delta|.
    double margin;

    bool contained() const { return classification != Classification::outside; }
};

/// The regular n-gon with vertices omega_n^k.
struct NGon {
    int n;
    Complex omega;
    std::vector<Complex> vertices;

    static NGon make(int n) {
        require_order(n, 1, "NGon");
        NGon g{n, root_of_unity(n), {}};
        g.vertices.reserve(n);
        for (int k = 0; k < n; ++k) g.vertices.push_back(root_of_unity_power(n, k));
        return g;
    }
};

namespace detail {

inline double scaled_tol(double tol, double modulus) { return tol * std::max(1.0, modulus); }

inline void require_positive_tol(double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
}

/// Signed distance of z from the boundary of P_n (n >= 3), positive inside.
inline double polygon_slack(Complex z, int n) {
    const double apothem = std::cos(pi / n);
    double slack = std::numeric_limits<double>::infinity();
    for (int k = 0; k < n; ++k) {
        const Complex normal = cis(pi * (2.0 * k + 1.0) / n);
        slack = std::min(slack, apothem - (z * std::conj(normal)).real());
    }
    return slack;
}

}  // namespace detail

/// Classifies z against P_n. P_1 = {1}; P_2 = [-1, 1], whose relative
/// interior is reported as interior.
inline MembershipVerdict ngon_contains(Complex z, int n, double tol = default_tol) {
    require_order(n, 1, "ngon_contains");
    detail::require_positive_tol(tol);
    const double eps = detail::scaled_tol(tol, std::abs(z));

    if (n == 1) {
        const double d = std::abs(z - 1.0);
        return {d <= eps ? Classification::vertex : Classification::outside, -d};
    }

    for (int k = 0; k < n; ++k) {
        if (std::abs(z - root_of_unity_power(n, k)) <= eps) {
            const double m = n == 2 ? 1.0 - std::abs(z.real()) : detail::polygon_slack(z, n);
            return {Classification::vertex, m};
        }
    }

    double margin;
    if (n == 2) {
        margin = std::abs(z.imag()) > eps ? -std::abs(z.imag()) - std::max(0.0, std::abs(z.real()) - 1.0)
                                          : 1.0 - std::abs(z.real());
    } else {
        margin = detail::polygon_slack(z, n);
    }
    if (std::abs(margin) <= eps) return {Classification::boundary, margin};
    return {margin > 0 ? Classification::interior : Classification::outside, margin};
}

/// Largest modulus of a point of B_n (n >= 3) with argument phi:
/// (sec(theta/n) / sec(pi/n))^n with theta = wrap(phi - pi).
inline double boundary_radius(double phi, int n) {
    require_order(n, 3, "boundary_radius");
    const double theta = wrap_angle(phi - pi);
    return std::pow(std::cos(pi / n) / std::cos(theta / n), n);
}

/// The first edge of P_n and its image under z -> z^n.
struct BoundaryCurve {
    int n;
    Complex delta;  // omega_n - 1

    static BoundaryCurve make(int n) {
        require_order(n, 3, "BoundaryCurve");
        return {n, root_of_unity(n) - 1.0};
    }

    /// s(t) = 1 + t * delta.
    Complex segment_point(double t) const { return 1.0 + t * delta; }

    /// Point of the first edge at parameter theta in [-pi, pi]; theta = -pi
    /// gives 1 and theta = pi gives omega_n.
    Complex root(double theta) const {
        const double r = std::cos(pi / n) / std::cos(theta / n);
        return r * cis((theta + pi) / n);
    }

    /// Boundary point of B_n: root(theta)^n, with argument wrap(theta + pi).
    Complex value(double theta) const { return std::pow(root(theta), n); }

    /// Parameter t with s(t) closest to z (least squares on 1 + t delta = z).
    double segment_parameter(Complex z) const {
        return ((z - 1.0) * std::conj(delta)).real() / std::norm(delta);
    }
};

inline Complex boundary_point(double theta, int n) { return BoundaryCurve::make(n).root(theta); }

/// Decides delta in B_n. For n >= 3 uses the radial test against
/// boundary_radius with relative slack tol * max(1, |delta|);
/// B_1 = {1} and B_2 = [0, 1] are handled as degenerate sets.
inline MembershipVerdict region_contains(Complex delta, int n, double tol = default_tol) {
    require_order(n, 1, "region_contains");
    detail::require_positive_tol(tol);
    const double modulus = std::abs(delta);
    const double eps = detail::scaled_tol(tol, modulus);

    if (n == 1) {
        const double d = std::abs(delta - 1.0);
        return {d <= eps ? Classification::vertex : Classification::outside, -d};
    }

    double margin;
    if (n == 2) {
        const double re = delta.real();
        const double im = std::abs(delta.imag());
        if (im > eps) {
            const double along = std::max({0.0, -re, re - 1.0});
            margin = -std::hypot(im, along);
        } else {
            margin = std::min(re, 1.0 - re);
        }
    } else {
        const double phi = modulus == 0.0 ? 0.0 : std::arg(delta);
        margin = boundary_radius(phi, n) - modulus;
    }
    if (std::abs(margin) <= eps) return {Classification::boundary, margin};
    return {margin > 0 ? Classification::interior : Classification::outside, margin};
}

/// Radial distance from the origin to the first edge along argument psi in
/// [0, 2 pi / n].
inline double edge_radius(double psi, int n) {
    return std::cos(pi / n) / std::cos(psi - pi / n);
}

/// The n-th root of delta lying in the sector triangle conv{0, 1, omega_n},
/// i.e. with argument in [0, 2 pi / n). Throws not_realizable when delta is
/// outside B_n at tolerance tol.
inline Complex sector_root(Complex delta, int n, double tol = default_tol) {
    require_order(n, 3, "sector_root");
    if (!region_contains(delta, n, tol).contained()) {
        const double phi = std::arg(delta);
        throw not_realizable("sector_root: target lies outside B_" + std::to_string(n),
                             boundary_radius(phi, n));
    }
    const double modulus = std::abs(delta);
    if (modulus == 0.0) return {0.0, 0.0};
    double arg = std::arg(delta) / n;
    if (arg < 0.0) arg += two_pi / n;
    if (arg >= two_pi / n) arg -= two_pi / n;
    return std::polar(std::pow(modulus, 1.0 / n), arg);
}

/// Convex weights of a sector root over the anchors {1, omega_n, y_n},
/// y_n = omega_n^ceil(n/2).
struct CaratheodoryCoeffs {
    double a2;
    double b2;
    double c2;
    Complex yn;
    /// sqrt(1/2 + cos(2 pi / n) / 2); only meaningful for odd n.
    std::optional<double> K;

    Complex combine(int n) const { return a2 + b2 * root_of_unity(n) + c2 * yn; }
};

inline Complex third_anchor(int n) { return root_of_unity_power(n, (n + 1) / 2); }

/// Solves a2 + b2 omega_n + c2 y_n = z, a2 + b2 + c2 = 1 for the convex
/// weights of z. Negative weights down to -1e-10 are clamped and the rest
/// renormalized; anything worse (or a residual above 1e-8) means z is not in
/// the sector triangle.
inline CaratheodoryCoeffs caratheodory_decompose(Complex z, int n) {
    require_order(n, 3, "caratheodory_decompose");
    constexpr double clamp_floor = -1e-10;
    constexpr double max_residual = 1e-8;

    const Complex w = root_of_unity(n);
    const Complex y = third_anchor(n);
    Eigen::Matrix3d A;
    A << 1.0, w.real(), y.real(),
         0.0, w.imag(), y.imag(),
         1.0, 1.0, 1.0;
    const Eigen::Vector3d rhs(z.real(), z.imag(), 1.0);
    Eigen::Vector3d x = A.partialPivLu().solve(rhs);

    for (int i = 0; i < 3; ++i) {
        if (x[i] < clamp_floor) {
            throw not_realizable("caratheodory_decompose: point outside the sector triangle",
                                 std::numeric_limits<double>::quiet_NaN());
        }
        x[i] = std::max(0.0, x[i]);
    }
    x /= x.sum();

    CaratheodoryCoeffs c{x[0], x[1], x[2], y, std::nullopt};
    if (n % 2 == 1) c.K = std::sqrt(0.5 + std::cos(two_pi / n) / 2.0);
    if (std::abs(c.combine(n) - z) > max_residual) {
        throw not_realizable("caratheodory_decompose: residual too large after clamping",
                             std::numeric_limits<double>::quiet_NaN());
    }
    return c;
}

}  // namespace bargmann
