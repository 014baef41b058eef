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

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace bargmann {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

/// Default tolerance for classification against region boundaries.
inline constexpr double default_tol = 1e-9;

// Error hierarchy. Everything derives from std::runtime_error or
// std::invalid_argument so callers can catch broadly.

struct invalid_order : std::invalid_argument {
    explicit invalid_order(const std::string& what) : std::invalid_argument(what) {}
};

struct not_realizable : std::domain_error {
    not_realizable(const std::string& what, double boundary_radius)
        : std::domain_error(what), radius(boundary_radius) {}
    /// Largest realizable modulus at the target's argument (NaN when not applicable).
    double radius;
};

struct alignment_undefined : std::domain_error {
    explicit alignment_undefined(const std::string& what) : std::domain_error(what) {}
};

struct solver_failed : std::runtime_error {
    solver_failed(const std::string& what, double best_residual)
        : std::runtime_error(what), residual(best_residual) {}
    double residual;
};

/// Wraps an angle into [-pi, pi).
inline double wrap_angle(double phi) {
    double w = phi - two_pi * std::round(phi / two_pi);
    if (w >= pi) w -= two_pi;
    if (w < -pi) w += two_pi;
    return w;
}

/// e^{i phi}
inline Complex cis(double phi) { return std::polar(1.0, phi); }

/// Primitive n-th root of unity e^{2 pi i / n}.
inline Complex root_of_unity(int n) { return cis(two_pi / n); }

/// omega_n^k with the exponent reduced mod n before evaluating.
inline Complex root_of_unity_power(int n, long long k) {
    long long r = ((k % n) + n) % n;
    return cis(two_pi * static_cast<double>(r) / n);
}

inline int require_order(int n, int min_order, const char* op) {
    if (n < min_order) {
        throw invalid_order(std::string(op) + ": order " + std::to_string(n) +
                            " is below the minimum " + std::to_string(min_order));
    }
    return n;
}

}  // namespace bargmann
