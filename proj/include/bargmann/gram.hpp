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

// Normalized Gram matrices and circulant Gram synthesis.
//
// Indices are 0-based throughout. The Fourier matrix is
// F_{ij} = omega_n^{ij} / sqrt(n), so a circulant G = F diag(lambda) F^dagger
// has first row g_j = (1/n) sum_i lambda_i omega_n^{-ij}.

#pragma once

#include <numeric>
#include <span>
#include <vector>

#include <Eigen/Eigenvalues>

#include "bargmann/core.hpp"
#include "bargmann/state_tuple.hpp"

namespace bargmann {

struct GramReport {
    double hermitian_defect = 0.0;
    double diagonal_defect = 0.0;
    double min_eigenvalue = 0.0;
    bool passed = false;
};

/// Checks Hermiticity, unit diagonal and positive semidefiniteness.
/// Hermitian/diagonal defects must be <= tol; the smallest eigenvalue must
/// be >= -tol * n.
inline GramReport validate_gram(const Matrix& g, double tol = 1e-10) {
    if (g.rows() != g.cols()) throw std::invalid_argument("validate_gram: matrix is not square");
    GramReport r;
    const Eigen::Index n = g.rows();
    if (n == 0) throw std::invalid_argument("validate_gram: empty matrix");
    r.hermitian_defect = (g - g.adjoint()).cwiseAbs().maxCoeff();
    r.diagonal_defect = (g.diagonal().array() - Complex(1.0, 0.0)).abs().maxCoeff();
    const Matrix h = 0.5 * (g + g.adjoint());
    r.min_eigenvalue = Eigen::SelfAdjointEigenSolver<Matrix>(h, Eigen::EigenvaluesOnly).eigenvalues().minCoeff();
    r.passed = r.hermitian_defect <= tol && r.diagonal_defect <= tol &&
               r.min_eigenvalue >= -tol * static_cast<double>(n);
    return r;
}

/// A validated normalized Gram matrix.
class GramMatrix {
  public:
    static constexpr double default_tol = 1e-10;

    explicit GramMatrix(Matrix entries, double tol = default_tol) : entries_(std::move(entries)) {
        const GramReport r = validate_gram(entries_, tol);
        if (!r.passed) {
            throw std::invalid_argument("GramMatrix: not a normalized PSD matrix (hermitian defect " +
                                        std::to_string(r.hermitian_defect) + ", diagonal defect " +
                                        std::to_string(r.diagonal_defect) + ", min eigenvalue " +
                                        std::to_string(r.min_eigenvalue) + ")");
        }
    }

    int n() const { return static_cast<int>(entries_.rows()); }
    Complex operator()(int i, int j) const { return entries_(i, j); }
    const Matrix& matrix() const { return entries_; }

  private:
    Matrix entries_;
};

/// n nonnegative eigenvalues summing to n.
class CirculantSpectrum {
  public:
    explicit CirculantSpectrum(std::vector<double> lambdas) : lambdas_(std::move(lambdas)) {
        if (lambdas_.empty()) throw std::invalid_argument("CirculantSpectrum: empty spectrum");
        for (double l : lambdas_) {
            if (!(l >= 0.0)) throw std::invalid_argument("CirculantSpectrum: negative eigenvalue");
        }
        const double sum = std::accumulate(lambdas_.begin(), lambdas_.end(), 0.0);
        if (std::abs(sum - static_cast<double>(lambdas_.size())) > 1e-10) {
            throw std::invalid_argument("CirculantSpectrum: eigenvalues must sum to n");
        }
    }

    int n() const { return static_cast<int>(lambdas_.size()); }
    std::span<const double> lambdas() const { return lambdas_; }

    /// G_01 = sum_i (lambda_i / n) omega_n^{-i}, the circulant Bargmann root.
    Complex root() const {
        const int m = n();
        Complex z{0.0, 0.0};
        for (int i = 0; i < m; ++i) z += (lambdas_[i] / m) * root_of_unity_power(m, -i);
        return z;
    }

  private:
    std::vector<double> lambdas_;
};

/// C_n^k, the k-th power of the cyclic permutation (0 1 ... n-1).
struct CyclicShift {
    int n;
    int k;

    CyclicShift(int order, int power) : n(require_order(order, 1, "CyclicShift")), k(((power % n) + n) % n) {}

    /// C^k G (C^k)^dagger, where C has ones on the superdiagonal (and at
    /// (n-1, 0)) so that G = sum_k g_k C^k for a circulant with first row g.
    /// Entry (a, b) <- G(a + k, b + k).
    Matrix conjugate(const Matrix& g) const {
        Matrix out(n, n);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) out(a, b) = g((a + k) % n, (b + k) % n);
        return out;
    }
};

/// Builds the circulant matrix whose (a, b) entry is first_row[(b - a) mod n].
inline Matrix circulant(std::span<const Complex> first_row) {
    const int n = static_cast<int>(first_row.size());
    Matrix g(n, n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) g(a, b) = first_row[((b - a) % n + n) % n];
    return g;
}

inline GramMatrix circulant_from_spectrum(const CirculantSpectrum& s) {
    const int n = s.n();
    const auto lambdas = s.lambdas();
    std::vector<Complex> row(n);
    for (int j = 0; j < n; ++j) {
        Complex g{0.0, 0.0};
        for (int i = 0; i < n; ++i) g += lambdas[i] * root_of_unity_power(n, -static_cast<long long>(i) * j);
        row[j] = g / static_cast<double>(n);
    }
    // The diagonal is 1 up to rounding of the eigenvalue sum; pin it.
    row[0] = {1.0, 0.0};
    return GramMatrix(circulant(row));
}

/// Eigenvalues of a circulant matrix, lambda_i = sum_j g_j omega_n^{ij},
/// in Fourier order (not sorted).
inline std::vector<Complex> circulant_eigenvalues(const Matrix& g) {
    const int n = static_cast<int>(g.rows());
    std::vector<Complex> out(n);
    for (int i = 0; i < n; ++i) {
        Complex l{0.0, 0.0};
        for (int j = 0; j < n; ++j) l += g(0, j) * root_of_unity_power(n, static_cast<long long>(i) * j);
        out[i] = l;
    }
    return out;
}

/// Largest deviation of g from the circulant matrix built on its first row.
inline double circulant_defect(const Matrix& g) {
    const int n = static_cast<int>(g.rows());
    double d = 0.0;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) d = std::max(d, std::abs(g(a, b) - g(0, ((b - a) % n + n) % n)));
    return d;
}

/// Mean of the cyclic overlaps G_01, G_12, ..., G_{n-1,0}.
inline Complex mean_cyclic_overlap(const GramMatrix& g) {
    const int n = g.n();
    Complex sum{0.0, 0.0};
    for (int k = 0; k < n; ++k) sum += g(k, (k + 1) % n);
    return sum / static_cast<double>(n);
}

/// (1/n) sum_k C^k G (C^k)^dagger. Entry (0, j) is accumulated over k in
/// increasing order, so the (0, 1) entry equals mean_cyclic_overlap bit for bit.
inline GramMatrix circulant_average(const GramMatrix& g) {
    const int n = g.n();
    std::vector<Complex> row(n);
    for (int j = 0; j < n; ++j) {
        Complex sum{0.0, 0.0};
        for (int k = 0; k < n; ++k) sum += g(k, (k + j) % n);
        row[j] = sum / static_cast<double>(n);
    }
    return GramMatrix(circulant(row));
}

/// Cyclic product G_01 G_12 ... G_{n-1,0}.
inline Complex invariant_from_gram(const GramMatrix& g) {
    const int n = g.n();
    Complex z{1.0, 0.0};
    for (int k = 0; k < n; ++k) z *= g(k, (k + 1) % n);
    return z;
}

/// Number of eigenvalues of a Hermitian matrix above cutoff.
inline int numerical_rank(const Matrix& g, double cutoff) {
    const Matrix h = 0.5 * (g + g.adjoint());
    const Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<Matrix>(h, Eigen::EigenvaluesOnly).eigenvalues();
    return static_cast<int>((ev.array() > cutoff).count());
}


/// Extracts unit vectors whose overlaps reproduce G: G = U L U^dagger and
/// vector i is column i of sqrt(L) U^dagger restricted to eigenvalues above
/// tol * n. The resulting dimension is the numerical rank of G.
inline StateTuple states_from_gram(const GramMatrix& g, double tol = 1e-10) {
    const int n = g.n();
    const Matrix h = 0.5 * (g.matrix() + g.matrix().adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    const Eigen::VectorXd& ev = es.eigenvalues();
    const double cutoff = tol * n;
    if (ev.minCoeff() < -cutoff) throw std::invalid_argument("states_from_gram: matrix is not PSD");

    std::vector<Eigen::Index> kept;
    for (Eigen::Index k = 0; k < ev.size(); ++k)
        if (ev[k] > cutoff) kept.push_back(k);

    const Matrix& u = es.eigenvectors();
    std::vector<Vector> vectors(n, Vector(static_cast<Eigen::Index>(kept.size())));
    for (int i = 0; i < n; ++i) {
        for (std::size_t r = 0; r < kept.size(); ++r) {
            const Eigen::Index k = kept[r];
            vectors[i][static_cast<Eigen::Index>(r)] = std::sqrt(ev[k]) * std::conj(u(i, k));
        }
    }
    return StateTuple::normalized(std::move(vectors));
}

}  // namespace bargmann
