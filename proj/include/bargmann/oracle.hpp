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

// Monte-Carlo oracle. Nothing here uses the analytic constructions in
// realize.hpp; it samples states and spectra directly and compares against
// the closed-form region.
//
// Randomness: every sampler takes an explicit 64-bit seed. Batches are split
// into fixed-size shards whose engines are seeded with mix_seed(seed, shard),
// so results do not depend on the number of worker threads.

#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <thread>
#include <vector>

#include "bargmann/core.hpp"
#include "bargmann/geometry.hpp"
#include "bargmann/gram.hpp"
#include "bargmann/states.hpp"

namespace bargmann {

/// SplitMix64 finalizer.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    return splitmix64(splitmix64(seed) ^ splitmix64(stream + 0x632be59bd9b4e019ULL));
}

using Engine = std::mt19937_64;

inline Engine make_engine(std::uint64_t seed, std::uint64_t stream = 0) { return Engine(mix_seed(seed, stream)); }

template <typename URBG>
Vector haar_vector(int d, URBG& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    for (;;) {
        Vector v(d);
        for (int i = 0; i < d; ++i) v[i] = Complex(normal(rng), normal(rng));
        const double norm = v.norm();
        if (norm > 0.0) return v / norm;
    }
}

template <typename URBG>
StateTuple haar_tuple(int n, int d, URBG& rng) {
    require_order(n, 1, "haar_tuple");
    if (d < 1) throw std::invalid_argument("haar_tuple: dimension must be positive");
    std::vector<Vector> vs;
    vs.reserve(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) vs.push_back(haar_vector(d, rng));
    return StateTuple(std::move(vs));
}

/// n independent Haar-random unit vectors in C^d, reproducible from seed.
inline StateTuple haar_tuple(int n, int d, std::uint64_t seed) {
    Engine rng = make_engine(seed);
    return haar_tuple(n, d, rng);
}

/// Haar-random d x d unitary (QR of a complex Ginibre matrix with the
/// phases of R's diagonal absorbed).
template <typename URBG>
Matrix haar_unitary(int d, URBG& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Matrix z(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) z(i, j) = Complex(normal(rng), normal(rng));
    Eigen::HouseholderQR<Matrix> qr(z);
    Matrix q = qr.householderQ();
    const Matrix r = qr.matrixQR();
    for (int j = 0; j < d; ++j) {
        const Complex diag = r(j, j);
        q.col(j) *= std::abs(diag) > 0.0 ? diag / std::abs(diag) : Complex(1.0, 0.0);
    }
    return q;
}

template <typename URBG>
CirculantSpectrum spectrum_sample(int n, URBG& rng) {
    require_order(n, 1, "spectrum_sample");
    std::exponential_distribution<double> expo(1.0);
    std::vector<double> l(static_cast<std::size_t>(n));
    double sum = 0.0;
    for (auto& x : l) sum += (x = expo(rng));
    for (auto& x : l) x *= n / sum;
    return CirculantSpectrum(std::move(l));
}

/// Uniform sample from { lambda >= 0, sum lambda = n } by normalized exponentials.
inline CirculantSpectrum spectrum_sample(int n, std::uint64_t seed) {
    Engine rng = make_engine(seed);
    return spectrum_sample(n, rng);
}

/// Uniform point of the unit disk accepted by region_contains at tol.
/// With interior_only, points classified as boundary are rejected too.
template <typename URBG>
Complex rejection_target(int n, URBG& rng, bool interior_only = false, double tol = default_tol) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (;;) {
        const Complex z(u(rng), u(rng));
        if (std::norm(z) > 1.0) continue;
        const auto c = region_contains(z, n, tol).classification;
        if (c == Classification::interior || (!interior_only && c != Classification::outside)) return z;
    }
}

namespace detail {

/// Runs fn(shard) for shard in [0, shards) across hardware threads.
inline void for_each_shard(std::size_t shards, const std::function<void(std::size_t)>& fn) {
    const std::size_t workers =
        std::min<std::size_t>(shards, std::max(1u, std::thread::hardware_concurrency()));
    if (workers <= 1) {
        for (std::size_t s = 0; s < shards; ++s) fn(s);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t s = next++; s < shards; s = next++) fn(s);
        });
    }
}

inline constexpr std::size_t shard_size = 4096;

}  // namespace detail

struct SampleReport {
    int n = 0;
    int d = 0;
    long long count = 0;
    long long violations = 0;
    /// Smallest region_contains margin seen (negative means outside).
    double worst_margin = std::numeric_limits<double>::infinity();
    std::uint64_t seed = 0;
};

/// Samples count Haar tuples of n states in C^d and counts invariants that
/// region_contains places outside B_n. Sampled values are appended to
/// deltas (in sample order) when it is non-null.
inline SampleReport region_closure_test(int n, int d, long long count, std::uint64_t seed,
                                        double tol = default_tol, std::vector<Complex>* deltas = nullptr) {
    require_order(n, 1, "region_closure_test");
    if (count < 1) throw std::invalid_argument("region_closure_test: count must be positive");
    if (d < 1) throw std::invalid_argument("region_closure_test: dimension must be positive");

    const std::size_t total = static_cast<std::size_t>(count);
    const std::size_t shards = (total + detail::shard_size - 1) / detail::shard_size;
    struct Partial {
        long long violations = 0;
        double worst = std::numeric_limits<double>::infinity();
        std::vector<Complex> values;
    };
    std::vector<Partial> parts(shards);

    detail::for_each_shard(shards, [&](std::size_t s) {
        Engine rng = make_engine(seed, s);
        const std::size_t begin = s * detail::shard_size;
        const std::size_t end = std::min(total, begin + detail::shard_size);
        Partial& p = parts[s];
        if (deltas) p.values.reserve(end - begin);
        for (std::size_t i = begin; i < end; ++i) {
            const Complex delta = bargmann_invariant(haar_tuple(n, d, rng));
            const MembershipVerdict v = region_contains(delta, n, tol);
            if (!v.contained()) ++p.violations;
            p.worst = std::min(p.worst, v.margin);
            if (deltas) p.values.push_back(delta);
        }
    });

    SampleReport report{n, d, count, 0, std::numeric_limits<double>::infinity(), seed};
    for (auto& p : parts) {
        report.violations += p.violations;
        report.worst_margin = std::min(report.worst_margin, p.worst);
        if (deltas) deltas->insert(deltas->end(), p.values.begin(), p.values.end());
    }
    return report;
}

struct Point2 {
    double x, y;
};

/// Convex hull (counter-clockwise, no collinear points) by monotone chain.
inline std::vector<Point2> convex_hull(std::vector<Point2> pts) {
    std::sort(pts.begin(), pts.end(), [](const Point2& a, const Point2& b) {
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    });
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](const Point2& a, const Point2& b) { return a.x == b.x && a.y == b.y; }),
              pts.end());
    if (pts.size() < 3) return pts;
    auto cross = [](const Point2& o, const Point2& a, const Point2& b) {
        return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
    };
    std::vector<Point2> h(2 * pts.size());
    std::size_t k = 0;
    for (const auto& p : pts) {
        while (k >= 2 && cross(h[k - 2], h[k - 1], p) <= 0) --k;
        h[k++] = p;
    }
    for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
        while (k >= t && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
        h[k++] = pts[i];
    }
    h.resize(k - 1);
    return h;
}

/// Euclidean distance from p to a convex polygon given counter-clockwise;
/// 0 inside.
inline double distance_to_polygon(const Point2& p, const std::vector<Point2>& poly) {
    const std::size_t m = poly.size();
    if (m == 0) return std::numeric_limits<double>::infinity();
    if (m == 1) return std::hypot(p.x - poly[0].x, p.y - poly[0].y);
    bool inside = m >= 3;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m; ++i) {
        const Point2& a = poly[i];
        const Point2& b = poly[(i + 1) % m];
        const double ex = b.x - a.x, ey = b.y - a.y;
        if (ex * (p.y - a.y) - ey * (p.x - a.x) < 0) inside = false;
        const double len2 = ex * ex + ey * ey;
        const double t = len2 > 0 ? std::clamp(((p.x - a.x) * ex + (p.y - a.y) * ey) / len2, 0.0, 1.0) : 0.0;
        best = std::min(best, std::hypot(a.x + t * ex - p.x, a.y + t * ey - p.y));
    }
    return inside ? 0.0 : best;
}

/// Gap between the hull of the circulant roots of the given spectra and
/// P_n: max distance of a hull vertex to P_n plus max distance of a P_n
/// vertex to the hull.
inline double hull_gap(int n, std::span<const CirculantSpectrum> spectra) {
    require_order(n, 3, "hull_gap");
    std::vector<Point2> pts;
    pts.reserve(spectra.size());
    for (const auto& s : spectra) {
        if (s.n() != n) throw std::invalid_argument("hull_gap: spectrum order mismatch");
        const Complex z = s.root();
        pts.push_back({z.real(), z.imag()});
    }
    const std::vector<Point2> hull = convex_hull(std::move(pts));

    std::vector<Point2> polygon;
    for (const Complex& w : NGon::make(n).vertices) polygon.push_back({w.real(), w.imag()});

    double outward = 0.0;
    for (const auto& h : hull) outward = std::max(outward, distance_to_polygon(h, polygon));
    double inward = 0.0;
    for (const auto& v : polygon) inward = std::max(inward, distance_to_polygon(v, hull));
    return outward + inward;
}

/// hull_gap over count spectra drawn with spectrum_sample.
inline double hull_gap(int n, long long count, std::uint64_t seed) {
    require_order(n, 3, "hull_gap");
    if (count < 1) throw std::invalid_argument("hull_gap: count must be positive");
    std::vector<CirculantSpectrum> spectra;
    spectra.reserve(static_cast<std::size_t>(count));
    Engine rng = make_engine(seed);
    for (long long i = 0; i < count; ++i) spectra.push_back(spectrum_sample(n, rng));
    return hull_gap(n, spectra);
}

/// Per-argument-bin extremes of circulant invariants (eigenvalue spectra
/// from spectrum_sample) against boundary_radius.
struct RadialBin {
    double lo, hi;
    long long samples = 0;
    /// Largest |Delta| in the bin.
    double max_modulus = 0.0;
    /// boundary_radius at the argument of that sample.
    double radius_at_max = 0.0;
    /// Largest |Delta| - boundary_radius(arg Delta) in the bin.
    double max_excess = -std::numeric_limits<double>::infinity();
};

inline std::vector<RadialBin> circulant_radial_profile(int n, long long count, std::uint64_t seed, int bins) {
    require_order(n, 3, "circulant_radial_profile");
    std::vector<RadialBin> out(static_cast<std::size_t>(bins));
    for (int b = 0; b < bins; ++b) {
        out[b].lo = -pi + two_pi * b / bins;
        out[b].hi = -pi + two_pi * (b + 1) / bins;
    }
    Engine rng = make_engine(seed);
    for (long long i = 0; i < count; ++i) {
        const Complex delta = std::pow(spectrum_sample(n, rng).root(), n);
        const double phi = wrap_angle(std::arg(delta));
        const int b = std::clamp(static_cast<int>((phi + pi) / two_pi * bins), 0, bins - 1);
        RadialBin& bin = out[b];
        const double m = std::abs(delta);
        const double r = boundary_radius(phi, n);
        ++bin.samples;
        bin.max_excess = std::max(bin.max_excess, m - r);
        if (m > bin.max_modulus) {
            bin.max_modulus = m;
            bin.radius_at_max = r;
        }
    }
    return out;
}

}  // namespace bargmann
