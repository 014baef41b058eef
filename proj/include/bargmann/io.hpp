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

// File formats.
//
// TupleFile (JSON):
//   { "n": 3, "d": 2, "vectors": [ [[re, im], [re, im]], ... ] }
//   { "n": 3, "d": 2, "mixed":   [ [ [[re, im], [re, im]], [[re, im], [re, im]] ], ... ] }
// exactly one of "vectors" / "mixed" is present; mixed entries are d x d
// matrices stored row by row.
//
// WitnessFile (JSON):
//   { "target": [re, im], "n": 5, "form": "qutrit-circulant",
//     "tuple": <TupleFile>, "residual": 1.2e-16, "seed": 42 }
//
// Boundary CSV: header theta,root_re,root_im,delta_re,delta_im, numbers
// printed with 17 significant digits.

#pragma once

#include <charconv>
#include <cstdio>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "bargmann/core.hpp"
#include "bargmann/geometry.hpp"
#include "bargmann/state_tuple.hpp"
#include "bargmann/states.hpp"

namespace bargmann::io {

using nlohmann::json;

/// Schema or syntax problem in an input file.
struct format_error : std::runtime_error {
    explicit format_error(const std::string& what) : std::runtime_error(what) {}
};

/// Formats with 17 significant digits ("%.17g"), independent of locale.
inline std::string format_number(double x) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

/// Locale-independent parse of the whole string; nullopt on any junk.
inline std::optional<double> parse_number(std::string_view s) {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    double x = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
    return x;
}

inline json to_json(Complex z) { return json::array({z.real(), z.imag()}); }

inline Complex complex_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw format_error("expected a [re, im] pair, got " + j.dump());
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

/// A tuple file as read from disk, before any norm or trace validation.
struct RawTuple {
    int n = 0;
    int d = 0;
    std::variant<std::vector<Vector>, std::vector<Matrix>> payload;

    bool is_pure() const { return std::holds_alternative<std::vector<Vector>>(payload); }
    const std::vector<Vector>& vectors() const { return std::get<std::vector<Vector>>(payload); }
    const std::vector<Matrix>& matrices() const { return std::get<std::vector<Matrix>>(payload); }
};

inline json tuple_to_json(const StateTuple& v) {
    json vecs = json::array();
    for (const auto& x : v.vectors()) {
        json row = json::array();
        for (Eigen::Index i = 0; i < x.size(); ++i) row.push_back(to_json(x[i]));
        vecs.push_back(std::move(row));
    }
    return json{{"n", v.n()}, {"d", v.d()}, {"vectors", std::move(vecs)}};
}

inline json tuple_to_json(const MixedTuple& r) {
    json mats = json::array();
    for (const auto& m : r.matrices()) {
        json rows = json::array();
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            json row = json::array();
            for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
            rows.push_back(std::move(row));
        }
        mats.push_back(std::move(rows));
    }
    return json{{"n", r.n()}, {"d", r.d()}, {"mixed", std::move(mats)}};
}

inline RawTuple raw_tuple_from_json(const json& j) {
    if (!j.is_object()) throw format_error("tuple file must be a JSON object");
    if (!j.contains("n") || !j["n"].is_number_integer()) throw format_error("tuple file: missing integer \"n\"");
    if (!j.contains("d") || !j["d"].is_number_integer()) throw format_error("tuple file: missing integer \"d\"");
    const bool has_vectors = j.contains("vectors");
    const bool has_mixed = j.contains("mixed");
    if (has_vectors == has_mixed) throw format_error("tuple file: exactly one of \"vectors\" or \"mixed\" is required");

    RawTuple t;
    t.n = j["n"].get<int>();
    t.d = j["d"].get<int>();
    if (t.n < 1 || t.d < 1) throw format_error("tuple file: n and d must be positive");

    const json& items = has_vectors ? j["vectors"] : j["mixed"];
    if (!items.is_array() || static_cast<int>(items.size()) != t.n) {
        throw format_error("tuple file: expected " + std::to_string(t.n) + " entries");
    }
    auto read_row = [&](const json& row) {
        if (!row.is_array() || static_cast<int>(row.size()) != t.d) {
            throw format_error("tuple file: expected rows of length " + std::to_string(t.d));
        }
        Vector v(t.d);
        for (int i = 0; i < t.d; ++i) v[i] = complex_from_json(row[static_cast<std::size_t>(i)]);
        return v;
    };
    if (has_vectors) {
        std::vector<Vector> vs;
        for (const auto& row : items) vs.push_back(read_row(row));
        t.payload = std::move(vs);
    } else {
        std::vector<Matrix> ms;
        for (const auto& m : items) {
            if (!m.is_array() || static_cast<int>(m.size()) != t.d) {
                throw format_error("tuple file: density matrices must have d rows");
            }
            Matrix mat(t.d, t.d);
            for (int r = 0; r < t.d; ++r) mat.row(r) = read_row(m[static_cast<std::size_t>(r)]).transpose();
            ms.push_back(std::move(mat));
        }
        t.payload = std::move(ms);
    }
    return t;
}

/// Validated tuple: a StateTuple for pure files, a MixedTuple for mixed ones.
using Tuple = std::variant<StateTuple, MixedTuple>;

inline Tuple validate(const RawTuple& t) {
    if (t.is_pure()) return StateTuple(t.vectors());
    return MixedTuple(t.matrices());
}

enum class WitnessForm { qutrit_circulant, qubit_boundary, qubit_general };

constexpr std::string_view to_string(WitnessForm f) {
    switch (f) {
        case WitnessForm::qutrit_circulant: return "qutrit-circulant";
        case WitnessForm::qubit_boundary: return "qubit-boundary";
        case WitnessForm::qubit_general: return "qubit-general";
    }
    return "unknown";
}

inline std::optional<WitnessForm> parse_form(std::string_view s) {
    for (auto f : {WitnessForm::qutrit_circulant, WitnessForm::qubit_boundary, WitnessForm::qubit_general}) {
        if (s == to_string(f)) return f;
    }
    return std::nullopt;
}

inline bool is_circulant_form(WitnessForm f) { return f != WitnessForm::qubit_general; }

struct WitnessFile {
    Complex target;
    int n = 0;
    WitnessForm form = WitnessForm::qutrit_circulant;
    RawTuple tuple;
    double residual = 0.0;
    std::optional<std::uint64_t> seed;
};

inline json witness_to_json(Complex target, int n, WitnessForm form, const StateTuple& tuple, double residual,
                            std::optional<std::uint64_t> seed = std::nullopt) {
    json j{{"target", to_json(target)},
           {"n", n},
           {"form", std::string(to_string(form))},
           {"tuple", tuple_to_json(tuple)},
           {"residual", residual}};
    if (seed) j["seed"] = *seed;
    return j;
}

inline WitnessFile witness_from_json(const json& j) {
    if (!j.is_object()) throw format_error("witness file must be a JSON object");
    for (const char* key : {"target", "n", "form", "tuple", "residual"}) {
        if (!j.contains(key)) throw format_error(std::string("witness file: missing \"") + key + "\"");
    }
    WitnessFile w;
    w.target = complex_from_json(j["target"]);
    if (!j["n"].is_number_integer()) throw format_error("witness file: \"n\" must be an integer");
    w.n = j["n"].get<int>();
    if (!j["form"].is_string()) throw format_error("witness file: \"form\" must be a string");
    const auto form = parse_form(j["form"].get<std::string>());
    if (!form) throw format_error("witness file: unknown form " + j["form"].dump());
    w.form = *form;
    w.tuple = raw_tuple_from_json(j["tuple"]);
    if (!w.tuple.is_pure()) throw format_error("witness file: tuple must hold pure states");
    if (!j["residual"].is_number()) throw format_error("witness file: \"residual\" must be a number");
    w.residual = j["residual"].get<double>();
    if (j.contains("seed") && !j["seed"].is_null()) w.seed = j["seed"].get<std::uint64_t>();
    return w;
}

inline json parse_json(std::string_view text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw format_error(std::string("malformed JSON: ") + e.what());
    }
}

// ---------------------------------------------------------------------------
// Boundary export

struct BoundarySample {
    double theta;
    Complex root;
    Complex delta;
};

/// samples points with theta uniform on [-pi, pi] (both endpoints included).
inline std::vector<BoundarySample> boundary_samples(int n, int samples) {
    require_order(n, 3, "boundary_samples");
    if (samples < 3) throw std::invalid_argument("boundary export needs at least 3 samples");
    const BoundaryCurve curve = BoundaryCurve::make(n);
    std::vector<BoundarySample> out;
    out.reserve(static_cast<std::size_t>(samples));
    for (int k = 0; k < samples; ++k) {
        const double theta = k == samples - 1 ? pi : -pi + two_pi * k / (samples - 1);
        const Complex z = curve.root(theta);
        out.push_back({theta, z, std::pow(z, n)});
    }
    return out;
}

inline void write_boundary_csv(std::ostream& os, const std::vector<BoundarySample>& pts) {
    os << "theta,root_re,root_im,delta_re,delta_im\n";
    for (const auto& p : pts) {
        os << format_number(p.theta) << ',' << format_number(p.root.real()) << ',' << format_number(p.root.imag())
           << ',' << format_number(p.delta.real()) << ',' << format_number(p.delta.imag()) << '\n';
    }
}

/// Static figure: unit circle, the n-gon and the boundary of B_n. The
/// complex plane is mapped with y pointing up.
inline void write_boundary_svg(std::ostream& os, int n, const std::vector<BoundarySample>& pts) {
    constexpr double size = 480.0;
    constexpr double scale = 200.0;
    const double c = size / 2.0;
    auto px = [&](Complex z) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.6f %.6f", c + scale * z.real(), c - scale * z.imag());
        return std::string(buf);
    };

    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size
       << "\" viewBox=\"0 0 " << size << ' ' << size << "\">\n"
       << "  <title>Bargmann invariants of order " << n << "</title>\n"
       << "  <line x1=\"0\" y1=\"" << c << "\" x2=\"" << size << "\" y2=\"" << c
       << "\" stroke=\"#bbbbbb\" stroke-width=\"0.5\"/>\n"
       << "  <line x1=\"" << c << "\" y1=\"0\" x2=\"" << c << "\" y2=\"" << size
       << "\" stroke=\"#bbbbbb\" stroke-width=\"0.5\"/>\n"
       << "  <circle id=\"unit-circle\" cx=\"" << c << "\" cy=\"" << c << "\" r=\"" << scale
       << "\" fill=\"none\" stroke=\"#888888\" stroke-dasharray=\"4 3\"/>\n";

    os << "  <path id=\"ngon\" d=\"";
    for (int k = 0; k < n; ++k) os << (k == 0 ? "M " : " L ") << px(root_of_unity_power(n, k));
    os << " Z\" fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\"/>\n";

    os << "  <path id=\"region\" d=\"";
    for (std::size_t k = 0; k < pts.size(); ++k) os << (k == 0 ? "M " : " L ") << px(pts[k].delta);
    os << " Z\" fill=\"#d62728\" fill-opacity=\"0.2\" stroke=\"#d62728\" stroke-width=\"1.5\"/>\n";
    os << "</svg>\n";
}

}  // namespace bargmann::io
