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

// Command implementations behind the `bargmann` executable.
//
// Exit codes: 0 success, 1 domain-negative result (outside the region,
// sampling violations, failed verification), 2 usage or parse error.

#pragma once

#include <charconv>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bargmann/geometry.hpp"
#include "bargmann/gram.hpp"
#include "bargmann/io.hpp"
#include "bargmann/oracle.hpp"
#include "bargmann/realize.hpp"
#include "bargmann/states.hpp"

namespace bargmann::cli {

enum ExitCode : int { ok = 0, negative = 1, usage = 2 };

using io::json;

inline double region_radius_at(Complex delta, int n) {
    if (n < 3) return n == 1 ? 1.0 : (delta.real() >= 0.0 && delta.imag() == 0.0 ? 1.0 : 0.0);
    return boundary_radius(std::abs(delta) == 0.0 ? 0.0 : std::arg(delta), n);
}

inline int cmd_check(int n, Complex delta, double tol, std::ostream& out, std::ostream& err) {
    if (n < 1) {
        err << "check: order must be at least 1\n";
        return usage;
    }
    if (!(tol > 0.0)) {
        err << "check: tolerance must be positive\n";
        return usage;
    }
    const MembershipVerdict v = region_contains(delta, n, tol);
    json j{{"n", n},
           {"target", io::to_json(delta)},
           {"classification", std::string(to_string(v.classification))},
           {"margin", v.margin},
           {"boundaryRadiusAtArg", region_radius_at(delta, n)}};
    out << j.dump(2) << '\n';
    return v.contained() ? ok : negative;
}

inline double residual_threshold(io::WitnessForm form) {
    return io::is_circulant_form(form) ? 1e-9 : 1e-6;
}

inline int cmd_realize(int n, Complex delta, io::WitnessForm form, double tol, std::ostream& out,
                       std::ostream& err) {
    if (n < 3) {
        err << "realize: witnesses are synthesized for n >= 3\n";
        return usage;
    }
    const MembershipVerdict v = region_contains(delta, n, tol);
    if (!v.contained()) {
        err << "realize: target is outside B_" << n << "; boundary radius at its argument is "
            << io::format_number(region_radius_at(delta, n)) << '\n';
        return negative;
    }

    try {
        std::optional<StateTuple> tuple;
        switch (form) {
            case io::WitnessForm::qutrit_circulant:
                tuple = realize_qutrit_circulant(delta, n, tol).tuple;
                break;
            case io::WitnessForm::qubit_boundary:
                if (v.classification != Classification::boundary) {
                    err << "realize: qubit-boundary needs a target on the boundary (margin "
                        << io::format_number(v.margin) << ")\n";
                    return negative;
                }
                tuple = realize_qubit_boundary(std::abs(delta) == 0.0 ? 0.0 : std::arg(delta), n).tuple;
                break;
            case io::WitnessForm::qubit_general:
                tuple = realize_qubit_general(delta, n, tol).tuple;
                break;
        }
        const double residual = std::abs(bargmann_invariant(*tuple) - delta);
        out << io::witness_to_json(delta, n, form, *tuple, residual).dump(2) << '\n';
        if (residual > residual_threshold(form)) {
            err << "realize: residual " << io::format_number(residual) << " exceeds "
                << io::format_number(residual_threshold(form)) << '\n';
            return negative;
        }
        return ok;
    } catch (const not_realizable& e) {
        err << "realize: " << e.what() << '\n';
        return negative;
    } catch (const solver_failed& e) {
        err << "realize: " << e.what() << " (best residual " << io::format_number(e.residual) << ")\n";
        return negative;
    }
}

/// Parses "2,1,0" into indices.
inline std::optional<std::vector<int>> parse_order(const std::string& s) {
    std::vector<int> order;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        int x = 0;
        const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), x);
        if (ec != std::errc() || ptr != item.data() + item.size()) return std::nullopt;
        order.push_back(x);
    }
    return order;
}

inline int cmd_invariant(const std::string& text, const std::optional<std::vector<int>>& order, std::ostream& out,
                         std::ostream& err) {
    try {
        const io::RawTuple raw = io::raw_tuple_from_json(io::parse_json(text));
        const io::Tuple tuple = io::validate(raw);
        const int n = raw.n;
        std::vector<int> idx(static_cast<std::size_t>(n));
        std::iota(idx.begin(), idx.end(), 0);
        if (order) idx = *order;

        Complex delta;
        if (const auto* pure = std::get_if<StateTuple>(&tuple)) {
            delta = bargmann_invariant(*pure, idx);
        } else {
            const auto& mixed = std::get<MixedTuple>(tuple);
            require_permutation(idx, n);
            std::vector<Matrix> ms;
            for (int i : idx) ms.push_back(mixed[i]);
            delta = multivariate_trace(MixedTuple(std::move(ms)));
        }
        const double m = std::abs(delta);
        json j{{"delta", io::to_json(delta)}, {"probability", m * m}};
        j["phase"] = m > 1e-12 ? json(std::arg(delta)) : json(nullptr);
        out << j.dump(2) << '\n';
        return ok;
    } catch (const std::exception& e) {
        err << "invariant: " << e.what() << '\n';
        return usage;
    }
}

inline int cmd_boundary(int n, int samples, const std::string& format, std::ostream& out, std::ostream& err) {
    if (n < 3 || samples < 3) {
        err << "boundary: need n >= 3 and samples >= 3\n";
        return usage;
    }
    const auto pts = io::boundary_samples(n, samples);
    if (format == "csv") {
        io::write_boundary_csv(out, pts);
    } else if (format == "svg") {
        io::write_boundary_svg(out, n, pts);
    } else {
        err << "boundary: unknown format '" << format << "' (csv or svg)\n";
        return usage;
    }
    return ok;
}

inline json report_to_json(const SampleReport& r) {
    return json{{"n", r.n},
                {"d", r.d},
                {"count", r.count},
                {"violations", r.violations},
                {"worstMargin", r.worst_margin},
                {"seed", r.seed}};
}

inline int cmd_sample(int n, int d, long long count, std::uint64_t seed, double tol, std::ostream& out,
                      std::ostream* csv, std::ostream& err) {
    if (n < 1 || d < 1 || count < 1) {
        err << "sample: n, d and count must be positive\n";
        return usage;
    }
    std::vector<Complex> deltas;
    const SampleReport r = region_closure_test(n, d, count, seed, tol, csv ? &deltas : nullptr);
    out << report_to_json(r).dump(2) << '\n';
    if (csv) {
        *csv << "delta_re,delta_im\n";
        for (const auto& z : deltas) *csv << io::format_number(z.real()) << ',' << io::format_number(z.imag()) << '\n';
    }
    return r.violations > 0 ? negative : ok;
}

/// Recomputes the invariant of a witness and checks it against the target.
/// tol <= 0 selects the per-form default (1e-9 circulant, 1e-6 general).
inline int cmd_verify(const std::string& text, double tol, std::ostream& out, std::ostream& err) {
    io::WitnessFile w;
    try {
        w = io::witness_from_json(io::parse_json(text));
    } catch (const std::exception& e) {
        err << "verify: " << e.what() << '\n';
        return usage;
    }
    const double threshold = tol > 0.0 ? tol : residual_threshold(w.form);
    json report{{"form", std::string(io::to_string(w.form))}, {"n", w.n}, {"threshold", threshold}};
    std::vector<std::string> failures;

    const auto& vs = w.tuple.vectors();
    double norm_defect = 0.0;
    for (const auto& v : vs) norm_defect = std::max(norm_defect, std::abs(v.norm() - 1.0));
    report["normDefect"] = norm_defect;
    if (norm_defect > StateTuple::norm_tol) failures.push_back("vector norms deviate from 1");
    if (w.tuple.n != w.n) failures.push_back("tuple length differs from n");

    Complex delta{1.0, 0.0};
    for (std::size_t k = 0; k < vs.size(); ++k) delta *= vs[k].dot(vs[(k + 1) % vs.size()]);
    const double residual = std::abs(delta - w.target);
    report["recomputed"] = io::to_json(delta);
    report["residual"] = residual;
    if (residual > threshold) failures.push_back("recomputed invariant differs from target");

    if (io::is_circulant_form(w.form)) {
        const int n = static_cast<int>(vs.size());
        Matrix g(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) g(i, j) = vs[static_cast<std::size_t>(i)].dot(vs[static_cast<std::size_t>(j)]);
        const double defect = circulant_defect(g);
        const GramReport gr = validate_gram(g, 1e-10);
        report["circulantDefect"] = defect;
        report["minEigenvalue"] = gr.min_eigenvalue;
        if (defect > 1e-10) failures.push_back("Gram matrix is not circulant");
        if (!gr.passed) failures.push_back("Gram matrix is not a normalized PSD matrix");
    }

    report["passed"] = failures.empty();
    report["failures"] = failures;
    out << report.dump(2) << '\n';
    if (!failures.empty()) {
        err << "verify: failed with residual " << io::format_number(residual) << '\n';
        return negative;
    }
    return ok;
}

namespace detail {

inline std::optional<std::string> read_input(const std::string& path, std::ostream& err) {
    std::stringstream buf;
    if (path == "-") {
        buf << std::cin.rdbuf();
    } else {
        std::ifstream in(path);
        if (!in) {
            err << "cannot open " << path << '\n';
            return std::nullopt;
        }
        buf << in.rdbuf();
    }
    return buf.str();
}

/// Validator for numbers parsed with from_chars rather than the C locale.
inline double number_or_throw(const std::string& s, const char* what) {
    const auto x = io::parse_number(s);
    if (!x) throw CLI::ValidationError(what, "not a number: " + s);
    return *x;
}

}  // namespace detail

/// Entry point shared by the executable and the tests. args excludes argv[0].
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Bargmann invariant toolkit: membership, witnesses, sampling", "bargmann"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string tol_s = "1e-9";
    std::uint64_t seed = 0;
    bool seed_set = false;
    std::string out_path;
    std::string format = "csv";
    app.add_option("--tol", tol_s, "Tolerance");
    app.add_option_function<std::uint64_t>("--seed", [&](const std::uint64_t& s) { seed = s; seed_set = true; },
                                           "Random seed");
    app.add_option("--out", out_path, "Write the primary output to a file");
    app.add_option("--format", format, "Output format for boundary (csv|svg)");

    int n = 0;
    std::string re_s, im_s;

    auto* check = app.add_subcommand("check", "Classify a complex number against B_n");
    check->add_option("n", n)->required();
    check->add_option("re", re_s)->required();
    check->add_option("im", im_s)->required();

    std::string form_s = "qutrit-circulant";
    auto* realize = app.add_subcommand("realize", "Synthesize a witness tuple for a target invariant");
    realize->add_option("n", n)->required();
    realize->add_option("re", re_s)->required();
    realize->add_option("im", im_s)->required();
    realize->add_option("--form", form_s, "qutrit-circulant | qubit-boundary | qubit-general");

    std::string file;
    std::string order_s;
    auto* invariant = app.add_subcommand("invariant", "Evaluate the invariant of a tuple file");
    invariant->add_option("file", file, "Tuple file ('-' for stdin)")->required();
    invariant->add_option("--order", order_s, "Cyclic order as comma-separated 0-based indices");

    int samples = 0;
    auto* boundary = app.add_subcommand("boundary", "Export the boundary of B_n");
    boundary->add_option("n", n)->required();
    boundary->add_option("samples", samples)->required();
    boundary->add_option("format", format, "csv | svg");

    int d = 0;
    long long count = 0;
    std::string csv_path;
    auto* sample = app.add_subcommand("sample", "Haar sampling campaign against B_n");
    sample->add_option("n", n)->required();
    sample->add_option("d", d)->required();
    sample->add_option("count", count)->required();
    sample->add_option_function<std::uint64_t>("seed", [&](const std::uint64_t& s) { seed = s; seed_set = true; });
    sample->add_option("--csv", csv_path, "Dump sampled invariants as CSV");

    bool tol_given = false;
    auto* verify = app.add_subcommand("verify", "Re-check a witness file");
    verify->add_option("file", file, "Witness file ('-' for stdin)")->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
        tol_given = app.count("--tol") > 0;
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return ok;
    } catch (const CLI::ParseError& e) {
        err << e.what() << '\n';
        return usage;
    }

    double tol = 0.0;
    Complex target;
    try {
        tol = detail::number_or_throw(tol_s, "--tol");
        if (check->parsed() || realize->parsed()) {
            target = {detail::number_or_throw(re_s, "re"), detail::number_or_throw(im_s, "im")};
        }
    } catch (const CLI::ValidationError& e) {
        err << e.what() << '\n';
        return usage;
    }

    std::ofstream file_out;
    if (!out_path.empty()) {
        file_out.open(out_path);
        if (!file_out) {
            err << "cannot write " << out_path << '\n';
            return usage;
        }
    }
    std::ostream& primary = out_path.empty() ? out : file_out;

    if (check->parsed()) return cmd_check(n, target, tol, primary, err);
    if (realize->parsed()) {
        const auto form = io::parse_form(form_s);
        if (!form) {
            err << "realize: unknown form '" << form_s << "'\n";
            return usage;
        }
        return cmd_realize(n, target, *form, tol, primary, err);
    }
    if (invariant->parsed()) {
        std::optional<std::vector<int>> order;
        if (!order_s.empty()) {
            order = parse_order(order_s);
            if (!order) {
                err << "invariant: malformed --order\n";
                return usage;
            }
        }
        const auto text = detail::read_input(file, err);
        if (!text) return usage;
        return cmd_invariant(*text, order, primary, err);
    }
    if (boundary->parsed()) return cmd_boundary(n, samples, format, primary, err);
    if (sample->parsed()) {
        if (!seed_set) seed = 0;
        std::ofstream csv;
        if (!csv_path.empty()) {
            csv.open(csv_path);
            if (!csv) {
                err << "cannot write " << csv_path << '\n';
                return usage;
            }
        }
        return cmd_sample(n, d, count, seed, tol, primary, csv_path.empty() ? nullptr : &csv, err);
    }
    if (verify->parsed()) {
        const auto text = detail::read_input(file, err);
        if (!text) return usage;
        return cmd_verify(*text, tol_given ? tol : 0.0, primary, err);
    }
    return usage;
}

}  // namespace bargmann::cli
