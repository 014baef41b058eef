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

#include "bargmann/cli.hpp"

#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include "bargmann/oracle.hpp"
#include "gtest/gtest.h"

using namespace bargmann;
using io::json;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string tuple_text(const StateTuple& t) { return io::tuple_to_json(t).dump(); }

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        std::vector<std::string> cells;
        std::stringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

}  // namespace

TEST(number_format, seventeen_digits_round_trip) {
    Engine rng = make_engine(61);
    std::uniform_real_distribution<double> u(-1e3, 1e3);
    for (int i = 0; i < 10000; ++i) {
        const double x = u(rng) * std::pow(10.0, i % 20 - 10);
        const auto back = io::parse_number(io::format_number(x));
        ASSERT_TRUE(back.has_value());
        EXPECT_EQ(*back, x);
    }
    EXPECT_FALSE(io::parse_number("1.5abc").has_value());
    EXPECT_FALSE(io::parse_number("").has_value());
    EXPECT_EQ(*io::parse_number("-0.125"), -0.125);
}

namespace {

struct comma_decimal : std::numpunct<char> {
    char do_decimal_point() const override { return ','; }
};

}  // namespace

TEST(number_format, ignores_global_cpp_locale) {
    const std::locale saved = std::locale::global(std::locale(std::locale::classic(), new comma_decimal));
    EXPECT_EQ(io::format_number(0.5), "0.5");
    EXPECT_EQ(*io::parse_number("0.25"), 0.25);
    const auto r = run({"check", "3", "-0.125", "0"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("0.125"), std::string::npos);
    std::locale::global(saved);
}

TEST(tuple_json, round_trip_is_exact) {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const StateTuple t = haar_tuple(2 + static_cast<int>(seed % 5), 1 + static_cast<int>(seed % 4), seed);
        const io::RawTuple raw = io::raw_tuple_from_json(io::parse_json(tuple_text(t)));
        ASSERT_TRUE(raw.is_pure());
        ASSERT_EQ(raw.n, t.n());
        ASSERT_EQ(raw.d, t.d());
        for (int k = 0; k < t.n(); ++k) EXPECT_EQ(raw.vectors()[static_cast<std::size_t>(k)], t[k]);
    }
    const MixedTuple m = MixedTuple::projectors(haar_tuple(3, 2, 5));
    const io::RawTuple raw = io::raw_tuple_from_json(io::tuple_to_json(m));
    ASSERT_FALSE(raw.is_pure());
    for (int k = 0; k < 3; ++k) EXPECT_EQ(raw.matrices()[static_cast<std::size_t>(k)], m[k]);
}

TEST(tuple_json, schema_errors) {
    EXPECT_THROW(io::raw_tuple_from_json(json::parse(R"({"n":1,"d":1})")), io::format_error);
    EXPECT_THROW(io::raw_tuple_from_json(json::parse(R"({"n":2,"d":1,"vectors":[[[1,0]]]})")), io::format_error);
    EXPECT_THROW(io::raw_tuple_from_json(json::parse(R"({"n":1,"d":1,"vectors":[[["1",0]]]})")), io::format_error);
    EXPECT_THROW(io::raw_tuple_from_json(json::parse(
                     R"({"n":1,"d":1,"vectors":[[[1,0]]],"mixed":[[[[1,0]]]]})")),
                 io::format_error);
    EXPECT_THROW(io::parse_json("{"), io::format_error);
    // Norms are validated on load.
    const io::RawTuple raw = io::raw_tuple_from_json(json::parse(R"({"n":1,"d":1,"vectors":[[[2,0]]]})"));
    EXPECT_THROW(io::validate(raw), std::invalid_argument);
}

TEST(cli_check, examples) {
    auto r = run({"check", "3", "-0.125", "0"});
    EXPECT_EQ(r.code, 0);
    auto j = json::parse(r.out);
    EXPECT_EQ(j["classification"], "boundary");
    EXPECT_NEAR(j["boundaryRadiusAtArg"].get<double>(), 0.125, 1e-12);

    r = run({"check", "3", "-0.2", "0"});
    EXPECT_EQ(r.code, 1);
    EXPECT_EQ(json::parse(r.out)["classification"], "outside");

    r = run({"check", "1", "1", "0"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(json::parse(r.out)["classification"], "vertex");

    EXPECT_EQ(run({"check", "3", "abc", "0"}).code, 2);
    EXPECT_EQ(run({"check", "3", "0.1"}).code, 2);
    EXPECT_EQ(run({"check", "0", "0", "0"}).code, 2);
    EXPECT_EQ(run({"frobnicate"}).code, 2);
    EXPECT_EQ(run({}).code, 2);
}

TEST(cli_check, tolerance_flag) {
    EXPECT_EQ(run({"check", "3", "-0.1251", "0"}).code, 1);
    EXPECT_EQ(run({"--tol", "1e-3", "check", "3", "-0.1251", "0"}).code, 0);
    EXPECT_EQ(run({"--tol", "x", "check", "3", "0", "0"}).code, 2);
}

TEST(cli_realize, examples) {
    auto r = run({"realize", "4", "-0.25", "0", "--form", "qutrit-circulant"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto w = io::witness_from_json(json::parse(r.out));
    EXPECT_EQ(w.form, io::WitnessForm::qutrit_circulant);
    for (const auto& v : w.tuple.vectors()) EXPECT_NEAR(std::abs(v(2)), 0.0, 1e-12);
    EXPECT_LE(w.residual, 1e-9);

    r = run({"realize", "3", "0", "0", "--form", "qubit-general"});
    ASSERT_EQ(r.code, 0) << r.err;
    w = io::witness_from_json(json::parse(r.out));
    EXPECT_EQ(w.tuple.d, 2);
    const auto& vs = w.tuple.vectors();
    EXPECT_NEAR(std::abs(vs[0].dot(vs[1])), 0.0, 1e-15);

    r = run({"realize", "5", "0.9", "0", "--form", "qubit-general"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_LE(json::parse(r.out)["residual"].get<double>(), 1e-6);

    r = run({"realize", "3", "-0.2", "0"});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("0.125"), std::string::npos) << r.err;

    EXPECT_EQ(run({"realize", "3", "0", "0", "--form", "bogus"}).code, 2);
    EXPECT_EQ(run({"realize", "3", "0", "0", "--form", "qubit-boundary"}).code, 1);
    EXPECT_EQ(run({"realize", "3", "-0.125", "0", "--form", "qubit-boundary"}).code, 0);
}

TEST(cli_realize, out_flag_writes_file) {
    const auto path = std::filesystem::temp_directory_path() / "bargmann_witness_test.json";
    const auto r = run({"--out", path.string(), "realize", "6", "0.1", "0.05"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(r.out.empty());
    EXPECT_EQ(run({"verify", path.string()}).code, 0);
    std::filesystem::remove(path);
}

TEST(cli_pipeline, every_realize_output_verifies) {
    Engine rng = make_engine(62);
    for (int n = 3; n <= 8; ++n) {
        for (int i = 0; i < 10; ++i) {
            const Complex z = rejection_target(n, rng, true);
            for (const char* form : {"qutrit-circulant", "qubit-general"}) {
                const auto r = run({"realize", std::to_string(n), io::format_number(z.real()), io::format_number(z.imag()),
                                    "--form", form});
                ASSERT_EQ(r.code, 0) << r.err;
                std::ostringstream out, err;
                EXPECT_EQ(cli::cmd_verify(r.out, 0.0, out, err), 0) << out.str();
            }
        }
        const double phi = 1.0 + n;
        const Complex b = std::polar(boundary_radius(phi, n), phi);
        const auto r = run({"realize", std::to_string(n), io::format_number(b.real()), io::format_number(b.imag()), "--form",
                            "qubit-boundary"});
        ASSERT_EQ(r.code, 0) << r.err;
        std::ostringstream out, err;
        EXPECT_EQ(cli::cmd_verify(r.out, 0.0, out, err), 0) << out.str();
    }
}

TEST(cli_verify, examples) {
    auto r = run({"realize", "3", "-0.0625", "0", "--form", "qubit-general"});
    ASSERT_EQ(r.code, 0);
    std::ostringstream out, err;
    EXPECT_EQ(cli::cmd_verify(r.out, 1e-6, out, err), 0) << out.str();

    // One vector renormalized by 1.01.
    json j = json::parse(r.out);
    for (auto& pair : j["tuple"]["vectors"][1]) {
        pair[0] = pair[0].get<double>() * 1.01;
        pair[1] = pair[1].get<double>() * 1.01;
    }
    std::ostringstream out2, err2;
    EXPECT_EQ(cli::cmd_verify(j.dump(), 1e-6, out2, err2), 1);
    EXPECT_NE(err2.str().find("residual"), std::string::npos);
    EXPECT_FALSE(json::parse(out2.str())["passed"].get<bool>());

    // Target tampering.
    j = json::parse(run({"realize", "4", "-0.25", "0"}).out);
    j["target"][0] = -0.2;
    std::ostringstream out3, err3;
    EXPECT_EQ(cli::cmd_verify(j.dump(), 0.0, out3, err3), 1);

    // Circulancy is re-checked for circulant forms.
    j = json::parse(run({"realize", "3", "-0.0625", "0", "--form", "qubit-general"}).out);
    j["form"] = "qutrit-circulant";
    j["target"] = io::to_json(Complex(-0.0625, 0.0));
    std::ostringstream out4, err4;
    EXPECT_EQ(cli::cmd_verify(j.dump(), 1e-6, out4, err4), 1);
    EXPECT_GT(json::parse(out4.str())["circulantDefect"].get<double>(), 1e-10);

    std::ostringstream out5, err5;
    EXPECT_EQ(cli::cmd_verify("not json", 0.0, out5, err5), 2);
    EXPECT_EQ(run({"verify", "/nonexistent/witness.json"}).code, 2);
}

TEST(cli_invariant, examples) {
    const auto dir = std::filesystem::temp_directory_path();
    const auto write = [&](const std::string& name, const std::string& text) {
        const auto p = dir / name;
        std::ofstream(p) << text;
        return p.string();
    };

    Vector v(2);
    v << Complex(0.6, 0.0), Complex(0.0, 0.8);
    const auto same = write("bargmann_same.json", tuple_text(StateTuple({v, v, v})));
    auto r = run({"invariant", same});
    ASSERT_EQ(r.code, 0) << r.err;
    auto j = json::parse(r.out);
    EXPECT_NEAR(io::complex_from_json(j["delta"]).real(), 1.0, 1e-15);
    EXPECT_NEAR(j["probability"].get<double>(), 1.0, 1e-15);
    EXPECT_NEAR(j["phase"].get<double>(), 0.0, 1e-15);

    const auto obg = write("bargmann_obg.json", tuple_text(obg_tuple(pi / 4, 3)));
    r = run({"invariant", obg});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NEAR(std::abs(io::complex_from_json(json::parse(r.out)["delta"]) + 0.125), 0.0, 1e-12);

    r = run({"invariant", obg, "--order", "2,1,0"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NEAR(std::abs(io::complex_from_json(json::parse(r.out)["delta"]) + 0.125), 0.0, 1e-12);

    // Reversal conjugates a generic invariant.
    const StateTuple h = haar_tuple(4, 3, 8);
    const auto generic = write("bargmann_generic.json", tuple_text(h));
    r = run({"invariant", generic, "--order", "3,2,1,0"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NEAR(std::abs(io::complex_from_json(json::parse(r.out)["delta"]) - std::conj(bargmann_invariant(h))), 0.0, 1e-14);

    const auto orth = write("bargmann_orth.json", tuple_text(StateTuple({Vector(Eigen::Vector2cd(1, 0)), Vector(Eigen::Vector2cd(0, 1))})));
    r = run({"invariant", orth});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(json::parse(r.out)["phase"].is_null());

    const auto mixed = write("bargmann_mixed.json", io::tuple_to_json(MixedTuple::projectors(h)).dump());
    r = run({"invariant", mixed});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NEAR(std::abs(io::complex_from_json(json::parse(r.out)["delta"]) - bargmann_invariant(h)), 0.0, 1e-12);

    EXPECT_EQ(run({"invariant", obg, "--order", "0,0,1"}).code, 2);
    EXPECT_EQ(run({"invariant", obg, "--order", "0,1"}).code, 2);
    EXPECT_EQ(run({"invariant", obg, "--order", "a,b,c"}).code, 2);
    const auto bad = write("bargmann_bad.json", R"({"n":1,"d":1,"vectors":[[[2,0]]]})");
    EXPECT_EQ(run({"invariant", bad}).code, 2);
    EXPECT_EQ(run({"invariant", (dir / "bargmann_missing.json").string()}).code, 2);

    for (const char* f : {"bargmann_same.json", "bargmann_obg.json", "bargmann_generic.json", "bargmann_orth.json",
                          "bargmann_mixed.json", "bargmann_bad.json"})
        std::filesystem::remove(dir / f);
}

TEST(cli_boundary, csv_examples) {
    auto r = run({"boundary", "5", "4096", "csv"});
    ASSERT_EQ(r.code, 0);
    auto rows = csv_rows(r.out);
    ASSERT_EQ(rows.size(), 4097u);
    EXPECT_EQ(rows[0], (std::vector<std::string>{"theta", "root_re", "root_im", "delta_re", "delta_im"}));
    EXPECT_NEAR(std::stod(rows[1][0]), -pi, 1e-15);
    EXPECT_NEAR(std::stod(rows[1][3]), 1.0, 1e-12);
    EXPECT_NEAR(std::stod(rows[1][4]), 0.0, 1e-12);

    r = run({"boundary", "3", "3", "csv"});
    ASSERT_EQ(r.code, 0);
    rows = csv_rows(r.out);
    ASSERT_EQ(rows.size(), 4u);
    const double thetas[] = {-pi, 0.0, pi};
    const double deltas[] = {1.0, -0.125, 1.0};
    for (int i = 0; i < 3; ++i) {
        EXPECT_NEAR(std::stod(rows[i + 1][0]), thetas[i], 1e-15);
        EXPECT_NEAR(std::stod(rows[i + 1][3]), deltas[i], 1e-12);
        EXPECT_NEAR(std::stod(rows[i + 1][4]), 0.0, 1e-12);
    }
    // Every cell carries full precision.
    for (std::size_t i = 1; i < rows.size(); ++i)
        for (const auto& cell : rows[i]) EXPECT_EQ(io::format_number(*io::parse_number(cell)), cell);
}

TEST(cli_boundary, svg_region_inside_unit_circle) {
    const auto r = run({"--format", "svg", "boundary", "4", "1024"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("<svg"), std::string::npos);
    EXPECT_NE(r.out.find("</svg>"), std::string::npos);
    EXPECT_NE(r.out.find("id=\"unit-circle\""), std::string::npos);
    EXPECT_NE(r.out.find("id=\"ngon\""), std::string::npos);

    const std::regex region_re("id=\"region\" d=\"([^\"]*)\"");
    std::smatch m;
    ASSERT_TRUE(std::regex_search(r.out, m, region_re));
    const std::string d = m[1];
    EXPECT_EQ(d.back(), 'Z');
    const std::regex pt_re("([-0-9.]+) ([-0-9.]+)");
    int points = 0;
    for (auto it = std::sregex_iterator(d.begin(), d.end(), pt_re); it != std::sregex_iterator(); ++it) {
        const double x = (std::stod((*it)[1]) - 240.0) / 200.0;
        const double y = (240.0 - std::stod((*it)[2])) / 200.0;
        EXPECT_LE(std::hypot(x, y), 1.0 + 1e-5);
        ++points;
    }
    EXPECT_EQ(points, 1024);

    EXPECT_EQ(run({"boundary", "4", "16", "pdf"}).code, 2);
    EXPECT_EQ(run({"boundary", "2", "16"}).code, 2);
    EXPECT_EQ(run({"boundary", "4", "2"}).code, 2);
}

TEST(cli_sample, examples) {
    auto r = run({"sample", "4", "2", "100000", "42"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto j = json::parse(r.out);
    EXPECT_EQ(j["violations"].get<long long>(), 0);
    EXPECT_EQ(j["seed"].get<std::uint64_t>(), 42u);
    EXPECT_EQ(run({"sample", "4", "2", "100000", "42"}).out, r.out);

    const auto path = std::filesystem::temp_directory_path() / "bargmann_sample.csv";
    r = run({"sample", "2", "3", "1000", "7", "--csv", path.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    const auto rows = csv_rows(ss.str());
    ASSERT_EQ(rows.size(), 1001u);
    EXPECT_EQ(rows[0], (std::vector<std::string>{"delta_re", "delta_im"}));
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const double re = std::stod(rows[i][0]), im = std::stod(rows[i][1]);
        EXPECT_GE(re, -1e-12);
        EXPECT_LE(re, 1.0 + 1e-12);
        EXPECT_LE(std::abs(im), 1e-12);
    }
    std::filesystem::remove(path);

    // --seed is accepted as a global flag too.
    EXPECT_EQ(run({"--seed", "42", "sample", "4", "2", "100000"}).out, run({"sample", "4", "2", "100000", "42"}).out);
    EXPECT_EQ(run({"sample", "0", "2", "10", "1"}).code, 2);
}

TEST(cli_help, exits_zero) { EXPECT_EQ(run({"--help"}).code, 0); }
