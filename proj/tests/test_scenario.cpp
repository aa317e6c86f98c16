#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "coopem/errors.hpp"
#include "coopem/scenario.hpp"

using namespace coopem;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / name;
    fs::remove_all(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("explicit atoms scenario with defaults") {
    const auto sc = parse_scenario(R"({
        "atoms": [[0,0,0],[0.1,0,0],[0.3,0,0]],
        "dipole": [1,0,0]
    })");
    CHECK(sc.config.size() == 3);
    CHECK(sc.params.gamma_eg == 1.0);
    CHECK(sc.params.delta_eg == 0.0);
    CHECK(sc.initial_name == "e1");
    CHECK(std::abs(sc.initial.amplitudes()(0) - 1.0) == 0.0);

    const auto pairs = build_pair_geometry(sc.config);
    CHECK(pairs[0].x == doctest::Approx(0.1));
    CHECK(pairs[1].x == doctest::Approx(0.3));
    CHECK(pairs[2].x == doctest::Approx(0.2));
    for (const auto& p : pairs) CHECK(p.eta == doctest::Approx(0.0));
}

TEST_CASE("preset scenarios") {
    const auto eq = parse_scenario(R"({"preset":"equilateral","side":0.1,"initial":"dicke"})");
    for (const auto& p : build_pair_geometry(eq.config)) {
        CHECK(p.x == doctest::Approx(0.1).epsilon(1e-12));
        CHECK(p.eta == doctest::Approx(M_PI / 2).epsilon(1e-12));
    }
    CHECK(eq.initial_name == "dicke");
    CHECK(std::abs(eq.initial.amplitudes()(2) - 1.0 / std::sqrt(3.0)) < 1e-15);

    const auto line = parse_scenario(R"({"preset":"collinear","x12":0.1,"x23":0.2,"eta":0})");
    const auto pairs = build_pair_geometry(line.config);
    CHECK(pairs[1].x == doctest::Approx(0.3).epsilon(1e-14));
    CHECK(pairs[0].eta == doctest::Approx(0.0));

    // eta defaults to pi/2 for the collinear preset
    const auto perp = parse_scenario(R"({"preset":"collinear","x12":0.1,"x23":0.2})");
    CHECK(build_pair_geometry(perp.config)[0].eta == doctest::Approx(M_PI / 2).epsilon(1e-12));
}

TEST_CASE("two-atom scenario goes through the numeric mode path") {
    const auto sc = parse_scenario(R"({"atoms":[[0,0,0],[0.1,0,0]],"dipole":[0,0,1]})");
    const auto modes = eigenmodes_numeric(build_coupling_matrix(sc.config, sc.params));
    CHECK(modes.size() == 2);
    CHECK(modes.rates(0) > 1.0); // superradiant pair mode
}

TEST_CASE("schema violations carry the field path") {
    CHECK_THROWS_WITH_AS(parse_scenario(R"({"atoms":[[0,0,0],[1,0,0]]})"),
                         doctest::Contains("$.dipole"), validation_error);
    CHECK_THROWS_WITH_AS(
        parse_scenario(R"({"atoms":[[0,0,0],[1,0,0]],"dipole":[0,0,1],"turbo":1})"),
        doctest::Contains("$.turbo"), validation_error);
    CHECK_THROWS_WITH_AS(
        parse_scenario(R"({"atoms":[[0,0,0],[1,0]],"dipole":[0,0,1]})"),
        doctest::Contains("$.atoms[1]"), validation_error);
    CHECK_THROWS_WITH_AS(parse_scenario(R"({"preset":"hexagon","side":1})"),
                         doctest::Contains("$.preset"), validation_error);
    CHECK_THROWS_WITH_AS(
        parse_scenario(R"({"preset":"equilateral","side":0.1,"x12":0.3})"),
        doctest::Contains("$.x12"), validation_error);
    CHECK_THROWS_WITH_AS(
        parse_scenario(R"({"preset":"equilateral","side":0.1,"atoms":[[0,0,0],[1,0,0]]})"),
        doctest::Contains("preset"), validation_error);
    CHECK_THROWS_AS(parse_scenario("{not json"), validation_error);
    CHECK_THROWS_WITH_AS(
        parse_scenario(R"({"preset":"equilateral","side":0.1,"gamma_eg":-2})"),
        doctest::Contains("$.gamma_eg"), validation_error);
}

TEST_CASE("dipole normalization window") {
    // within 1e-6 of unit length: accepted and normalized
    const auto sc = parse_scenario(
        R"({"atoms":[[0,0,0],[0.1,0,0]],"dipole":[0,0,1.0000005]})");
    CHECK(norm(sc.config.dipole()) == doctest::Approx(1.0).epsilon(1e-13));
    // beyond: rejected
    CHECK_THROWS_WITH_AS(
        parse_scenario(R"({"atoms":[[0,0,0],[0.1,0,0]],"dipole":[0,0,1.01]})"),
        doctest::Contains("$.dipole"), validation_error);
}

TEST_CASE("explicit initial amplitudes") {
    const auto sc = parse_scenario(R"({
        "preset": "equilateral", "side": 0.1,
        "initial": [[0.70710678118654752, 0], [0, 0.70710678118654752], [0, 0]]
    })");
    CHECK(sc.initial_name == "custom");
    CHECK(std::abs(sc.initial.amplitudes()(1).imag() - 1.0 / std::sqrt(2.0)) < 1e-12);

    CHECK_THROWS_WITH_AS(
        parse_scenario(R"({"preset":"equilateral","side":0.1,"initial":[[1,0],[0,0]]})"),
        doctest::Contains("$.initial"), validation_error);
    CHECK_THROWS_WITH_AS(
        parse_scenario(R"({"preset":"equilateral","side":0.1,"initial":[[1,0],[1,0],[0,0]]})"),
        doctest::Contains("$.initial"), validation_error);
    CHECK_THROWS_WITH_AS(
        parse_scenario(R"({"preset":"equilateral","side":0.1,"initial":"e9"})"),
        doctest::Contains("$.initial"), validation_error);
}

TEST_CASE("initial presets") {
    CHECK(std::abs(initial_preset("e3", 3).amplitudes()(2) - 1.0) == 0.0);
    CHECK_THROWS_AS(initial_preset("e4", 3), validation_error);
    CHECK_THROWS_AS(initial_preset("e0", 3), validation_error);
    CHECK_THROWS_AS(initial_preset("ground", 3), validation_error);
}

TEST_CASE("scenario round-trips through JSON") {
    for (const char* text :
         {R"({"preset":"equilateral","side":0.1,"gamma_eg":2.0,"delta_eg":0.5})",
          R"({"atoms":[[0,0,0],[0.1,0,0],[0.05,0.2,0]],"dipole":[0,0,1],"initial":"e2"})",
          R"({"preset":"collinear","x12":0.1,"x23":0.4,"eta":0.3,
              "initial":[[0.6,0],[0,0.8],[0,0]]})"}) {
        const auto first = parse_scenario(text);
        const auto second = parse_scenario(scenario_to_json(first).dump());
        REQUIRE(second.config.size() == first.config.size());
        for (int i = 0; i < first.config.size(); ++i) {
            CHECK(second.config.positions()[i].x == first.config.positions()[i].x);
            CHECK(second.config.positions()[i].y == first.config.positions()[i].y);
            CHECK(second.config.positions()[i].z == first.config.positions()[i].z);
        }
        CHECK(second.config.dipole().z == first.config.dipole().z);
        CHECK(second.params.gamma_eg == first.params.gamma_eg);
        CHECK(second.params.delta_eg == first.params.delta_eg);
        CHECK(second.initial_name == first.initial_name);
        CHECK((second.initial.amplitudes() - first.initial.amplitudes()).norm() <= 1e-15);
    }
}

TEST_CASE("reproduce fig2 writes the kernel table and a manifest") {
    const auto dir = fresh_dir("coopem_fig2");
    const auto files = reproduce("fig2", dir.string());
    REQUIRE(files.size() == 2);
    CHECK(fs::exists(files[0]));

    const auto manifest = json::parse(slurp(files[1]));
    CHECK(manifest["figure"] == "fig2");
    CHECK(manifest["files"].size() == 1);
    CHECK(manifest.contains("version"));
    CHECK(manifest["parameters"]["x_min"] == 0.01);

    std::ifstream csv(files[0]);
    std::string header, first;
    std::getline(csv, header);
    std::getline(csv, first);
    CHECK(header == "x,eta,D,P");
    // first row: x = 0.01, eta = 0, D close to its contact limit 1
    double x = 0, eta = 0, d = 0;
    char comma = 0;
    std::istringstream row(first);
    row >> x >> comma >> eta >> comma >> d;
    CHECK(x == doctest::Approx(0.01));
    CHECK(eta == 0.0);
    CHECK(d == doctest::Approx(1.0).epsilon(0.01));

    // byte-identical re-run
    const std::string before = slurp(files[0]);
    reproduce("fig2", dir.string());
    CHECK(slurp(files[0]) == before);
}

TEST_CASE("reproduce fig3 writes four sorted-rate scans") {
    const auto dir = fresh_dir("coopem_fig3");
    const auto files = reproduce("fig3", dir.string());
    REQUIRE(files.size() == 5); // 4 scans + manifest
    for (int i = 0; i < 4; ++i) {
        std::ifstream csv(files[i]);
        std::string header;
        std::getline(csv, header);
        CHECK(header == "x23,gamma_1,gamma_2,gamma_3");
        int rows = 0;
        for (std::string line; std::getline(csv, line);) ++rows;
        CHECK(rows == 200);
    }
    const auto manifest = json::parse(slurp(files[4]));
    CHECK(manifest["parameters"]["x12"].size() == 4);
}

TEST_CASE("reproduce rejects unknown figures and unusable directories") {
    CHECK_THROWS_AS(reproduce("fig4", fresh_dir("coopem_figx").string()), validation_error);

    // a path that exists as a regular file cannot become the output directory
    const fs::path blocker = fs::temp_directory_path() / "coopem_blocker";
    std::ofstream(blocker) << "x";
    CHECK_THROWS_AS(reproduce("fig2", blocker.string()), validation_error);
    fs::remove(blocker);
}
