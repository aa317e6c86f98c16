#include "coopem/scenario.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "coopem/errors.hpp"
#include "coopem/format.hpp"
#include "coopem/kernels.hpp"
#include "coopem/spectrum.hpp"
#include "coopem/table_io.hpp"
#include "coopem/version.hpp"

namespace coopem {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw validation_error(path + ": " + what);
}

double expect_number(const json& j, const std::string& path) {
    if (!j.is_number()) fail(path, "expected a number");
    return j.get<double>();
}

Vec3 expect_vec3(const json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 3) fail(path, "expected an array of 3 numbers");
    return {expect_number(j[0], path + "[0]"), expect_number(j[1], path + "[1]"),
            expect_number(j[2], path + "[2]")};
}

void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed,
                         const std::string& path) {
    for (const auto& item : obj.items())
        if (!allowed.count(item.key())) fail(path + "." + item.key(), "unknown key");
}

std::complex<double> expect_amplitude(const json& j, const std::string& path) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2)
        return {expect_number(j[0], path + "[0]"), expect_number(j[1], path + "[1]")};
    fail(path, "expected a number or an [re, im] pair");
}

} // namespace

InitialState initial_preset(const std::string& name, int n_atoms) {
    if (name == "dicke") return InitialState::dicke(n_atoms);
    if (name.size() >= 2 && name[0] == 'e') {
        int k = 0;
        try {
            std::size_t used = 0;
            k = std::stoi(name.substr(1), &used);
            if (used != name.size() - 1) k = 0;
        } catch (...) {
            k = 0;
        }
        if (k >= 1 && k <= n_atoms) return InitialState::excited_atom(n_atoms, k - 1);
    }
    throw validation_error("unknown initial state \"" + name + "\" (expected e1..e" +
                           std::to_string(n_atoms) + " or dicke)");
}

Scenario parse_scenario_json(const json& doc) {
    if (!doc.is_object()) fail("$", "expected a JSON object");
    reject_unknown_keys(doc,
                        {"preset", "side", "x12", "x23", "eta", "atoms", "dipole", "gamma_eg",
                         "delta_eg", "initial"},
                        "$");

    const bool has_preset = doc.contains("preset");
    const bool has_atoms = doc.contains("atoms");
    if (has_preset == has_atoms)
        fail("$", "exactly one of \"preset\" or \"atoms\" is required");

    std::optional<AtomConfig> config;
    if (has_preset) {
        if (!doc["preset"].is_string()) fail("$.preset", "expected a string");
        const std::string preset = doc["preset"].get<std::string>();
        if (doc.contains("dipole")) fail("$.dipole", "not allowed with a preset");
        if (preset == "equilateral") {
            for (const char* k : {"x12", "x23", "eta"})
                if (doc.contains(k)) fail(std::string("$.") + k, "not an equilateral parameter");
            if (!doc.contains("side")) fail("$.side", "required for the equilateral preset");
            config = equilateral_config(expect_number(doc["side"], "$.side"));
        } else if (preset == "collinear") {
            if (doc.contains("side")) fail("$.side", "not a collinear parameter");
            for (const char* k : {"x12", "x23"})
                if (!doc.contains(k)) fail(std::string("$.") + k, "required for the collinear preset");
            const double eta =
                doc.contains("eta") ? expect_number(doc["eta"], "$.eta") : M_PI / 2.0;
            config = collinear_config(expect_number(doc["x12"], "$.x12"),
                                      expect_number(doc["x23"], "$.x23"), eta);
        } else {
            fail("$.preset", "unknown preset \"" + preset + "\"");
        }
    } else {
        for (const char* k : {"side", "x12", "x23", "eta"})
            if (doc.contains(k)) fail(std::string("$.") + k, "only allowed with a preset");
        if (!doc["atoms"].is_array() || doc["atoms"].size() < 2)
            fail("$.atoms", "expected an array of at least 2 positions");
        std::vector<Vec3> positions;
        for (std::size_t i = 0; i < doc["atoms"].size(); ++i)
            positions.push_back(expect_vec3(doc["atoms"][i], "$.atoms[" + std::to_string(i) + "]"));
        if (!doc.contains("dipole")) fail("$.dipole", "required with explicit atoms");
        Vec3 dipole = expect_vec3(doc["dipole"], "$.dipole");
        const double len = norm(dipole);
        if (std::abs(len - 1.0) > 1e-6)
            fail("$.dipole", "length " + format_number(len) + " is too far from 1");
        try {
            config = AtomConfig(std::move(positions), normalized(dipole));
        } catch (const validation_error& e) {
            fail("$.atoms", e.what());
        }
    }

    ModelParams params;
    if (doc.contains("gamma_eg")) params.gamma_eg = expect_number(doc["gamma_eg"], "$.gamma_eg");
    if (doc.contains("delta_eg")) params.delta_eg = expect_number(doc["delta_eg"], "$.delta_eg");
    if (!(params.gamma_eg > 0.0)) fail("$.gamma_eg", "must be positive");

    std::string initial_name = "e1";
    std::optional<InitialState> initial;
    if (doc.contains("initial")) {
        const json& j = doc["initial"];
        if (j.is_string()) {
            initial_name = j.get<std::string>();
        } else if (j.is_array()) {
            if (static_cast<int>(j.size()) != config->size())
                fail("$.initial", "expected " + std::to_string(config->size()) + " amplitudes");
            Eigen::VectorXcd c(config->size());
            for (std::size_t i = 0; i < j.size(); ++i)
                c(static_cast<Eigen::Index>(i)) =
                    expect_amplitude(j[i], "$.initial[" + std::to_string(i) + "]");
            try {
                initial = InitialState::from_unnormalized(std::move(c));
            } catch (const validation_error& e) {
                fail("$.initial", e.what());
            }
            initial_name = "custom";
        } else {
            fail("$.initial", "expected a preset name or an amplitude array");
        }
    }
    if (!initial) {
        try {
            initial = initial_preset(initial_name, config->size());
        } catch (const validation_error& e) {
            fail("$.initial", e.what());
        }
    }

    return Scenario{std::move(*config), params, std::move(*initial), initial_name};
}

Scenario parse_scenario(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw validation_error(std::string("invalid JSON: ") + e.what());
    }
    return parse_scenario_json(doc);
}

Scenario load_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw validation_error("cannot open config file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str());
}

nlohmann::json scenario_to_json(const Scenario& scenario) {
    json atoms = json::array();
    for (const auto& p : scenario.config.positions()) atoms.push_back({p.x, p.y, p.z});
    const Vec3 d = scenario.config.dipole();
    json out = {{"atoms", std::move(atoms)},
                {"dipole", {d.x, d.y, d.z}},
                {"gamma_eg", scenario.params.gamma_eg},
                {"delta_eg", scenario.params.delta_eg}};
    if (scenario.initial_name != "custom") {
        out["initial"] = scenario.initial_name;
    } else {
        json amps = json::array();
        for (int i = 0; i < scenario.initial.size(); ++i) {
            const auto c = scenario.initial.amplitudes()(i);
            amps.push_back({c.real(), c.imag()});
        }
        out["initial"] = std::move(amps);
    }
    return out;
}

namespace {

// Shared pieces of the figure harness.

std::ofstream open_output(const std::filesystem::path& file) {
    std::ofstream out(file);
    if (!out) throw validation_error("cannot write output file: " + file.string());
    return out;
}

void write_table_file(const std::filesystem::path& file, const Table& table) {
    auto out = open_output(file);
    write_csv(out, table);
    out.flush();
    if (!out) throw validation_error("write failed: " + file.string());
}

Table spectrum_table(const SpectrumSeries& series) {
    Table t;
    t.columns = {"delta", "S"};
    for (int k = 0; k < series.grid.size(); ++k)
        t.rows.push_back({series.grid.values()[k], series.values[k]});
    return t;
}

SpectrumSeries scenario_total_spectrum(const Scenario& sc, const DetuningGrid& grid) {
    const auto modes = sc.config.size() == 3
                           ? eigenmodes_analytic(build_coupling_matrix(sc.config, sc.params))
                           : eigenmodes_numeric(build_coupling_matrix(sc.config, sc.params));
    const auto decomp = decompose_initial(modes, sc.initial);
    return normalize_peak(total_spectrum(sc.config, modes, decomp, grid));
}

std::string trimmed(double v) { return format_number(v); }

} // namespace

std::vector<std::string> reproduce(const std::string& figure, const std::string& out_dir) {
    namespace fs = std::filesystem;
    const fs::path dir(out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir))
        throw validation_error("cannot create output directory: " + dir.string());

    std::vector<std::string> files;
    json manifest = {{"figure", figure}, {"version", version}};

    if (figure == "fig2") {
        // Kernel curves over x in [0.01, 2] for three dipole angles.
        const std::vector<std::pair<std::string, double>> etas = {
            {"0", 0.0}, {"pi4", M_PI / 4.0}, {"pi2", M_PI / 2.0}};
        Table t;
        t.columns = {"x", "eta", "D", "P"};
        const double x0 = 0.01, x1 = 2.0, step = 0.005;
        const int npts = static_cast<int>(std::lround((x1 - x0) / step)) + 1;
        for (const auto& [name, eta] : etas)
            for (int i = 0; i < npts; ++i) {
                const double x = x0 + i * step;
                t.rows.push_back({x, eta, kernel_D(x, eta), kernel_P(x, eta)});
            }
        const fs::path file = dir / "fig2_kernels.csv";
        write_table_file(file, t);
        files.push_back(file.string());
        manifest["parameters"] = {{"x_min", x0}, {"x_max", x1}, {"x_step", step},
                                  {"eta", {0.0, M_PI / 4.0, M_PI / 2.0}}};
    } else if (figure == "fig3") {
        // Decay-rate scans over x23 for four fixed x12, eta = pi/2.
        const std::vector<double> x12s = {0.05, 0.1, 0.2, 0.5};
        std::vector<double> x23;
        for (int i = 1; i <= 200; ++i) x23.push_back(0.005 * i);
        for (double x12 : x12s) {
            const auto scan = line_scan(x12, x23, M_PI / 2.0, ModelParams{});
            Table t;
            t.columns = {"x23", "gamma_1", "gamma_2", "gamma_3"};
            for (std::size_t i = 0; i < scan.axis.size(); ++i) {
                std::vector<double> row = {scan.axis[i]};
                row.insert(row.end(), scan.rows[i].begin(), scan.rows[i].end());
                t.rows.push_back(std::move(row));
            }
            const fs::path file = dir / ("fig3_x12_" + trimmed(x12) + ".csv");
            write_table_file(file, t);
            files.push_back(file.string());
        }
        manifest["parameters"] = {{"x12", x12s}, {"eta", M_PI / 2.0},
                                  {"x23_min", 0.005}, {"x23_max", 1.0}, {"x23_step", 0.005}};
    } else if (figure == "fig5") {
        // Equilateral total spectra; the widest structure (side 0.07) peaks
        // near +16.2, so the grid extends past the usual +-15.
        const std::vector<double> sides = {0.07, 0.1, 0.2, 0.5};
        const auto grid = DetuningGrid::linspace(-20.0, 20.0, 4001);
        for (double side : sides) {
            json cfg = {{"preset", "equilateral"}, {"side", side}, {"initial", "e1"}};
            const auto series = scenario_total_spectrum(parse_scenario_json(cfg), grid);
            const fs::path file = dir / ("fig5_x_" + trimmed(side) + ".csv");
            write_table_file(file, spectrum_table(series));
            files.push_back(file.string());
        }
        manifest["parameters"] = {{"side", sides}, {"initial", "e1"},
                                  {"delta_min", -20.0}, {"delta_max", 20.0}, {"points", 4001},
                                  {"normalization", "peak"}};
    } else if (figure == "fig6") {
        const std::vector<std::pair<std::string, double>> etas = {{"pi2", M_PI / 2.0},
                                                                  {"0", 0.0}};
        const std::vector<double> x23s = {0.1, 0.2, 0.4, 1.0};
        const auto grid = DetuningGrid::linspace(-20.0, 20.0, 4001);
        for (const auto& [eta_name, eta] : etas)
            for (double x23 : x23s) {
                json cfg = {{"preset", "collinear"}, {"x12", 0.1}, {"x23", x23},
                            {"eta", eta}, {"initial", "e1"}};
                const auto series = scenario_total_spectrum(parse_scenario_json(cfg), grid);
                const fs::path file =
                    dir / ("fig6_eta_" + eta_name + "_x23_" + trimmed(x23) + ".csv");
                write_table_file(file, spectrum_table(series));
                files.push_back(file.string());
            }
        manifest["parameters"] = {{"x12", 0.1}, {"x23", x23s}, {"eta", {M_PI / 2.0, 0.0}},
                                  {"initial", "e1"},
                                  {"delta_min", -20.0}, {"delta_max", 20.0}, {"points", 4001},
                                  {"normalization", "peak"}};
    } else {
        throw validation_error("unknown figure \"" + figure +
                               "\" (expected fig2, fig3, fig5 or fig6)");
    }

    json file_names = json::array();
    for (const auto& f : files) file_names.push_back(fs::path(f).filename().string());
    manifest["files"] = std::move(file_names);

    const fs::path manifest_path = dir / (figure + "_manifest.json");
    auto out = open_output(manifest_path);
    out << manifest.dump(2) << "\n";
    out.flush();
    if (!out) throw validation_error("write failed: " + manifest_path.string());
    files.push_back(manifest_path.string());
    return files;
}

} // namespace coopem
