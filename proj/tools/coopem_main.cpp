// coopem: collective decay rates, Lamb shifts, single-excitation dynamics
// and emission spectra for small arrays of identical two-level atoms.

#include <cctype>
#include <complex>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "coopem/dynamics.hpp"
#include "coopem/errors.hpp"
#include "coopem/format.hpp"
#include "coopem/geometry.hpp"
#include "coopem/kernels.hpp"
#include "coopem/modes.hpp"
#include "coopem/scenario.hpp"
#include "coopem/spectrum.hpp"
#include "coopem/table_io.hpp"
#include "coopem/version.hpp"

namespace {

using nlohmann::json;

struct OutputOptions {
    std::string out_path; // empty = stdout
    std::string format = "csv";
};

void add_output_options(CLI::App* cmd, OutputOptions& opts, const std::string& default_format) {
    opts.format = default_format;
    cmd->add_option("--out", opts.out_path, "Output file (default: stdout)");
    cmd->add_option("--format", opts.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));
}

void emit(const OutputOptions& opts, const coopem::Table& table, const json& as_json) {
    std::ostringstream body;
    if (opts.format == "csv")
        coopem::write_csv(body, table);
    else
        body << as_json.dump(2) << "\n";
    if (opts.out_path.empty()) {
        std::cout << body.str();
    } else {
        std::ofstream out(opts.out_path);
        if (!out) throw coopem::validation_error("cannot write output file: " + opts.out_path);
        out << body.str();
        out.flush();
        if (!out) throw coopem::validation_error("write failed: " + opts.out_path);
    }
}

coopem::ModeSet solve_modes(const coopem::CouplingMatrix& matrix, const std::string& method) {
    if (method == "analytic") return coopem::eigenmodes_analytic(matrix);
    if (method == "numeric") return coopem::eigenmodes_numeric(matrix);
    return matrix.size() == 3 ? coopem::eigenmodes_analytic(matrix)
                              : coopem::eigenmodes_numeric(matrix);
}

coopem::InitialState resolve_initial(const std::string& spec, const coopem::Scenario& scenario) {
    if (spec.empty()) return scenario.initial;
    if (spec == "dicke" || (spec.size() >= 2 && spec[0] == 'e' && std::isdigit(spec[1])))
        return coopem::initial_preset(spec, scenario.config.size());
    // Otherwise a JSON file holding an amplitude array [[re, im], ...].
    std::ifstream in(spec);
    if (!in) throw coopem::validation_error("cannot open initial-state file: " + spec);
    json doc;
    try {
        in >> doc;
    } catch (const json::parse_error& e) {
        throw coopem::validation_error("invalid JSON in " + spec + ": " + e.what());
    }
    if (doc.is_object() && doc.contains("amplitudes")) doc = doc["amplitudes"];
    if (!doc.is_array() || static_cast<int>(doc.size()) != scenario.config.size())
        throw coopem::validation_error(spec + ": expected an array of " +
                                       std::to_string(scenario.config.size()) + " amplitudes");
    Eigen::VectorXcd c(scenario.config.size());
    for (std::size_t i = 0; i < doc.size(); ++i) {
        const json& e = doc[i];
        if (e.is_number())
            c(static_cast<Eigen::Index>(i)) = e.get<double>();
        else if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number())
            c(static_cast<Eigen::Index>(i)) = std::complex<double>(e[0], e[1]);
        else
            throw coopem::validation_error(spec + ": amplitude " + std::to_string(i) +
                                           " must be a number or an [re, im] pair");
    }
    return coopem::InitialState::from_unnormalized(std::move(c));
}

std::vector<double> parse_range(const std::string& text) {
    double a = 0.0, b = 0.0, step = 0.0;
    char c1 = 0, c2 = 0;
    std::istringstream in(text);
    if (!(in >> a >> c1 >> b >> c2 >> step) || c1 != ':' || c2 != ':' || !(step > 0.0))
        throw coopem::validation_error("expected a range A:B:STEP with STEP > 0, got \"" +
                                       text + "\"");
    std::vector<double> values;
    for (double v = a; v <= b + 0.5 * step; v += step) values.push_back(v);
    if (values.empty()) throw coopem::validation_error("empty range \"" + text + "\"");
    return values;
}

json modes_to_json(const coopem::ModeSet& modes) {
    json eigenvalues = json::array(), vectors = json::array();
    json rates = json::array(), shifts = json::array(), groups = json::array();
    for (int m = 0; m < modes.size(); ++m) {
        eigenvalues.push_back({coopem::round_12sig(modes.eigenvalues(m).real()),
                               coopem::round_12sig(modes.eigenvalues(m).imag())});
        rates.push_back(coopem::round_12sig(modes.rates(m)));
        shifts.push_back(coopem::round_12sig(modes.shifts(m)));
        json vec = json::array();
        for (int i = 0; i < modes.size(); ++i)
            vec.push_back({coopem::round_12sig(modes.eigenvectors(i, m).real()),
                           coopem::round_12sig(modes.eigenvectors(i, m).imag())});
        vectors.push_back(std::move(vec));
    }
    for (const auto& g : modes.degeneracy_groups) groups.push_back(g);
    return {{"eigenvalues", eigenvalues}, {"rates", rates},         {"shifts", shifts},
            {"eigenvectors", vectors},    {"degeneracy_groups", groups}};
}

coopem::Table modes_to_table(const coopem::ModeSet& modes) {
    coopem::Table t;
    t.columns = {"mode", "re_gamma", "im_gamma", "rate", "shift", "group"};
    for (int i = 0; i < modes.size(); ++i) {
        t.columns.push_back("re_b" + std::to_string(i + 1));
        t.columns.push_back("im_b" + std::to_string(i + 1));
    }
    std::vector<int> group_of(modes.size(), 0);
    for (std::size_t g = 0; g < modes.degeneracy_groups.size(); ++g)
        for (int m : modes.degeneracy_groups[g]) group_of[m] = static_cast<int>(g);
    for (int m = 0; m < modes.size(); ++m) {
        std::vector<double> row = {static_cast<double>(m), modes.eigenvalues(m).real(),
                                   modes.eigenvalues(m).imag(), modes.rates(m),
                                   modes.shifts(m), static_cast<double>(group_of[m])};
        for (int i = 0; i < modes.size(); ++i) {
            row.push_back(modes.eigenvectors(i, m).real());
            row.push_back(modes.eigenvectors(i, m).imag());
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

int run(int argc, char** argv) {
    CLI::App app{"Collective spontaneous emission of small two-level-atom arrays"};
    app.set_version_flag("--version", coopem::version);
    app.require_subcommand(1);

    // modes
    auto* modes_cmd = app.add_subcommand("modes", "Collective eigenmodes, decay rates, shifts");
    std::string modes_config, modes_method = "auto";
    OutputOptions modes_out;
    modes_cmd->add_option("--config", modes_config, "Scenario JSON file")->required();
    modes_cmd->add_option("--method", modes_method, "Eigen solver path")
        ->check(CLI::IsMember({"analytic", "numeric", "auto"}));
    add_output_options(modes_cmd, modes_out, "json");
    modes_cmd->callback([&] {
        const auto scenario = coopem::load_scenario_file(modes_config);
        const auto modes = solve_modes(
            coopem::build_coupling_matrix(scenario.config, scenario.params), modes_method);
        emit(modes_out, modes_to_table(modes), modes_to_json(modes));
    });

    // dynamics
    auto* dyn_cmd = app.add_subcommand("dynamics", "Single-excitation amplitude evolution");
    std::string dyn_config, dyn_initial;
    double dyn_tmax = 10.0;
    int dyn_steps = 1000;
    OutputOptions dyn_out;
    dyn_cmd->add_option("--config", dyn_config, "Scenario JSON file")->required();
    dyn_cmd->add_option("--initial", dyn_initial,
                        "Initial state: e1..eN, dicke, or a JSON amplitude file");
    dyn_cmd->add_option("--tmax", dyn_tmax, "End time, units of 1/gamma_eg");
    dyn_cmd->add_option("--steps", dyn_steps, "Number of time intervals");
    add_output_options(dyn_cmd, dyn_out, "csv");
    dyn_cmd->callback([&] {
        const auto scenario = coopem::load_scenario_file(dyn_config);
        const auto matrix = coopem::build_coupling_matrix(scenario.config, scenario.params);
        const auto modes = solve_modes(matrix, "auto");
        const auto initial = resolve_initial(dyn_initial, scenario);
        const auto decomp = coopem::decompose_initial(modes, initial);
        const auto traj =
            coopem::evolve(modes, decomp, coopem::time_grid(dyn_tmax, dyn_steps));

        coopem::Table t;
        t.columns = {"t"};
        for (int i = 0; i < scenario.config.size(); ++i) {
            t.columns.push_back("re_C" + std::to_string(i + 1));
            t.columns.push_back("im_C" + std::to_string(i + 1));
        }
        t.columns.push_back("survival");
        for (std::size_t k = 0; k < traj.times.size(); ++k) {
            std::vector<double> row = {traj.times[k]};
            for (int i = 0; i < scenario.config.size(); ++i) {
                row.push_back(traj.amplitudes(i, static_cast<Eigen::Index>(k)).real());
                row.push_back(traj.amplitudes(i, static_cast<Eigen::Index>(k)).imag());
            }
            row.push_back(traj.survival[k]);
            t.rows.push_back(std::move(row));
        }
        emit(dyn_out, t, coopem::table_to_json(t));
    });

    // spectrum
    auto* spec_cmd = app.add_subcommand("spectrum", "Emission spectrum (total or directional)");
    std::string spec_config, spec_initial, spec_direction, spec_normalize = "peak";
    double spec_dmin = -15.0, spec_dmax = 15.0;
    int spec_points = 3001, spec_oracle = 0;
    OutputOptions spec_out;
    spec_cmd->add_option("--config", spec_config, "Scenario JSON file")->required();
    spec_cmd->add_option("--initial", spec_initial,
                         "Initial state: e1..eN, dicke, or a JSON amplitude file");
    spec_cmd->add_option("--dmin", spec_dmin, "Lowest detuning, units of gamma_eg");
    spec_cmd->add_option("--dmax", spec_dmax, "Highest detuning, units of gamma_eg");
    spec_cmd->add_option("--points", spec_points, "Number of grid points");
    spec_cmd->add_option("--direction", spec_direction,
                         "THETA,PHI detector direction (radians); omit for the total spectrum");
    spec_cmd->add_option("--normalize", spec_normalize, "Peak normalization")
        ->check(CLI::IsMember({"peak", "none"}));
    spec_cmd->add_option("--oracle", spec_oracle,
                         "Cross-check the total spectrum against sphere quadrature of this order");
    add_output_options(spec_cmd, spec_out, "csv");
    spec_cmd->callback([&] {
        const auto scenario = coopem::load_scenario_file(spec_config);
        const auto matrix = coopem::build_coupling_matrix(scenario.config, scenario.params);
        const auto modes = solve_modes(matrix, "auto");
        const auto initial = resolve_initial(spec_initial, scenario);
        const auto decomp = coopem::decompose_initial(modes, initial);
        const auto grid = coopem::DetuningGrid::linspace(spec_dmin, spec_dmax, spec_points);

        coopem::SpectrumSeries series =
            spec_direction.empty()
                ? coopem::total_spectrum(scenario.config, modes, decomp, grid)
                : [&] {
                      double theta = 0.0, phi = 0.0;
                      char c = 0;
                      std::istringstream in(spec_direction);
                      if (!(in >> theta >> c >> phi) || c != ',')
                          throw coopem::validation_error(
                              "expected --direction THETA,PHI, got \"" + spec_direction + "\"");
                      return coopem::directional_spectrum(
                          scenario.config, modes, decomp,
                          coopem::DetectorDirection::from_angles(theta, phi), grid);
                  }();

        if (spec_oracle > 0) {
            if (!spec_direction.empty())
                throw coopem::validation_error("--oracle applies to the total spectrum only");
            const auto reference = coopem::quadrature_total_spectrum(scenario.config, modes,
                                                                     decomp, grid, spec_oracle);
            double smax = 0.0, dev = 0.0;
            for (double v : series.values) smax = std::max(smax, v);
            for (int k = 0; k < grid.size(); ++k)
                dev = std::max(dev, std::abs(series.values[k] - reference.values[k]));
            const double rel = dev / smax;
            std::cerr << "oracle order " << spec_oracle
                      << ": max relative deviation = " << coopem::format_number(rel) << "\n";
            if (rel > 1e-6)
                throw coopem::consistency_error(
                    "total spectrum disagrees with the quadrature oracle (relative deviation " +
                    coopem::format_number(rel) + ")");
        }
        if (spec_normalize == "peak") series = coopem::normalize_peak(std::move(series));

        coopem::Table t;
        t.columns = {"delta", "S"};
        for (int k = 0; k < grid.size(); ++k)
            t.rows.push_back({grid.values()[k], series.values[k]});
        emit(spec_out, t, coopem::table_to_json(t));
    });

    // scan line
    auto* scan_cmd = app.add_subcommand("scan", "Parameter scans");
    scan_cmd->require_subcommand(1);
    auto* line_cmd = scan_cmd->add_subcommand(
        "line", "Collinear geometry: decay rates vs x23 (sorted descending)");
    double line_x12 = 0.0, line_eta = M_PI / 2.0;
    std::string line_range;
    OutputOptions line_out;
    line_cmd->add_option("--x12", line_x12, "Fixed left gap, units of lambda0")->required();
    line_cmd->add_option("--x23", line_range, "Right gap range A:B:STEP")->required();
    line_cmd->add_option("--eta", line_eta, "Dipole angle to the line (radians)");
    add_output_options(line_cmd, line_out, "csv");
    line_cmd->callback([&] {
        const auto scan =
            coopem::line_scan(line_x12, parse_range(line_range), line_eta, coopem::ModelParams{});
        coopem::Table t;
        t.columns = {"x23", "gamma_1", "gamma_2", "gamma_3"};
        for (std::size_t i = 0; i < scan.axis.size(); ++i) {
            std::vector<double> row = {scan.axis[i]};
            row.insert(row.end(), scan.rows[i].begin(), scan.rows[i].end());
            t.rows.push_back(std::move(row));
        }
        emit(line_out, t, coopem::table_to_json(t));
    });

    // reproduce
    auto* rep_cmd = app.add_subcommand("reproduce", "Write bundled figure datasets (CSV + manifest)");
    std::string rep_figure, rep_out;
    rep_cmd->add_option("figure", rep_figure, "One of fig2, fig3, fig5, fig6")->required();
    rep_cmd->add_option("--out", rep_out, "Output directory")->required();
    rep_cmd->callback([&] {
        for (const auto& f : coopem::reproduce(rep_figure, rep_out))
            std::cout << f << "\n";
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2; // bad arguments are validation errors
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const coopem::validation_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const coopem::consistency_error& e) {
        std::cerr << "consistency error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
}
