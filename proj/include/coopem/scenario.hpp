#ifndef COOPEM_SCENARIO_HPP
#define COOPEM_SCENARIO_HPP

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "coopem/dynamics.hpp"
#include "coopem/geometry.hpp"
#include "coopem/modes.hpp"

namespace coopem {

// A parsed scenario: geometry + model parameters + initial state.
//
// JSON schema (unknown keys rejected with their path):
//   {"atoms": [[x,y,z], ...], "dipole": [dx,dy,dz],
//    "gamma_eg": 1.0, "delta_eg": 0.0, "initial": "e1"}
// or a preset block in place of atoms/dipole:
//   {"preset": "equilateral", "side": 0.1, ...}
//   {"preset": "collinear", "x12": 0.1, "x23": 0.2, "eta": 1.5707963, ...}
// "initial" is "e1".."eN", "dicke", or an explicit vector [[re,im], ...].
// Positions are in units of lambda0; the dipole is normalized on load when
// within 1e-6 of unit length and rejected otherwise.
struct Scenario {
    AtomConfig config;
    ModelParams params;
    InitialState initial;
    std::string initial_name; // preset name, or "custom"
};

Scenario parse_scenario(const std::string& json_text);
Scenario parse_scenario_json(const nlohmann::json& doc);
Scenario load_scenario_file(const std::string& path);

// Canonical serialized form (presets expanded to explicit atoms); re-parses
// to an equivalent scenario.
nlohmann::json scenario_to_json(const Scenario& scenario);

// Named initial states: "e1".."eN" (single excited atom) or "dicke".
InitialState initial_preset(const std::string& name, int n_atoms);

// Figure-reproduction harness. Writes one CSV per curve plus
// <figure>_manifest.json recording all parameters and the artifact version.
// Returns the list of files written (manifest last).
//   fig2: kernel curves D, P over x in [0.01, 2], eta in {0, pi/4, pi/2}
//   fig3: collinear rate scans at x12 in {0.05, 0.1, 0.2, 0.5}, eta = pi/2
//   fig5: equilateral total spectra, side in {0.07, 0.1, 0.2, 0.5}
//   fig6: collinear total spectra, x12 = 0.1, x23 in {0.1, 0.2, 0.4, 1.0},
//         eta in {pi/2, 0}
std::vector<std::string> reproduce(const std::string& figure, const std::string& out_dir);

} // namespace coopem

#endif
