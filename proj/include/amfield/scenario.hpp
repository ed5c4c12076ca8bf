#pragma once

#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "amfield/fiber.hpp"
#include "amfield/verification.hpp"

namespace amfield {

using json = nlohmann::ordered_json;

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// One circularly polarized +z mode of a plane_wave_pair source.
struct CPModeParams {
    double omega = 0.0;
    Complex e0{0.0, 0.0};  // scalar amplitude; phasor is e0 (x + iy)/sqrt(2)
};

// A general plane-wave mode for custom mode lists.
struct GeneralModeParams {
    double omega = 0.0;
    Vec3 k = Vec3::Zero();
    CVec3 amplitude = CVec3::Zero();
};

struct FiberPairParams {
    FiberSpec spec;
    FiberFamily family1 = FiberFamily::HE;
    int n1 = 1, m1 = 1;
    double lambda1 = 4.3e-6;
    FiberFamily family2 = FiberFamily::HE;
    int n2 = 1, m2 = 2;
    double lambda2_guess = 4.29e-6;
    double amplitude = 1.0;
};

struct DiracModeParams {
    Vec3 p = Vec3::Zero();
    SpinLabel spin = SpinLabel::Up;
    double mass = 1.0;
    Complex amplitude{1.0, 0.0};
};

struct ScenarioConfig {
    std::string name;
    std::string kind;  // plane_wave_pair | plane_wave_list | fiber_pair |
                       // dirac_superposition
    std::string units = "SI";  // SI | natural (dirac only)
    Vec3 origin = Vec3::Zero();  // r-origin for OAM quantities
    GridSpec grid;
    std::string derivatives = "analytic";  // analytic | fd
    int fd_order = 2;
    double tolerance = 1e-10;
    std::vector<std::string> checks;
    bool export_maps = false;

    std::vector<CPModeParams> cp_modes;
    std::vector<GeneralModeParams> general_modes;
    FiberPairParams fiber;
    std::vector<DiracModeParams> dirac_modes;
};

ScenarioConfig parse_config(const json& j);
ScenarioConfig load_config(const std::string& path);
json config_to_json(const ScenarioConfig& c);

std::vector<std::string> bundled_scenario_names();
ScenarioConfig bundled_scenario(const std::string& name);

// Sources and samplers constructed from a config.
struct BuiltScenario {
    bool is_dirac = false;
    EMScenario em;
    DiracScenario dirac;
    std::vector<PlaneWaveMode> plane_modes;  // empty for fiber sources
    std::vector<FiberMode> fiber_modes;      // empty for plane sources
};

BuiltScenario build_scenario(const ScenarioConfig& c);

struct RunOptions {
    std::string out_dir;  // empty = no file output
    // Optional CLI overrides; empty / 0 / NaN mean "use the config value".
    std::string derivatives;
    int fd_order = 0;
    double tolerance = 0.0;
};

struct RunResult {
    std::vector<ResidualReport> reports;
    std::vector<std::string> summary_lines;
    json extra;  // check-specific payloads (convergence orders, ...)
    bool all_pass = true;
};

RunResult run_scenario(const ScenarioConfig& config, const RunOptions& opts);

}  // namespace amfield
