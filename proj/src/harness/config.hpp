#pragma once

#include <optional>
#include <string>

#include "ssefd/dynamics.hpp"
#include "ssefd/lindblad.hpp"
#include "ssefd/model.hpp"

namespace ssefd::harness {

// Flat key = value configuration with [section] headers. Unknown sections or
// keys are rejected with line diagnostics.
struct ScenarioConfig {
    // [system]
    double omega_e_rad_s = 0.0;
    double z11_rb = 0.0;
    double z22_rb = 0.0;
    double z12_rb = 0.0;

    // [drive]
    double amplitude_v_per_cm = 0.0;
    std::optional<double> omega_l_rad_s;  // empty = "auto" (solve the resonance)
    double phase_rad = 0.0;

    // [rates], optional; either absolute rates or ratios to the derived
    // second-harmonic Rabi frequency.
    struct Rates {
        std::optional<double> decay_rad_s;
        std::optional<double> decay_over_omega_2w;
        std::optional<double> dephasing_rad_s;
        std::optional<double> dephasing_over_omega_2w;
    };
    std::optional<Rates> rates;

    // [propagation]
    double t_end_ns = 20.0;
    int output_samples = 4001;
    double rel_tol = 1e-9;
    double abs_tol = 1e-12;
    std::string frame = "lab_eq3";

    // [sweep], optional
    struct Sweep {
        std::string parameter;
        double min = 0.0;
        double max = 0.0;
        int count = 0;
    };
    std::optional<Sweep> sweep;

    // [intensity]
    double half_range_over_K = 5.0;
    int curve_samples = 101;
    double omega_2w_over_K = 0.0;  // > 0: override the derived coupling (ratio mode)

    // [spectrum]; zero means "choose automatically from the resolved drive"
    double spectrum_t_end_ns = 0.0;
    int spectrum_samples = 0;

    // [hydrogenic]
    int n_max = 2;
    double holding_field_v_per_cm = 0.0;
    double probe_field_v_per_cm = 0.25;

    std::string source_text;  // exact text this config was parsed from
};

ScenarioConfig parse_config(const std::string& text);

// Embedded presets: fig1a, fig1b, fig2, natural-atom.
std::string preset_text(const std::string& name);

// Physics-ready objects resolved from a config.
struct ResolvedScenario {
    TwoLevelSystem sys;
    DriveField drive;
    EffectiveParams params;
    std::optional<DissipationRates> rates;
    PropagationConfig prop;
    PhysicalConstants constants;
    bool omega_l_auto = false;
};

ResolvedScenario resolve(const ScenarioConfig& cfg);

}  // namespace ssefd::harness
