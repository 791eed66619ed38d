#pragma once

#include <filesystem>
#include <string>

#include "harness/config.hpp"

namespace ssefd::harness {

inline constexpr const char* kToolVersion = "0.1.0";

// Formats a double with 17 significant digits (round-trip safe).
std::string fmt(double v);

// Effective-parameter report (with units and the weak-drive check).
std::string params_report(const ScenarioConfig& cfg);

// Trajectory of the exact lab-frame propagation plus the closed-form
// second-harmonic trajectory; writes trajectory_exact.csv and
// trajectory_effective.csv.
void cmd_rabi(const ScenarioConfig& cfg, const std::filesystem::path& out);

// Master-equation trajectories with both generators; writes
// trajectory_effective.csv and trajectory_lab.csv.
void cmd_lindblad(const ScenarioConfig& cfg, const std::filesystem::path& out);

// Steady-state report (steady.txt) plus the intensity lineshape
// (intensity.csv). Returns the report text.
std::string cmd_steady(const ScenarioConfig& cfg, const std::filesystem::path& out);

// Dipole spectrum of the lab-frame dynamics; writes spectrum.csv and
// spectrum_report.txt. Returns the report text.
std::string cmd_spectrum(const ScenarioConfig& cfg, const std::filesystem::path& out);

// First-principles eigenproblem outputs: wavefunctions.csv and
// hydrogenic_report.txt. Returns the report text.
std::string cmd_hydrogenic(const ScenarioConfig& cfg, const std::filesystem::path& out);

// Long-format parameter sweep; deterministic row order for any worker count.
std::string sweep_to_csv(const ScenarioConfig& cfg, int workers);
void cmd_sweep(const ScenarioConfig& cfg, const std::filesystem::path& out, int workers);

}  // namespace ssefd::harness
