#include "harness/config.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "ssefd/errors.hpp"

namespace ssefd::harness {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

const std::map<std::string, std::set<std::string>> kSchema = {
    {"system", {"omega_e_rad_s", "z11_rb", "z22_rb", "z12_rb"}},
    {"drive", {"amplitude_v_per_cm", "omega_l_rad_s", "phase_rad"}},
    {"rates",
     {"decay_rad_s", "decay_over_omega_2w", "dephasing_rad_s", "dephasing_over_omega_2w"}},
    {"propagation", {"t_end_ns", "output_samples", "rel_tol", "abs_tol", "frame"}},
    {"sweep", {"parameter", "min", "max", "count"}},
    {"intensity", {"half_range_over_K", "curve_samples", "omega_2w_over_K"}},
    {"spectrum", {"t_end_ns", "output_samples"}},
    {"hydrogenic", {"n_max", "holding_field_v_per_cm", "probe_field_v_per_cm"}},
};

double parse_double(const std::string& val, int line) {
    try {
        std::size_t used = 0;
        const double v = std::stod(val, &used);
        if (used != val.size())
            throw ConfigError("line " + std::to_string(line) + ": malformed number '" + val + "'");
        return v;
    } catch (const std::invalid_argument&) {
        throw ConfigError("line " + std::to_string(line) + ": malformed number '" + val + "'");
    } catch (const std::out_of_range&) {
        throw ConfigError("line " + std::to_string(line) + ": number out of range '" + val + "'");
    }
}

int parse_int(const std::string& val, int line) {
    const double v = parse_double(val, line);
    if (v != std::floor(v))
        throw ConfigError("line " + std::to_string(line) + ": expected an integer, got '" + val +
                          "'");
    return static_cast<int>(v);
}

}  // namespace

ScenarioConfig parse_config(const std::string& text) {
    ScenarioConfig cfg;
    cfg.source_text = text;

    std::set<std::string> seen_keys;
    std::set<std::string> seen_sections;
    std::string section;
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;

    bool rates_present = false;
    ScenarioConfig::Rates rates;
    bool sweep_present = false;
    ScenarioConfig::Sweep sweep;
    std::set<std::string> sweep_keys;
    bool have_system = false, have_drive = false;

    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = raw;
        if (const auto pos = line.find_first_of("#;"); pos != std::string::npos)
            line = line.substr(0, pos);
        line = trim(line);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("line " + std::to_string(line_no) + ": malformed section header");
            section = trim(line.substr(1, line.size() - 2));
            if (!kSchema.count(section))
                throw ConfigError("line " + std::to_string(line_no) + ": unknown section [" +
                                  section + "]");
            if (!seen_sections.insert(section).second)
                throw ConfigError("line " + std::to_string(line_no) + ": duplicate section [" +
                                  section + "]");
            if (section == "rates") rates_present = true;
            if (section == "sweep") sweep_present = true;
            if (section == "system") have_system = true;
            if (section == "drive") have_drive = true;
            continue;
        }

        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (section.empty())
            throw ConfigError("line " + std::to_string(line_no) + ": key outside any section");
        if (!kSchema.at(section).count(key))
            throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" + key +
                              "' in [" + section + "]");
        if (!seen_keys.insert(section + "." + key).second)
            throw ConfigError("line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
        if (val.empty())
            throw ConfigError("line " + std::to_string(line_no) + ": empty value for '" + key +
                              "'");

        if (section == "system") {
            if (key == "omega_e_rad_s") cfg.omega_e_rad_s = parse_double(val, line_no);
            else if (key == "z11_rb") cfg.z11_rb = parse_double(val, line_no);
            else if (key == "z22_rb") cfg.z22_rb = parse_double(val, line_no);
            else cfg.z12_rb = parse_double(val, line_no);
        } else if (section == "drive") {
            if (key == "amplitude_v_per_cm") cfg.amplitude_v_per_cm = parse_double(val, line_no);
            else if (key == "omega_l_rad_s") {
                if (val != "auto") cfg.omega_l_rad_s = parse_double(val, line_no);
            } else cfg.phase_rad = parse_double(val, line_no);
        } else if (section == "rates") {
            if (key == "decay_rad_s") rates.decay_rad_s = parse_double(val, line_no);
            else if (key == "decay_over_omega_2w")
                rates.decay_over_omega_2w = parse_double(val, line_no);
            else if (key == "dephasing_rad_s") rates.dephasing_rad_s = parse_double(val, line_no);
            else rates.dephasing_over_omega_2w = parse_double(val, line_no);
        } else if (section == "propagation") {
            if (key == "t_end_ns") cfg.t_end_ns = parse_double(val, line_no);
            else if (key == "output_samples") cfg.output_samples = parse_int(val, line_no);
            else if (key == "rel_tol") cfg.rel_tol = parse_double(val, line_no);
            else if (key == "abs_tol") cfg.abs_tol = parse_double(val, line_no);
            else {
                if (val != "lab_eq3" && val != "effective_HR_eq6" && val != "effective_HL_eq8")
                    throw ConfigError("line " + std::to_string(line_no) + ": unknown frame '" +
                                      val + "'");
                cfg.frame = val;
            }
        } else if (section == "sweep") {
            sweep_keys.insert(key);
            if (key == "parameter") sweep.parameter = val;
            else if (key == "min") sweep.min = parse_double(val, line_no);
            else if (key == "max") sweep.max = parse_double(val, line_no);
            else sweep.count = parse_int(val, line_no);
        } else if (section == "intensity") {
            if (key == "half_range_over_K") cfg.half_range_over_K = parse_double(val, line_no);
            else if (key == "curve_samples") cfg.curve_samples = parse_int(val, line_no);
            else cfg.omega_2w_over_K = parse_double(val, line_no);
        } else if (section == "spectrum") {
            if (key == "t_end_ns") cfg.spectrum_t_end_ns = parse_double(val, line_no);
            else cfg.spectrum_samples = parse_int(val, line_no);
        } else {  // hydrogenic
            if (key == "n_max") cfg.n_max = parse_int(val, line_no);
            else if (key == "holding_field_v_per_cm")
                cfg.holding_field_v_per_cm = parse_double(val, line_no);
            else cfg.probe_field_v_per_cm = parse_double(val, line_no);
        }
    }

    if (!have_system) throw ConfigError("missing required section [system]");
    if (!have_drive) throw ConfigError("missing required section [drive]");
    if (rates_present) {
        if (rates.decay_rad_s && rates.decay_over_omega_2w)
            throw ConfigError("[rates]: give decay_rad_s or decay_over_omega_2w, not both");
        if (rates.dephasing_rad_s && rates.dephasing_over_omega_2w)
            throw ConfigError("[rates]: give dephasing_rad_s or dephasing_over_omega_2w, not both");
        if (!rates.decay_rad_s && !rates.decay_over_omega_2w)
            throw ConfigError("[rates]: missing the decay rate");
        if (!rates.dephasing_rad_s && !rates.dephasing_over_omega_2w)
            throw ConfigError("[rates]: missing the dephasing rate");
        cfg.rates = rates;
    }
    if (sweep_present) {
        for (const char* k : {"parameter", "min", "max", "count"})
            if (!sweep_keys.count(k))
                throw ConfigError(std::string("[sweep]: missing key '") + k + "'");
        if (sweep.count < 2) throw ConfigError("[sweep]: count must be >= 2");
        if (!(sweep.max > sweep.min)) throw ConfigError("[sweep]: max must exceed min");
        const std::set<std::string> axes = {"delta_prime_over_K", "amplitude_v_per_cm",
                                            "omega_l_rad_s"};
        if (!axes.count(sweep.parameter))
            throw ConfigError("[sweep]: unknown parameter '" + sweep.parameter + "'");
        cfg.sweep = sweep;
    }
    return cfg;
}

ResolvedScenario resolve(const ScenarioConfig& cfg) {
    ResolvedScenario r;
    r.constants = PhysicalConstants::liquid_helium();
    const double rb = r.constants.bohr_rB;

    r.sys.omega_e = cfg.omega_e_rad_s;
    r.sys.z11 = cfg.z11_rb * rb;
    r.sys.z22 = cfg.z22_rb * rb;
    r.sys.z12 = cfg.z12_rb * rb;
    try {
        r.sys.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("[system]: ") + e.what());
    }

    r.drive.amplitude = cfg.amplitude_v_per_cm * 100.0;
    r.drive.phase = cfg.phase_rad;
    if (cfg.omega_l_rad_s) {
        r.drive.omega_l = *cfg.omega_l_rad_s;
    } else {
        r.omega_l_auto = true;
        DriveField probe = r.drive;
        probe.omega_l = 1.0;  // couplings do not depend on omega_l
        const double rabi = drive_couplings(r.sys, probe, r.constants).omega_rabi;
        r.drive.omega_l = resonant_delta(r.sys, rabi).omega_l;
    }
    try {
        r.drive.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("[drive]: ") + e.what());
    }

    r.params = derive_drive_params(r.sys, r.drive, r.constants);

    if (cfg.rates) {
        DissipationRates rates;
        const double w2 = std::abs(r.params.omega_rabi_2w);
        rates.Gamma = cfg.rates->decay_rad_s ? *cfg.rates->decay_rad_s
                                             : *cfg.rates->decay_over_omega_2w * w2;
        rates.gamma = cfg.rates->dephasing_rad_s ? *cfg.rates->dephasing_rad_s
                                                 : *cfg.rates->dephasing_over_omega_2w * w2;
        try {
            rates.validate();
        } catch (const std::invalid_argument& e) {
            throw ConfigError(std::string("[rates]: ") + e.what());
        }
        r.rates = rates;
    }

    r.prop.t_end = cfg.t_end_ns * 1e-9;
    r.prop.output_samples = cfg.output_samples;
    r.prop.rel_tol = cfg.rel_tol;
    r.prop.abs_tol = cfg.abs_tol;
    r.prop.frame = cfg.frame == "lab_eq3" ? Frame::lab_eq3
                  : cfg.frame == "effective_HR_eq6" ? Frame::effective_HR_eq6
                                                    : Frame::effective_HL_eq8;
    try {
        r.prop.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("[propagation]: ") + e.what());
    }
    return r;
}

}  // namespace ssefd::harness
