#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "harness/config.hpp"
#include "harness/runner.hpp"
#include "ssefd/errors.hpp"

namespace {

using ssefd::harness::ScenarioConfig;

struct CommonArgs {
    std::string config_path;
    std::string preset;
    std::string out_dir;
    int workers = 0;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool with_workers = false) {
    cmd->add_option("--config", args.config_path, "Path to a key = value config file");
    cmd->add_option("--preset", args.preset,
                    "Embedded preset: fig1a, fig1b, fig2, natural-atom");
    cmd->add_option("--out", args.out_dir, "Output directory for CSV files and the manifest");
    if (with_workers)
        cmd->add_option("--workers", args.workers,
                        "Worker threads (default: SSE_FD_WORKERS or 1)");
}

ScenarioConfig load_config(const CommonArgs& args) {
    if (!args.config_path.empty() && !args.preset.empty())
        throw ssefd::ConfigError("give either --config or --preset, not both");
    std::string text;
    if (!args.config_path.empty()) {
        std::ifstream in(args.config_path);
        if (!in) throw ssefd::ConfigError("cannot read config file " + args.config_path);
        std::ostringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    } else {
        text = ssefd::harness::preset_text(args.preset.empty() ? "fig1a" : args.preset);
    }
    return ssefd::harness::parse_config(text);
}

int resolve_workers(const CommonArgs& args) {
    if (args.workers > 0) return args.workers;
    if (const char* env = std::getenv("SSE_FD_WORKERS")) {
        const int w = std::atoi(env);
        if (w > 0) return w;
    }
    return 1;
}

void require_out(const CommonArgs& args, const char* cmd) {
    if (args.out_dir.empty())
        throw ssefd::ConfigError(std::string(cmd) + ": --out <dir> is required");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Frequency-doubling simulator for surface-state electrons on liquid helium"};
    app.require_subcommand(1);

    CommonArgs params_args, rabi_args, lindblad_args, steady_args, spectrum_args,
        hydrogenic_args, sweep_args;
    double omega_2w_over_k = 0.0;
    bool hydrogenic_report = false;

    add_common(app.add_subcommand("params", "Print the derived drive parameters"), params_args);
    add_common(app.add_subcommand("rabi", "Exact and effective population trajectories"),
               rabi_args);
    add_common(app.add_subcommand("lindblad", "Damped trajectories with both generators"),
               lindblad_args);
    auto* steady_cmd =
        app.add_subcommand("steady", "Closed-form steady state and intensity lineshape");
    add_common(steady_cmd, steady_args);
    steady_cmd->add_option("--omega-L-over-K", omega_2w_over_k,
                           "Override the coupling as a ratio to K (detuning set to 0)");
    add_common(app.add_subcommand("spectrum", "Dipole spectrum of the lab-frame dynamics"),
               spectrum_args);
    auto* hydro_cmd = app.add_subcommand("hydrogenic", "First-principles eigenproblem outputs");
    add_common(hydro_cmd, hydrogenic_args);
    hydro_cmd->add_flag("--report", hydrogenic_report, "Print the report to stdout");
    add_common(app.add_subcommand("sweep", "Deterministic parameter sweep"), sweep_args, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (app.got_subcommand("params")) {
            std::cout << ssefd::harness::params_report(load_config(params_args));
        } else if (app.got_subcommand("rabi")) {
            require_out(rabi_args, "rabi");
            ssefd::harness::cmd_rabi(load_config(rabi_args), rabi_args.out_dir);
        } else if (app.got_subcommand("lindblad")) {
            require_out(lindblad_args, "lindblad");
            ssefd::harness::cmd_lindblad(load_config(lindblad_args), lindblad_args.out_dir);
        } else if (app.got_subcommand("steady")) {
            ScenarioConfig cfg = load_config(steady_args);
            if (omega_2w_over_k > 0.0) cfg.omega_2w_over_K = omega_2w_over_k;
            std::cout << ssefd::harness::cmd_steady(cfg, steady_args.out_dir);
        } else if (app.got_subcommand("spectrum")) {
            std::cout << ssefd::harness::cmd_spectrum(load_config(spectrum_args),
                                                      spectrum_args.out_dir);
        } else if (app.got_subcommand("hydrogenic")) {
            const std::string rep =
                ssefd::harness::cmd_hydrogenic(load_config(hydrogenic_args),
                                               hydrogenic_args.out_dir);
            if (hydrogenic_report || hydrogenic_args.out_dir.empty()) std::cout << rep;
        } else if (app.got_subcommand("sweep")) {
            require_out(sweep_args, "sweep");
            ssefd::harness::cmd_sweep(load_config(sweep_args), sweep_args.out_dir,
                                      resolve_workers(sweep_args));
        }
    } catch (const ssefd::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const ssefd::NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
