#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "agt/cli.hpp"

namespace {

void add_common_flags(CLI::App* app, agt::cli::CliConfig& config) {
    app->add_option("--omega", config.omega, "energy scale of the couplings");
    app->add_option("--schedule", config.schedule, "interpolation schedule: linear | smoothstep");
    app->add_option("--out", config.out_dir, "output directory");
    app->add_option("--seed", config.seed, "seed for random input states");
}

void add_run_flags(CLI::App* app, agt::cli::CliConfig& config) {
    app->add_option("--T", config.total_time, "total evolution time in units of 1/omega");
    app->add_option("--steps", config.steps, "propagation steps (0: 100 T omega, at least 1000)");
    app->add_option("--state", config.state,
                    "input state: basis labels over {0,1,+,-}, amplitude list, or 'random'");
}

int exit_code_for(const std::exception& error) {
    if (dynamic_cast<const agt::ParseError*>(&error)) return 2;
    if (dynamic_cast<const agt::Error*>(&error)) return 3;
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    // Threaded BLAS reductions can reorder floating-point sums between runs;
    // reports must be byte-identical for identical configs.
    setenv("OPENBLAS_NUM_THREADS", "1", 0);

    agt::cli::CliConfig config;
    CLI::App app{"adiabatic gate teleportation simulator"};
    app.require_subcommand(1);

    std::string t_list;
    std::string r_list;
    std::vector<double> deltas, gammas;

    auto* teleport = app.add_subcommand("teleport", "run the three-qubit swap protocol");
    auto* agt_cmd = app.add_subcommand("agt", "teleport through a gate-rotated coupling");
    auto* agp_cmd = app.add_subcommand("agp", "rotate a standing pair coupling into a gate");
    auto* agt2 = app.add_subcommand("agt2", "two-qubit controlled-phase teleportation");
    auto* isotropic = app.add_subcommand("isotropic", "swap protocol on isotropic exchange");
    auto* nogo = app.add_subcommand("nogo", "two-qubit diagonal-interpolation obstruction");
    auto* gadget = app.add_subcommand("gadget", "two-body gadget analyses");
    auto* gap = app.add_subcommand("gap", "gap profile of a protocol");
    auto* sweep = app.add_subcommand("sweep", "fidelity and leakage across evolution times");
    auto* compile = app.add_subcommand("compile", "compile a circuit into a drag schedule");
    auto* simulate = app.add_subcommand("simulate", "simulate a compiled schedule");

    for (CLI::App* sub : {teleport, agt_cmd, agp_cmd, agt2, isotropic, nogo, gadget, gap, sweep,
                          compile, simulate}) {
        add_common_flags(sub, config);
    }
    for (CLI::App* sub : {teleport, agt_cmd, agp_cmd, agt2, isotropic, simulate}) {
        add_run_flags(sub, config);
    }

    agt_cmd->add_option("--gate", config.gate, "gate name: I | H | A | B | Adag | Bdag | X");
    agp_cmd->add_option("--gate", config.gate, "gate name: A | B");
    gap->add_option("--gate", config.gate, "gate for the agt/agp protocols");
    sweep->add_option("--gate", config.gate, "gate for the agt/agp protocols");

    nogo->add_option("--delta", deltas, "three positive energies, delta_1 smallest")
        ->expected(3);
    nogo->add_option("--gamma", gammas, "three positive energies, gamma_1 smallest")
        ->expected(3);
    nogo->add_option("--T", config.total_time, "evolution time for the swap-fidelity check");
    nogo->add_option("--grid", config.grid, "number of sampled s points");

    gadget->add_option("--r", r_list, "coupling ratio lambda/omega, or a comma list for alpha");
    gadget->add_option("--analysis", config.analysis, "alpha | gap | bound | run");
    gadget->add_option("--grid", config.grid, "grid points for gap/bound analyses");
    gadget->add_option("--T", config.gadget_time, "evolution time (default 200/(omega r^2))");
    gadget->add_option("--steps", config.steps, "propagation steps for the run analysis");
    gadget->add_option("--state", config.state, "two-qubit input for the run analysis");

    gap->add_option("--protocol", config.protocol, "teleport | isotropic | agt | agp | agt2");
    gap->add_option("--grid", config.grid, "number of sampled s points");
    gap->add_option("--refine-tol", config.refine_tol, "s-width of the refined minimum");

    sweep->add_option("--protocol", config.protocol, "teleport | isotropic | agt | agp | agt2");
    sweep->add_option("--T", t_list, "comma-separated evolution times")->required();
    sweep->add_option("--steps", config.steps, "propagation steps (0: per-T default)");
    sweep->add_option("--state", config.state, "input state descriptor");
    sweep->add_option("--grid", config.grid, "gap-profile grid points");

    compile->add_option("--circuit", config.circuit_path, "circuit file, one gate per line")
        ->required();
    compile->add_option("--layout", config.layout, "chain | 3n");
    compile->add_flag("--gadgetize", config.gadgetize,
                      "emit the two-body gadget form of CZ steps");

    simulate->add_option("--circuit", config.circuit_path, "circuit file to compile and run");
    simulate->add_option("--program", config.program_path, "precompiled schedule JSON");
    simulate->add_option("--layout", config.layout, "chain | 3n (with --circuit)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        nlohmann::json error{{"error", {{"type", "usage"}, {"message", e.what()}}}};
        std::cerr << error.dump() << "\n";
        return 2;
    }

    config.subcommand = app.get_subcommands().front()->get_name();
    try {
        if (!t_list.empty()) config.t_values = agt::cli::cli_detail::parse_double_list(t_list);
        if (!r_list.empty()) {
            config.r_values = agt::cli::cli_detail::parse_double_list(r_list);
            config.r = config.r_values.front();
        }
        if (deltas.size() == 3) std::copy(deltas.begin(), deltas.end(), config.delta.begin());
        if (gammas.size() == 3) std::copy(gammas.begin(), gammas.end(), config.gamma.begin());
        return agt::cli::dispatch(config);
    } catch (const std::exception& e) {
        int code = exit_code_for(e);
        nlohmann::json error{
            {"error",
             {{"type", code == 2 ? "usage" : "domain"}, {"message", std::string(e.what())}}}};
        std::cerr << error.dump() << "\n";
        return code;
    }
}
