#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "agt/compiler.hpp"
#include "agt/dynamics.hpp"
#include "agt/gadgets.hpp"
#include "agt/io.hpp"
#include "agt/protocols.hpp"

namespace agt::cli {

struct CliConfig {
    std::string subcommand;
    double omega = 1.0;
    double total_time = 50.0;
    std::vector<double> t_values;  // sweep points
    int steps = 0;                 // 0: max(1000, ceil(100 T omega))
    std::string schedule = "linear";
    std::string gate = "I";
    std::string protocol = "teleport";
    std::string state;  // empty: basis zero state; "random" honors the seed
    std::uint64_t seed = 17;
    double r = 0.1;
    double gadget_time = 0.0;  // 0: 200/(omega r^2)
    std::vector<double> r_values;
    std::string analysis = "alpha";
    std::array<double, 3> delta{1.0, 2.0, 3.0};
    std::array<double, 3> gamma{1.0, 2.0, 3.0};
    int grid = 101;
    double refine_tol = 1e-6;
    std::string circuit_path;
    std::string program_path;
    std::string layout = "chain";
    bool gadgetize = false;
    std::string out_dir = ".";
};

namespace cli_detail {

inline Eigen::Vector2cd single_qubit_amplitudes(char label) {
    Eigen::Vector2cd v;
    switch (label) {
        case '0': v << 1, 0; return v;
        case '1': v << 0, 1; return v;
        case '+': v << 1 / std::numbers::sqrt2, 1 / std::numbers::sqrt2; return v;
        case '-': v << 1 / std::numbers::sqrt2, -1 / std::numbers::sqrt2; return v;
    }
    throw ParseError(std::string("unknown basis label '") + label + "'");
}

inline std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> values;
    std::stringstream stream(text);
    std::string item;
    while (std::getline(stream, item, ',')) {
        if (item.empty()) continue;
        values.push_back(std::stod(item));
    }
    if (values.empty()) throw ParseError("expected a comma-separated list of numbers");
    return values;
}

/// Input-state descriptors: per-qubit basis labels over {0,1,+,-} ("0",
/// "+1", ...), a comma list of 2^n real amplitudes (normalized here), or
/// "random" for a Haar state drawn from the seed.
inline StateVector parse_state(const std::string& descriptor, int n_qubits, std::uint64_t seed) {
    if (descriptor.empty()) return basis_state(n_qubits, 0);
    if (descriptor == "random") return random_state(n_qubits, seed);
    if (descriptor.find(',') != std::string::npos) {
        std::vector<double> values = parse_double_list(descriptor);
        if (values.size() != (std::size_t{1} << n_qubits)) {
            throw ParseError("amplitude list must have 2^" + std::to_string(n_qubits) +
                             " entries");
        }
        Eigen::VectorXcd v(static_cast<Eigen::Index>(values.size()));
        for (std::size_t i = 0; i < values.size(); ++i) v[static_cast<Eigen::Index>(i)] = values[i];
        return StateVector::normalized(n_qubits, std::move(v));
    }
    if (static_cast<int>(descriptor.size()) != n_qubits) {
        throw ParseError("state label \"" + descriptor + "\" must name " +
                         std::to_string(n_qubits) + " qubit(s)");
    }
    StateVector state(0, Eigen::VectorXcd::Ones(1));
    for (char c : descriptor) {
        state = tensor(state, StateVector(1, single_qubit_amplitudes(c)));
    }
    return state;
}

inline GateSpec gate_by_cli_name(const std::string& name) {
    return GateSpec::by_name(name);
}

inline ProtocolSpec protocol_by_name(const std::string& protocol, const std::string& gate,
                                     double omega) {
    if (protocol == "teleport") return teleportation_protocol(omega);
    if (protocol == "isotropic") return isotropic_teleportation(omega);
    if (protocol == "agt") return agt_single(gate_by_cli_name(gate), omega);
    if (protocol == "agp") return agp(gate_by_cli_name(gate), omega);
    if (protocol == "agt2") return agt_two_qubit(omega);
    throw ParseError("unknown protocol \"" + protocol + "\"");
}

inline std::filesystem::path out_path(const CliConfig& config, const std::string& filename) {
    return std::filesystem::path(config.out_dir) / filename;
}

inline void emit(const CliConfig& config, const std::string& filename,
                 const std::string& content) {
    auto path = out_path(config, filename);
    io::write_text(path, content);
    std::cout << "wrote " << path.string() << "\n";
}

inline void apply_schedule(ProtocolSpec& spec, const std::string& tag) {
    spec.hamiltonian.schedule = Schedule::by_tag(tag);
}

inline RunReport run_named_protocol(const CliConfig& config, const ProtocolSpec& spec_in,
                                    double total_time) {
    ProtocolSpec spec = spec_in;
    apply_schedule(spec, config.schedule);
    StateVector psi_in = parse_state(config.state, std::max(spec.logical_inputs, 1), config.seed);
    ProtocolRunOptions options;
    options.propagation.total_time = total_time;
    options.propagation.steps =
        config.steps > 0 ? config.steps
                         : PropagationConfig::default_steps(total_time, config.omega);
    options.gap_grid_points = config.grid;
    options.gap_refine_tol = config.refine_tol;
    RunReport report = run_protocol(spec, psi_in, options);
    report.omega = config.omega;
    report.input_label = config.state.empty() ? std::string(
                             static_cast<std::size_t>(std::max(spec.logical_inputs, 1)), '0')
                                              : config.state;
    return report;
}

inline std::string file_stem(const std::string& protocol_name) {
    std::string stem = protocol_name;
    for (auto& c : stem)
        if (c == ':') c = '_';
    return stem;
}

inline int run_protocol_command(const CliConfig& config) {
    ProtocolSpec spec = protocol_by_name(config.subcommand, config.gate, config.omega);
    apply_schedule(spec, config.schedule);
    RunReport report = run_named_protocol(config, spec, config.total_time);
    std::string stem = file_stem(spec.name);
    emit(config, stem + "_protocol.json", io::protocol_to_json(spec).dump(2) + "\n");
    emit(config, stem + "_report.json", io::to_json(report).dump(2) + "\n");
    std::cout << spec.name << ": fidelity " << io::format_double(report.fidelity) << ", leakage "
              << io::format_double(report.leakage) << ", min gap "
              << io::format_double(report.min_gap) << " at s=" << io::format_double(report.min_gap_s)
              << "\n";
    return 0;
}

inline int run_nogo(const CliConfig& config) {
    NoGoConfig nogo;
    nogo.delta = config.delta;
    nogo.gamma = config.gamma;
    nogo.schedule = Schedule::by_tag(config.schedule);
    NoGoReport report = no_go_diagonal(nogo, config.grid, config.total_time);
    emit(config, "nogo_report.json", io::to_json(report).dump(2) + "\n");
    std::cout << "nogo: max off-diagonal " << io::format_double(report.max_offdiagonal)
              << ", swap fidelity " << io::format_double(report.swap_fidelity) << "\n";
    return 0;
}

inline int run_gadget_command(const CliConfig& config) {
    if (config.analysis == "alpha") {
        std::vector<double> rs = config.r_values.empty() ? std::vector<double>{config.r}
                                                         : config.r_values;
        io::CsvWriter csv({"r", "alpha_closed", "alpha_numeric"});
        for (double r : rs) {
            csv.add_row({io::format_double(r), io::format_double(gadget_alpha(r)),
                         io::format_double(gadget_overlap_numeric(r))});
        }
        emit(config, "gadget_alpha.csv", csv.str());
        return 0;
    }
    if (config.analysis == "gap") {
        io::CsvWriter csv({"s", "gap_closed", "gap_numeric", "bound"});
        RealizedFamily reduced(gadget_reduced_family(config.r));
        for (int k = 0; k < config.grid; ++k) {
            double s = static_cast<double>(k) / (config.grid - 1);
            SpectrumResult es = spectrum(reduced.at(s));
            double numeric = es.eigenvalues[1] - es.eigenvalues[0];
            csv.add_row({io::format_double(s), io::format_double(gadget_gap_closed(s, config.r)),
                         io::format_double(numeric), io::format_double(config.r * config.r)});
        }
        emit(config, "gadget_gap.csv", csv.str());
        return 0;
    }
    if (config.analysis == "bound") {
        GadgetBoundReport report = gadget_gap_bound_check(config.r, config.grid);
        emit(config, "gadget_bound.json", io::to_json(report).dump(2) + "\n");
        std::cout << "gadget bound r=" << io::format_double(config.r) << ": min gap "
                  << io::format_double(report.min_gap) << (report.holds ? " >= " : " < ")
                  << io::format_double(report.bound) << "\n";
        return 0;
    }
    if (config.analysis == "run") {
        CouplingConfig coupling{config.omega, config.r * config.omega};
        StateVector psi_in = parse_state(config.state, 2, config.seed);
        GadgetRunOptions options;
        options.total_time = config.gadget_time;
        options.steps = config.steps;
        RunReport report = run_gadget(psi_in, coupling, options);
        report.input_label = config.state.empty() ? "00" : config.state;
        emit(config, "gadget_run_report.json", io::to_json(report).dump(2) + "\n");
        std::cout << "gadget run r=" << io::format_double(config.r) << ": fidelity "
                  << io::format_double(report.fidelity) << ", leakage "
                  << io::format_double(report.leakage) << "\n";
        return 0;
    }
    throw ParseError("unknown gadget analysis \"" + config.analysis + "\"");
}

inline int run_gap(const CliConfig& config) {
    ProtocolSpec spec = protocol_by_name(config.protocol, config.gate, config.omega);
    apply_schedule(spec, config.schedule);
    GapProfile profile =
        gap_profile(spec.hamiltonian, config.grid, config.refine_tol);
    std::string stem = file_stem(spec.name);
    emit(config, "gap_" + stem + ".csv", io::gap_profile_csv(profile));
    std::cout << "min gap " << io::format_double(profile.gap_min) << " at s="
              << io::format_double(profile.s_min) << "\n";
    return 0;
}

inline int run_sweep(const CliConfig& config) {
    if (config.t_values.empty()) {
        throw ParseError("sweep requires --T with a comma-separated list of times");
    }
    ProtocolSpec spec = protocol_by_name(config.protocol, config.gate, config.omega);
    apply_schedule(spec, config.schedule);
    std::vector<double> times = config.t_values;
    std::sort(times.begin(), times.end());
    io::CsvWriter csv({"T", "fidelity", "leakage", "min_gap"});
    for (double t : times) {
        RunReport report = run_named_protocol(config, spec, t);
        csv.add_row({io::format_double(t), io::format_double(report.fidelity),
                     io::format_double(report.leakage), io::format_double(report.min_gap)});
    }
    std::string stem = file_stem(spec.name);
    emit(config, "sweep_" + stem + ".csv", csv.str());
    return 0;
}

inline CompiledProgram compile_from_config(const CliConfig& config) {
    if (config.circuit_path.empty()) {
        throw ParseError("compile requires --circuit <file>");
    }
    std::ifstream in(config.circuit_path);
    if (!in) throw ParseError("cannot read circuit file " + config.circuit_path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    CircuitProgram circuit = CircuitProgram::parse(buffer.str());
    if (config.layout == "chain") return compile_chain(circuit, config.omega);
    if (config.layout == "3n") return compile_3n(circuit, config.gadgetize, config.omega);
    throw ParseError("unknown layout \"" + config.layout + "\"");
}

inline int run_compile(const CliConfig& config) {
    CompiledProgram program = compile_from_config(config);
    validate_structure(program);
    std::string stem = layout_tag(program.layout) + (program.gadgetized ? "_gadget" : "");
    emit(config, "compiled_" + stem + ".json", io::to_json(program).dump(2) + "\n");
    std::cout << "compiled " << program.segments.size() << " segment(s) on "
              << program.n_physical << " physical qubit(s)\n";
    return 0;
}

inline int run_simulate(const CliConfig& config) {
    CompiledProgram program;
    if (!config.program_path.empty()) {
        std::ifstream in(config.program_path);
        if (!in) throw ParseError("cannot read program file " + config.program_path);
        io::json j = io::json::parse(in);
        program = io::compiled_from_json(j);
    } else {
        program = compile_from_config(config);
    }
    StateVector psi_in = parse_state(config.state, program.n_logical, config.seed);
    RunReport report = simulate_program(program, psi_in, config.total_time,
                                        Schedule::by_tag(config.schedule), config.steps);
    report.input_label = config.state.empty()
                             ? std::string(static_cast<std::size_t>(program.n_logical), '0')
                             : config.state;
    emit(config, "simulate_report.json", io::to_json(report).dump(2) + "\n");
    std::cout << "simulate: fidelity " << io::format_double(report.fidelity) << ", leakage "
              << io::format_double(report.leakage) << ", min gap "
              << io::format_double(report.min_gap) << "\n";
    return 0;
}

}  // namespace cli_detail

inline int dispatch(const CliConfig& config) {
    using namespace cli_detail;
    const std::string& cmd = config.subcommand;
    if (cmd == "teleport" || cmd == "isotropic" || cmd == "agt2" || cmd == "agt" || cmd == "agp") {
        return run_protocol_command(config);
    }
    if (cmd == "nogo") return run_nogo(config);
    if (cmd == "gadget") return run_gadget_command(config);
    if (cmd == "gap") return run_gap(config);
    if (cmd == "sweep") return run_sweep(config);
    if (cmd == "compile") return run_compile(config);
    if (cmd == "simulate") return run_simulate(config);
    throw ParseError("unknown subcommand \"" + cmd + "\"");
}

}  // namespace agt::cli
