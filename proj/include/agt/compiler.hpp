#pragma once

#include <limits>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "agt/dynamics.hpp"
#include "agt/gadgets.hpp"
#include "agt/hamiltonian.hpp"
#include "agt/protocols.hpp"

namespace agt {

struct CircuitGate {
    std::string kind;  // "A", "B" or "CZ"
    int wire_a = 1;
    int wire_b = 0;  // second wire for CZ

    bool is_cz() const { return kind == "CZ"; }
};

/// Line-oriented circuit text: one gate per line (`A`, `B`, `CZ i j`),
/// blank lines and `#` comments ignored.
struct CircuitProgram {
    int n_wires = 1;
    std::vector<CircuitGate> gates;

    int length() const { return static_cast<int>(gates.size()); }

    static CircuitProgram parse(const std::string& text) {
        CircuitProgram program;
        std::istringstream stream(text);
        std::string line;
        int line_no = 0;
        while (std::getline(stream, line)) {
            ++line_no;
            auto hash = line.find('#');
            if (hash != std::string::npos) line = line.substr(0, hash);
            std::istringstream fields(line);
            std::string kind;
            if (!(fields >> kind)) continue;
            CircuitGate gate;
            gate.kind = kind;
            if (kind == "A" || kind == "B") {
                int wire = 1;
                if (fields >> wire) gate.wire_a = wire;
            } else if (kind == "CZ") {
                if (!(fields >> gate.wire_a >> gate.wire_b)) {
                    throw ParseError("line " + std::to_string(line_no) +
                                     ": CZ requires two wire indices");
                }
                if (gate.wire_a == gate.wire_b) {
                    throw ParseError("line " + std::to_string(line_no) +
                                     ": CZ wires must be distinct");
                }
            } else {
                throw ParseError("line " + std::to_string(line_no) + ": unknown gate \"" + kind +
                                 "\"");
            }
            if (gate.wire_a < 1 || gate.wire_b < 0) {
                throw ParseError("line " + std::to_string(line_no) + ": invalid wire index");
            }
            program.n_wires = std::max({program.n_wires, gate.wire_a, gate.wire_b});
            program.gates.push_back(gate);
        }
        return program;
    }
};

enum class Layout { Chain, Alt3n };

inline std::string layout_tag(Layout layout) {
    return layout == Layout::Chain ? "chain" : "3n";
}

/// One adiabatic drag of the compiled schedule. The swept pieces carry the
/// coupling being exchanged; idle couplings sit in static_terms so they stay
/// on at full strength for the whole segment.
struct Segment {
    int index = 0;      // 1-based position in the schedule
    std::string label;  // cyclic tag H1/H2/H3
    std::string gate_name;
    GateSpec imprint;  // the unitary conjugating this segment's fresh coupling
    std::vector<int> active_qubits;
    std::vector<std::pair<int, int>> fresh_pairs;  // pairs whose coupling this segment consumes
    PauliSum swept_initial;
    PauliSum swept_final;
    PauliSum static_terms;
    PauliSum start_hamiltonian;
    PauliSum end_hamiltonian;

    TimeDependentHamiltonian family(const Schedule& schedule) const {
        if (static_terms.empty()) {
            return TimeDependentHamiltonian(swept_initial, swept_final, schedule);
        }
        return TimeDependentHamiltonian(swept_initial, swept_final, schedule, static_terms);
    }
};

struct CompiledProgram {
    Layout layout = Layout::Chain;
    int n_logical = 1;
    int n_physical = 1;
    double omega = 1.0;
    bool gadgetized = false;
    std::vector<CircuitGate> circuit;
    std::vector<Segment> segments;
};

namespace compiler_detail {

inline std::string cyclic_label(int segment_index) {
    return "H" + std::to_string((segment_index - 1) % 3 + 1);
}

inline GateSpec single_qubit_gate(const std::string& kind, int target) {
    if (kind == "A") return GateSpec::a_gate(target);
    if (kind == "B") return GateSpec::b_gate(target);
    throw UnsupportedGateError("gate \"" + kind + "\" is not in the supported set {A, B}");
}

}  // namespace compiler_detail

/// Spatially imprinted single-wire schedule: a circuit of length l becomes
/// l drags over 2l+1 qubits. Segment i consumes the gate-rotated coupling on
/// qubits (2i, 2i+1) and ends with a plain coupling on (2i-1, 2i), carrying
/// the data two sites forward while applying gate i. Because consecutive
/// endpoint Hamiltonians coincide, the whole schedule cycles through three
/// Hamiltonian patterns.
inline CompiledProgram compile_chain(const CircuitProgram& circuit, double omega = 1.0) {
    protocol_detail::require_omega(omega);
    if (circuit.n_wires != 1) {
        throw UnsupportedGateError("chain layout compiles single-wire circuits; use the 3n "
                                   "layout for multi-wire programs");
    }
    const int l = circuit.length();
    const int n = 2 * l + 1;

    CompiledProgram program;
    program.layout = Layout::Chain;
    program.n_logical = 1;
    program.n_physical = n;
    program.omega = omega;
    program.circuit = circuit.gates;

    for (int k = 1; k <= l; ++k) {
        const CircuitGate& gate = circuit.gates[static_cast<std::size_t>(k - 1)];
        if (gate.is_cz()) {
            throw UnsupportedGateError("chain layout has a single wire; CZ is not compilable");
        }
        Segment seg;
        seg.index = k;
        seg.label = compiler_detail::cyclic_label(k);
        seg.gate_name = gate.kind;
        seg.imprint = compiler_detail::single_qubit_gate(gate.kind, 2 * k + 1);
        seg.active_qubits = {2 * k - 1, 2 * k, 2 * k + 1};
        seg.fresh_pairs = {{2 * k, 2 * k + 1}};
        seg.swept_initial = conjugate(standard_pair(2 * k, 2 * k + 1, omega, n), seg.imprint);
        seg.swept_final = standard_pair(2 * k - 1, 2 * k, omega, n);

        PauliSum statics(n);
        for (int j = 1; j < k; ++j) {
            statics = statics + standard_pair(2 * j - 1, 2 * j, omega, n);
        }
        for (int j = k + 1; j <= l; ++j) {
            const CircuitGate& other = circuit.gates[static_cast<std::size_t>(j - 1)];
            statics = statics + conjugate(standard_pair(2 * j, 2 * j + 1, omega, n),
                                          compiler_detail::single_qubit_gate(other.kind, 2 * j + 1));
        }
        seg.static_terms = statics;
        seg.start_hamiltonian = canonical(statics.empty() ? seg.swept_initial
                                                          : seg.swept_initial + statics);
        seg.end_hamiltonian = canonical(statics.empty() ? seg.swept_final
                                                        : seg.swept_final + statics);
        program.segments.push_back(std::move(seg));
    }
    return program;
}

/// Quasi-one-dimensional layout on 3n qubits: registers R1 = 1..n,
/// R2 = n+1..2n, R3 = 2n+1..3n. Odd segments teleport R1 -> R3, even ones
/// teleport back, with each segment's gate conjugating the fresh couplings
/// next to the destination register. Consecutive segments with distinct
/// non-trivial gates require re-preparing the standing couplings in the new
/// rotated ground configuration between drags, so unlike the chain layout
/// the emitted endpoint Hamiltonians are not continuous across segments.
inline CompiledProgram compile_3n(const CircuitProgram& circuit, bool gadgetized = false,
                                  double omega = 1.0, double lambda = 0.1) {
    protocol_detail::require_omega(omega);
    const int n = circuit.n_wires;
    const int l = circuit.length();

    CompiledProgram program;
    program.layout = Layout::Alt3n;
    program.n_logical = n;
    program.omega = omega;
    program.gadgetized = false;
    program.circuit = circuit.gates;
    program.n_physical = 3 * n;

    bool any_cz = false;
    for (const auto& gate : circuit.gates) any_cz = any_cz || gate.is_cz();
    if (gadgetized) {
        if (!(l == 1 && any_cz)) {
            throw UnsupportedGateError(
                "gadgetized emission supports a single CZ step; compile other gates with the "
                "ideal 3-body form");
        }
        if (n != 2) {
            throw UnsupportedGateError("gadgetized emission is defined for two logical wires");
        }
        CouplingConfig coupling{omega, lambda};
        GadgetSystem sys = gadget_hamiltonians(coupling);
        program.gadgetized = true;
        program.n_physical = 4 * n;
        Segment seg;
        seg.index = 1;
        seg.label = compiler_detail::cyclic_label(1);
        seg.gate_name = "CZ";
        seg.imprint = GateSpec::cz(3, 7);  // encoded outputs: ancilla-bound pairs (3,4) / (7,8)
        seg.active_qubits = {1, 2, 3, 4, 5, 6, 7, 8};
        seg.fresh_pairs = {{2, 3}, {6, 7}};
        seg.swept_initial = sys.h_initial;
        seg.swept_final = sys.h_final;
        seg.static_terms = sys.static_terms;
        seg.start_hamiltonian = canonical(sys.h_initial + sys.static_terms);
        seg.end_hamiltonian = canonical(sys.h_final + sys.static_terms);
        program.segments.push_back(std::move(seg));
        return program;
    }

    const int nq = 3 * n;
    auto r1 = [n](int wire) { return wire; };
    auto r2 = [n](int wire) { return n + wire; };
    auto r3 = [n](int wire) { return 2 * n + wire; };

    for (int k = 1; k <= l; ++k) {
        const CircuitGate& gate = circuit.gates[static_cast<std::size_t>(k - 1)];
        const bool forward = k % 2 == 1;  // R1 -> R3 on odd steps
        Segment seg;
        seg.index = k;
        seg.label = compiler_detail::cyclic_label(k);
        seg.gate_name = gate.kind;

        PauliSum fresh(nq), spent(nq);
        for (int w = 1; w <= n; ++w) {
            int mediator = r2(w);
            int dest = forward ? r3(w) : r1(w);
            int source = forward ? r1(w) : r3(w);
            fresh = fresh + standard_pair(mediator, dest, omega, nq);
            spent = spent + standard_pair(source, mediator, omega, nq);
            seg.fresh_pairs.push_back({mediator, dest});
        }
        if (gate.is_cz()) {
            if (gate.wire_a > n || gate.wire_b > n) throw IndexError("CZ wire out of range");
            int qa = forward ? r3(gate.wire_a) : r1(gate.wire_a);
            int qb = forward ? r3(gate.wire_b) : r1(gate.wire_b);
            seg.imprint = GateSpec::cz(qa, qb);
        } else {
            if (gate.wire_a > n) throw IndexError("gate wire out of range");
            int dest = forward ? r3(gate.wire_a) : r1(gate.wire_a);
            seg.imprint = compiler_detail::single_qubit_gate(gate.kind, dest);
        }
        seg.swept_initial = conjugate(fresh, seg.imprint);
        seg.swept_final = spent;
        seg.static_terms = PauliSum(nq);
        seg.start_hamiltonian = canonical(seg.swept_initial);
        seg.end_hamiltonian = canonical(seg.swept_final);
        for (int w = 1; w <= n; ++w) {
            seg.active_qubits.push_back(r1(w));
            seg.active_qubits.push_back(r2(w));
            seg.active_qubits.push_back(r3(w));
        }
        program.segments.push_back(std::move(seg));
    }
    return program;
}

/// Structural invariants of a compiled schedule: cyclic labels, and for the
/// chain layout the continuity of consecutive endpoint Hamiltonians plus the
/// (2i, 2i+1) placement of each gate's coupling.
inline void validate_structure(const CompiledProgram& program) {
    for (std::size_t i = 0; i < program.segments.size(); ++i) {
        const Segment& seg = program.segments[i];
        if (seg.index != static_cast<int>(i) + 1) {
            throw StructuralError("segment indices must be consecutive from 1");
        }
        if (seg.label != compiler_detail::cyclic_label(seg.index)) {
            throw StructuralError("segment " + std::to_string(seg.index) +
                                  " violates the cyclic H1/H2/H3 labeling");
        }
    }
    if (program.layout != Layout::Chain) return;
    for (std::size_t i = 0; i + 1 < program.segments.size(); ++i) {
        if (!approx_equal(program.segments[i].end_hamiltonian,
                          program.segments[i + 1].start_hamiltonian)) {
            throw StructuralError("segment " + std::to_string(i + 1) +
                                  " end Hamiltonian differs from the next start Hamiltonian");
        }
    }
    for (const Segment& seg : program.segments) {
        int i = seg.index;
        if (seg.fresh_pairs != std::vector<std::pair<int, int>>{{2 * i, 2 * i + 1}}) {
            throw StructuralError("segment " + std::to_string(i) +
                                  " must imprint its gate on qubits (2i, 2i+1)");
        }
    }
}

/// Sequential propagation of a compiled schedule. The initial register holds
/// the data on the input positions and every coupling of the first segment's
/// start Hamiltonian in its rotated ground configuration; the final fidelity
/// is measured against the whole-circuit unitary applied to the input, at
/// the data's final location.
inline RunReport simulate_program(const CompiledProgram& program, const StateVector& psi_in,
                                  double time_per_segment,
                                  const Schedule& schedule = Schedule::linear(), int steps = 0) {
    if (program.n_physical > 8) {
        throw ResourceError("simulation capped at 8 physical qubits; this program needs " +
                            std::to_string(program.n_physical));
    }
    if (program.gadgetized) {
        throw UnsupportedGateError(
            "gadgetized schedules need the dressed ground-state preparation of the gadget "
            "runner; simulate those with run_gadget");
    }
    if (psi_in.n_qubits != program.n_logical) {
        throw StructuralError("input state must cover " + std::to_string(program.n_logical) +
                              " logical qubit(s)");
    }
    validate_structure(program);

    const int n = program.n_logical;
    const int nq = program.n_physical;
    const int l = static_cast<int>(program.segments.size());
    const bool chain = program.layout == Layout::Chain;

    RunReport report;
    report.protocol = "program:" + layout_tag(program.layout);
    report.omega = program.omega;
    report.schedule_tag = schedule.tag;
    report.config.total_time = time_per_segment;
    report.config.steps =
        steps > 0 ? steps : PropagationConfig::default_steps(time_per_segment, program.omega);

    // Whole-circuit unitary on the logical register.
    StateVector logical_out = psi_in;
    for (const CircuitGate& gate : program.circuit) {
        GateSpec logical = gate.is_cz() ? GateSpec::cz(gate.wire_a, gate.wire_b)
                                        : compiler_detail::single_qubit_gate(gate.kind, gate.wire_a);
        logical_out = apply_gate(logical_out, logical);
    }

    if (l == 0) {
        report.fidelity = 1.0;
        report.leakage = 0.0;
        report.min_gap = 0.0;
        report.min_gap_s = 0.0;
        report.final_state = psi_in;
        return report;
    }

    // Data wires start on qubit 1 (chain) or register R1 (3n); every pair of
    // the first start Hamiltonian begins in its (possibly rotated) Bell
    // ground state, with rotations applied as the segments' imprints.
    std::vector<std::pair<std::vector<int>, StateVector>> components;
    std::vector<int> data_positions;
    for (int w = 1; w <= n; ++w) data_positions.push_back(w);
    components.push_back({data_positions, psi_in});
    auto add_plain_pairs = [&components](const std::vector<std::pair<int, int>>& pairs) {
        for (auto [a, b] : pairs) {
            components.push_back({{a, b}, bell_phi()});
        }
    };
    if (chain) {
        for (const Segment& seg : program.segments) add_plain_pairs(seg.fresh_pairs);
    } else {
        add_plain_pairs(program.segments.front().fresh_pairs);
    }
    StateVector state = embed_components(nq, components);
    if (chain) {
        for (const Segment& seg : program.segments) state = apply_gate(state, seg.imprint);
    } else {
        state = apply_gate(state, program.segments.front().imprint);
    }

    PropagationConfig cfg;
    cfg.total_time = time_per_segment;
    cfg.steps = report.config.steps;
    double min_gap = std::numeric_limits<double>::infinity();
    double min_gap_s = 0.0;
    for (const Segment& seg : program.segments) {
        TimeDependentHamiltonian family = seg.family(schedule);
        GapProfile profile = gap_profile(family);
        if (profile.gap_min < min_gap) {
            min_gap = profile.gap_min;
            min_gap_s = profile.s_min;
        }
        state = propagate(family, state, cfg);
    }

    // Final template: transported data on the destination register, plain
    // Bell pairs everywhere the last end Hamiltonian couples.
    std::vector<std::pair<std::vector<int>, StateVector>> final_components;
    std::vector<int> final_positions;
    if (chain) {
        final_positions = {nq};
        for (int k = 1; k <= l; ++k) {
            final_components.push_back({{2 * k - 1, 2 * k}, bell_phi()});
        }
    } else {
        const bool data_on_r3 = l % 2 == 1;
        for (int w = 1; w <= n; ++w) {
            final_positions.push_back(data_on_r3 ? 2 * n + w : w);
        }
        for (int w = 1; w <= n; ++w) {
            if (data_on_r3) {
                final_components.push_back({{w, n + w}, bell_phi()});
            } else {
                final_components.push_back({{n + w, 2 * n + w}, bell_phi()});
            }
        }
    }
    final_components.push_back({final_positions, logical_out});
    StateVector target = embed_components(nq, final_components);

    auto [projector, deg] = ground_projector(
        realize(program.segments.back().end_hamiltonian), kDefaultDegeneracyTol * program.omega);

    report.fidelity = fidelity(state, target);
    report.leakage = leakage(state, projector);
    report.min_gap = min_gap;
    report.min_gap_s = min_gap_s;
    report.final_state = std::move(state);
    return report;
}

}  // namespace agt
