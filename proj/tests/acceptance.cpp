// Acceptance suite: one self-contained check per shipped claim, each printed
// as a single PASS/FAIL line with its measured numbers and wall time.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "agt/compiler.hpp"
#include "agt/dynamics.hpp"
#include "agt/gadgets.hpp"
#include "agt/protocols.hpp"
#include "agt/spectral.hpp"

using namespace agt;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool condition, const std::string& message) {
        if (!condition) {
            pass = false;
            if (!detail.empty()) detail += "; ";
            detail += message;
        }
    }

    void note(const std::string& message) {
        if (!detail.empty()) detail += "; ";
        detail += message;
    }
};

std::string num(double v) {
    char buffer[48];
    std::snprintf(buffer, sizeof(buffer), "%.6g", v);
    return buffer;
}

double agt_fidelity(const GateSpec& gate, const StateVector& psi_in, double total_time,
                    int steps) {
    ProtocolSpec spec = agt_single(gate, 1.0);
    PropagationConfig cfg;
    cfg.total_time = total_time;
    cfg.steps = steps;
    StateVector out = propagate(spec.hamiltonian, spec.initial_state(psi_in), cfg);
    return fidelity(out, spec.target_state(psi_in));
}

double agt2_fidelity(const StateVector& psi_in, double total_time, int steps) {
    ProtocolSpec spec = agt_two_qubit(1.0);
    PropagationConfig cfg;
    cfg.total_time = total_time;
    cfg.steps = steps;
    StateVector out = propagate(spec.hamiltonian, spec.initial_state(psi_in), cfg);
    return fidelity(out, spec.target_state(psi_in));
}

Outcome teleportation_gap() {
    Outcome outcome;
    GapProfile profile = gap_profile(teleportation_protocol(1.0).hamiltonian, 101, 1e-6);
    double gap_err = std::abs(profile.gap_min - std::numbers::sqrt2);
    double s_err = std::abs(profile.s_min - 0.5);
    outcome.require(gap_err <= 1e-6, "gap error " + num(gap_err) + " > 1e-6");
    outcome.require(s_err <= 1e-3, "s error " + num(s_err) + " > 1e-3");
    outcome.note("gap " + num(profile.gap_min) + " at s " + num(profile.s_min));
    return outcome;
}

Outcome isotropic_gap() {
    Outcome outcome;
    GapProfile profile = gap_profile(isotropic_teleportation(1.0).hamiltonian, 101, 1e-6);
    outcome.require(std::abs(profile.gap_min - 2.0) <= 1e-6,
                    "gap " + num(profile.gap_min) + " != 2");
    outcome.require(std::abs(profile.s_min - 0.5) <= 1e-3, "s " + num(profile.s_min) + " != 0.5");
    for (const auto& sample : profile.samples) {
        if (sample.ground_degeneracy != 2) {
            outcome.require(false, "degeneracy " + std::to_string(sample.ground_degeneracy) +
                                       " at s " + num(sample.s));
            break;
        }
    }
    outcome.note("gap " + num(profile.gap_min) + ", doublet stable on 101 points");
    return outcome;
}

Outcome agp_gaps() {
    Outcome outcome;
    double a_gap = gap_profile(agp(GateSpec::a_gate(), 1.0).hamiltonian, 101, 1e-6).gap_min;
    double b_gap = gap_profile(agp(GateSpec::b_gate(), 1.0).hamiltonian, 101, 1e-6).gap_min;
    double b_expected = std::sqrt(2.0 + std::numbers::sqrt2);
    outcome.require(std::abs(a_gap - std::numbers::sqrt2) <= 1e-6,
                    "A gap " + num(a_gap) + " != sqrt(2)");
    outcome.require(std::abs(b_gap - b_expected) <= 1e-6,
                    "B gap " + num(b_gap) + " != sqrt(2+sqrt(2))");
    outcome.note("A " + num(a_gap) + ", B " + num(b_gap));
    return outcome;
}

Outcome two_qubit_gap() {
    Outcome outcome;
    GapProfile profile = gap_profile(agt_two_qubit(1.0).hamiltonian, 101, 1e-6);
    outcome.require(std::abs(profile.gap_min - std::numbers::sqrt2) <= 1e-6,
                    "gap " + num(profile.gap_min) + " != sqrt(2)");
    outcome.note("gap " + num(profile.gap_min) + " on 6 qubits");
    return outcome;
}

Outcome gate_correctness() {
    Outcome outcome;
    const double total_time = 50.0;
    const int steps = PropagationConfig::default_steps(total_time);
    double worst_fidelity = 1.0, worst_oracle = 0.0;
    for (const GateSpec& gate :
         {GateSpec::identity(), GateSpec::hadamard(), GateSpec::a_gate(), GateSpec::b_gate()}) {
        for (std::uint64_t seed = 101; seed <= 105; ++seed) {
            StateVector psi = random_state(1, seed);
            double coarse = agt_fidelity(gate, psi, total_time, steps);
            double fine = agt_fidelity(gate, psi, total_time, 10 * steps);
            worst_fidelity = std::min(worst_fidelity, coarse);
            worst_oracle = std::max(worst_oracle, std::abs(coarse - fine));
            outcome.require(coarse >= 0.999,
                            gate.name + " fidelity " + num(coarse) + " < 0.999");
            outcome.require(std::abs(coarse - fine) <= 1e-8,
                            gate.name + " oracle gap " + num(std::abs(coarse - fine)));
        }
    }
    for (std::uint64_t seed = 106; seed <= 110; ++seed) {
        StateVector psi = random_state(2, seed);
        double coarse = agt2_fidelity(psi, total_time, steps);
        worst_fidelity = std::min(worst_fidelity, coarse);
        outcome.require(coarse >= 0.999, "CZ fidelity " + num(coarse) + " < 0.999");
        if (seed == 106) {
            double fine = agt2_fidelity(psi, total_time, 10 * steps);
            worst_oracle = std::max(worst_oracle, std::abs(coarse - fine));
            outcome.require(std::abs(coarse - fine) <= 1e-8,
                            "CZ oracle gap " + num(std::abs(coarse - fine)));
        }
    }
    outcome.note("min fidelity " + num(worst_fidelity) + ", max oracle gap " +
                 num(worst_oracle));
    return outcome;
}

Outcome gadget_fidelity_check() {
    Outcome outcome;
    double worst = 0.0;
    for (double r : {0.05, 0.1, 0.2, 0.4}) {
        double diff = std::abs(gadget_overlap_numeric(r) - gadget_alpha(r));
        worst = std::max(worst, diff);
        outcome.require(diff <= 1e-10, "overlap mismatch " + num(diff) + " at r " + num(r));
    }
    for (double r = 0.01; r <= 0.3 + 1e-12; r += 0.01) {
        double series_gap = std::abs(gadget_alpha(r) - (1.0 - r * r / 2.0));
        outcome.require(series_gap <= 2.0 * std::pow(r, 4),
                        "series bound violated at r " + num(r));
    }
    outcome.note("max closed/numeric mismatch " + num(worst));
    return outcome;
}

Outcome gadget_gap_check() {
    Outcome outcome;
    double worst = 0.0;
    for (double r : {0.05, 0.1, 0.2, 0.4}) {
        RealizedFamily reduced(gadget_reduced_family(r));
        for (int k = 0; k <= 20; ++k) {
            double s = k / 20.0;
            SpectrumResult es = spectral_detail::hermitian_eigs(reduced.at(s));
            double numeric = es.eigenvalues[1] - es.eigenvalues[0];
            double diff = std::abs(gadget_gap_closed(s, r) - numeric);
            worst = std::max(worst, diff);
            outcome.require(diff <= 1e-10,
                            "closed/numeric gap differ by " + num(diff) + " at (s,r)=(" +
                                num(s) + "," + num(r) + ")");
        }
    }
    for (double r : {0.1, 0.25, 0.49}) {
        GadgetBoundReport report = gadget_gap_bound_check(r, 1001);
        outcome.require(report.holds, "gap bound fails at r " + num(r) + ": min " +
                                          num(report.min_gap) + " < " + num(report.bound));
    }
    outcome.note("max closed/numeric mismatch " + num(worst) + ", bound holds");
    return outcome;
}

Outcome gadget_end_to_end() {
    Outcome outcome;
    const double r = 0.1;
    const double envelope = 2.0 * r * r + 1e-3;
    CouplingConfig coupling{1.0, r};
    Eigen::VectorXcd plus_one(4);
    plus_one << 0, 1 / std::numbers::sqrt2, 0, 1 / std::numbers::sqrt2;
    std::vector<std::pair<std::string, StateVector>> inputs = {
        {"00", basis_state(2, 0)}, {"+1", StateVector(2, plus_one)}};
    double worst_infidelity = 0.0, worst_leakage = 0.0;
    for (const auto& [label, psi] : inputs) {
        RunReport report = run_gadget(psi, coupling);
        double infidelity = 1.0 - report.fidelity;
        worst_infidelity = std::max(worst_infidelity, infidelity);
        worst_leakage = std::max(worst_leakage, report.leakage);
        outcome.require(infidelity <= envelope, "infidelity " + num(infidelity) + " for |" +
                                                    label + "> exceeds " + num(envelope));
        outcome.require(report.leakage <= envelope,
                        "leakage " + num(report.leakage) + " for |" + label + ">");
    }
    outcome.note("worst infidelity " + num(worst_infidelity) + ", worst leakage " +
                 num(worst_leakage) + ", envelope " + num(envelope));
    return outcome;
}

Outcome no_go() {
    Outcome outcome;
    NoGoReport report = no_go_diagonal(NoGoConfig{}, 101);
    outcome.require(report.max_offdiagonal <= 1e-14,
                    "off-diagonal " + num(report.max_offdiagonal));
    outcome.require(report.swap_fidelity <= 1e-14, "swap fidelity " + num(report.swap_fidelity));
    outcome.note("off-diagonal " + num(report.max_offdiagonal) + ", swap fidelity " +
                 num(report.swap_fidelity));
    return outcome;
}

Outcome logical_algebra() {
    Outcome outcome;
    FrameCheckReport report = logical_frame_check(LogicalFrame::standard(), 1.0, 101, 1e-12);
    for (const auto& entry : report.entries) {
        outcome.require(entry.pass, entry.name + " residual " + num(entry.residual));
    }
    outcome.note(std::to_string(report.entries.size()) + " identities to 1e-12 on 101 points");
    return outcome;
}

Outcome compiler_chain() {
    Outcome outcome;
    CompiledProgram program = compile_chain(CircuitProgram::parse("A\nB\nA\n"));
    try {
        validate_structure(program);
    } catch (const std::exception& e) {
        outcome.require(false, std::string("structure: ") + e.what());
    }
    outcome.require(program.n_physical == 7, "expected 7 physical qubits");
    double worst = 1.0;
    for (std::uint64_t seed = 201; seed <= 203; ++seed) {
        StateVector psi = random_state(1, seed);
        RunReport report = simulate_program(program, psi, 50.0);
        worst = std::min(worst, report.fidelity);
        outcome.require(report.fidelity >= 0.997,
                        "fidelity " + num(report.fidelity) + " < 0.997 (seed " +
                            std::to_string(seed) + ")");
    }
    outcome.note("min fidelity " + num(worst) + " over 3 random inputs");
    return outcome;
}

Outcome adiabatic_trend() {
    Outcome outcome;
    // The linear ramp is non-monotone at these probe times (a deep
    // diabatic-oscillation revival sits near T = 5), so the trend claim is
    // exercised on the C^1 smoothstep ramp, where slower is strictly better.
    ProtocolSpec spec = teleportation_protocol(1.0);
    spec.hamiltonian.schedule = Schedule::smoothstep();
    StateVector psi = basis_state(1, 0);
    StateVector initial = spec.initial_state(psi);
    StateVector target = spec.target_state(psi);
    std::vector<double> infidelities;
    for (double total_time : {0.5, 5.0, 50.0}) {
        PropagationConfig cfg;
        cfg.total_time = total_time;
        cfg.steps = PropagationConfig::default_steps(total_time);
        StateVector out = propagate(spec.hamiltonian, initial, cfg);
        infidelities.push_back(1.0 - fidelity(out, target));
    }
    outcome.require(infidelities[2] < infidelities[1] && infidelities[1] < infidelities[0],
                    "not strictly decreasing: " + num(infidelities[0]) + ", " +
                        num(infidelities[1]) + ", " + num(infidelities[2]));
    outcome.note("infidelity " + num(infidelities[0]) + " -> " + num(infidelities[1]) + " -> " +
                 num(infidelities[2]) + " for T in {0.5, 5, 50}");
    return outcome;
}

struct Criterion {
    int number;
    std::string name;
    double budget_seconds;
    std::function<Outcome()> run;
};

}  // namespace

int main() {
    setenv("OPENBLAS_NUM_THREADS", "1", 0);

    std::vector<Criterion> criteria = {
        {1, "teleportation min gap sqrt(2) w at s=1/2", 1.0, teleportation_gap},
        {2, "isotropic min gap 2 w with stable doublet", 1.0, isotropic_gap},
        {3, "gate-preparation gaps sqrt(2) w and sqrt(2+sqrt(2)) w", 1.0, agp_gaps},
        {4, "two-qubit gate teleportation min gap sqrt(2) w", 10.0, two_qubit_gap},
        {5, "gate fidelity >= 0.999 for {I,H,A,B,CZ} with fine-step oracle", 120.0,
         gate_correctness},
        {6, "gadget overlap matches alpha(r) and its r^2/2 series", 1.0, gadget_fidelity_check},
        {7, "gadget gap closed form matches numerics and exceeds w r^2", 5.0, gadget_gap_check},
        {8, "eight-qubit gadget run within the 2 r^2 infidelity envelope", 600.0,
         gadget_end_to_end},
        {9, "diagonal two-qubit interpolation moves no amplitude", 1.0, no_go},
        {10, "encoded-operator algebra and conserved logical qubit", 1.0, logical_algebra},
        {11, "compiled [A,B,A] chain reproduces the circuit unitary", 300.0, compiler_chain},
        {12, "teleportation infidelity decreases with slower smooth ramps", 60.0,
         adiabatic_trend},
    };

    int failures = 0;
    for (const auto& criterion : criteria) {
        auto start = std::chrono::steady_clock::now();
        Outcome outcome;
        try {
            outcome = criterion.run();
        } catch (const std::exception& e) {
            outcome.pass = false;
            outcome.detail = std::string("exception: ") + e.what();
        }
        double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (elapsed > criterion.budget_seconds) {
            outcome.pass = false;
            outcome.detail += (outcome.detail.empty() ? "" : "; ") + std::string("over budget");
        }
        if (!outcome.pass) ++failures;
        std::printf("%s criterion %2d: %s (%s) [%.2fs < %.0fs]\n",
                    outcome.pass ? "PASS" : "FAIL", criterion.number, criterion.name.c_str(),
                    outcome.detail.c_str(), elapsed, criterion.budget_seconds);
        std::fflush(stdout);
    }
    if (failures > 0) {
        std::printf("%d of %zu criteria failed\n", failures, criteria.size());
        return 1;
    }
    std::printf("all %zu criteria passed\n", criteria.size());
    return 0;
}
