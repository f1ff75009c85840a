#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "agt/hamiltonian.hpp"
#include "agt/spectral.hpp"

namespace agt {

/// Normalized complex amplitudes over the 2^n computational basis states,
/// indexed with qubit 1 as the most significant bit.
struct StateVector {
    int n_qubits = 0;
    Eigen::VectorXcd amplitudes;

    StateVector() = default;

    StateVector(int n, Eigen::VectorXcd amps) : n_qubits(n), amplitudes(std::move(amps)) {
        if (amplitudes.size() != (Eigen::Index{1} << n)) {
            throw StructuralError("state dimension must be 2^n");
        }
        double norm = amplitudes.norm();
        if (std::abs(norm - 1.0) > 1e-10) {
            throw StructuralError("state vector must be normalized (norm " + std::to_string(norm) +
                                  ")");
        }
    }

    static StateVector normalized(int n, Eigen::VectorXcd amps) {
        double norm = amps.norm();
        if (norm < 1e-14) throw DomainError("cannot normalize a zero vector");
        return StateVector(n, amps / norm);
    }

    Eigen::Index dim() const { return amplitudes.size(); }
};

inline StateVector basis_state(int n, std::uint64_t index) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(Eigen::Index{1} << n);
    if (index >= static_cast<std::uint64_t>(v.size())) {
        throw IndexError("basis index out of range");
    }
    v[static_cast<Eigen::Index>(index)] = 1.0;
    return StateVector(n, std::move(v));
}

/// The Bell pair (|00> + |11>)/sqrt(2).
inline StateVector bell_phi() {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(4);
    v[0] = v[3] = 1.0 / std::numbers::sqrt2;
    return StateVector(2, std::move(v));
}

inline StateVector tensor(const StateVector& a, const StateVector& b) {
    Eigen::VectorXcd v(a.dim() * b.dim());
    for (Eigen::Index i = 0; i < a.dim(); ++i)
        v.segment(i * b.dim(), b.dim()) = a.amplitudes[i] * b.amplitudes;
    return StateVector(a.n_qubits + b.n_qubits, std::move(v));
}

/// Assemble an n-qubit state from components on disjoint qubit subsets
/// (1-based indices) that together cover every qubit.
inline StateVector embed_components(
    int n, const std::vector<std::pair<std::vector<int>, StateVector>>& components) {
    std::vector<bool> covered(static_cast<std::size_t>(n), false);
    for (const auto& [qubits, state] : components) {
        if (static_cast<int>(qubits.size()) != state.n_qubits) {
            throw StructuralError("component state size does not match its qubit list");
        }
        for (int q : qubits) {
            if (q < 1 || q > n) throw IndexError("component qubit out of range");
            if (covered[static_cast<std::size_t>(q - 1)]) {
                throw StructuralError("component qubits overlap");
            }
            covered[static_cast<std::size_t>(q - 1)] = true;
        }
    }
    for (bool c : covered) {
        if (!c) throw StructuralError("components must cover every qubit");
    }

    const Eigen::Index dim = Eigen::Index{1} << n;
    Eigen::VectorXcd v(dim);
    for (Eigen::Index idx = 0; idx < dim; ++idx) {
        Complex amp = 1.0;
        for (const auto& [qubits, state] : components) {
            Eigen::Index sub = 0;
            for (int q : qubits) sub = (sub << 1) | ((idx >> (n - q)) & 1);
            amp *= state.amplitudes[sub];
            if (amp == Complex(0.0, 0.0)) break;
        }
        v[idx] = amp;
    }
    return StateVector(n, std::move(v));
}

/// Apply a 1- or 2-qubit unitary to the given state.
inline StateVector apply_gate(const StateVector& state, const GateSpec& gate) {
    const int n = state.n_qubits;
    const int arity = gate.arity();
    if (arity < 1 || arity > 2) throw StructuralError("apply_gate supports 1- or 2-qubit gates");
    for (int t : gate.targets) {
        if (t < 1 || t > n) throw IndexError("gate target out of range");
    }
    const Eigen::Index dim = state.dim();
    const int sub_dim = 1 << arity;
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(dim);
    for (Eigen::Index idx = 0; idx < dim; ++idx) {
        Eigen::Index sub = 0;
        for (int t : gate.targets) sub = (sub << 1) | ((idx >> (n - t)) & 1);
        for (int new_sub = 0; new_sub < sub_dim; ++new_sub) {
            Complex m = gate.matrix(new_sub, sub);
            if (m == Complex(0.0, 0.0)) continue;
            Eigen::Index new_idx = idx;
            for (int k = 0; k < arity; ++k) {
                int t = gate.targets[static_cast<std::size_t>(k)];
                Eigen::Index bit = (new_sub >> (arity - 1 - k)) & 1;
                new_idx = (new_idx & ~(Eigen::Index{1} << (n - t))) | (bit << (n - t));
            }
            out[new_idx] += m * state.amplitudes[idx];
        }
    }
    return StateVector(n, std::move(out));
}

/// Haar-random state from a seeded generator. Gaussians come from an
/// explicit Box-Muller transform so results are identical across platforms.
inline StateVector random_state(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    auto uniform = [&rng]() {
        return (static_cast<double>(rng() >> 11) + 0.5) * (1.0 / 9007199254740992.0);
    };
    const Eigen::Index dim = Eigen::Index{1} << n;
    Eigen::VectorXcd v(dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        double u1 = uniform(), u2 = uniform();
        double radius = std::sqrt(-2.0 * std::log(u1));
        v[i] = Complex(radius * std::cos(2.0 * std::numbers::pi * u2),
                       radius * std::sin(2.0 * std::numbers::pi * u2));
    }
    return StateVector::normalized(n, std::move(v));
}

/// Squared overlap |<phi|psi>|^2; insensitive to global phase.
inline double fidelity(const StateVector& psi, const StateVector& phi) {
    if (psi.dim() != phi.dim()) throw StructuralError("fidelity requires equal dimensions");
    return std::norm(phi.amplitudes.dot(psi.amplitudes));
}

/// Population outside the projector's range: 1 - <psi|P|psi>.
inline double leakage(const StateVector& psi, const Operator& projector) {
    if (projector.rows() != psi.dim()) throw StructuralError("projector dimension mismatch");
    require_hermitian(projector);
    double idem = max_abs(projector * projector - projector);
    if (idem > 1e-10) throw DomainError("leakage requires an idempotent projector");
    double population = psi.amplitudes.dot(projector * psi.amplitudes).real();
    return std::clamp(1.0 - population, 0.0, 1.0);
}

struct PropagationConfig {
    double total_time = 50.0;  // units of 1/omega
    int steps = 5000;
    std::string method = "midpoint-expm";

    static int default_steps(double total_time, double omega = 1.0) {
        return std::max(1000, static_cast<int>(std::ceil(100.0 * total_time * omega)));
    }

    static PropagationConfig for_time(double total_time, double omega = 1.0) {
        PropagationConfig cfg;
        cfg.total_time = total_time;
        cfg.steps = default_steps(total_time, omega);
        return cfg;
    }

    void validate() const {
        if (!(total_time > 0.0)) throw DomainError("total time must be positive");
        if (steps < 10) throw DomainError("propagation needs at least 10 steps");
        if (method != "midpoint-expm") throw DomainError("unknown propagation method " + method);
    }
};

/// Second-order midpoint scheme: each step applies the exact unitary
/// exp(-i H(s_mid) dt) built from the spectral decomposition of the midpoint
/// Hamiltonian, so the norm is preserved to machine precision at any step
/// size and halving the step refines only the time-ordering error.
inline StateVector propagate(const RealizedFamily& family, const StateVector& psi0,
                             const PropagationConfig& cfg) {
    cfg.validate();
    if (family.dim() != psi0.dim()) {
        throw StructuralError("state dimension does not match the Hamiltonian");
    }
    const double dt = cfg.total_time / cfg.steps;
    Eigen::VectorXcd psi = psi0.amplitudes;
    for (int k = 0; k < cfg.steps; ++k) {
        double s_mid = (k + 0.5) / cfg.steps;
        SpectrumResult es = spectral_detail::hermitian_eigs(family.at(s_mid));
        Eigen::VectorXcd phases(es.eigenvalues.size());
        for (Eigen::Index i = 0; i < phases.size(); ++i) {
            phases[i] = std::polar(1.0, -es.eigenvalues[i] * dt);
        }
        psi = es.eigenvectors * phases.cwiseProduct(es.eigenvectors.adjoint() * psi).eval();
        psi /= psi.norm();
    }
    return StateVector(psi0.n_qubits, std::move(psi));
}

inline StateVector propagate(const TimeDependentHamiltonian& hamiltonian, const StateVector& psi0,
                             const PropagationConfig& cfg) {
    return propagate(RealizedFamily(hamiltonian), psi0, cfg);
}

/// Outcome of one simulated protocol run.
struct RunReport {
    std::string protocol;
    double omega = 1.0;
    std::string schedule_tag = "linear";
    PropagationConfig config;
    std::string input_label;
    double fidelity = 0.0;
    double leakage = 0.0;
    double min_gap = 0.0;
    double min_gap_s = 0.0;
    StateVector final_state;
};

}  // namespace agt
