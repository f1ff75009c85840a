#pragma once

#include <cmath>
#include <functional>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "agt/pauli.hpp"

namespace agt {

/// Interpolation envelopes: f turns the initial Hamiltonian off while g
/// turns the final one on. f(0)=1, f(1)=0, g(0)=0, g(1)=1, both monotone.
struct Schedule {
    std::function<double(double)> f;
    std::function<double(double)> g;
    std::string tag;

    static Schedule linear() {
        return Schedule{[](double s) { return 1.0 - s; }, [](double s) { return s; }, "linear"};
    }

    /// C^1 ramp g(s) = s^2 (3 - 2s); avoids the endpoint kinks of the linear ramp.
    static Schedule smoothstep() {
        auto ramp = [](double s) { return s * s * (3.0 - 2.0 * s); };
        return Schedule{[ramp](double s) { return 1.0 - ramp(s); }, ramp, "smoothstep"};
    }

    static Schedule by_tag(const std::string& tag) {
        if (tag == "linear") return linear();
        if (tag == "smoothstep") return smoothstep();
        throw ParseError("unknown schedule tag \"" + tag + "\"");
    }

    void validate() const {
        auto near = [](double a, double b) { return std::abs(a - b) <= 1e-12; };
        if (!near(f(0.0), 1.0) || !near(f(1.0), 0.0) || !near(g(0.0), 0.0) || !near(g(1.0), 1.0)) {
            throw DomainError("schedule endpoints must satisfy f(0)=1, f(1)=0, g(0)=0, g(1)=1");
        }
        const int grid = 1000;
        double pf = f(0.0), pg = g(0.0);
        for (int k = 1; k <= grid; ++k) {
            double s = static_cast<double>(k) / grid;
            double cf = f(s), cg = g(s);
            if (cf > pf + 1e-12 || cg < pg - 1e-12) {
                throw DomainError("schedule must have non-increasing f and non-decreasing g");
            }
            pf = cf;
            pg = cg;
        }
    }
};

namespace gate_detail {

inline Eigen::Matrix2cd pauli_x() {
    Eigen::Matrix2cd m;
    m << 0, 1, 1, 0;
    return m;
}
inline Eigen::Matrix2cd pauli_y() {
    Eigen::Matrix2cd m;
    m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
    return m;
}
inline Eigen::Matrix2cd pauli_z() {
    Eigen::Matrix2cd m;
    m << 1, 0, 0, -1;
    return m;
}

}  // namespace gate_detail

/// A named unitary applied to one or two target qubits (1-based indices).
///
/// The shipped single-qubit pair {A, B} generates SU(2): A squares to
/// i(X+Z)/sqrt(2) (a Hadamard up to phase) and B is the pi/8 gate, B^4 = Z.
struct GateSpec {
    std::string name;
    Eigen::MatrixXcd matrix;
    std::vector<int> targets;

    int arity() const { return static_cast<int>(targets.size()); }

    bool is_unitary(double tol = 1e-12) const {
        Eigen::MatrixXcd residual =
            matrix.adjoint() * matrix - Eigen::MatrixXcd::Identity(matrix.rows(), matrix.cols());
        return max_abs(residual) <= tol;
    }

    GateSpec on(std::vector<int> new_targets) const {
        GateSpec out = *this;
        const auto expected = std::size_t{1} << new_targets.size();
        if (static_cast<std::size_t>(out.matrix.rows()) != expected) {
            throw StructuralError("gate \"" + name + "\" does not fit on " +
                                  std::to_string(new_targets.size()) + " target(s)");
        }
        out.targets = std::move(new_targets);
        return out;
    }

    static GateSpec identity(int q = 1) {
        return GateSpec{"I", Eigen::Matrix2cd::Identity(), {q}};
    }

    static GateSpec hadamard(int q = 1) {
        Eigen::Matrix2cd m;
        m << 1, 1, 1, -1;
        return GateSpec{"H", m / std::numbers::sqrt2, {q}};
    }

    static GateSpec a_gate(int q = 1) {
        Eigen::Matrix2cd m;
        m << Complex(1, std::numbers::sqrt2), Complex(1, 0), Complex(1, 0),
            Complex(-1, std::numbers::sqrt2);
        return GateSpec{"A", 0.5 * m, {q}};
    }

    static GateSpec b_gate(int q = 1) {
        Eigen::Matrix2cd m = Eigen::Matrix2cd::Identity();
        m(1, 1) = std::polar(1.0, std::numbers::pi / 4);
        return GateSpec{"B", m, {q}};
    }

    static GateSpec a_dagger(int q = 1) {
        GateSpec a = a_gate(q);
        return GateSpec{"Adag", a.matrix.adjoint(), {q}};
    }

    static GateSpec b_dagger(int q = 1) {
        GateSpec b = b_gate(q);
        return GateSpec{"Bdag", b.matrix.adjoint(), {q}};
    }

    static GateSpec pauli_x_gate(int q = 1) {
        return GateSpec{"X", gate_detail::pauli_x(), {q}};
    }

    static GateSpec cz(int a, int b) {
        Eigen::Matrix4cd m = Eigen::Matrix4cd::Identity();
        m(3, 3) = -1;
        return GateSpec{"CZ", m, {a, b}};
    }

    /// Controlled-not with control first, target second.
    static GateSpec cnot(int control, int target) {
        Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
        m(0, 0) = m(1, 1) = 1;
        m(2, 3) = m(3, 2) = 1;
        return GateSpec{"CNOT", m, {control, target}};
    }

    static GateSpec by_name(const std::string& name, int q = 1) {
        if (name == "I") return identity(q);
        if (name == "H") return hadamard(q);
        if (name == "A") return a_gate(q);
        if (name == "B") return b_gate(q);
        if (name == "Adag") return a_dagger(q);
        if (name == "Bdag") return b_dagger(q);
        if (name == "X") return pauli_x_gate(q);
        throw ParseError("unknown gate name \"" + name + "\"");
    }

    static GateSpec custom(std::string name, Eigen::MatrixXcd matrix, std::vector<int> targets) {
        GateSpec g{std::move(name), std::move(matrix), std::move(targets)};
        const auto rows = g.matrix.rows();
        if ((rows != 2 && rows != 4) || g.matrix.cols() != rows) {
            throw StructuralError("gate matrix must be 2x2 or 4x4");
        }
        if (static_cast<std::size_t>(rows) != (std::size_t{1} << g.targets.size())) {
            throw StructuralError("gate matrix dimension does not match target count");
        }
        if (!g.is_unitary()) {
            throw DomainError("gate \"" + g.name + "\" is not unitary to 1e-12");
        }
        return g;
    }
};

/// -omega (X_a X_b + Z_a Z_b): the canonical pair coupling whose two-qubit
/// ground state is the Bell pair (|00>+|11>)/sqrt(2).
inline PauliSum standard_pair(int a, int b, double omega, int n_qubits) {
    if (a == b) throw IndexError("pair coupling requires two distinct qubits");
    if (a < 1 || a > n_qubits || b < 1 || b > n_qubits) {
        throw IndexError("pair qubit index out of range");
    }
    PauliSum sum(n_qubits);
    for (char letter : {'X', 'Z'}) {
        std::string s(static_cast<std::size_t>(n_qubits), 'I');
        s[static_cast<std::size_t>(a - 1)] = letter;
        s[static_cast<std::size_t>(b - 1)] = letter;
        sum.add(s, -omega);
    }
    return sum;
}

/// +omega (X_a X_b + Y_a Y_b + Z_a Z_b): antiferromagnetic isotropic exchange,
/// ground state the two-qubit singlet.
inline PauliSum isotropic_pair(int a, int b, double omega, int n_qubits) {
    if (a == b) throw IndexError("pair coupling requires two distinct qubits");
    if (a < 1 || a > n_qubits || b < 1 || b > n_qubits) {
        throw IndexError("pair qubit index out of range");
    }
    PauliSum sum(n_qubits);
    for (char letter : {'X', 'Y', 'Z'}) {
        std::string s(static_cast<std::size_t>(n_qubits), 'I');
        s[static_cast<std::size_t>(a - 1)] = letter;
        s[static_cast<std::size_t>(b - 1)] = letter;
        sum.add(s, omega);
    }
    return sum;
}

namespace conj_detail {

inline const std::array<Eigen::Matrix2cd, 4>& single_paulis() {
    static const std::array<Eigen::Matrix2cd, 4> p = {
        Eigen::Matrix2cd::Identity(), gate_detail::pauli_x(), gate_detail::pauli_y(),
        gate_detail::pauli_z()};
    return p;
}

inline constexpr const char* kLetters = "IXYZ";

inline int letter_index(char c) {
    switch (c) {
        case 'I': return 0;
        case 'X': return 1;
        case 'Y': return 2;
        case 'Z': return 3;
    }
    throw ParseError("invalid Pauli letter");
}

}  // namespace conj_detail

/// U h U^dagger, re-expanded in the Pauli basis. The rotation acts on the
/// gate's target qubits only, so each term is conjugated on that small
/// subspace and projected back via trace inner products; coefficients below
/// 1e-12 are dropped. Unitary conjugation of a Hermitian sum keeps all
/// coefficients real; a non-real residual raises InternalError.
inline PauliSum conjugate(const PauliSum& h, const GateSpec& gate) {
    using namespace conj_detail;
    const int arity = gate.arity();
    if (arity < 1 || arity > 2) {
        throw StructuralError("conjugation supports 1- or 2-qubit gates");
    }
    if (!gate.is_unitary()) {
        throw DomainError("conjugating gate must be unitary");
    }
    for (int t : gate.targets) {
        if (t < 1 || t > h.n_qubits) {
            throw IndexError("gate target " + std::to_string(t) + " outside 1.." +
                             std::to_string(h.n_qubits));
        }
    }

    const int sub_dim = 1 << arity;
    PauliSum out(h.n_qubits);
    for (const auto& term : h.terms) {
        // Active-part matrix: tensor product of the letters on the targets.
        Eigen::MatrixXcd active = Eigen::MatrixXcd::Identity(1, 1);
        for (int t : gate.targets) {
            int idx = letter_index(term.letters[static_cast<std::size_t>(t - 1)]);
            Eigen::MatrixXcd next(active.rows() * 2, active.cols() * 2);
            for (int r = 0; r < active.rows(); ++r)
                for (int c = 0; c < active.cols(); ++c)
                    next.block(2 * r, 2 * c, 2, 2) = active(r, c) * single_paulis()[idx];
            active = next;
        }
        Eigen::MatrixXcd rotated = gate.matrix * active * gate.matrix.adjoint();

        // Project back: c_Q = tr(Q rotated) / 2^arity over all target-local strings Q.
        const int n_strings = arity == 1 ? 4 : 16;
        for (int code = 0; code < n_strings; ++code) {
            Eigen::MatrixXcd basis = Eigen::MatrixXcd::Identity(1, 1);
            int tmp = code;
            std::string sub_letters;
            for (int k = 0; k < arity; ++k) {
                int idx = tmp % 4;
                tmp /= 4;
                sub_letters.push_back(kLetters[idx]);
                Eigen::MatrixXcd next(basis.rows() * 2, basis.cols() * 2);
                for (int r = 0; r < basis.rows(); ++r)
                    for (int c = 0; c < basis.cols(); ++c)
                        next.block(2 * r, 2 * c, 2, 2) = basis(r, c) * single_paulis()[idx];
                basis = next;
            }
            Complex coeff = (basis * rotated).trace() / static_cast<double>(sub_dim);
            if (std::abs(coeff.imag()) > 1e-12) {
                throw InternalError("conjugation produced a non-real Pauli coefficient");
            }
            double c = coeff.real() * term.coefficient;
            if (std::abs(c) <= kCoefficientDropTol) continue;
            std::string letters = term.letters;
            for (int k = 0; k < arity; ++k) {
                letters[static_cast<std::size_t>(gate.targets[static_cast<std::size_t>(k)] - 1)] =
                    sub_letters[static_cast<std::size_t>(k)];
            }
            out.terms.push_back(PauliTerm{letters, c});
        }
    }
    return canonical(out);
}

/// H(s) = f(s) H_i + g(s) H_f + H_static. The static part stays on for the
/// whole evolution (the gadget keeps its strong ZZ couplings in it).
struct TimeDependentHamiltonian {
    PauliSum h_initial;
    PauliSum h_final;
    Schedule schedule;
    PauliSum static_terms;

    TimeDependentHamiltonian() : schedule(Schedule::linear()) {}

    TimeDependentHamiltonian(PauliSum hi, PauliSum hf, Schedule sched)
        : h_initial(std::move(hi)),
          h_final(std::move(hf)),
          schedule(std::move(sched)),
          static_terms(PauliSum(h_initial.n_qubits)) {
        check_shapes();
    }

    TimeDependentHamiltonian(PauliSum hi, PauliSum hf, Schedule sched, PauliSum statics)
        : h_initial(std::move(hi)),
          h_final(std::move(hf)),
          schedule(std::move(sched)),
          static_terms(std::move(statics)) {
        check_shapes();
    }

    int n_qubits() const { return h_initial.n_qubits; }

    PauliSum at(double s) const {
        require_s(s);
        PauliSum sum = schedule.f(s) * h_initial + schedule.g(s) * h_final;
        if (!static_terms.empty()) sum = sum + static_terms;
        return sum;
    }

    Operator evaluate(double s) const { return realize(at(s)); }

   private:
    void check_shapes() const {
        if (h_initial.n_qubits != h_final.n_qubits ||
            (!static_terms.empty() && static_terms.n_qubits != h_initial.n_qubits)) {
            throw StructuralError("initial, final and static terms must share the qubit count");
        }
    }

    static void require_s(double s) {
        if (!(s >= 0.0 && s <= 1.0)) {
            throw DomainError("scaled time s must lie in [0, 1]");
        }
    }
};

/// Endpoint matrices realized once so repeated evaluation is an axpy.
struct RealizedFamily {
    Operator h_initial;
    Operator h_final;
    Operator h_static;
    Schedule schedule;

    explicit RealizedFamily(const TimeDependentHamiltonian& family)
        : h_initial(realize(family.h_initial)),
          h_final(realize(family.h_final)),
          h_static(family.static_terms.empty()
                       ? Operator::Zero(h_initial.rows(), h_initial.cols())
                       : realize(family.static_terms)),
          schedule(family.schedule) {}

    Operator at(double s) const {
        return schedule.f(s) * h_initial + schedule.g(s) * h_final + h_static;
    }

    Eigen::Index dim() const { return h_initial.rows(); }
};

}  // namespace agt
