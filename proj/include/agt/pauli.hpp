#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "agt/error.hpp"

namespace agt {

using Complex = std::complex<double>;
using Operator = Eigen::MatrixXcd;

inline constexpr double kCoefficientDropTol = 1e-12;

/// One tensor product of single-qubit Pauli letters with a real weight.
/// Qubit 1 is the leftmost letter and the most significant bit of the
/// basis index, so "XXI" acts as X on qubits 1 and 2 of a 3-qubit register.
struct PauliTerm {
    std::string letters;
    double coefficient = 0.0;

    int n_qubits() const { return static_cast<int>(letters.size()); }
};

inline bool is_pauli_letter(char c) {
    return c == 'I' || c == 'X' || c == 'Y' || c == 'Z';
}

inline PauliTerm parse_pauli(const std::string& label, double coefficient) {
    if (label.empty()) {
        throw ParseError("Pauli label must contain at least one letter");
    }
    for (std::size_t i = 0; i < label.size(); ++i) {
        if (!is_pauli_letter(label[i])) {
            throw ParseError("invalid Pauli letter '" + std::string(1, label[i]) +
                             "' at position " + std::to_string(i + 1) + " in \"" + label + "\"");
        }
    }
    if (!std::isfinite(coefficient)) {
        throw DomainError("Pauli coefficient must be finite");
    }
    return PauliTerm{label, coefficient};
}

/// Real-weighted sum of equal-length Pauli terms; realizes to a Hermitian matrix.
struct PauliSum {
    int n_qubits = 0;
    std::vector<PauliTerm> terms;

    PauliSum() = default;
    explicit PauliSum(int n) : n_qubits(n) {
        if (n < 1) throw DomainError("qubit count must be >= 1");
    }

    PauliSum& add(const PauliTerm& term) {
        if (term.n_qubits() != n_qubits) {
            throw StructuralError("term \"" + term.letters + "\" has " +
                                  std::to_string(term.n_qubits()) + " letters, expected " +
                                  std::to_string(n_qubits));
        }
        if (!std::isfinite(term.coefficient)) {
            throw DomainError("Pauli coefficient must be finite");
        }
        terms.push_back(term);
        return *this;
    }

    PauliSum& add(const std::string& label, double coefficient) {
        return add(parse_pauli(label, coefficient));
    }

    bool empty() const { return terms.empty(); }
};

inline PauliSum operator*(double scale, const PauliSum& sum) {
    PauliSum out = sum;
    for (auto& t : out.terms) t.coefficient *= scale;
    return out;
}

inline PauliSum operator+(const PauliSum& a, const PauliSum& b) {
    if (a.n_qubits != b.n_qubits) {
        throw StructuralError("cannot add Pauli sums on " + std::to_string(a.n_qubits) +
                              " and " + std::to_string(b.n_qubits) + " qubits");
    }
    PauliSum out = a;
    out.terms.insert(out.terms.end(), b.terms.begin(), b.terms.end());
    return out;
}

/// Sorted, merged, zero-pruned form; equal sums canonicalize identically.
inline PauliSum canonical(const PauliSum& sum, double drop_tol = kCoefficientDropTol) {
    std::map<std::string, double> merged;
    for (const auto& t : sum.terms) merged[t.letters] += t.coefficient;
    PauliSum out(sum.n_qubits);
    for (const auto& [letters, c] : merged) {
        if (std::abs(c) > drop_tol) out.terms.push_back(PauliTerm{letters, c});
    }
    return out;
}

inline bool approx_equal(const PauliSum& a, const PauliSum& b, double tol = 1e-9) {
    if (a.n_qubits != b.n_qubits) return false;
    PauliSum ca = canonical(a), cb = canonical(b);
    if (ca.terms.size() != cb.terms.size()) return false;
    for (std::size_t i = 0; i < ca.terms.size(); ++i) {
        if (ca.terms[i].letters != cb.terms[i].letters) return false;
        if (std::abs(ca.terms[i].coefficient - cb.terms[i].coefficient) > tol) return false;
    }
    return true;
}

/// Dense matrix of a single term. Each Pauli string is a signed permutation:
/// column j maps to the row obtained by flipping the X/Y bits, with a phase
/// collected from Y and Z letters.
inline void accumulate_term(const PauliTerm& term, Operator& target) {
    const int n = term.n_qubits();
    const std::int64_t dim = std::int64_t{1} << n;
    std::int64_t flip_mask = 0;
    for (int q = 0; q < n; ++q) {
        char letter = term.letters[static_cast<std::size_t>(q)];
        if (letter == 'X' || letter == 'Y') flip_mask |= std::int64_t{1} << (n - 1 - q);
    }
    for (std::int64_t col = 0; col < dim; ++col) {
        Complex amp(term.coefficient, 0.0);
        for (int q = 0; q < n; ++q) {
            char letter = term.letters[static_cast<std::size_t>(q)];
            int bit = static_cast<int>((col >> (n - 1 - q)) & 1);
            switch (letter) {
                case 'Y': amp *= bit ? Complex(0, -1) : Complex(0, 1); break;
                case 'Z': amp *= bit ? -1.0 : 1.0; break;
                default: break;
            }
        }
        target(col ^ flip_mask, col) += amp;
    }
}

inline double max_abs(const Operator& m) {
    return m.cwiseAbs().maxCoeff();
}

inline Operator realize(const PauliSum& sum) {
    if (sum.empty()) {
        throw StructuralError("cannot realize an empty Pauli sum");
    }
    if (sum.n_qubits > 12) {
        throw ResourceError("dense realization capped at 12 qubits, got " +
                            std::to_string(sum.n_qubits));
    }
    const std::int64_t dim = std::int64_t{1} << sum.n_qubits;
    Operator out = Operator::Zero(dim, dim);
    for (const auto& t : sum.terms) {
        if (t.n_qubits() != sum.n_qubits) {
            throw StructuralError("mismatched term length inside Pauli sum");
        }
        accumulate_term(t, out);
    }
    double herm = max_abs(out - out.adjoint());
    if (herm > 1e-12) {
        throw InternalError("realized Pauli sum is not Hermitian (residual " +
                            std::to_string(herm) + ")");
    }
    return out;
}

/// Two Pauli strings commute iff the number of sites where the letters
/// differ and neither is the identity is even.
inline bool commutes(const PauliTerm& a, const PauliTerm& b) {
    if (a.n_qubits() != b.n_qubits()) {
        throw StructuralError("commutes() requires terms of equal length");
    }
    int anticommuting_sites = 0;
    for (std::size_t i = 0; i < a.letters.size(); ++i) {
        char la = a.letters[i], lb = b.letters[i];
        if (la != 'I' && lb != 'I' && la != lb) ++anticommuting_sites;
    }
    return anticommuting_sites % 2 == 0;
}

/// The six encoded operators of the three-qubit teleportation code.
/// X_i and Z_j anticommute iff i = j.
struct LogicalFrame {
    PauliTerm x1, x2, x3;
    PauliTerm z1, z2, z3;

    static LogicalFrame standard() {
        return LogicalFrame{
            PauliTerm{"XXX", 1.0}, PauliTerm{"IXX", 1.0}, PauliTerm{"XXI", 1.0},
            PauliTerm{"ZZZ", 1.0}, PauliTerm{"ZZI", 1.0}, PauliTerm{"IZZ", 1.0},
        };
    }

    const PauliTerm& x(int i) const {
        switch (i) {
            case 1: return x1;
            case 2: return x2;
            case 3: return x3;
        }
        throw IndexError("logical index must be 1..3");
    }
    const PauliTerm& z(int i) const {
        switch (i) {
            case 1: return z1;
            case 2: return z2;
            case 3: return z3;
        }
        throw IndexError("logical index must be 1..3");
    }
};

}  // namespace agt
