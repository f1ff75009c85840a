#include <catch2/catch_amalgamated.hpp>

#include "agt/gadgets.hpp"

using namespace agt;
using Catch::Matchers::WithinAbs;

namespace {

bool term_spans_both_sides(const PauliTerm& term) {
    bool left = false, right = false;
    for (int q = 0; q < 8; ++q) {
        if (term.letters[static_cast<std::size_t>(q)] == 'I') continue;
        (q < 4 ? left : right) = true;
    }
    return left && right;
}

int term_arity(const PauliTerm& term) {
    int arity = 0;
    for (char c : term.letters)
        if (c != 'I') ++arity;
    return arity;
}

StateVector plus_one() {
    Eigen::VectorXcd v(4);
    v << 0, 1 / std::numbers::sqrt2, 0, 1 / std::numbers::sqrt2;
    return StateVector(2, v);
}

}  // namespace

TEST_CASE("coupling config enforces the gadget regime") {
    REQUIRE_NOTHROW((CouplingConfig{1.0, 0.49}.validate()));
    REQUIRE_THROWS_AS((CouplingConfig{1.0, 0.6}.validate()), DomainError);
    REQUIRE_THROWS_AS((CouplingConfig{1.0, 0.0}.validate()), DomainError);
    REQUIRE_THROWS_AS((CouplingConfig{1.0, -0.1}.validate()), DomainError);
    REQUIRE_THROWS_AS((CouplingConfig{-1.0, 0.1}.validate()), DomainError);
    try {
        CouplingConfig{1.0, 0.5}.validate();
        FAIL("expected DomainError");
    } catch (const DomainError& e) {
        REQUIRE(std::string(e.what()).find("0.5") != std::string::npos);
    }
}

TEST_CASE("gadget Hamiltonians are two-body with per-side static bindings") {
    GadgetSystem sys = gadget_hamiltonians(CouplingConfig{1.0, 0.1});
    REQUIRE(sys.h_initial.terms.size() == 6);
    REQUIRE(sys.h_final.terms.size() == 4);
    REQUIRE(sys.static_terms.terms.size() == 2);

    int lambda_terms = 0;
    for (const auto& term : sys.h_initial.terms) {
        REQUIRE(term_arity(term) <= 2);
        REQUIRE_THAT(term.coefficient, WithinAbs(-0.1, 1e-15));
        ++lambda_terms;
    }
    REQUIRE(lambda_terms == 6);
    for (const auto& term : sys.h_final.terms) REQUIRE(term_arity(term) <= 2);
    for (const auto& term : sys.static_terms.terms) {
        REQUIRE_THAT(term.coefficient, WithinAbs(-1.0, 1e-15));
        REQUIRE((term.letters == "IIZZIIII" || term.letters == "IIIIIIZZ"));
    }

    REQUIRE(sys.encoded_x3(false).letters == "IIXXIIII");
    REQUIRE(sys.encoded_z3(false).letters == "IIIZIIII");
    REQUIRE(sys.encoded_x3(true).letters == "IIIIIIXX");
    REQUIRE(gadget_hamiltonians(CouplingConfig{1.0, 0.1}, EncodedZ::Z3).encoded_z3(true).letters ==
            "IIIIIIZI");
}

TEST_CASE("alpha closed form matches its series and special values") {
    REQUIRE_THAT(gadget_alpha(0.0), WithinAbs(1.0, 1e-15));
    REQUIRE_THAT(gadget_alpha(0.1), WithinAbs(0.9951333267, 1e-9));
    // At the regime boundary the closed form collapses to cos(pi/8).
    REQUIRE_THAT(gadget_alpha(0.5 - 1e-12), WithinAbs(std::cos(std::numbers::pi / 8), 1e-9));
    REQUIRE_THROWS_AS(gadget_alpha(0.6), DomainError);
    REQUIRE_THROWS_AS(gadget_alpha(-0.1), DomainError);

    for (double r = 0.02; r <= 0.3; r += 0.02) {
        REQUIRE(std::abs(gadget_alpha(r) - (1.0 - r * r / 2.0)) <= 2.0 * r * r * r * r);
    }
}

TEST_CASE("numeric dressed-ground overlap reproduces alpha") {
    for (double r : {0.0, 0.05, 0.1, 0.2, 0.3, 0.4}) {
        double expected = r == 0.0 ? 1.0 : gadget_alpha(r);
        REQUIRE_THAT(gadget_overlap_numeric(r), WithinAbs(expected, 1e-10));
    }
    REQUIRE_THROWS_AS(gadget_overlap_numeric(0.7), DomainError);
}

TEST_CASE("closed-form gap matches the reduced two-qubit spectrum") {
    REQUIRE_THAT(gadget_gap_closed(1.0, 0.1), WithinAbs(0.2, 1e-12));
    REQUIRE_THAT(gadget_gap_closed(0.0, 0.1), WithinAbs(std::sqrt(1.04) - 1.0, 1e-12));

    for (double r : {0.05, 0.1, 0.2, 0.4}) {
        RealizedFamily reduced(gadget_reduced_family(r));
        for (int k = 0; k <= 20; ++k) {
            double s = k / 20.0;
            SpectrumResult es = spectrum(reduced.at(s));
            double numeric = es.eigenvalues[1] - es.eigenvalues[0];
            REQUIRE_THAT(gadget_gap_closed(s, r), WithinAbs(numeric, 1e-10));
        }
    }
    REQUIRE_THROWS_AS(gadget_gap_closed(1.2, 0.1), DomainError);
    REQUIRE_THROWS_AS(gadget_gap_closed(0.5, 0.6), DomainError);
}

TEST_CASE("the gap stays above r^2 in the valid regime") {
    for (double r : {0.1, 0.25, 0.49}) {
        GadgetBoundReport report = gadget_gap_bound_check(r);
        REQUIRE(report.holds);
        REQUIRE(report.min_gap >= report.bound);
        REQUIRE(report.slack > 0.0);
        REQUIRE(report.grid_points == 1001);
    }
    GadgetBoundReport fine = gadget_gap_bound_check(0.25);
    REQUIRE_THAT(fine.bound, WithinAbs(0.0625, 1e-15));
    REQUIRE_THROWS_AS(gadget_gap_bound_check(0.5), DomainError);
}

TEST_CASE("undoing the cross controlled-phase decouples the two sides") {
    GadgetSystem sys = gadget_hamiltonians(CouplingConfig{1.0, 0.2});
    PauliSum transformed = conjugate(sys.h_initial, GateSpec::cz(4, 8));
    for (const auto& term : transformed.terms) {
        REQUIRE_FALSE(term_spans_both_sides(term));
    }
    // The final Hamiltonian and the static bindings are already one-sided.
    for (const auto& term : sys.h_final.terms) REQUIRE_FALSE(term_spans_both_sides(term));
    for (const auto& term : sys.static_terms.terms) REQUIRE_FALSE(term_spans_both_sides(term));
}

TEST_CASE("encoded logical operators commute with both transformed endpoints") {
    GadgetSystem sys = gadget_hamiltonians(CouplingConfig{1.0, 0.2});
    auto transform = [](const PauliSum& sum) {
        PauliSum out = conjugate(sum, GateSpec::cz(4, 8));
        out = conjugate(out, GateSpec::cnot(3, 2));
        return conjugate(out, GateSpec::cnot(7, 6));
    };
    PauliSum hi = transform(sys.h_initial + sys.static_terms);
    PauliSum hf = transform(sys.h_final + sys.static_terms);
    Operator hi_m = realize(hi), hf_m = realize(hf);

    for (const std::string& logical :
         {"ZZIIIIII", "XIXXIIII", "IIIIZZII", "IIIIXIXX"}) {
        PauliSum op(8);
        op.add(logical, 1.0);
        Operator m = realize(op);
        REQUIRE(max_abs(hi_m * m - m * hi_m) < 1e-12);
        REQUIRE(max_abs(hf_m * m - m * hf_m) < 1e-12);
    }
}

TEST_CASE("decoupled fast path reproduces the full register propagation") {
    CouplingConfig coupling{1.0, 0.2};
    GadgetSystem sys = gadget_hamiltonians(coupling);
    StateVector psi0 = random_state(8, 7);
    PropagationConfig cfg;
    cfg.total_time = 3.0;
    cfg.steps = 150;
    StateVector fast = propagate_gadget(sys, psi0, cfg, true);
    StateVector full = propagate_gadget(sys, psi0, cfg, false);
    REQUIRE(max_abs(fast.amplitudes - full.amplitudes) < 1e-10);
}

TEST_CASE("short gadget run produces a consistent report") {
    GadgetRunOptions options;
    options.total_time = 50.0;
    options.steps = 2000;
    options.gap_grid_points = 21;
    RunReport report = run_gadget(plus_one(), CouplingConfig{1.0, 0.1}, options);
    REQUIRE(report.fidelity >= 0.0);
    REQUIRE(report.fidelity <= 1.0);
    REQUIRE(report.leakage >= 0.0);
    // The smallest excitation of the full register is the reduced-pair gap.
    GadgetBoundReport bound = gadget_gap_bound_check(0.1);
    REQUIRE_THAT(report.min_gap, WithinAbs(bound.min_gap, 1e-5));

    REQUIRE_THROWS_AS(run_gadget(basis_state(1, 0), CouplingConfig{1.0, 0.1}, options),
                      StructuralError);
    REQUIRE_THROWS_AS(run_gadget(plus_one(), CouplingConfig{1.0, 0.0}, options), DomainError);
}
