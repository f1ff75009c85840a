#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "agt/protocols.hpp"
#include "agt/spectral.hpp"

using namespace agt;
using Catch::Matchers::WithinAbs;

TEST_CASE("spectrum orders eigenvalues and reconstructs the input") {
    Operator z(2, 2);
    z << 1, 0, 0, -1;
    SpectrumResult es = spectrum(z);
    REQUIRE_THAT(es.eigenvalues[0], WithinAbs(-1.0, 1e-14));
    REQUIRE_THAT(es.eigenvalues[1], WithinAbs(1.0, 1e-14));

    std::mt19937_64 rng(99);
    std::normal_distribution<double> gauss;
    for (int trial = 0; trial < 5; ++trial) {
        int dim = 1 << (1 + trial % 4);
        Operator a(dim, dim);
        for (int r = 0; r < dim; ++r)
            for (int c = 0; c < dim; ++c) a(r, c) = Complex(gauss(rng), gauss(rng));
        Operator h = (a + a.adjoint()) / 2.0;
        SpectrumResult sol = spectrum(h);
        Operator rebuilt =
            sol.eigenvectors * sol.eigenvalues.asDiagonal() * sol.eigenvectors.adjoint();
        REQUIRE(max_abs(h - rebuilt) < 1e-9 * max_abs(h));
        Operator gram = sol.eigenvectors.adjoint() * sol.eigenvectors;
        REQUIRE(max_abs(gram - Operator::Identity(dim, dim)) < 1e-10);
        for (int i = 1; i < dim; ++i) REQUIRE(sol.eigenvalues[i] >= sol.eigenvalues[i - 1]);
    }
}

TEST_CASE("spectrum rejects non-Hermitian input") {
    Operator bad(2, 2);
    bad << 0, 1, 0, 0;
    REQUIRE_THROWS_AS(spectrum(bad), DomainError);
}

TEST_CASE("midpoint teleportation Hamiltonian has a sqrt(2)-deep doublet") {
    TimeDependentHamiltonian family = teleportation_protocol(1.0).hamiltonian;
    SpectrumResult es = spectrum(family.evaluate(0.5));
    REQUIRE_THAT(es.eigenvalues[0], WithinAbs(-std::numbers::sqrt2, 1e-12));
    REQUIRE_THAT(es.eigenvalues[1], WithinAbs(-std::numbers::sqrt2, 1e-12));
    REQUIRE_THAT(es.eigenvalues[2] - es.eigenvalues[0], WithinAbs(std::numbers::sqrt2, 1e-12));
}

TEST_CASE("ground_projector spans the degenerate ground set") {
    Operator h_i = realize(standard_pair(2, 3, 1.0, 3));
    auto [projector, degeneracy] = ground_projector(h_i, 1e-9);
    REQUIRE(degeneracy == 2);
    REQUIRE(max_abs(projector * projector - projector) < 1e-10);
    REQUIRE(max_abs(projector - projector.adjoint()) < 1e-12);

    auto [identity_projector, full] = ground_projector(Operator::Identity(8, 8), 1e-9);
    REQUIRE(full == 8);
    REQUIRE(max_abs(identity_projector - Operator::Identity(8, 8)) < 1e-12);

    auto [p2, deg2] = ground_projector(agt_two_qubit(1.0).hamiltonian.evaluate(0.0), 1e-9);
    REQUIRE(deg2 == 4);

    REQUIRE_THROWS_AS(ground_projector(h_i, 0.0), DomainError);
    REQUIRE_THROWS_AS(ground_projector(h_i, -1e-3), DomainError);
}

TEST_CASE("teleportation gap profile locates sqrt(2) omega at midpoint") {
    for (double omega : {1.0, 2.0}) {
        GapProfile profile = gap_profile(teleportation_protocol(omega).hamiltonian);
        REQUIRE_THAT(profile.gap_min, WithinAbs(std::numbers::sqrt2 * omega, 1e-6));
        REQUIRE_THAT(profile.s_min, WithinAbs(0.5, 1e-3));
        REQUIRE_FALSE(profile.level_crossing_warning);
        for (const auto& sample : profile.samples) {
            REQUIRE(sample.ground_degeneracy == 2);
            REQUIRE(sample.gap >= profile.gap_min - 1e-12);
            REQUIRE(sample.gap >= 0.0);
        }
    }
}

TEST_CASE("isotropic gap profile is 2 omega at midpoint with a stable doublet") {
    GapProfile profile = gap_profile(isotropic_teleportation(1.0).hamiltonian);
    REQUIRE_THAT(profile.gap_min, WithinAbs(2.0, 1e-6));
    REQUIRE_THAT(profile.s_min, WithinAbs(0.5, 1e-3));
    for (const auto& sample : profile.samples) REQUIRE(sample.ground_degeneracy == 2);
}

TEST_CASE("gate-preparation gap minima match the closed-form constants") {
    GapProfile a_profile = gap_profile(agp(GateSpec::a_gate(), 1.0).hamiltonian);
    REQUIRE_THAT(a_profile.gap_min, WithinAbs(std::numbers::sqrt2, 1e-6));
    REQUIRE_THAT(a_profile.s_min, WithinAbs(0.5, 1e-3));

    GapProfile b_profile = gap_profile(agp(GateSpec::b_gate(), 1.0).hamiltonian);
    REQUIRE_THAT(b_profile.gap_min, WithinAbs(std::sqrt(2.0 + std::numbers::sqrt2), 1e-6));
    REQUIRE_THAT(b_profile.s_min, WithinAbs(0.5, 1e-3));
}

TEST_CASE("gap profile flags a ground-space level crossing") {
    // Dragging Z to -Z closes the gap at s = 1/2 and swaps the levels.
    PauliSum up(1), down(1);
    up.add("Z", 1.0);
    down.add("Z", -1.0);
    TimeDependentHamiltonian family(up, down, Schedule::linear());
    GapProfile profile = gap_profile(family, 101, 1e-4);
    REQUIRE(profile.level_crossing_warning);
    REQUIRE(profile.gap_min < 0.05);
}

TEST_CASE("gap profile validates its arguments") {
    TimeDependentHamiltonian family = teleportation_protocol(1.0).hamiltonian;
    REQUIRE_THROWS_AS(gap_profile(family, 5), DomainError);
    REQUIRE_THROWS_AS(gap_profile(family, 101, 0.0), DomainError);
}

TEST_CASE("conjugated families have pointwise identical gap profiles") {
    GapProfile base = gap_profile(teleportation_protocol(1.0).hamiltonian, 41);
    for (const GateSpec& gate : {GateSpec::hadamard(3), GateSpec::a_gate(3)}) {
        TimeDependentHamiltonian family = teleportation_protocol(1.0).hamiltonian;
        family.h_initial = conjugate(family.h_initial, gate);
        family.h_final = conjugate(family.h_final, gate);
        GapProfile rotated = gap_profile(family, 41);
        for (std::size_t i = 0; i < base.samples.size(); ++i) {
            REQUIRE_THAT(rotated.samples[i].gap, WithinAbs(base.samples[i].gap, 1e-9));
        }
    }
}
