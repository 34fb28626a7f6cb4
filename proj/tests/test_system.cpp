#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>

#include "qdeco/system.hpp"

using namespace qdeco;

namespace {

NLevelSystem make_system(std::vector<double> energies) {
    NLevelSystem sys;
    const int n = static_cast<int>(energies.size());
    sys.energies = std::move(energies);
    sys.coupling = Eigen::MatrixXcd::Zero(n, n);
    return sys;
}

bool has_pair(const BohrLine& line, int m, int n) {
    return std::find(line.pairs.begin(), line.pairs.end(), std::make_pair(m, n)) !=
           line.pairs.end();
}

}  // namespace

TEST_CASE("bohr_spectrum") {
    SECTION("qubit") {
        const auto bs = bohr_spectrum(make_system({0.0, 1.0}));
        REQUIRE(bs.lines.size() == 3);
        CHECK(bs.lines[0].e == Catch::Approx(-1.0));
        CHECK(bs.lines[1].e == 0.0);
        CHECK(bs.lines[2].e == Catch::Approx(1.0));
        const BohrLine* zero = bs.find(0.0, 1e-9);
        REQUIRE(zero != nullptr);
        CHECK(zero->pairs.size() == 2);
        CHECK(has_pair(*zero, 1, 1));
        CHECK(has_pair(*zero, 2, 2));
        const BohrLine* up = bs.find(1.0, 1e-9);
        REQUIRE(up != nullptr);
        REQUIRE(up->pairs.size() == 1);
        CHECK(has_pair(*up, 2, 1));
    }

    SECTION("degenerate Bohr frequency in a three-level ladder") {
        const auto bs = bohr_spectrum(make_system({0.0, 1.0, 2.0}));
        REQUIRE(bs.lines.size() == 5);
        const BohrLine* one = bs.find(1.0, 1e-9);
        REQUIRE(one != nullptr);
        CHECK(one->pairs.size() == 2);
        CHECK(has_pair(*one, 2, 1));
        CHECK(has_pair(*one, 3, 2));
    }

    SECTION("fully degenerate two-level system") {
        const auto bs = bohr_spectrum(make_system({0.0, 0.0}));
        REQUIRE(bs.lines.size() == 1);
        CHECK(bs.lines[0].e == 0.0);
        CHECK(bs.lines[0].pairs.size() == 4);
    }

    SECTION("I_{-e} is the transpose of I_e") {
        const auto bs = bohr_spectrum(make_system({0.0, 0.7, 1.9, 3.1}));
        for (const auto& line : bs.lines) {
            const BohrLine* mirror = bs.find(-line.e, 1e-9);
            REQUIRE(mirror != nullptr);
            CHECK(mirror->pairs.size() == line.pairs.size());
            for (const auto& [m, n] : line.pairs) CHECK(has_pair(*mirror, n, m));
        }
    }

    SECTION("chained clusters wider than twice the tolerance are rejected") {
        const auto sys = make_system({0.0, 1e-3, 2.5e-3});
        CHECK_THROWS_AS(bohr_spectrum(sys, 1e-3), AmbiguousClustering);
    }
}

TEST_CASE("spin_boson_to_qubit") {
    SECTION("symmetric well") {
        const auto q = spin_boson_to_qubit({0.0, 1.0, 1.0});
        CHECK(q.Delta == 1.0);
        CHECK(q.a == 0.0);
        CHECK(q.b == 0.0);
        CHECK(q.c == Complex(0.5, 0.0));
    }

    SECTION("pure dephasing limit") {
        const auto q = spin_boson_to_qubit({1.0, 0.0, 1.0});
        CHECK(q.Delta == 1.0);
        CHECK(q.a == -1.0);
        CHECK(q.b == 1.0);
        CHECK(q.c == Complex(0.0, 0.0));
    }

    SECTION("generic bias") {
        const auto q = spin_boson_to_qubit({1.0, 1.0, 1.0});
        CHECK(q.Delta == Catch::Approx(std::sqrt(2.0)).epsilon(1e-15));
        CHECK(q.a == Catch::Approx(-1.0 / std::sqrt(2.0)).epsilon(1e-15));
        CHECK(q.b == Catch::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
        CHECK(q.c.real() == Catch::Approx(0.5 / std::sqrt(2.0)).epsilon(1e-15));
        CHECK(q.c.imag() == 0.0);
    }

    SECTION("doubly degenerate parameters are rejected") {
        CHECK_THROWS_AS(spin_boson_to_qubit({0.0, 0.0, 1.0}), DegenerateSystem);
    }
}

TEST_CASE("qubit_from_matrices") {
    SECTION("already diagonal") {
        Eigen::Matrix2cd H, G;
        H << 0.0, 0.0, 0.0, 1.0;
        G << 0.0, 1.0, 1.0, 0.0;
        const auto q = qubit_from_matrices(H, G);
        CHECK(q.Delta == Catch::Approx(1.0).epsilon(1e-14));
        CHECK(q.a == Catch::Approx(0.0).margin(1e-14));
        CHECK(q.b == Catch::Approx(0.0).margin(1e-14));
        CHECK(std::abs(q.c - Complex(1.0, 0.0)) < 1e-14);
    }

    SECTION("matches the spin-boson map up to phase and the off-diagonal convention") {
        const SpinBosonParams sb{1.0, 1.0, 1.0};
        const auto direct = spin_boson_to_qubit(sb);
        Eigen::Matrix2cd G;
        G << 1.0, 0.0, 0.0, -1.0;  // sigma_z in the canonical basis
        const auto rotated = qubit_from_matrices(sb.hamiltonian(), G);
        CHECK(rotated.Delta == Catch::Approx(direct.Delta).epsilon(1e-12));
        CHECK(std::abs(rotated.a) == Catch::Approx(std::abs(direct.a)).epsilon(1e-12));
        CHECK(std::abs(rotated.b) == Catch::Approx(std::abs(direct.b)).epsilon(1e-12));
        // The reference map carries a conventional 1/2 on the off-diagonal
        // entry that a plain basis rotation of sigma_z does not.
        CHECK(std::abs(rotated.c) == Catch::Approx(2.0 * std::abs(direct.c)).epsilon(1e-12));
    }

    SECTION("identity coupling is basis independent") {
        Eigen::Matrix2cd H;
        H << 0.3, Complex(0.2, -0.1), Complex(0.2, 0.1), -0.4;
        const auto q = qubit_from_matrices(H, Eigen::Matrix2cd::Identity());
        CHECK(q.a == Catch::Approx(1.0).epsilon(1e-13));
        CHECK(q.b == Catch::Approx(1.0).epsilon(1e-13));
        CHECK(std::abs(q.c) < 1e-13);
    }

    SECTION("invariant under energy shifts") {
        Eigen::Matrix2cd H, G;
        H << 0.1, Complex(0.4, 0.2), Complex(0.4, -0.2), 1.3;
        G << 0.5, Complex(0.1, 0.7), Complex(0.1, -0.7), -0.2;
        const auto q1 = qubit_from_matrices(H, G);
        const auto q2 = qubit_from_matrices(H + 2.75 * Eigen::Matrix2cd::Identity(), G);
        CHECK(q2.Delta == Catch::Approx(q1.Delta).epsilon(1e-12));
        CHECK(q2.a == Catch::Approx(q1.a).epsilon(1e-12));
        CHECK(q2.b == Catch::Approx(q1.b).epsilon(1e-12));
        CHECK(std::abs(q2.c - q1.c) < 1e-12);
    }

    SECTION("degenerate Hamiltonian is rejected") {
        CHECK_THROWS_AS(
            qubit_from_matrices(Eigen::Matrix2cd::Identity(), Eigen::Matrix2cd::Identity()),
            DegenerateSystem);
    }

    SECTION("phase convention: c has nonnegative real part") {
        Eigen::Matrix2cd H, G;
        H << 0.0, Complex(0.0, 0.5), Complex(0.0, -0.5), 1.0;
        G << 0.0, Complex(-0.3, 0.4), Complex(-0.3, -0.4), 0.0;
        const auto q = qubit_from_matrices(H, G);
        CHECK(q.c.real() >= 0.0);
    }
}
