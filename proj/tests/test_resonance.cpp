#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "qdeco/resonance.hpp"

using namespace qdeco;

TEST_CASE("lamb_shift_R") {
    ReservoirSpec res{1.0};
    const auto ff = isotropic_form_factor(0.5, 1);

    SECTION("sigma_z-type dephasing has no shift") {
        CHECK(lamb_shift_R({1.0, -0.7, 0.7, 0.0}, ff, res) == 0.0);
    }

    SECTION("purely off-diagonal coupling keeps only the principal-value term") {
        const double pv = pv_energy_integral(ff, res, 1.0);
        CHECK(lamb_shift_R({1.0, 0.0, 0.0, 1.0}, ff, res) ==
              Catch::Approx(0.5 * pv).epsilon(1e-13));
    }

    SECTION("diagonal coupling keeps only <g, 1/omega g>") {
        CHECK(lamb_shift_R({1.0, 0.0, 1.0, 0.0}, ff, res) ==
              Catch::Approx(0.5 * std::numbers::pi).epsilon(1e-10));
    }
}

TEST_CASE("qubit_resonances structure") {
    ReservoirSpec res{1.0};
    const auto ff = isotropic_form_factor(0.5, 1);

    SECTION("free system at lambda = 0") {
        const auto rs = qubit_resonances({1.0, 0.3, -0.2, Complex(0.4, 0.1)}, ff, res, 0.0);
        CHECK(rs.eps0 == Complex(0.0, 0.0));
        CHECK(rs.epsDelta == Complex(1.0, 0.0));
        CHECK(rs.epsMinusDelta == Complex(-1.0, 0.0));
    }

    SECTION("a = b gives the T2 = 2 T1 relation") {
        const auto rs = qubit_resonances({1.0, 0.4, 0.4, Complex(0.8, 0.0)}, ff, res, 0.1);
        CHECK(rs.epsDelta.imag() == Catch::Approx(0.5 * rs.eps0.imag()).epsilon(1e-15));
        const auto ts = timescales(rs);
        CHECK(ts.tau_D == Catch::Approx(2.0 * ts.tau_T).epsilon(1e-14));
    }

    SECTION("c = 0 with p > -1/2: purely oscillatory off-diagonals") {
        const auto rs = qubit_resonances({1.0, -1.0, 1.0, 0.0}, ff, res, 0.1);
        CHECK(rs.eps0.imag() == 0.0);
        CHECK(rs.epsDelta.imag() == 0.0);
        const auto ts = timescales(rs);
        CHECK(std::isinf(ts.tau_T));
        CHECK(std::isinf(ts.tau_D));
    }

    SECTION("tau_prime must lie in the admissible strip") {
        const QubitSystem q{1.0, 0.0, 0.0, Complex(1.0, 0.0)};
        CHECK_THROWS_AS(qubit_resonances(q, ff, res, 0.1, 10.0), ValidationError);
        const auto rs = qubit_resonances(q, ff, res, 0.1);
        CHECK(rs.strip_tau_prime == Catch::Approx(std::numbers::pi).epsilon(1e-15));
    }
}

TEST_CASE("resonance identities over a randomized suite") {
    std::mt19937 rng(20260823);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    const double pvals[] = {-0.5, 0.5, 1.5};
    const int mvals[] = {1, 2};

    for (int draw = 0; draw < 120; ++draw) {
        const auto ff = isotropic_form_factor(pvals[rng() % 3], mvals[rng() % 2]);
        const ReservoirSpec res{0.5 + 1.5 * (0.5 * (uni(rng) + 1.0))};
        QubitSystem q;
        q.Delta = 0.5 + 1.5 * (0.5 * (uni(rng) + 1.0));
        q.a = uni(rng);
        q.b = uni(rng);
        q.c = Complex(uni(rng), uni(rng));
        const double lambda = 0.05 + 0.25 * (0.5 * (uni(rng) + 1.0));

        const auto rs = qubit_resonances(q, ff, res, lambda);
        const auto rs2 = qubit_resonances(q, ff, res, 2.0 * lambda);
        const double R = lamb_shift_R(q, ff, res);
        const double D = rate_difference_D(q, ff, res);

        // Conjugation symmetry, bit-exact by construction.
        REQUIRE(rs.epsMinusDelta == -std::conj(rs.epsDelta));
        // Second-order bookkeeping.
        REQUIRE(rs.eps0.imag() - rs.epsDelta.imag() ==
                Catch::Approx(lambda * lambda * D).margin(1e-13));
        REQUIRE(rs.epsDelta.real() - q.Delta ==
                Catch::Approx(lambda * lambda * R).margin(1e-12));
        // Exact lambda^2 scaling of every second-order part.
        REQUIRE(rs2.eps0.imag() == Catch::Approx(4.0 * rs.eps0.imag()).margin(1e-15));
        REQUIRE(rs2.epsDelta.imag() == Catch::Approx(4.0 * rs.epsDelta.imag()).margin(1e-15));
        REQUIRE(rs2.epsDelta.real() - q.Delta ==
                Catch::Approx(4.0 * (rs.epsDelta.real() - q.Delta)).margin(1e-12));
        // Decay, never growth.
        REQUIRE(rs.eps0.imag() >= 0.0);
        REQUIRE(rs.epsDelta.imag() >= 0.0);
        // Sign dichotomy of the rate difference.
        QubitSystem diag = q;
        diag.c = 0.0;
        REQUIRE(rate_difference_D(diag, ff, res) <= 0.0);
        QubitSystem offd = q;
        offd.a = offd.b = 0.0;
        REQUIRE(rate_difference_D(offd, ff, res) >= 0.0);
    }
}

TEST_CASE("timescales") {
    ResonanceSet rs;
    rs.lambda = 1.0;
    rs.eps0 = Complex(0.0, 0.02);
    rs.epsDelta = Complex(1.0, 0.01);
    rs.epsMinusDelta = -std::conj(rs.epsDelta);
    const auto ts = timescales(rs);
    CHECK(ts.tau_T == Catch::Approx(50.0).epsilon(1e-15));
    CHECK(ts.tau_D == Catch::Approx(100.0).epsilon(1e-15));
    CHECK(ts.gamma == Catch::Approx(0.01).epsilon(1e-15));
    CHECK(ts.D == Catch::Approx(0.01).epsilon(1e-14));
}

TEST_CASE("fermi_golden_rule_holds") {
    ReservoirSpec res{1.0};
    const auto ff = isotropic_form_factor(0.5, 1);

    CHECK_FALSE(fermi_golden_rule_holds({1.0, 0.2, -0.3, 0.0}, ff, res));
    CHECK(fermi_golden_rule_holds({1.0, 0.0, 0.0, Complex(0.5, 0.0)}, ff, res));

    // Radial profile vanishing identically near Delta: no energy exchange at
    // the Bohr frequency even with c != 0.
    FormFactor gap;
    gap.p = 0.5;
    gap.m = 1;
    gap.radial = [](double r) {
        return r < 0.5 ? std::sqrt(r) * std::exp(-r) : 0.0;
    };
    CHECK_FALSE(fermi_golden_rule_holds({1.0, 0.0, 0.0, Complex(1.0, 0.0)}, gap, res));
}
