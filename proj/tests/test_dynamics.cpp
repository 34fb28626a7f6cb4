#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "qdeco/dynamics.hpp"
#include "qdeco/resonance.hpp"

using namespace qdeco;

namespace {

// A generic energy-exchanging configuration with nonzero rates.
struct Setup {
    QubitSystem q{1.0, 0.2, -0.1, Complex(1.0, 0.0)};
    FormFactor ff = isotropic_form_factor(0.5, 1);
    ReservoirSpec res{1.0};
    double lambda = 0.1;
    ResonanceSet rs = qubit_resonances(q, ff, res, lambda);
};

}  // namespace

TEST_CASE("gibbs_state") {
    CHECK(gibbs_state(1.0, 1e-14).rho11 == Catch::Approx(0.5).epsilon(1e-12));
    CHECK(gibbs_state(1.0, 1e3).rho11 == Catch::Approx(1.0).epsilon(1e-12));
    CHECK(gibbs_state(1.0, std::log(2.0)).rho11 == Catch::Approx(2.0 / 3.0).epsilon(1e-14));
    CHECK(gibbs_state(1.0, std::log(2.0)).rho22() == Catch::Approx(1.0 / 3.0).epsilon(1e-13));
    CHECK(gibbs_state(1.0, 1.0).rho12 == Complex(0.0, 0.0));
}

TEST_CASE("amplitude_constants") {
    SECTION("logic state 1 at infinite temperature") {
        const auto amps = amplitude_constants(InitialState::logic(1), 1.0, 1e-300);
        CHECK(amps.C0 == Catch::Approx(std::pow(2.0, -1.5)).epsilon(1e-14));
        CHECK(amps.CDelta == Complex(0.0, 0.0));
    }
    SECTION("logic state 2 at beta Delta = ln 2") {
        const auto amps = amplitude_constants(InitialState::logic(2), 1.0, std::log(2.0));
        CHECK(amps.C0 == Catch::Approx(2.0 * std::pow(3.0, -1.5)).epsilon(1e-14));
        CHECK(amps.CDelta == Complex(0.0, 0.0));
    }
    SECTION("illustration: coherence amplitude exactly 1/2") {
        for (double beta : {0.3, 1.0, 5.0}) {
            CHECK(amplitude_constants(InitialState::illustration(), 1.0, beta).CDelta ==
                  Complex(0.5, 0.0));
        }
    }
    SECTION("custom diagonal states are unsupported") {
        CHECK_THROWS_AS(amplitude_constants(InitialState::custom_diagonal(0.3), 1.0, 1.0),
                        UnsupportedInitialState);
    }
}

TEST_CASE("evolve_leading under the illustration state") {
    Setup s;
    const auto init = InitialState::illustration();

    SECTION("t = 0 reproduces the coherent initial state exactly") {
        const auto st = evolve_leading(init, s.rs, s.q.Delta, s.res.beta, 0.0);
        CHECK(st.rho11 == Catch::Approx(0.5).margin(1e-15));
        CHECK(st.rho12 == Complex(0.5, 0.0));
        CHECK(st.rho22() == Catch::Approx(0.5).margin(1e-15));
    }

    SECTION("coherence decays exponentially with Im epsDelta") {
        const double r = s.rs.epsDelta.imag();
        REQUIRE(r > 0.0);
        for (double t : {0.5, 3.0, 20.0}) {
            const auto st = evolve_leading(init, s.rs, s.q.Delta, s.res.beta, t);
            CHECK(std::abs(st.rho12) == Catch::Approx(0.5 * std::exp(-r * t)).epsilon(1e-13));
        }
    }

    SECTION("populations relax to Gibbs with rate Im eps0") {
        const double g11 = gibbs_state(s.q.Delta, s.res.beta).rho11;
        const double C0 = amplitude_constants(init, s.q.Delta, s.res.beta).C0;
        const double r = s.rs.eps0.imag();
        for (double t : {0.0, 1.0, 7.0}) {
            const auto st = evolve_leading(init, s.rs, s.q.Delta, s.res.beta, t);
            CHECK(st.rho11 - g11 == Catch::Approx(C0 * std::exp(-r * t)).margin(1e-14));
        }
    }

    SECTION("free evolution at lambda = 0") {
        const auto rs0 = qubit_resonances(s.q, s.ff, s.res, 0.0);
        for (double t : {0.0, 1.3, 8.0}) {
            const auto st = evolve_leading(init, rs0, s.q.Delta, s.res.beta, t);
            CHECK(st.rho11 == Catch::Approx(0.5).margin(1e-15));
            CHECK(std::abs(st.rho12) == Catch::Approx(0.5).epsilon(1e-14));
        }
    }
}

TEST_CASE("evolve_leading under logic states") {
    Setup s;
    const double g11 = gibbs_state(s.q.Delta, s.res.beta).rho11;
    const auto st0 = evolve_leading(InitialState::logic(1), s.rs, s.q.Delta, s.res.beta, 0.0);
    // C_Delta = 0: the off-diagonal sits at its ergodic mean for all t.
    CHECK(st0.rho12 == Complex(0.0, 0.0));
    const auto st = evolve_leading(InitialState::logic(1), s.rs, s.q.Delta, s.res.beta, 4.0);
    CHECK(st.rho12 == Complex(0.0, 0.0));
    // Populations decay toward Gibbs.
    CHECK(std::abs(st.rho11 - g11) < std::abs(st0.rho11 - g11));
}

TEST_CASE("time_series") {
    Setup s;
    const auto init = InitialState::illustration();

    SECTION("single-point grid") {
        const auto ts = time_series(init, s.rs, s.q.Delta, s.res.beta, {0.0});
        REQUIRE(ts.times.size() == 1);
        CHECK(ts.states[0].rho11 == Catch::Approx(0.5).margin(1e-15));
        CHECK(ts.provenance == Provenance::leading_order);
    }

    SECTION("coherence halves at t = tau_D ln 2") {
        const double tau_D = timescales(s.rs).tau_D;
        const auto ts = time_series(init, s.rs, s.q.Delta, s.res.beta,
                                    {0.0, tau_D * std::log(2.0)});
        CHECK(std::abs(ts.states[0].rho12) == Catch::Approx(0.5).epsilon(1e-14));
        CHECK(std::abs(ts.states[1].rho12) == Catch::Approx(0.25).epsilon(1e-13));
    }

    SECTION("empty grid") {
        const auto ts = time_series(init, s.rs, s.q.Delta, s.res.beta, {});
        CHECK(ts.times.empty());
        CHECK(ts.states.empty());
    }

    SECTION("non-increasing grids are rejected") {
        CHECK_THROWS_AS(time_series(init, s.rs, s.q.Delta, s.res.beta, {0.0, 1.0, 1.0}),
                        ValidationError);
        CHECK_THROWS_AS(time_series(init, s.rs, s.q.Delta, s.res.beta, {-1.0, 1.0}),
                        ValidationError);
    }

    SECTION("trace, hermiticity, monotone decoherence, physical spectrum") {
        std::vector<double> grid;
        for (int i = 0; i < 400; ++i) grid.push_back(0.05 * i);
        const auto ts = time_series(init, s.rs, s.q.Delta, s.res.beta, grid);
        double prev = 1.0;
        for (const auto& st : ts.states) {
            REQUIRE(st.rho11 + st.rho22() == 1.0);
            REQUIRE(st.rho21() == std::conj(st.rho12));
            const double mod = std::abs(st.rho12);
            REQUIRE(mod < prev);
            prev = mod;
            REQUIRE(st.is_physical(1e-12));
        }
    }
}
