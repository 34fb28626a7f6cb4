// dynamics.hpp — leading-order reduced-density-matrix evolution for the
// covered initial states, the Gibbs state, and time-series evaluation.

#pragma once

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "qdeco/errors.hpp"
#include "qdeco/resonance.hpp"

namespace qdeco {

// 2x2 hermitian, unit-trace state of the qubit. Constructed from (rho11, rho12);
// rho22 and rho21 are filled by unit trace and hermiticity, so both hold
// bit-exactly on every instance.
struct ReducedDensityMatrix {
    double rho11 = 1.0;
    Complex rho12{0.0, 0.0};

    double rho22() const { return 1.0 - rho11; }
    Complex rho21() const { return std::conj(rho12); }

    // Eigenvalues (1 +- sqrt((rho11-rho22)^2 + 4|rho12|^2)) / 2.
    std::pair<double, double> eigenvalues() const {
        const double d = 2.0 * rho11 - 1.0;
        const double s = std::sqrt(d * d + 4.0 * std::norm(rho12));
        return {0.5 * (1.0 - s), 0.5 * (1.0 + s)};
    }

    bool is_physical(double tol = 1e-12) const {
        const auto [lo, hi] = eigenvalues();
        return lo >= -tol && hi <= 1.0 + tol;
    }
};

struct InitialState {
    enum class Tag { logic, illustration_coherent, custom_diagonal };
    Tag tag = Tag::illustration_coherent;
    int logic_j = 1;  // 1 or 2, for Tag::logic
    double q = 1.0;   // ground population, for Tag::custom_diagonal

    static InitialState logic(int j) {
        if (j != 1 && j != 2) throw ValidationError("InitialState::logic: j must be 1 or 2");
        return {Tag::logic, j, 0.0};
    }
    static InitialState illustration() { return {Tag::illustration_coherent, 0, 0.0}; }
    static InitialState custom_diagonal(double q) {
        if (!(q >= 0.0 && q <= 1.0)) {
            throw ValidationError("InitialState::custom_diagonal: q must lie in [0, 1]");
        }
        return {Tag::custom_diagonal, 0, q};
    }

    ReducedDensityMatrix density_matrix() const {
        switch (tag) {
            case Tag::logic:
                return {logic_j == 1 ? 1.0 : 0.0, 0.0};
            case Tag::illustration_coherent:
                return {0.5, 0.5};
            case Tag::custom_diagonal:
                return {q, 0.0};
        }
        throw Error("unreachable");
    }

    std::string name() const {
        switch (tag) {
            case Tag::logic: return logic_j == 1 ? "logic1" : "logic2";
            case Tag::illustration_coherent: return "illustration";
            case Tag::custom_diagonal: return "custom_diagonal";
        }
        return "?";
    }
};

enum class Provenance { leading_order, oracle };

inline const char* provenance_name(Provenance p) {
    return p == Provenance::leading_order ? "leading-order" : "oracle";
}

struct TimeSeries {
    std::vector<double> times;
    std::vector<ReducedDensityMatrix> states;
    Provenance provenance = Provenance::leading_order;
    double recurrence_time = 0.0;  // 0 = not applicable (continuum theory)
};

// Gibbs state of the free qubit, gauge E1 = 0, E2 = Delta.
inline ReducedDensityMatrix gibbs_state(double Delta, double beta) {
    if (!(beta > 0.0)) throw ValidationError("gibbs_state: beta must be > 0");
    const double w = std::exp(-beta * Delta);
    return {1.0 / (1.0 + w), 0.0};
}

// Amplitudes of the resonance contributions for the supported initial states.
// C0 multiplies e^{i t eps0} in rho11 (rho22 takes -C0 by unit trace);
// CDelta multiplies the decaying coherence phase in rho12.
struct AmplitudeConstants {
    double C0 = 0.0;
    Complex CDelta{0.0, 0.0};
};

inline AmplitudeConstants amplitude_constants(const InitialState& init, double Delta,
                                              double beta) {
    const double bd = beta * Delta;
    switch (init.tag) {
        case InitialState::Tag::logic: {
            const double denom = std::pow(std::exp(bd) + 1.0, -1.5);
            if (init.logic_j == 1) return {std::exp(0.5 * bd) * denom, 0.0};
            return {std::exp(bd) * denom, 0.0};
        }
        case InitialState::Tag::illustration_coherent:
            // Population amplitude (-1)^m/2 tanh(beta Delta/2), written for m = 1;
            // coherence amplitude exactly 1/2.
            return {-0.5 * std::tanh(0.5 * bd), 0.5};
        case InitialState::Tag::custom_diagonal:
            throw UnsupportedInitialState(
                "amplitude constants for custom_diagonal are not available; "
                "supported initial states: logic1, logic2, illustration");
    }
    throw Error("unreachable");
}

// Leading-order state at time t: diagonals = Gibbs + C0 e^{i t eps0} (eps0 is
// purely imaginary at second order), rho12 = CDelta e^{i t epsDelta}. All
// O(lambda^2) remainders are dropped; provenance records this.
//
// Phase convention: rho_t = e^{-iHt} rho_0 e^{iHt}, so <1|rho_t|2> rotates as
// e^{+i Delta t}; the resonance attached to rho12 is therefore epsDelta (the
// oracle module uses the same convention, so the two routes are comparable
// entry by entry).
inline ReducedDensityMatrix evolve_leading(const InitialState& init, const ResonanceSet& rs,
                                           double Delta, double beta, double t) {
    if (!(t >= 0.0)) throw ValidationError("evolve_leading: t must be >= 0");
    const auto amps = amplitude_constants(init, Delta, beta);
    const auto gibbs = gibbs_state(Delta, beta);
    // e^{i t eps0} with Re eps0 = 0 is real.
    const double pop_envelope = std::exp(-t * rs.eps0.imag()) * std::cos(t * rs.eps0.real());
    const double rho11 = gibbs.rho11 + amps.C0 * pop_envelope;
    const Complex rho12 = amps.CDelta * std::exp(Complex(0.0, t) * rs.epsDelta);
    return {rho11, rho12};
}

inline TimeSeries time_series(const InitialState& init, const ResonanceSet& rs, double Delta,
                              double beta, const std::vector<double>& t_grid) {
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        if (!(t_grid[i] >= 0.0)) throw ValidationError("time_series: grid must be nonnegative");
        if (i > 0 && !(t_grid[i] > t_grid[i - 1])) {
            throw ValidationError("time_series: grid must be strictly increasing");
        }
    }
    TimeSeries ts;
    ts.times = t_grid;
    ts.provenance = Provenance::leading_order;
    ts.states.reserve(t_grid.size());
    for (double t : t_grid) ts.states.push_back(evolve_leading(init, rs, Delta, beta, t));
    return ts;
}

}  // namespace qdeco
