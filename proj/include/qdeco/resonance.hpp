// resonance.hpp — second-order resonance energies of the qubit, the real
// shift R, the rate difference D, and the derived timescales.

#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "qdeco/errors.hpp"
#include "qdeco/form_factor.hpp"
#include "qdeco/spectral.hpp"
#include "qdeco/system.hpp"

namespace qdeco {

inline constexpr double kPositivityFloor = 1e-14;  // quadrature noise floor

// Complex resonance energies, truncated at second order in lambda.
struct ResonanceSet {
    Complex eps0{0.0, 0.0};           // epsilon_0(lambda)
    Complex epsDelta{0.0, 0.0};       // epsilon_Delta(lambda)
    Complex epsMinusDelta{0.0, 0.0};  // -conj(epsDelta), by construction
    double lambda = 0.0;
    bool second_order = true;     // O(lambda^4) dropped
    double strip_tau_prime = 0.0; // remainder-strip parameter, in (0, 2*pi/beta)
};

struct Timescales {
    double tau_T = std::numeric_limits<double>::infinity();  // 1 / Im eps0
    double tau_D = std::numeric_limits<double>::infinity();  // 1 / Im epsDelta
    double D = 0.0;      // second-order rate difference
    double gamma = 0.0;  // min{Im eps0, Im eps_{+-Delta}}
};

// R = (1/2)(b^2 - a^2) <g, omega^{-1} g> + (1/2)|c|^2 P.V. integral at Delta.
inline double lamb_shift_R(const QubitSystem& q, const FormFactor& ff,
                           const ReservoirSpec& res) {
    q.validate();
    const double c2 = std::norm(q.c);
    double r = 0.0;
    if (q.b * q.b != q.a * q.a) {
        r += 0.5 * (q.b * q.b - q.a * q.a) * g_omega_inverse(ff);
    }
    if (c2 > 0.0) {
        r += 0.5 * c2 * pv_energy_integral(ff, res, q.Delta);
    }
    return r;
}

// D = (1/2) pi^2 [ |c|^2 xi(Delta) - (b-a)^2 xi(0) ].
inline double rate_difference_D(const QubitSystem& q, const FormFactor& ff,
                                const ReservoirSpec& res) {
    q.validate();
    const double pi2 = std::numbers::pi * std::numbers::pi;
    return 0.5 * pi2 *
           (std::norm(q.c) * xi(ff, res, q.Delta) -
            (q.b - q.a) * (q.b - q.a) * xi(ff, res, 0.0));
}

// Second-order resonance energies:
//   eps0      = i lambda^2 pi^2 |c|^2 xi(Delta)
//   epsDelta  = Delta + lambda^2 R + (i/2) lambda^2 pi^2 [|c|^2 xi(Delta) + (b-a)^2 xi(0)]
// and epsMinusDelta = -conj(epsDelta).
inline ResonanceSet qubit_resonances(const QubitSystem& q, const FormFactor& ff,
                                     const ReservoirSpec& res, double lambda,
                                     double tau_prime = -1.0) {
    q.validate();
    res.validate();
    const double pi2 = std::numbers::pi * std::numbers::pi;
    const double l2 = lambda * lambda;
    const double c2 = std::norm(q.c);
    const double xiD = xi(ff, res, q.Delta);
    const double xi0 = xi(ff, res, 0.0);
    const double R = lambda == 0.0 ? 0.0 : lamb_shift_R(q, ff, res);

    ResonanceSet rs;
    rs.lambda = lambda;
    rs.eps0 = Complex(0.0, l2 * pi2 * c2 * xiD);
    rs.epsDelta = Complex(q.Delta + l2 * R,
                          0.5 * l2 * pi2 * (c2 * xiD + (q.b - q.a) * (q.b - q.a) * xi0));
    rs.epsMinusDelta = -std::conj(rs.epsDelta);
    rs.strip_tau_prime = tau_prime > 0.0 ? tau_prime : std::numbers::pi / res.beta;
    if (!(rs.strip_tau_prime > 0.0 && rs.strip_tau_prime < 2.0 * std::numbers::pi / res.beta)) {
        throw ValidationError("qubit_resonances: tau_prime must lie in (0, 2*pi/beta)");
    }
    return rs;
}

inline Timescales timescales(const ResonanceSet& rs) {
    const double g0 = rs.eps0.imag();
    const double gD = rs.epsDelta.imag();
    Timescales t;
    t.tau_T = g0 > 0.0 ? 1.0 / g0 : std::numeric_limits<double>::infinity();
    t.tau_D = gD > 0.0 ? 1.0 / gD : std::numeric_limits<double>::infinity();
    t.gamma = std::min(g0, gD);
    t.D = rs.lambda != 0.0 ? (g0 - gD) / (rs.lambda * rs.lambda) : 0.0;
    return t;
}

// Fermi Golden Rule condition: |c|^2 xi(Delta) > 0 (strictly, above the
// quadrature noise floor).
inline bool fermi_golden_rule_holds(const QubitSystem& q, const FormFactor& ff,
                                    const ReservoirSpec& res) {
    q.validate();
    return std::norm(q.c) * xi(ff, res, q.Delta) > kPositivityFloor;
}

}  // namespace qdeco
