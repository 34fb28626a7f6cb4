// spectral.hpp — reservoir integrals: the energy-exchange effectiveness
// xi(eta), its pre-limit Lorentzian oracle, <g, omega^{-1} g>, and the
// principal-value energy integral entering the real shift R.

#pragma once

#include <array>
#include <cmath>
#include <numbers>

#include "qdeco/errors.hpp"
#include "qdeco/form_factor.hpp"
#include "qdeco/quadrature.hpp"

namespace qdeco {

namespace detail {

// Radial integrand r^2 |g_r(r)|^2 coth(beta r / 2), continued by its limit at
// r = 0 (finite for p >= -1/2, nonzero only at p = -1/2).
inline double thermal_shell(const FormFactor& ff, double beta, double r) {
    if (r <= 0.0) {
        if (ff.p == -0.5) {
            const double c = infrared_constant(ff);
            return 2.0 * c * c / beta;
        }
        return 0.0;
    }
    return r * r * ff.radial_sq(r) / std::tanh(0.5 * beta * r);
}

}  // namespace detail

// Closed-form xi(eta): the Lorentzian family concentrates on the shell
// |k| = eta for eta > 0; at the half-line endpoint eta = 0 it carries weight
// 1/2, which is nonzero only for p = -1/2. Verified against xi_lorentzian in
// the test suite before being trusted.
inline double xi(const FormFactor& ff, const ReservoirSpec& res, double eta) {
    ff.validate();
    res.validate();
    if (!(eta >= 0.0)) throw ValidationError("xi: eta must be >= 0");
    if (eta == 0.0) {
        if (ff.p > -0.5) return 0.0;
        // Endpoint weight 1/2 times the r -> 0 limit of the shell integrand.
        return 0.5 * detail::thermal_shell(ff, res.beta, 0.0) * ff.angular_norm;
    }
    return detail::thermal_shell(ff, res.beta, eta) * ff.angular_norm;
}

// Pre-limit integral with the Lorentzian epsilon/((r-eta)^2 + epsilon^2).
// Near the peak the substitution r = eta + epsilon tan(theta) removes it
// exactly; away from the peak (|r - eta| > W) the Lorentzian is smooth and
// the integral is done directly in r. The split is exact for every epsilon,
// so it does not disturb the epsilon -> 0 extrapolation.
inline double xi_lorentzian(const FormFactor& ff, const ReservoirSpec& res,
                            double eta, double epsilon) {
    ff.validate();
    res.validate();
    if (!(epsilon > 0.0)) throw ValidationError("xi_lorentzian: epsilon must be > 0");
    const double beta = res.beta;
    const double W = 0.5;
    const double lo = std::max(0.0, eta - W);
    const double hi = eta + W;

    auto peak_integrand = [&](double theta) {
        const double r = eta + epsilon * std::tan(theta);
        return detail::thermal_shell(ff, beta, r);
    };
    const double peak = quad::integrate(peak_integrand, std::atan((lo - eta) / epsilon),
                                        std::atan((hi - eta) / epsilon), 1e-13, 1e-9);

    auto tail_integrand = [&](double r) {
        const double d = r - eta;
        return detail::thermal_shell(ff, beta, r) * epsilon / (d * d + epsilon * epsilon);
    };
    double tails = quad::integrate(tail_integrand, hi, quad::infinity(), 1e-13, 1e-9);
    if (lo > 0.0) tails += quad::integrate(tail_integrand, 0.0, lo, 1e-13, 1e-9);

    return (peak + tails) * ff.angular_norm / std::numbers::pi;
}

// Extrapolates xi_lorentzian over epsilon in {1e-2, 1e-3, 1e-4}. The error
// expansion is polynomial in epsilon except at the eta = 0 endpoint with
// p = -1/2, where the linear term of the shell integrand contributes
// epsilon*log(1/epsilon); the basis is chosen accordingly.
inline double xi_lorentzian_extrapolated(const FormFactor& ff, const ReservoirSpec& res,
                                         double eta) {
    const std::array<double, 3> eps = {1e-2, 1e-3, 1e-4};
    std::array<double, 3> v{};
    for (int i = 0; i < 3; ++i) v[i] = xi_lorentzian(ff, res, eta, eps[i]);

    if (eta == 0.0 && ff.p == -0.5) {
        // Solve a + b*eps*log(1/eps) + c*eps = v for a via Cramer's rule.
        std::array<double, 3> l{}, e{};
        for (int i = 0; i < 3; ++i) {
            l[i] = eps[i] * std::log(1.0 / eps[i]);
            e[i] = eps[i];
        }
        auto det3 = [](const std::array<double, 3>& c0, const std::array<double, 3>& c1,
                       const std::array<double, 3>& c2) {
            return c0[0] * (c1[1] * c2[2] - c1[2] * c2[1]) -
                   c1[0] * (c0[1] * c2[2] - c0[2] * c2[1]) +
                   c2[0] * (c0[1] * c1[2] - c0[2] * c1[1]);
        };
        const std::array<double, 3> ones = {1.0, 1.0, 1.0};
        return det3(v, l, e) / det3(ones, l, e);
    }

    // Repeated Richardson for the epsilon + epsilon^2 model (ratio 10).
    const double y1 = (10.0 * v[1] - v[0]) / 9.0;
    const double y2 = (10.0 * v[2] - v[1]) / 9.0;
    return (100.0 * y2 - y1) / 99.0;
}

// <g, omega^{-1} g> = int |g(k)|^2 / |k| d^3k = ||g1||^2 int_0^inf r |g_r(r)|^2 dr.
inline double g_omega_inverse(const FormFactor& ff) {
    ff.validate();
    auto integrand = [&](double r) { return r * ff.radial_sq(r); };
    return ff.angular_norm * quad::integrate(integrand, 0.0, quad::infinity());
}

// P.V. over u in R of u^2 |g_r(|u|)|^2 coth(beta|u|/2) / (u - Delta), with the
// angular weight ||g1||^2. The excised window [Delta-h, Delta+h] is folded
// into the odd-part integral (f(Delta+s) - f(Delta-s))/s, which is regular;
// the construction is the exact delta -> 0 limit for any h < Delta.
inline double pv_energy_integral(const FormFactor& ff, const ReservoirSpec& res,
                                 double Delta, double half_width = 0.0) {
    ff.validate();
    res.validate();
    if (!(Delta > 0.0)) throw ValidationError("pv_energy_integral: Delta must be > 0");
    const double beta = res.beta;
    auto f = [&](double u) { return detail::thermal_shell(ff, beta, u); };  // even in u
    const double h = (half_width > 0.0 && half_width < Delta) ? half_width : 0.5 * Delta;

    // u < 0 branch, reflected: -int_0^inf f(s)/(s+Delta) ds.
    const double neg =
        -quad::integrate([&](double s) { return f(s) / (s + Delta); }, 0.0, quad::infinity());
    const double left =
        quad::integrate([&](double u) { return f(u) / (u - Delta); }, 0.0, Delta - h);
    const double right = quad::integrate([&](double u) { return f(u) / (u - Delta); },
                                         Delta + h, quad::infinity());
    auto odd_part = [&](double s) {
        if (s < 1e-10) {
            const double d = 1e-6 * std::max(Delta, 1.0);
            return (f(Delta + d) - f(Delta - d)) / d;
        }
        return (f(Delta + s) - f(Delta - s)) / s;
    };
    const double window = quad::integrate(odd_part, 0.0, h);

    return ff.angular_norm * (neg + left + right + window);
}

}  // namespace qdeco
