// form_factor.hpp — reservoir form factors g(k) = |k|^p e^{-|k|^m} g1(sigma)
// and the thermal reservoir parameters.

#pragma once

#include <cmath>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "qdeco/errors.hpp"

namespace qdeco {

inline constexpr double kFourPi = 4.0 * std::numbers::pi;

struct ReservoirSpec {
    double beta = 1.0;  // inverse temperature, > 0

    void validate() const {
        if (!(beta > 0.0) || !std::isfinite(beta)) {
            throw ValidationError("reservoir.beta must be positive and finite");
        }
    }
};

// Momentum-space coupling function. The radial profile is either the
// parametric family r^p e^{-r^m} or a user-supplied callable with a declared
// infrared exponent p. All angular information enters through angular_norm,
// the squared L^2 norm of g1 over the unit sphere (4*pi for g1 == 1).
struct FormFactor {
    double p = 0.5;                        // infrared exponent, p = -1/2 + n
    int m = 1;                             // ultraviolet decay exponent, 1 or 2
    double angular_norm = kFourPi;         // ||g1||^2 on S^2
    std::function<double(double)> radial;  // optional custom radial profile g_r(r)

    bool is_parametric() const { return !radial; }

    // g_r(r): radial part of the form factor.
    double radial_value(double r) const {
        if (radial) return radial(r);
        return std::pow(r, p) * std::exp(-std::pow(r, m));
    }

    double radial_sq(double r) const {
        const double v = radial_value(r);
        return v * v;
    }

    void validate() const {
        const double n = p + 0.5;
        if (!(n >= 0.0) || std::abs(n - std::round(n)) > 1e-12) {
            throw ValidationError("form_factor.p must satisfy p = -1/2 + n, n = 0, 1, ...");
        }
        if (m != 1 && m != 2) {
            throw ValidationError("form_factor.m must be 1 or 2");
        }
        if (!(angular_norm > 0.0) || !std::isfinite(angular_norm)) {
            throw ValidationError("form_factor.angular_norm must be positive and finite");
        }
    }
};

inline FormFactor isotropic_form_factor(double p, int m) {
    FormFactor ff;
    ff.p = p;
    ff.m = m;
    ff.angular_norm = kFourPi;
    ff.validate();
    return ff;
}

namespace detail {

// Checks that g_r(r)/r^p stabilizes to a finite positive constant as r -> 0,
// sampling radii 1e-2 .. 1e-6. Returns the limiting constant C on success,
// NaN on failure.
inline double infrared_ratio_limit(const FormFactor& ff, double p) {
    const std::vector<double> radii = {1e-2, 1e-3, 1e-4, 1e-5, 1e-6};
    std::vector<double> ratios;
    for (double r : radii) {
        const double g = ff.radial_value(r);
        const double ratio = g / std::pow(r, p);
        if (!std::isfinite(ratio) || ratio <= 0.0) return std::nan("");
        ratios.push_back(ratio);
    }
    const double last = ratios.back();
    const double prev = ratios[ratios.size() - 2];
    if (std::abs(last - prev) > 5e-2 * std::abs(last)) return std::nan("");
    return last;
}

}  // namespace detail

// Returns the infrared exponent p: the unique power with
// 0 < lim_{r->0} g_r(r)/r^p < inf. For the parametric family this is the
// stored p; a custom radial profile is verified numerically against its
// declared p by a ratio-stabilization test.
inline double infrared_exponent(const FormFactor& ff) {
    ff.validate();
    if (ff.is_parametric()) return ff.p;
    const double c = detail::infrared_ratio_limit(ff, ff.p);
    if (std::isnan(c)) {
        // The declared p failed; scan the admissible set before giving up so
        // the error message can point at the right exponent.
        for (int n = 0; n <= 8; ++n) {
            const double cand = -0.5 + n;
            if (std::isfinite(detail::infrared_ratio_limit(ff, cand))) {
                throw NonconformingProfile(
                    "custom radial profile has infrared exponent " + std::to_string(cand) +
                    ", not the declared " + std::to_string(ff.p));
            }
        }
        throw NonconformingProfile(
            "custom radial profile has no admissible infrared exponent p = -1/2 + n");
    }
    return ff.p;
}

// The infrared constant C = lim_{r->0} g_r(r)/r^p (1 for the parametric family).
inline double infrared_constant(const FormFactor& ff) {
    if (ff.is_parametric()) return 1.0;
    const double c = detail::infrared_ratio_limit(ff, ff.p);
    if (std::isnan(c)) {
        throw NonconformingProfile("custom radial profile fails the infrared ratio test");
    }
    return c;
}

}  // namespace qdeco
