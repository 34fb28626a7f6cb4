// quadrature.hpp — adaptive Gauss-Kronrod wrappers (Boost.Math backend).
// Integrands are smooth away from pre-identified split points; callers are
// expected to split intervals there.

#pragma once

#include <cmath>
#include <limits>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "qdeco/errors.hpp"

namespace qdeco::quad {

inline constexpr double kAbsTol = 1e-10;
inline constexpr double kRelTol = 1e-8;

// Integrate f over [a, b]; b may be +infinity. Throws QuadratureFailure if the
// error estimate exceeds max(abs_tol, rel_tol*|value|).
template <class F>
double integrate(F&& f, double a, double b,
                 double abs_tol = kAbsTol, double rel_tol = kRelTol) {
    using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
    double err = 0.0;
    // Boost's termination parameter is a relative tolerance; drive it hard and
    // judge convergence from the reported error estimate.
    const double value = GK::integrate(f, a, b, 15, 1e-12, &err);
    if (!(err <= std::max(abs_tol, rel_tol * std::abs(value))) || std::isnan(value)) {
        throw QuadratureFailure(
            "adaptive quadrature did not converge on [" + std::to_string(a) + ", " +
            std::to_string(b) + "]: value=" + std::to_string(value) +
            " err=" + std::to_string(err));
    }
    return value;
}

inline double infinity() { return std::numeric_limits<double>::infinity(); }

}  // namespace qdeco::quad
