// errors.hpp — exception hierarchy; ValidationFailure maps to exit code 2,
// NumericalFailure to exit code 3.

#pragma once

#include <stdexcept>
#include <string>

namespace qdeco {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad input: rejected before any numerics run.
struct ValidationFailure : Error {
    using Error::Error;
};

// A numerical procedure could not reach its target accuracy.
struct NumericalFailure : Error {
    using Error::Error;
};

struct ValidationError : ValidationFailure {
    using ValidationFailure::ValidationFailure;
};

struct ParseError : ValidationFailure {
    using ValidationFailure::ValidationFailure;
};

struct NonconformingProfile : ValidationFailure {
    using ValidationFailure::ValidationFailure;
};

struct AmbiguousClustering : ValidationFailure {
    using ValidationFailure::ValidationFailure;
};

struct DegenerateSystem : ValidationFailure {
    using ValidationFailure::ValidationFailure;
};

struct UnsupportedInitialState : ValidationFailure {
    using ValidationFailure::ValidationFailure;
};

struct BudgetExceeded : ValidationFailure {
    using ValidationFailure::ValidationFailure;
};

struct DimensionMismatch : ValidationFailure {
    using ValidationFailure::ValidationFailure;
};

struct PreconditionViolation : ValidationFailure {
    using ValidationFailure::ValidationFailure;
};

struct QuadratureFailure : NumericalFailure {
    using NumericalFailure::NumericalFailure;
};

struct EigendecompositionFailure : NumericalFailure {
    using NumericalFailure::NumericalFailure;
};

struct IllConditionedFit : NumericalFailure {
    using NumericalFailure::NumericalFailure;
};

}  // namespace qdeco
