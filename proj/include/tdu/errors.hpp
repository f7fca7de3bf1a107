#pragma once

#include <stdexcept>
#include <string>

namespace tdu {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error {
    using Error::Error;
};

// Outcome outside the utility function's domain.
struct DomainError : Error {
    using Error::Error;
};

// A payoff placed at a date where it is not measurable w.r.t. that
// date's partition. Carries the offending (date, cell) when known.
struct MeasurabilityViolation : Error {
    int t = -1;
    unsigned cell = 0;
    MeasurabilityViolation(const std::string& msg, int t_, unsigned cell_)
        : Error(msg), t(t_), cell(cell_) {}
    explicit MeasurabilityViolation(const std::string& msg) : Error(msg) {}
};

struct NotDeterministic : Error {
    using Error::Error;
};

struct LengthMismatch : Error {
    using Error::Error;
};

// Marginal vector increment below -eps for a non-convex capacity.
struct NegativeMass : Error {
    using Error::Error;
};

struct InvalidDistortion : Error {
    using Error::Error;
};

struct SamplingExhausted : Error {
    using Error::Error;
};

struct UnknownExample : Error {
    using Error::Error;
};

} // namespace tdu
