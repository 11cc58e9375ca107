#pragma once
#include <stdexcept>
#include <string>

namespace ztk {

// Base for everything the toolkit throws on purpose.
struct SimError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A state, stage value, or recorded column went NaN/Inf. Carries the first
// offending time so the fault is attributable.
struct NonFiniteState : SimError {
    double t;
    NonFiniteState(double t_, const std::string& where)
        : SimError("non-finite value at t=" + std::to_string(t_) + " in " + where), t(t_) {}
};

// Evaluation left the model's validity region (e.g. a level radicand < 0).
struct DomainError : SimError {
    using SimError::SimError;
};

// Bad configuration file / CLI arguments. Maps to exit code 2.
struct ConfigError : SimError {
    using SimError::SimError;
};

// Algebraic solve failed (no cancellation, singular mixing matrix, ...).
struct SolveError : SimError {
    using SimError::SimError;
};

struct NoConvergence : SimError {
    using SimError::SimError;
};

struct GridMismatch : SimError {
    using SimError::SimError;
};

struct DegenerateBox : SimError {
    using SimError::SimError;
};

struct DivisionByZero : SimError {
    using SimError::SimError;
};

struct IoError : SimError {
    using SimError::SimError;
};

}  // namespace ztk
