#pragma once

#include <stdexcept>
#include <string>

namespace stobon {

/// Base class for every error the engine raises at runtime.
struct EngineError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Unknown agent/atom/world names, out-of-range indices, guard violations.
struct DomainError : EngineError {
    using EngineError::EngineError;
};

/// Evaluation requested on a collapsed (zero-world) pointed model.
struct EvalError : EngineError {
    using EngineError::EngineError;
};

/// A public announcement whose formula is false at the actual world.
struct TruthfulnessViolation : EngineError {
    using EngineError::EngineError;
};

/// Scenario outside an engine's supported fragment (fast engine + deviants).
struct UnsupportedScenario : EngineError {
    using EngineError::EngineError;
};

} // namespace stobon
