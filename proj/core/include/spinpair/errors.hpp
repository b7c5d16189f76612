#pragma once

#include <stdexcept>
#include <string>

namespace spinpair {

/// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Input state or operator failed a physical validity check.
struct ValidationError : Error {
    using Error::Error;
};

/// Parameters sit on a singular manifold of a closed formula
/// (e.g. eta^2 = lambda^2 for the closed X-state engine).
struct SingularParameterError : Error {
    using Error::Error;
};

/// Fixed-step integration became unreliable (trace drift too large).
struct StabilityError : Error {
    using Error::Error;
};

/// A truncated series could not meet the requested tolerance.
struct TruncationError : Error {
    using Error::Error;
};

/// Bad run configuration (flags, config file, ranges).
struct ConfigError : Error {
    using Error::Error;
};

/// Filesystem output failure.
struct IoError : Error {
    using Error::Error;
};

}  // namespace spinpair
