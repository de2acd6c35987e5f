#pragma once

#include <stdexcept>
#include <string>

namespace nodenet {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed, inconsistent, or missing input data (CLI exit code 2).
class InputError : public Error {
public:
    using Error::Error;
};

/// Numeric degeneracy: non-finite state, zero-norm vectors, rank-0 data
/// (CLI exit code 3).
class NumericError : public Error {
public:
    using Error::Error;
};

/// Invalid configuration values (CLI exit code 4).
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Wraps an error with the pipeline stage it occurred in.
class StageError : public Error {
public:
    StageError(std::string stage, int exit_code, const std::string& message)
        : Error("stage '" + stage + "': " + message),
          stage_(std::move(stage)),
          exit_code_(exit_code) {}

    const std::string& stage() const { return stage_; }
    int exit_code() const { return exit_code_; }

private:
    std::string stage_;
    int exit_code_;
};

/// Exit code an exception maps to at the CLI boundary.
inline int exit_code_for(const std::exception& e) {
    if (auto* s = dynamic_cast<const StageError*>(&e)) return s->exit_code();
    if (dynamic_cast<const InputError*>(&e)) return 2;
    if (dynamic_cast<const NumericError*>(&e)) return 3;
    if (dynamic_cast<const ConfigError*>(&e)) return 4;
    return 1;
}

}  // namespace nodenet
