#pragma once

#include <stdexcept>
#include <string>

namespace qlr {

/// Base for every error raised by the toolkit.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input files that do not parse against the catalog or model schema.
class SchemaError : public Error {
public:
    using Error::Error;
};

/// Data that violates a precondition of an operation (invalid tables, bad indices).
class InvalidInput : public Error {
public:
    using Error::Error;
};

/// A representation (amplitude or operators) cannot be built for a context.
///
/// `precondition()` names the violated gate, e.g. "double-stochasticity" or
/// "mixed-classification"; the CLI forwards it verbatim in diagnostics.
class RepresentationRefused : public Error {
public:
    RepresentationRefused(std::string precondition, const std::string& detail)
        : Error(precondition + ": " + detail), precondition_(std::move(precondition)) {}

    const std::string& precondition() const noexcept { return precondition_; }

private:
    std::string precondition_;
};

/// Simulation requests that cannot terminate (unknown context, starved filtration).
class SimulationError : public Error {
public:
    using Error::Error;
};

}  // namespace qlr
