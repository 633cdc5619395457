#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace fpplab {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Invalid inputs, parameters, or file contents. The CLI exits with code 2.
class ConfigError : public Error {
public:
    using Error::Error;
};

// Failures that arise while running a simulation. The CLI exits with code 3.
class SimulationError : public Error {
public:
    using Error::Error;
};

class ParityError : public ConfigError {
public:
    using ConfigError::ConfigError;
};

class DegenerateDistributionError : public ConfigError {
public:
    using ConfigError::ConfigError;
};

// Raised when constants are requested outside the regime they are valid in
// (minimum degree below 3 or offspring mean not above 1).
class TheoremScopeError : public ConfigError {
public:
    using ConfigError::ConfigError;
};

class RegularityError : public ConfigError {
public:
    using ConfigError::ConfigError;
};

class RejectionFailureError : public SimulationError {
public:
    RejectionFailureError(const std::string& what, int attempts)
        : SimulationError(what), attempts_(attempts) {}
    int attempts() const { return attempts_; }

private:
    int attempts_;
};

class DisconnectedGraphError : public SimulationError {
public:
    DisconnectedGraphError(const std::string& what, std::uint32_t vertex)
        : SimulationError(what), vertex_(vertex) {}
    std::uint32_t unreachable_vertex() const { return vertex_; }

private:
    std::uint32_t vertex_;
};

}  // namespace fpplab
