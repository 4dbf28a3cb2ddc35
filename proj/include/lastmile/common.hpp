#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace lastmile {

// Simulation time in whole seconds; t = 0 is the start of the study hour.
using Seconds = std::int64_t;

using NodeId = int;
using OrderId = int;
using VehicleId = int;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed or unusable network (load validation, unreachable nodes).
struct NetworkError : Error {
    using Error::Error;
};

// Bad demand input (empty node sets, malformed demand documents).
struct DemandError : Error {
    using Error::Error;
};

// Invalid scenario configuration or generator parameters.
struct ConfigError : Error {
    using Error::Error;
};

// Raised when a run passes its horizon with undelivered orders.
struct SimulationAborted : Error {
    using Error::Error;
};

}  // namespace lastmile
