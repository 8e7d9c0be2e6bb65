#pragma once

#include <stdexcept>
#include <string>

namespace maxte {

// Base for every library error so callers can catch maxte failures wholesale.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Phase-space construction.
struct ZeroPhaseVector : Error {
  using Error::Error;
};
struct EmptyGrid : Error {
  using Error::Error;
};

// Geometry.
struct DomainTouchesBounds : Error {
  using Error::Error;
};

// Forward solver.
struct AssemblyFailure : Error {
  using Error::Error;
};
struct NearResonance : Error {
  using Error::Error;
};
struct InterpolationOutOfDomain : Error {
  using Error::Error;
};

// Data synthesis.
struct DoubleNoise : Error {
  using Error::Error;
};

// Recovery / reconstruction.
struct DimensionMismatch : Error {
  using Error::Error;
};
struct ZeroTruth : Error {
  using Error::Error;
};
struct InsufficientData : Error {
  using Error::Error;
};

// Bound evaluators.
struct ParamOutOfRange : Error {
  using Error::Error;
};

// Config / CLI.
struct ConfigError : Error {
  using Error::Error;
};

}  // namespace maxte
