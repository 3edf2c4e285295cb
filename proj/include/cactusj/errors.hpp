// Error types. Every failure mode that callers can act on gets its own type;
// InternalAssertion marks conditions that falsify the pipeline itself.

#pragma once

#include <stdexcept>
#include <string>

namespace cactusj {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ring
struct NegativeExponentAtZero : Error {
  using Error::Error;
};
struct DivisionByZero : Error {
  using Error::Error;
};
struct PoleAtPoint : Error {
  using Error::Error;
};

// coxeter
struct GroupTooLarge : Error {
  using Error::Error;
};
struct NotASubsetOfS : Error {
  using Error::Error;
};

// hecke / jring
struct InternalAssertion : Error {
  using Error::Error;
};
struct IdentityCheckFailed : Error {
  using Error::Error;
};
struct SingularPsi : Error {
  using Error::Error;
};
struct NotMonomial : Error {
  using Error::Error;
};

// cactus
struct CharacterizationFailed : Error {
  using Error::Error;
};
struct PoleAtZero : Error {
  using Error::Error;
};
struct NotSignedPermutation : Error {
  using Error::Error;
};

// cli / io
struct UnknownType : Error {
  using Error::Error;
};
struct MalformedMatrixFile : Error {
  using Error::Error;
};
struct ConfigError : Error {
  using Error::Error;
};

}  // namespace cactusj
