#pragma once

#include <stdexcept>
#include <string>

namespace speclat {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed point set, configuration or argument.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// The differences of the point set span a lattice of rank < n.
class RankDeficient : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class NotInLattice : public Error {
 public:
  using Error::Error;
};

/// Some point of the set lies in the difference lattice, so the bipartite
/// graph is not defined.
class CosetViolation : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

/// Base for errors raised when a configured computation cap is exceeded.
class ResourceLimit : public Error {
 public:
  using Error::Error;
};

class SizeLimit : public ResourceLimit {
 public:
  using ResourceLimit::ResourceLimit;
};

class ExplosionGuard : public ResourceLimit {
 public:
  using ResourceLimit::ResourceLimit;
};

/// Evaluation point lies (numerically) on the spectrum.
class SingularLevel : public Error {
 public:
  using Error::Error;
};

class SpectrumProximity : public Error {
 public:
  using Error::Error;
};

/// A quantity that must be an integer came out fractional. Always a defect.
class IntegralityViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace speclat
