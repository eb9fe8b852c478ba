#pragma once

#include <stdexcept>
#include <string>

namespace radial {

// Caller misuse: mismatched manifolds or base points, empty inputs.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Inputs off the manifold, non-finite coordinates, negative radii.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Log map requested for a point in (or numerically at) the cut locus.
class CutLocusError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Invalid model parameters (beta <= 0, exponent <= 1, bad tables).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The requested quantity is not available for this manifold/profile pair.
class UnsupportedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A numerical test could not reach a verdict (e.g. tail decay not resolved).
class IndeterminateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Root-finding bounds that cannot bracket anything.
class BracketError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace radial
