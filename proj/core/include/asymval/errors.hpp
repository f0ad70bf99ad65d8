#pragma once

#include <stdexcept>
#include <string>

namespace asymval {

/// Root of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller violated an operation's precondition.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A log-scale quantity is too large to materialise as an ordinary magnitude.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the mathematical domain (e.g. log log of a value <= e).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Far-field evaluation requested outside the two supported cones.
class SectorError : public Error {
 public:
  using Error::Error;
};

/// A ball could not be shrunk below the requested tolerance.
class PrecisionExhausted : public Error {
 public:
  using Error::Error;
};

/// Adaptive quadrature failed to meet its tolerance.
class ToleranceUnreachable : public Error {
 public:
  using Error::Error;
};

/// No dyadic candidate at the finest granularity certified.
class SearchExhausted : public Error {
 public:
  using Error::Error;
};

class GrowthTooSlow : public Error {
 public:
  using Error::Error;
};

class CertMissing : public Error {
 public:
  using Error::Error;
};

/// Sector tree could not be extended; means the plan violates its invariants.
class ConstructionError : public Error {
 public:
  using Error::Error;
};

/// Plan invariant failed on verification.
class PlanInvariantError : public Error {
 public:
  using Error::Error;
};

/// Term angle lies in no certified sector and |w| is too large to evaluate.
class UncertifiedAngle : public Error {
 public:
  using Error::Error;
};

/// The truncation tail bound does not apply at this radius.
class TailUnavailable : public Error {
 public:
  using Error::Error;
};

/// The plan is not deep enough for the requested construction.
class DepthInsufficient : public Error {
 public:
  using Error::Error;
};

/// Malformed or tampered plan/ray file.
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace asymval
