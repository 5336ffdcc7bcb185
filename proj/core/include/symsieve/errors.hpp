#pragma once

#include <stdexcept>
#include <string>

namespace symsieve {

// Base class for all library errors.  Every failure mode that callers are
// expected to handle is a distinct subclass so that tests and the CLI can
// discriminate without string matching.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// A value outside the documented domain of an operation (n = 0, ell > 4, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Local data for a required prime is absent from the parameter table.
class MissingPrimeError : public Error {
 public:
  using Error::Error;
};

// A coefficient that must be real came out with a non-negligible imaginary
// part, indicating corrupted or non-conjugate-symmetric input.
class NonRealCoefficientError : public Error {
 public:
  using Error::Error;
};

// A coefficient that must be non-negative came out below -tolerance.
class NegativeCoefficientError : public Error {
 public:
  using Error::Error;
};

// An Euler local was requested beyond the degree it carries.
class InsufficientLocalDegreeError : public Error {
 public:
  using Error::Error;
};

// Two series passed to a pointwise operation have different lengths.
class LengthMismatchError : public Error {
 public:
  using Error::Error;
};

// A quantity fell below a guaranteed lower bound (e.g. F_p - 1 >= p^-3).
class LowerBoundViolatedError : public Error {
 public:
  using Error::Error;
};

// A truncated Euler product has a vanishing or negative local factor.
class DivergentLocalError : public Error {
 public:
  using Error::Error;
};

// A smooth-window taper was configured with non-positive or oversized width.
class InvalidTaperError : public Error {
 public:
  using Error::Error;
};

// A sum was requested beyond the prime coverage of the parameter table.
class CoverageExceededError : public Error {
 public:
  using Error::Error;
};

// Malformed text in a form file (bad token, non-prime index, bound breach).
class ParseError : public Error {
 public:
  using Error::Error;
};

// A form file skips one or more primes below its largest listed prime.
class GapError : public Error {
 public:
  using Error::Error;
};

// A Satake parameter or coefficient violates the Kim-Sarnak ramp.
class BoundError : public Error {
 public:
  using Error::Error;
};

// A binary series cache failed payload verification.
class ChecksumMismatchError : public Error {
 public:
  using Error::Error;
};

// A binary series cache was written for a different (form, series, n_max) key.
class KeyMismatchError : public Error {
 public:
  using Error::Error;
};

}  // namespace symsieve
