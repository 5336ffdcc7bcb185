#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <unordered_map>

#include "symsieve/report.hpp"

namespace symsieve {

// Local parameter table of a self-dual degree-2 Euler product.  At each
// covered prime the pair {alpha_p, 1/alpha_p} determines the local factor
//   [(1 - alpha_p p^-s)(1 - alpha_p^-1 p^-s)]^-1,
// whose coefficients are the Hecke values tau(p^m).  Admissible parameters
// are either unitary (|alpha_p| = 1) or real with 1 < |alpha_p| <= p^(7/64)
// (Kim-Sarnak).  The unordered pair {alpha, 1/alpha} is the invariant
// object; all derived quantities are unchanged under alpha -> 1/alpha.
class SatakeData {
 public:
  // Validates every parameter against the admissibility condition above.
  // Throws BoundError on a violation, DomainError on a non-prime index.
  static SatakeData create(double nu_abs,
                           std::unordered_map<uint64_t, std::complex<double>> alphas,
                           std::string source_tag);

  // Skips admissibility validation.  For tests and fault injection only.
  static SatakeData create_unchecked(double nu_abs,
                                     std::unordered_map<uint64_t, std::complex<double>> alphas,
                                     std::string source_tag);

  // alpha_p; throws MissingPrimeError if p is not covered.
  std::complex<double> alpha(uint64_t p) const;
  bool covers(uint64_t p) const { return alphas_.count(p) != 0; }

  double nu_abs() const { return nu_abs_; }
  // Largest covered prime (0 when the table is empty).
  uint64_t p_max() const { return p_max_; }
  const std::string& source_tag() const { return source_tag_; }
  size_t prime_count() const { return alphas_.size(); }

  // Estimated absolute precision of the input a_p values: 0 for exact
  // synthetic data, 10^-d for decimal files with d fractional digits.
  double input_precision() const { return input_precision_; }
  void set_input_precision(double eps) { input_precision_ = eps; }

 private:
  SatakeData() = default;
  double nu_abs_ = 0.0;
  std::unordered_map<uint64_t, std::complex<double>> alphas_;
  uint64_t p_max_ = 0;
  std::string source_tag_;
  double input_precision_ = 0.0;
};

// True if alpha is admissible at p: unitary within kUnitaryTolerance, or
// real with 1 < |alpha| <= p^(7/64) within the same relative slack.
bool satake_admissible(uint64_t p, std::complex<double> alpha);

// tau(p^m) = sum_{j=0..m} alpha_p^(m-2j), realised from the conjugate or
// reciprocal pair.  Throws MissingPrimeError / NonRealCoefficientError.
double hecke_prime_power(const SatakeData& data, uint64_t p, int m);

// tau(n) by multiplicativity over the factorisation of n.  n >= 1.
double hecke_eigenvalue(const SatakeData& data, uint64_t n);

// Sweeps |tau(n)| <= d(n) n^(7/64) for n <= n_max.  max_abs_error is the
// worst ratio |tau(n)| / (d(n) n^(7/64)); the check passes when the ratio
// stays below 1 + kIdentityTolerance.
VerificationReport validate_kim_sarnak(const SatakeData& data, uint64_t n_max);

}  // namespace symsieve
