#pragma once

namespace symsieve {

// Exponent in the Kim-Sarnak bound: non-unitary Satake parameters satisfy
// 1 < |alpha_p| <= p^(7/64), hence |tau(n)| <= d(n) * n^(7/64).
inline constexpr double kKimSarnakExponent = 7.0 / 64.0;

// Absolute ceiling on the imaginary residue of a coefficient that is real by
// conjugate symmetry.  Imaginary parts below this are rounding noise.
inline constexpr double kRealTolerance = 1e-9;

// Relative slack when testing |alpha| = 1 membership on parsed input.
inline constexpr double kUnitaryTolerance = 1e-8;

// Coefficients of non-negative series may dip this far below zero before we
// treat them as corrupt rather than as rounding noise.
inline constexpr double kNonNegativeTolerance = 1e-9;

// Default tolerance for exact-identity sweeps (Shimura, Rankin
// factorization, sieve weight identity, ...).
inline constexpr double kIdentityTolerance = 1e-9;

// Absolute slack applied to |a_p| <= 2 p^(7/64) when parsing decimal input;
// values in (2, 2 + slack] snap to the unitary boundary.
inline constexpr double kApSnapSlack = 1e-6;

}  // namespace symsieve
