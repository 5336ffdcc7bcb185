#pragma once

#include <complex>
#include <cstdint>
#include <span>

#include "symsieve/constants.hpp"
#include "symsieve/dirichlet.hpp"
#include "symsieve/report.hpp"
#include "symsieve/satake.hpp"

namespace symsieve {

// Selects the symmetric power sym^ell of one form.  ell = 1 reproduces the
// Hecke series itself; ell in {3,4} exists only as a factor of the ell <= 2
// factorization identities, and only the ell <= 2 paths are supported.
struct SymPowerSpec {
  int ell;
  const SatakeData* data;

  SymPowerSpec(int l, const SatakeData& d);
};

// Local factor of sym^ell at p: prod_{j=0..ell} (1 - alpha^(ell-2j) p^-s)^-1
// expanded to the given degree.  Coefficients are real by the alpha <-> 1/alpha
// symmetry; a non-real residue signals corrupt parameters.
EulerLocal sym_local(const SymPowerSpec& spec, uint64_t p, int deg);

// Local factor of sym^ell x sym^ell at p:
// prod_{j,k=0..ell} (1 - alpha^(2(ell-j-k)) p^-s)^-1.  Coefficients are real
// and non-negative (they are exponentials of sums of squares); a negative
// value signals a numerical or data fault.
EulerLocal rankin_local(const SymPowerSpec& spec, uint64_t p, int deg);

// Combinatorial evaluation of the sym^ell coefficient at p^m:
//   sum_{k=0..m} (1/k!) sum_{h1+...+hk=m} prod_r (1/h_r) sum_j alpha^(h_r(ell-2j))
// by recursive ordered-composition generation.  Cross-check only; m <= 12.
double prime_power_coeff_formula(const SymPowerSpec& spec, uint64_t p, int m);

// Factory adapters for euler_expand, sized for coefficients up to n_max.
LocalFactory sym_local_factory(const SymPowerSpec& spec, uint64_t n_max);
LocalFactory rankin_local_factory(const SymPowerSpec& spec, uint64_t n_max);

// Convenience expansions of the factories above.
CoeffSeries sym_series(const SymPowerSpec& spec, uint64_t n_max);
CoeffSeries rankin_series(const SymPowerSpec& spec, uint64_t n_max);

// Test-only perturbation applied to one expanded coefficient before a
// verification compares sides; exercises the failure path of the checks.
struct CoeffPerturbation {
  uint64_t n = 0;
  double delta = 0.0;
};

// Domination sweep: (tau^(ell)(n))^2 <= rankin coefficient at n, slack tol,
// for n <= n_max.  Supported for ell in {1,2}.
VerificationReport verify_domination(const SymPowerSpec& spec, uint64_t n_max,
                                     double tol = kIdentityTolerance,
                                     const CoeffPerturbation* fault = nullptr);

// Coefficientwise Shimura factorization: the square-eigenvalue series with
// the dilated zeta factor equals zeta times the sym^2 series.
VerificationReport verify_shimura(const SatakeData& data, uint64_t n_max,
                                  double tol = kIdentityTolerance);

// Coefficientwise factorization of sym^ell x sym^ell into zeta times
// sym^(2l) for l = 1..ell.  Supported for ell in {1,2}.
VerificationReport verify_rankin_factorization(const SymPowerSpec& spec,
                                               uint64_t n_max,
                                               double tol = kIdentityTolerance);

// Chebyshev-polynomial square identity: at each sample X (unit circle,
// away from +-1) the three expressions
//   A = sum_{j,k=0..ell} X^(2(ell-j-k))
//   B = ((X^(ell+1) - X^-(ell+1)) / (X - X^-1))^2
//   C = sum_{l=0..ell} sum_{m=0..2l} X^(2(l-m))
// agree to 1e-10; the X -> 1 limit (ell+1)^2 is checked on the summed forms.
VerificationReport chebyshev_identity_check(
    int ell, std::span<const std::complex<double>> sample_points);

// Exact rational with gcd-normalised 128-bit intermediates; num/den.
struct ExactRational {
  long long num = 0;
  long long den = 1;
};

// Exact value of sum_{k=0..m} (1/k!) sum_{h1+...+hk=m} 1/(h1...hk), the
// p^(-ms) coefficient of exp(-log(1 - p^-s)); equals 1 for every m >= 0.
ExactRational composition_weight_sum(int m);

}  // namespace symsieve
