#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "symsieve/constants.hpp"
#include "symsieve/dirichlet.hpp"
#include "symsieve/report.hpp"
#include "symsieve/satake.hpp"

namespace symsieve {

// Local data of the quadratic-form sieve at one prime: the local factor
// F_p(s) = sum_l c_l p^(-ls) whose coefficients are the sym^2 x sym^2
// Rankin values at p^l, and its value F_p = F_p(1).  Guaranteed
// F_p - 1 >= 1/p^3; the constructor asserts this with slack 1/(2 p^3).
struct LocalSieveData {
  uint64_t p = 0;
  double F_p = 0.0;
  EulerLocal F_p_series;
};

// Builds one LocalSieveData.  deg <= 0 selects the degree automatically:
// at least max(40, ceil(40/log2 p)), grown until the geometric tail bound
// of the series at s=1 falls below 1e-12.  Throws LowerBoundViolatedError
// when the computed F_p breaches the lower bound (corrupt input data).
LocalSieveData local_sieve_data(const SatakeData& data, uint64_t p,
                                int deg = 0);

// Precomputed sieve tables over p, r <= limit: F_p per prime, K(r) =
// prod_{p|r}(F_p - 1) per squarefree r, Moebius flags.  Immutable after
// construction; all accessors are const and thread-safe.
class SieveLocals {
 public:
  SieveLocals(const SatakeData& data, uint64_t limit);

  const SatakeData& data() const { return *data_; }
  uint64_t limit() const { return limit_; }

  const LocalSieveData& local(uint64_t p) const;
  double F(uint64_t p) const { return local(p).F_p; }
  // K(r) for squarefree r <= limit; K(1) = 1.
  double K(uint64_t r) const;
  int mobius(uint64_t n) const;
  // Squarefree r <= limit in increasing order (starts at 1).
  const std::vector<uint64_t>& squarefree() const { return squarefree_; }

 private:
  const SatakeData* data_;
  uint64_t limit_;
  std::map<uint64_t, LocalSieveData> locals_;
  std::vector<double> K_;      // indexed by r; meaningful iff mu_[r] != 0
  std::vector<int8_t> mu_;
  std::vector<uint64_t> squarefree_;
};

// G_d(x) = sum over squarefree r <= x coprime to d of K(r).  Requires
// floor(x) <= locals.limit().  Always >= 1 (the r=1 term).
double big_g(uint64_t d, double x, const SieveLocals& locals);

// Optimised quadratic-form weights lambda_d = mu(d) F_d G_d(R/d) / G_1(R)
// over squarefree d <= R, with their generating data.
struct SieveWeights {
  double R = 0.0;
  std::map<uint64_t, double> lambda;
  double G1 = 0.0;
  std::map<uint64_t, double> K;
};

SieveWeights build_weights(const SatakeData& data, double R);

// Quasi-character Phi_r(n) = mu(g)/K(g) with g = (r, n); r squarefree.
double phi_r(uint64_t r, uint64_t n, const SieveLocals& locals);

// Checks the closed form of the weight sum: for every n <= n_max,
//   sum_{d|n} lambda_d = G_1(R)^-1 sum_{r<=R} mu^2(r) K(r) Phi_r(n),
// both sides computed independently.
VerificationReport verify_lambda_sum(const SatakeData& data, double R,
                                     uint64_t n_max,
                                     double tol = kIdentityTolerance);

// S(N; r1, r2) = sum_{n<=N} (rankin sym^2 coefficient at n)
//                Phi_{r1}(n) Phi_{r2}(n), exactly.
double bilinear_sum(const SatakeData& data, uint64_t N, uint64_t r1,
                    uint64_t r2);
// Same sum over a precomputed coefficient series (length >= N).
double bilinear_sum(const CoeffSeries& rankin2, const SieveLocals& locals,
                    uint64_t N, uint64_t r1, uint64_t r2);

// Dirichlet coefficients u(d) of the ratio of the Phi-twisted series to the
// full Rankin series.  Each local factor is a polynomial of degree <= 9 in
// p^-s, so the support is finite and the value at s=1 is an exact product:
// U(1) = 1/K(r1) when r1 = r2 and 0 otherwise.
struct UCoefficients {
  std::map<uint64_t, double> values;  // d -> u(d), d <= d_max
  double value_at_one = 0.0;          // full U(1), independent of d_max
};

UCoefficients u_coefficients(const SatakeData& data, uint64_t r1, uint64_t r2,
                             uint64_t d_max = 1000000);

// Near-diagonality sweep over squarefree r1, r2 <= R at length N:
// diagonal ratios S(N;r,r) K(r) / (L(1;sym2) L(1;sym4) N) must lie in
// [0.8, 1.2], off-diagonal |S|/N <= 0.2, and U(1) must match its closed
// form to 1e-6.  Raw ratios and the calibrated u-bound constant are
// printed in the notes.
VerificationReport verify_diagonal_behavior(const SatakeData& data, uint64_t N,
                                            uint64_t R,
                                            uint64_t l_value_cutoff = 0);

// Growth check of G_1(R) against L(1;sym2) L(1;sym4) log R over R_list:
// ratios within [1/3, 3] and max/min <= 2 across rows with R >= 10
// (smaller R rows are printed as diagnostics only).
VerificationReport verify_g1_asymptotic(const SatakeData& data,
                                        std::span<const double> R_list,
                                        uint64_t l_value_cutoff = 0);

// Smoothed Moebius truncation: xi[d] agrees with mu(d) for d <= v and
// vanishes beyond v^(1+l*theta).
struct Mollifier {
  double v = 0.0;
  double theta = 0.0;
  int l = 0;
  std::map<uint64_t, double> xi;

  double support_bound() const;
};

// Difference-of-powers construction
//   Xi_d = (1/l!) (theta log v)^-l sum_{j=0..l} (-1)^(l-j) C(l,j) xi_d^(j)
//   xi_d^(j) = mu(d) (log(v^(1+j*theta)/d))^l  for d <= v^(1+j*theta), else 0.
// Requires v >= 3, theta > 0, 0 <= l <= 3.
Mollifier build_mollifier(double v, double theta, int l);

// Damped quadratic-form sum sum_n d_l(n) (sum_{d|n} xi_d)^2 n^-omega for
// omega >= 1 + 1/log v: reports the partial sum and passes when the last
// decade of n contributes under 10% of the total (stabilisation).
// l = -1 uses the mollifier's own order for the divisor weight d_l.
VerificationReport verify_mollifier_bound(const Mollifier& m, int l,
                                          double omega, uint64_t n_max);

// Xi_d = mu(d) for every d <= v: the j-sum is the l-th finite difference
// of a degree-l polynomial in j, which collapses to l! (theta log v)^l.
VerificationReport verify_mollifier_telescoping(const Mollifier& m,
                                                double tol = 1e-12);

// Sweeps F_p - 1 >= 1/p^3 over p <= p_limit; max_abs_error is the largest
// shortfall measured in units of 1/p^3 (0 when the bound holds everywhere).
VerificationReport verify_local_lower_bound(const SatakeData& data,
                                            uint64_t p_limit);

}  // namespace symsieve
