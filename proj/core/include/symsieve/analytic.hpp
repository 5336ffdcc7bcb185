#pragma once

#include <cstdint>
#include <span>
#include <string>

#include "symsieve/report.hpp"
#include "symsieve/satake.hpp"

namespace symsieve {

// Truncated Euler-product value of L(1; sym^ell).  tail_bound is a
// dispersion-model stability estimate, not a rigorous remainder: the
// sign-coherent worst case permitted by the eigenvalue bound diverges, so
// the declared bound models square-root cancellation over p > p_cutoff with
// per-prime amplitudes capped by that bound.  Successive cutoffs are
// expected to differ by less than tail_bound (see verify in tests).
struct LValueEstimate {
  double value = 0.0;
  uint64_t p_cutoff = 0;
  double tail_bound = 0.0;
  std::string label;
  // Set when the partial product drifts by more than 5% over the last
  // octave of primes: the data is degenerate for this product (e.g. the
  // all-alpha-equal corner where the product diverges like a zeta power).
  bool divergence_flag = false;
  std::string note;
};

enum class SymPowerKind { sym2 = 2, sym4 = 4 };

// prod_{p <= p_cutoff} local factor of sym^ell at s=1.  Throws
// DivergentLocalError when a local factor at s=1 is zero or negative.
LValueEstimate l_value_at_one(const SatakeData& data, SymPowerKind which,
                              uint64_t p_cutoff);

// Ratio sweep of sum_{n<=N} (sym^2 x sym^2 coefficient at n) against
// L(1;sym^2) L(1;sym^4) N over N_list (increasing).  Passes when the final
// ratio is within 10% of 1 and |ratio - 1| decreases across the sweep.
VerificationReport verify_mean_value(const SatakeData& data,
                                     std::span<const uint64_t> N_list,
                                     uint64_t l_value_cutoff = 0);

// One short-interval experiment: primes in [x - y, x] with y = x^(1-theta).
struct PrimeSumResult {
  double x = 0.0;
  double theta = 0.0;
  double y = 0.0;
  double sum_value = 0.0;     // sum of tau(p)^2 over primes in the interval
  uint64_t prime_count = 0;
  double main_term = 0.0;     // y / log x
  double ratio = 0.0;         // sum_value / main_term
  std::string warning;        // set when theta is outside the supported range
};

// Exact sum of tau(p)^2 over x - y <= p <= x.  Throws CoverageExceededError
// when the interval reaches beyond the parameter table.
PrimeSumResult short_interval_prime_sum(const SatakeData& data, double x,
                                        double theta);

// C-infinity plateau window: 1 on [N-M, N], smooth tapers of width U on
// both sides, 0 outside [N-M-U, N+U].  Requires 0 < U <= M/2.
class SmoothWindow {
 public:
  SmoothWindow(double N, double M, double U);

  double operator()(double x) const;
  double n() const { return n_; }
  double m() const { return m_; }
  double u() const { return u_; }

  // Declared derivative cap C_k U^-k for k = 0..4.  The C_k are frozen from
  // a numerical sup-measurement of the taper ramp with margin.
  double derivative_bound(int k) const;

  // Exact integral of the window: M + U by taper point symmetry.
  double integral() const { return m_ + u_; }

  static const char* shape_name();  // recorded in reports

 private:
  double n_, m_, u_;
};

SmoothWindow smooth_window(double N, double M, double U);

// sum over primes of (log p) tau(p)^2 g(p) with g = smooth_window(N, M, U).
double smoothed_prime_sum(const SatakeData& data, double N, double M, double U);

// Sharp-cutoff companion: sum of (log p) tau(p)^2 over lo <= p <= hi.
double sharp_prime_sum_logweight(const SatakeData& data, double lo, double hi);

}  // namespace symsieve
