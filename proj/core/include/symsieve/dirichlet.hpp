#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace symsieve {

// Truncated Dirichlet series: real coefficients a(1..n_max).  coeffs[0] is
// unused padding so that coeffs[n] is a(n).
struct CoeffSeries {
  uint64_t n_max = 0;
  std::vector<double> coeffs;
  std::string label;

  CoeffSeries() = default;
  CoeffSeries(uint64_t n, std::string lab);

  double at(uint64_t n) const;          // bounds-checked read
  double& operator[](uint64_t n) { return coeffs[n]; }
  double operator[](uint64_t n) const { return coeffs[n]; }
};

// Truncated local factor at p: c[l] is the coefficient of p^(-l s),
// l = 0..deg_max.  All local factors here are normalised with c[0] = 1.
struct EulerLocal {
  uint64_t p = 0;
  int deg_max = 0;
  std::vector<double> c;

  EulerLocal() = default;
  EulerLocal(uint64_t prime, int deg);
};

// Supplies the local factor at each prime; must carry degree at least
// floor(log_p n_max) for the n_max being expanded.
using LocalFactory = std::function<EulerLocal(uint64_t p)>;

// Multiplicative expansion: out[n] = prod over p^l || n of c_p[l].
// Throws InsufficientLocalDegreeError if a needed c_p[l] is absent.
CoeffSeries euler_expand(const LocalFactory& factory, uint64_t n_max,
                         std::string label = "euler");

// Dirichlet convolution (a*b)(n) = sum_{d|n} a(d) b(n/d).
// Throws LengthMismatchError unless a.n_max == b.n_max.
CoeffSeries convolve(const CoeffSeries& a, const CoeffSeries& b);

// Pointwise product c(n) = a(n) b(n); same length requirement.
CoeffSeries pointwise_product(const CoeffSeries& a, const CoeffSeries& b);

// Power-series reciprocal of a local factor; requires f.c[0] = 1.
EulerLocal invert_local(const EulerLocal& f);

// Truncated product of two local factors at the same prime.
EulerLocal multiply_local(const EulerLocal& f, const EulerLocal& g);

// Substitution s -> ks at coefficient level: out[m] = a[n] if m = n^k, else 0.
CoeffSeries dilate(const CoeffSeries& a, int k);

// zeta coefficients: all ones.
CoeffSeries zeta_series(uint64_t n_max);
// Convolution identity: 1 at n = 1, else 0.
CoeffSeries delta_series(uint64_t n_max);
// Moebius coefficients.
CoeffSeries mobius_series(uint64_t n_max);

}  // namespace symsieve
