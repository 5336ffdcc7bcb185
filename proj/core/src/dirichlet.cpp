#include "symsieve/dirichlet.hpp"

#include <cmath>
#include <sstream>
#include <unordered_map>

#include "symsieve/errors.hpp"
#include "symsieve/primes.hpp"

namespace symsieve {

CoeffSeries::CoeffSeries(uint64_t n, std::string lab)
    : n_max(n), coeffs(n + 1, 0.0), label(std::move(lab)) {}

double CoeffSeries::at(uint64_t n) const {
  if (n < 1 || n > n_max) {
    std::ostringstream os;
    os << "CoeffSeries '" << label << "': index " << n << " outside 1.."
       << n_max;
    throw DomainError(os.str());
  }
  return coeffs[n];
}

EulerLocal::EulerLocal(uint64_t prime, int deg)
    : p(prime), deg_max(deg), c(static_cast<size_t>(deg) + 1, 0.0) {
  c[0] = 1.0;
}

CoeffSeries euler_expand(const LocalFactory& factory, uint64_t n_max,
                         std::string label) {
  if (n_max < 1) throw DomainError("euler_expand: n_max must be positive");
  CoeffSeries out(n_max, std::move(label));
  out[1] = 1.0;
  if (n_max == 1) return out;

  const auto spf = smallest_prime_factor_table(static_cast<uint32_t>(n_max));
  std::unordered_map<uint64_t, EulerLocal> locals;
  for (uint64_t n = 2; n <= n_max; ++n) {
    const uint64_t p = spf[n];
    int l = 0;
    uint64_t m = n;
    while (m % p == 0) {
      m /= p;
      ++l;
    }
    auto it = locals.find(p);
    if (it == locals.end()) it = locals.emplace(p, factory(p)).first;
    const EulerLocal& loc = it->second;
    if (loc.deg_max < l) {
      std::ostringstream os;
      os << "euler_expand: local at p=" << p << " has degree " << loc.deg_max
         << " but coefficient of p^-" << l << "s is required for n<=" << n_max;
      throw InsufficientLocalDegreeError(os.str());
    }
    out[n] = out.coeffs[m] * loc.c[l];
  }
  return out;
}

CoeffSeries convolve(const CoeffSeries& a, const CoeffSeries& b) {
  if (a.n_max != b.n_max) {
    std::ostringstream os;
    os << "convolve: length mismatch " << a.n_max << " vs " << b.n_max;
    throw LengthMismatchError(os.str());
  }
  CoeffSeries out(a.n_max, "(" + a.label + "*" + b.label + ")");
  for (uint64_t d = 1; d <= a.n_max; ++d) {
    const double ad = a.coeffs[d];
    if (ad == 0.0) continue;
    for (uint64_t m = d, q = 1; m <= a.n_max; m += d, ++q)
      out[m] += ad * b.coeffs[q];
  }
  return out;
}

CoeffSeries pointwise_product(const CoeffSeries& a, const CoeffSeries& b) {
  if (a.n_max != b.n_max) {
    std::ostringstream os;
    os << "pointwise_product: length mismatch " << a.n_max << " vs " << b.n_max;
    throw LengthMismatchError(os.str());
  }
  CoeffSeries out(a.n_max, "(" + a.label + ".*" + b.label + ")");
  for (uint64_t n = 1; n <= a.n_max; ++n) out[n] = a.coeffs[n] * b.coeffs[n];
  return out;
}

EulerLocal invert_local(const EulerLocal& f) {
  if (f.c.empty() || f.c[0] != 1.0)
    throw DomainError("invert_local: constant term must be 1");
  EulerLocal g(f.p, f.deg_max);
  // g[l] = -sum_{j=1..l} f[j] g[l-j]; the unique reciprocal mod x^(deg+1).
  for (int l = 1; l <= f.deg_max; ++l) {
    double s = 0.0;
    for (int j = 1; j <= l; ++j) s += f.c[j] * g.c[l - j];
    g.c[l] = -s;
  }
  return g;
}

EulerLocal multiply_local(const EulerLocal& f, const EulerLocal& g) {
  if (f.p != g.p)
    throw DomainError("multiply_local: locals belong to different primes");
  EulerLocal out(f.p, f.deg_max < g.deg_max ? f.deg_max : g.deg_max);
  for (int l = 0; l <= out.deg_max; ++l) {
    double s = 0.0;
    for (int j = 0; j <= l; ++j) {
      if (j <= f.deg_max && l - j <= g.deg_max) s += f.c[j] * g.c[l - j];
    }
    out.c[l] = s;
  }
  return out;
}

CoeffSeries dilate(const CoeffSeries& a, int k) {
  if (k < 1) throw DomainError("dilate: k must be at least 1");
  CoeffSeries out(a.n_max, a.label + "(s->" + std::to_string(k) + "s)");
  for (uint64_t n = 1; n <= a.n_max; ++n) {
    // m = n^k with overflow-safe early exit.
    uint64_t m = 1;
    bool fits = true;
    for (int i = 0; i < k; ++i) {
      if (m > a.n_max / n) {
        fits = false;
        break;
      }
      m *= n;
    }
    if (!fits || m > a.n_max) break;
    out[m] = a.coeffs[n];
  }
  return out;
}

CoeffSeries zeta_series(uint64_t n_max) {
  CoeffSeries out(n_max, "zeta");
  for (uint64_t n = 1; n <= n_max; ++n) out[n] = 1.0;
  return out;
}

CoeffSeries delta_series(uint64_t n_max) {
  CoeffSeries out(n_max, "delta");
  out[1] = 1.0;
  return out;
}

CoeffSeries mobius_series(uint64_t n_max) {
  CoeffSeries out(n_max, "mobius");
  const auto mu = mobius_table(static_cast<uint32_t>(n_max));
  for (uint64_t n = 1; n <= n_max; ++n) out[n] = mu[n];
  return out;
}

}  // namespace symsieve
