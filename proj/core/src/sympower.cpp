#include "symsieve/sympower.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>
#include <vector>

#include "symsieve/errors.hpp"
#include "symsieve/primes.hpp"

namespace symsieve {

namespace {

using cplx = std::complex<double>;

// Integer power by repeated multiplication; avoids branch-cut noise that
// exp/log-based pow introduces on negative real bases.
cplx ipow(cplx a, int e) {
  if (e < 0) return ipow(1.0 / a, -e);
  cplx out = 1.0;
  cplx base = a;
  while (e > 0) {
    if (e & 1) out *= base;
    base *= base;
    e >>= 1;
  }
  return out;
}

// sum_{j=0..ell} alpha^(h(ell-2j))
cplx power_sum(cplx alpha, int ell, int h) {
  cplx s = 0.0;
  for (int j = 0; j <= ell; ++j) s += ipow(alpha, h * (ell - 2 * j));
  return s;
}

double realize(cplx z, uint64_t p, int l, const char* what) {
  if (std::abs(z.imag()) > kRealTolerance) {
    std::ostringstream os;
    os << what << " coefficient not real at p=" << p << " degree " << l
       << ": imag=" << z.imag();
    throw NonRealCoefficientError(os.str());
  }
  return z.real();
}

// In-place multiplication of a real truncated series by (1 - x)^-1.
void simple_pole_multiply(std::vector<double>& c) {
  for (size_t l = 1; l < c.size(); ++l) c[l] += c[l - 1];
}

// In-place multiplication by (1 - s x + x^2)^-1 where s = beta + 1/beta is
// the realised sum of a conjugate (or reciprocal) exponent pair.
void pair_pole_multiply(std::vector<double>& c, double s) {
  if (c.size() > 1) c[1] += s * c[0];
  for (size_t l = 2; l < c.size(); ++l) c[l] += s * c[l - 1] - c[l - 2];
}

// Expands prod over the exponent multiset of (1 - alpha^m x)^-1 to degree
// deg.  The multiset is closed under m -> -m, so conjugate pairs combine
// into real quadratic factors and the whole expansion stays in real
// arithmetic; only the pair sums alpha^m + alpha^-m pass a realise check
// (they go non-real exactly when alpha is corrupt).
std::vector<double> expand_paired(cplx alpha, uint64_t p,
                                  const std::vector<int>& exponents, int deg,
                                  const char* what) {
  std::vector<int> mult;  // mult[m] = multiplicity of exponent +m
  int zeros = 0;
  for (int m : exponents) {
    if (m == 0) {
      ++zeros;
    } else if (m > 0) {
      if (mult.size() <= static_cast<size_t>(m)) mult.resize(m + 1, 0);
      ++mult[m];
    }
  }
  std::vector<double> c(static_cast<size_t>(deg) + 1, 0.0);
  c[0] = 1.0;
  for (int i = 0; i < zeros; ++i) simple_pole_multiply(c);
  for (int m = 1; m < static_cast<int>(mult.size()); ++m) {
    if (mult[m] == 0) continue;
    const double s = realize(ipow(alpha, m) + ipow(alpha, -m), p, m, what);
    for (int i = 0; i < mult[m]; ++i) pair_pole_multiply(c, s);
  }
  return c;
}

int required_degree(uint64_t p, uint64_t n_max) { return max_exponent(p, n_max); }

}  // namespace

SymPowerSpec::SymPowerSpec(int l, const SatakeData& d) : ell(l), data(&d) {
  if (l < 1 || l > 4)
    throw DomainError("SymPowerSpec: ell must be in 1..4, got " +
                      std::to_string(l));
}

EulerLocal sym_local(const SymPowerSpec& spec, uint64_t p, int deg) {
  if (deg < 0) throw DomainError("sym_local: deg must be non-negative");
  const cplx alpha = spec.data->alpha(p);
  std::vector<int> exps;
  for (int j = 0; j <= spec.ell; ++j) exps.push_back(spec.ell - 2 * j);
  const std::vector<double> c = expand_paired(alpha, p, exps, deg, "sym");
  EulerLocal out(p, deg);
  out.c = c;
  return out;
}

EulerLocal rankin_local(const SymPowerSpec& spec, uint64_t p, int deg) {
  if (deg < 0) throw DomainError("rankin_local: deg must be non-negative");
  const cplx alpha = spec.data->alpha(p);
  std::vector<int> exps;
  for (int j = 0; j <= spec.ell; ++j)
    for (int k = 0; k <= spec.ell; ++k)
      exps.push_back(2 * (spec.ell - j - k));
  const std::vector<double> c = expand_paired(alpha, p, exps, deg, "rankin");
  EulerLocal out(p, deg);
  out.c = c;
  for (int l = 0; l <= deg; ++l) {
    if (out.c[l] < -kNonNegativeTolerance) {
      std::ostringstream os;
      os << "rankin coefficient negative at p=" << p << " degree " << l << ": "
         << out.c[l];
      throw NegativeCoefficientError(os.str());
    }
  }
  return out;
}

double prime_power_coeff_formula(const SymPowerSpec& spec, uint64_t p, int m) {
  if (m < 0) throw DomainError("prime_power_coeff_formula: m must be >= 0");
  if (m > 12)
    throw DomainError(
        "prime_power_coeff_formula: m > 12 not supported (composition count "
        "doubles per step; use sym_local)");
  if (m == 0) return 1.0;
  const cplx alpha = spec.data->alpha(p);

  std::vector<cplx> psum(static_cast<size_t>(m) + 1);
  for (int h = 1; h <= m; ++h) psum[h] = power_sum(alpha, spec.ell, h);
  std::vector<double> fact(static_cast<size_t>(m) + 1, 1.0);
  for (int k = 1; k <= m; ++k) fact[k] = fact[k - 1] * k;

  // Ordered compositions m = h1 + ... + hk, weight (1/k!) prod (1/h_r) S(h_r).
  cplx total = 0.0;
  auto recurse = [&](auto&& self, int left, int parts, cplx acc) -> void {
    if (left == 0) {
      total += acc / fact[parts];
      return;
    }
    for (int h = 1; h <= left; ++h)
      self(self, left - h, parts + 1, acc * psum[h] / static_cast<double>(h));
  };
  recurse(recurse, m, 0, cplx(1.0));
  return realize(total, p, m, "composition formula");
}

LocalFactory sym_local_factory(const SymPowerSpec& spec, uint64_t n_max) {
  return [spec, n_max](uint64_t p) {
    return sym_local(spec, p, required_degree(p, n_max));
  };
}

LocalFactory rankin_local_factory(const SymPowerSpec& spec, uint64_t n_max) {
  return [spec, n_max](uint64_t p) {
    return rankin_local(spec, p, required_degree(p, n_max));
  };
}

CoeffSeries sym_series(const SymPowerSpec& spec, uint64_t n_max) {
  return euler_expand(sym_local_factory(spec, n_max), n_max,
                      "sym" + std::to_string(spec.ell));
}

CoeffSeries rankin_series(const SymPowerSpec& spec, uint64_t n_max) {
  return euler_expand(rankin_local_factory(spec, n_max), n_max,
                      "sym" + std::to_string(spec.ell) + "xsym" +
                          std::to_string(spec.ell));
}

VerificationReport verify_domination(const SymPowerSpec& spec, uint64_t n_max,
                                     double tol,
                                     const CoeffPerturbation* fault) {
  if (spec.ell > 2)
    throw DomainError("verify_domination: only ell in {1,2} supported");
  VerificationReport rep;
  rep.check_name = "domination(ell=" + std::to_string(spec.ell) + ")";
  rep.range_tested = "n<=" + std::to_string(n_max) + " on " +
                     spec.data->source_tag();
  rep.tolerance = tol;

  const CoeffSeries sym = sym_series(spec, n_max);
  CoeffSeries rank = rankin_series(spec, n_max);
  if (fault != nullptr && fault->n >= 1 && fault->n <= n_max)
    rank[fault->n] += fault->delta;

  double worst_margin = 1e300;
  for (uint64_t n = 1; n <= n_max; ++n) {
    const double lhs = sym.coeffs[n] * sym.coeffs[n];
    const double excess = lhs - rank.coeffs[n];
    if (rank.coeffs[n] - lhs < worst_margin) worst_margin = rank.coeffs[n] - lhs;
    rep.observe(excess > 0.0 ? excess : 0.0, "n=" + std::to_string(n));
  }
  rep.notes.push_back("n=1 equality exact: " +
                      std::string(sym.coeffs[1] * sym.coeffs[1] ==
                                          rank.coeffs[1]
                                      ? "yes"
                                      : "NO"));
  rep.notes.push_back("smallest margin rankin - square = " +
                      format_double(worst_margin));
  rep.finalize();
  return rep;
}

VerificationReport verify_shimura(const SatakeData& data, uint64_t n_max,
                                  double tol) {
  VerificationReport rep;
  rep.check_name = "shimura";
  rep.range_tested = "n<=" + std::to_string(n_max) + " on " + data.source_tag();
  rep.tolerance = tol;

  const SymPowerSpec hecke(1, data);
  const SymPowerSpec sym2(2, data);
  const CoeffSeries tau = sym_series(hecke, n_max);
  const CoeffSeries lhs =
      convolve(dilate(zeta_series(n_max), 2), pointwise_product(tau, tau));
  const CoeffSeries rhs = convolve(zeta_series(n_max), sym_series(sym2, n_max));
  for (uint64_t n = 1; n <= n_max; ++n)
    rep.observe(std::abs(lhs.coeffs[n] - rhs.coeffs[n]),
                "n=" + std::to_string(n));
  rep.finalize();
  return rep;
}

VerificationReport verify_rankin_factorization(const SymPowerSpec& spec,
                                               uint64_t n_max, double tol) {
  if (spec.ell > 2)
    throw DomainError(
        "verify_rankin_factorization: only ell in {1,2} supported");
  VerificationReport rep;
  rep.check_name = "rankin_factorization(ell=" + std::to_string(spec.ell) + ")";
  rep.range_tested = "n<=" + std::to_string(n_max) + " on " +
                     spec.data->source_tag();
  rep.tolerance = tol;

  const CoeffSeries lhs = rankin_series(spec, n_max);
  CoeffSeries rhs = zeta_series(n_max);
  for (int l = 1; l <= spec.ell; ++l) {
    const SymPowerSpec factor(2 * l, *spec.data);
    rhs = convolve(rhs, sym_series(factor, n_max));
  }
  for (uint64_t n = 1; n <= n_max; ++n)
    rep.observe(std::abs(lhs.coeffs[n] - rhs.coeffs[n]),
                "n=" + std::to_string(n));
  rep.finalize();
  return rep;
}

VerificationReport chebyshev_identity_check(
    int ell, std::span<const std::complex<double>> sample_points) {
  if (ell < 1 || ell > 4)
    throw DomainError("chebyshev_identity_check: ell must be in 1..4");
  VerificationReport rep;
  rep.check_name = "chebyshev(ell=" + std::to_string(ell) + ")";
  rep.range_tested =
      std::to_string(sample_points.size()) + " unit-circle samples";
  rep.tolerance = 1e-10;

  for (const cplx X : sample_points) {
    if (std::abs(std::abs(X) - 1.0) > 1e-6)
      throw DomainError("chebyshev sample off the unit circle");
    if (std::abs(X - 1.0) < 1e-6 || std::abs(X + 1.0) < 1e-6)
      throw DomainError("chebyshev sample too close to +-1");
    cplx a = 0.0;
    for (int j = 0; j <= ell; ++j)
      for (int k = 0; k <= ell; ++k) a += ipow(X, 2 * (ell - j - k));
    const cplx num = ipow(X, ell + 1) - ipow(X, -(ell + 1));
    const cplx den = X - 1.0 / X;
    const cplx b = (num / den) * (num / den);
    cplx c = 0.0;
    for (int l = 0; l <= ell; ++l)
      for (int m = 0; m <= 2 * l; ++m) c += ipow(X, 2 * (l - m));
    const double err = std::max(
        {std::abs(a - b), std::abs(a - c), std::abs(b - c)});
    std::ostringstream os;
    os << "X=" << X.real() << "+" << X.imag() << "i";
    rep.observe(err, os.str());
  }

  // X -> 1 limit on the two summed forms: every term becomes 1.
  const double expected = static_cast<double>((ell + 1) * (ell + 1));
  double a1 = 0.0;
  for (int j = 0; j <= ell; ++j)
    for (int k = 0; k <= ell; ++k) a1 += 1.0;
  double c1 = 0.0;
  for (int l = 0; l <= ell; ++l)
    for (int m = 0; m <= 2 * l; ++m) c1 += 1.0;
  rep.observe(std::abs(a1 - expected), "X->1 limit, double-sum form");
  rep.observe(std::abs(c1 - expected), "X->1 limit, nested-sum form");
  rep.notes.push_back("limit value " + format_double(expected) +
                      " reproduced by both summed forms");
  rep.finalize();
  return rep;
}

namespace {

__int128 gcd128(__int128 a, __int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    const __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

struct Rat128 {
  __int128 num = 0;
  __int128 den = 1;

  void add_unit_fraction(long long q) {
    // num/den += 1/q, normalised so intermediates stay within 128 bits.
    num = num * q + den;
    den = den * q;
    const __int128 g = gcd128(num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }
};

}  // namespace

ExactRational composition_weight_sum(int m) {
  if (m < 0) throw DomainError("composition_weight_sum: m must be >= 0");
  if (m > 20)
    throw DomainError("composition_weight_sum: m > 20 not supported");
  std::vector<long long> fact(static_cast<size_t>(m) + 1, 1);
  for (int k = 1; k <= m; ++k) fact[k] = fact[k - 1] * k;

  Rat128 total;
  if (m == 0) {
    total.num = 1;
    total.den = 1;
  } else {
    auto recurse = [&](auto&& self, int left, int parts,
                       long long prod) -> void {
      if (left == 0) {
        total.add_unit_fraction(fact[parts] * prod);
        return;
      }
      for (int h = 1; h <= left; ++h) self(self, left - h, parts + 1, prod * h);
    };
    recurse(recurse, m, 0, 1);
  }

  ExactRational out;
  constexpr __int128 kMax = 0x7fffffffffffffffLL;
  if (total.num > kMax || total.den > kMax || total.num < -kMax)
    throw DomainError("composition_weight_sum: result exceeds 64-bit rational");
  out.num = static_cast<long long>(total.num);
  out.den = static_cast<long long>(total.den);
  return out;
}

}  // namespace symsieve
