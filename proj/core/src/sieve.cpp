#include "symsieve/sieve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "symsieve/analytic.hpp"
#include "symsieve/constants.hpp"
#include "symsieve/errors.hpp"
#include "symsieve/primes.hpp"
#include "symsieve/sympower.hpp"

namespace symsieve {

namespace {

double binom_over_8(int n) {
  // C(n, 8) as a double; n >= 8.
  double c = 1.0;
  for (int i = 1; i <= 8; ++i)
    c *= static_cast<double>(n - 8 + i) / static_cast<double>(i);
  return c;
}

// Upper bound on the tail sum_{l>L} c_l q^l of the degree-9 geometric
// product, using c_l <= C(l+8,8) and the eventual term ratio cap
// q (L+10)/(L+2) < 1.
double series_tail_bound(int L, double q) {
  const double ratio_cap =
      q * static_cast<double>(L + 10) / static_cast<double>(L + 2);
  if (ratio_cap >= 1.0) return std::numeric_limits<double>::infinity();
  return binom_over_8(L + 9) * std::pow(q, L + 1) / (1.0 - ratio_cap);
}

bool alpha_is_unitary(const SatakeData& data, uint64_t p) {
  return std::abs(std::abs(data.alpha(p)) - 1.0) <= kUnitaryTolerance;
}

bool is_squarefree_value(uint64_t r) {
  if (r == 0) return false;
  for (const auto& [p, e] : factorize(r)) {
    (void)p;
    if (e > 1) return false;
  }
  return true;
}

}  // namespace

LocalSieveData local_sieve_data(const SatakeData& data, uint64_t p, int deg) {
  if (deg <= 0) {
    // Amplitude ratio of the series terms at s=1: 1/p for unitary data,
    // p^(-9/16) when the nine geometric ratios can reach p^(7/16).
    const double q = alpha_is_unitary(data, p)
                         ? 1.0 / static_cast<double>(p)
                         : std::pow(static_cast<double>(p), -9.0 / 16.0);
    deg = 40;
    while (series_tail_bound(deg, q) >= 1e-12 && deg < 2000) deg += 10;
  }
  const SymPowerSpec spec(2, data);
  LocalSieveData out;
  out.p = p;
  out.F_p_series = rankin_local(spec, p, deg);

  double F = 0.0;
  const double pinv = 1.0 / static_cast<double>(p);
  double pl = 1.0;
  for (int l = 0; l <= deg; ++l) {
    F += out.F_p_series.c[l] * pl;
    pl *= pinv;
  }
  out.F_p = F;

  const double pd = static_cast<double>(p);
  if (F - 1.0 < 1.0 / (2.0 * pd * pd * pd)) {
    std::ostringstream os;
    os << "local sieve factor at p=" << p << ": F_p - 1 = " << (F - 1.0)
       << " below 1/(2p^3); eigenvalue data corrupt";
    throw LowerBoundViolatedError(os.str());
  }
  return out;
}

SieveLocals::SieveLocals(const SatakeData& data, uint64_t limit)
    : data_(&data), limit_(limit) {
  mu_.resize(limit + 1, 0);
  const auto mu = mobius_table(static_cast<uint32_t>(std::max<uint64_t>(limit, 1)));
  for (uint64_t n = 0; n <= limit && n < mu.size(); ++n) mu_[n] = mu[n];

  for (uint64_t p : sieve_primes(limit))
    locals_.emplace(p, local_sieve_data(data, p));

  K_.assign(limit + 1, 0.0);
  if (limit >= 1) K_[1] = 1.0;
  const auto spf = smallest_prime_factor_table(
      static_cast<uint32_t>(std::max<uint64_t>(limit, 1)));
  for (uint64_t r = 2; r <= limit; ++r) {
    if (mu_[r] == 0) continue;
    const uint64_t p = spf[r];
    K_[r] = K_[r / p] * (locals_.at(p).F_p - 1.0);
  }
  for (uint64_t r = 1; r <= limit; ++r)
    if (mu_[r] != 0) squarefree_.push_back(r);
}

const LocalSieveData& SieveLocals::local(uint64_t p) const {
  auto it = locals_.find(p);
  if (it == locals_.end()) {
    std::ostringstream os;
    os << "sieve locals: no data at p=" << p << " (limit " << limit_ << ")";
    throw MissingPrimeError(os.str());
  }
  return it->second;
}

double SieveLocals::K(uint64_t r) const {
  if (r < 1 || r > limit_ || mu_[r] == 0) {
    std::ostringstream os;
    os << "K(r) requested at r=" << r << ": not a squarefree value within "
       << "limit " << limit_;
    throw DomainError(os.str());
  }
  return K_[r];
}

int SieveLocals::mobius(uint64_t n) const {
  if (n < 1 || n > limit_)
    throw DomainError("mobius lookup outside table limit");
  return mu_[n];
}

double big_g(uint64_t d, double x, const SieveLocals& locals) {
  if (x < 1.0) throw DomainError("big_g: x must be >= 1");
  const uint64_t top = static_cast<uint64_t>(std::floor(x));
  if (top > locals.limit())
    throw DomainError("big_g: x exceeds the precomputed locals limit");
  double sum = 0.0;
  for (uint64_t r : locals.squarefree()) {
    if (r > top) break;
    if (std::gcd(r, d) != 1) continue;
    sum += locals.K(r);
  }
  return sum;
}

namespace {

SieveWeights build_weights_from(const SieveLocals& locals, double R) {
  SieveWeights w;
  w.R = R;
  w.G1 = big_g(1, R, locals);
  for (uint64_t r : locals.squarefree()) {
    if (static_cast<double>(r) > R) break;
    w.K.emplace(r, locals.K(r));
  }
  for (uint64_t d : locals.squarefree()) {
    if (static_cast<double>(d) > R) break;
    double F_d = 1.0;
    for (const auto& [p, e] : factorize(d)) {
      (void)e;
      F_d *= locals.F(p);
    }
    const double G_d = big_g(d, R / static_cast<double>(d), locals);
    const double mu_d = locals.mobius(d);
    w.lambda.emplace(d, mu_d * F_d * G_d / w.G1);
  }
  return w;
}

}  // namespace

SieveWeights build_weights(const SatakeData& data, double R) {
  if (R < 1.0) throw DomainError("build_weights: R must be >= 1");
  const SieveLocals locals(data, static_cast<uint64_t>(std::floor(R)));
  return build_weights_from(locals, R);
}

double phi_r(uint64_t r, uint64_t n, const SieveLocals& locals) {
  if (n == 0) throw DomainError("phi_r: n must be positive");
  if (r < 1 || r > locals.limit() || locals.mobius(r) == 0)
    throw DomainError("phi_r: r must be squarefree within the locals limit");
  const uint64_t g = std::gcd(r, n);
  if (g == 1) return 1.0;
  return static_cast<double>(locals.mobius(g)) / locals.K(g);
}

VerificationReport verify_lambda_sum(const SatakeData& data, double R,
                                     uint64_t n_max, double tol) {
  if (R < 1.0) throw DomainError("verify_lambda_sum: R must be >= 1");
  VerificationReport rep;
  rep.check_name = "lambda_sum(R=" + format_double(R) + ")";
  rep.range_tested = "n<=" + std::to_string(n_max) + " on " + data.source_tag();
  rep.tolerance = tol;

  const SieveLocals locals(data, static_cast<uint64_t>(std::floor(R)));
  const SieveWeights w = build_weights_from(locals, R);

  for (uint64_t n = 1; n <= n_max; ++n) {
    double lhs = 0.0;
    for (const auto& [d, lam] : w.lambda)
      if (n % d == 0) lhs += lam;
    double rhs = 0.0;
    for (uint64_t r : locals.squarefree()) {
      if (static_cast<double>(r) > R) break;
      rhs += locals.K(r) * phi_r(r, n, locals);
    }
    rhs /= w.G1;
    rep.observe(std::abs(lhs - rhs), "n=" + std::to_string(n));
  }
  const auto l1 = w.lambda.find(1);
  rep.notes.push_back(std::string("lambda_1 == 1 exactly: ") +
                      (l1 != w.lambda.end() && l1->second == 1.0 ? "yes"
                                                                 : "NO"));
  rep.notes.push_back("G_1(R) = " + format_double(w.G1) + ", " +
                      std::to_string(w.lambda.size()) + " weights");
  rep.finalize();
  return rep;
}

double bilinear_sum(const CoeffSeries& rankin2, const SieveLocals& locals,
                    uint64_t N, uint64_t r1, uint64_t r2) {
  if (rankin2.n_max < N)
    throw LengthMismatchError("bilinear_sum: series shorter than N");
  double sum = 0.0;
  for (uint64_t n = 1; n <= N; ++n)
    sum += rankin2.coeffs[n] * phi_r(r1, n, locals) * phi_r(r2, n, locals);
  return sum;
}

double bilinear_sum(const SatakeData& data, uint64_t N, uint64_t r1,
                    uint64_t r2) {
  const SymPowerSpec spec(2, data);
  const CoeffSeries rk = rankin_series(spec, N);
  const SieveLocals locals(data, std::max<uint64_t>({r1, r2, 2}));
  return bilinear_sum(rk, locals, N, r1, r2);
}

namespace {

// Degree-9 polynomial local factor of the u-series at prime q.
// diag:   u_q(s) = (1 - 1/K^2) F_q(s)^-1 + 1/K^2
// single: u_q(s) = (1 + 1/K) F_q(s)^-1 - 1/K
// with K = F_q - 1; F_q(s)^-1 is itself a polynomial of degree 9.
std::vector<double> u_local_poly(const SatakeData& data, uint64_t q,
                                 bool in_both) {
  const LocalSieveData ld = local_sieve_data(data, q);
  const EulerLocal finv_full = invert_local(ld.F_p_series);
  for (int l = 10; l <= finv_full.deg_max; ++l) {
    if (std::abs(finv_full.c[l]) > 1e-8)
      throw Error("internal: inverse local factor not a degree-9 polynomial");
  }
  const double K = ld.F_p - 1.0;
  std::vector<double> u(10, 0.0);
  if (in_both) {
    const double k2 = 1.0 / (K * K);
    for (int l = 0; l <= 9; ++l) u[l] = (1.0 - k2) * finv_full.c[l];
    u[0] += k2;
  } else {
    const double k1 = 1.0 / K;
    for (int l = 0; l <= 9; ++l) u[l] = (1.0 + k1) * finv_full.c[l];
    u[0] -= k1;
  }
  return u;
}

struct ULocalSet {
  std::vector<uint64_t> primes;
  std::vector<std::vector<double>> polys;
};

ULocalSet u_locals(const SatakeData& data, uint64_t r1, uint64_t r2) {
  if (!is_squarefree_value(r1) || !is_squarefree_value(r2))
    throw DomainError("u_coefficients: r1, r2 must be squarefree");
  ULocalSet set;
  for (const auto& [p, e] : factorize(r1 * r2)) {
    set.primes.push_back(p);
    set.polys.push_back(u_local_poly(data, p, e == 2));
  }
  return set;
}

}  // namespace

UCoefficients u_coefficients(const SatakeData& data, uint64_t r1, uint64_t r2,
                             uint64_t d_max) {
  const ULocalSet set = u_locals(data, r1, r2);
  UCoefficients out;

  double at_one = 1.0;
  for (size_t i = 0; i < set.primes.size(); ++i) {
    const double qinv = 1.0 / static_cast<double>(set.primes[i]);
    double local = 0.0;
    double ql = 1.0;
    for (int l = 0; l <= 9; ++l) {
      local += set.polys[i][l] * ql;
      ql *= qinv;
    }
    at_one *= local;
  }
  out.value_at_one = at_one;

  auto enumerate = [&](auto&& self, size_t idx, uint64_t d, double coeff)
      -> void {
    if (idx == set.primes.size()) {
      out.values[d] = coeff;
      return;
    }
    const uint64_t q = set.primes[idx];
    uint64_t dq = d;
    for (int e = 0; e <= 9; ++e) {
      self(self, idx + 1, dq, coeff * set.polys[idx][e]);
      if (e < 9) {
        if (dq > d_max / q) break;
        dq *= q;
      }
    }
  };
  enumerate(enumerate, 0, 1, 1.0);
  return out;
}

namespace {

// sum over the full finite support of |u(d)| d^(-5/6), tracked in floating
// point since d can exceed 64 bits for larger prime sets.
double u_bound_sum(const ULocalSet& set) {
  double total = 0.0;
  auto recurse = [&](auto&& self, size_t idx, double d, double coeff) -> void {
    if (idx == set.primes.size()) {
      total += std::abs(coeff) * std::pow(d, -5.0 / 6.0);
      return;
    }
    const double q = static_cast<double>(set.primes[idx]);
    double dq = d;
    for (int e = 0; e <= 9; ++e) {
      self(self, idx + 1, dq, coeff * set.polys[idx][e]);
      dq *= q;
    }
  };
  recurse(recurse, 0, 1.0, 1.0);
  return total;
}

}  // namespace

VerificationReport verify_diagonal_behavior(const SatakeData& data, uint64_t N,
                                            uint64_t R,
                                            uint64_t l_value_cutoff) {
  if (N < 10000)
    throw DomainError("verify_diagonal_behavior: N must be >= 10^4");
  if (R < 1 || R > 30)
    throw DomainError("verify_diagonal_behavior: R must be in 1..30");

  VerificationReport rep;
  rep.check_name = "diagonal(N=" + std::to_string(N) + ",R=" +
                   std::to_string(R) + ")";
  rep.range_tested = "squarefree r1,r2 <= " + std::to_string(R) + " on " +
                     data.source_tag();
  rep.tolerance = 1.0;

  const SymPowerSpec spec(2, data);
  const CoeffSeries rk = rankin_series(spec, N);
  const SieveLocals locals(data, std::max<uint64_t>(R, 2));

  uint64_t cutoff = l_value_cutoff;
  if (cutoff == 0) cutoff = std::min<uint64_t>(data.p_max(), 1000000);
  const LValueEstimate L2 = l_value_at_one(data, SymPowerKind::sym2, cutoff);
  const LValueEstimate L4 = l_value_at_one(data, SymPowerKind::sym4, cutoff);
  const double c = L2.value * L4.value;

  std::vector<uint64_t> rs;
  for (uint64_t r : locals.squarefree())
    if (r <= R) rs.push_back(r);

  double c_required = 0.0;
  for (size_t i = 0; i < rs.size(); ++i) {
    for (size_t j = i; j < rs.size(); ++j) {
      const uint64_t r1 = rs[i], r2 = rs[j];
      const double S = bilinear_sum(rk, locals, N, r1, r2);
      std::ostringstream note;
      if (r1 == r2) {
        const double ratio =
            S * locals.K(r1) / (c * static_cast<double>(N));
        rep.observe(std::abs(ratio - 1.0) / 0.2,
                    "diagonal r=" + std::to_string(r1));
        note << "r1=r2=" << r1 << "  S=" << format_double(S)
             << "  S*K/(L2*L4*N)=" << format_double(ratio);
      } else {
        const double off = std::abs(S) / static_cast<double>(N);
        rep.observe(off / 0.2,
                    "off-diagonal r1=" + std::to_string(r1) + " r2=" +
                        std::to_string(r2));
        note << "r1=" << r1 << " r2=" << r2 << "  S=" << format_double(S)
             << "  |S|/N=" << format_double(off);
      }

      const UCoefficients uc = u_coefficients(data, r1, r2, 1);
      const double target = (r1 == r2) ? 1.0 / locals.K(r1) : 0.0;
      rep.observe(std::abs(uc.value_at_one - target) / 1e-6,
                  "U(1) at r1=" + std::to_string(r1) + " r2=" +
                      std::to_string(r2));
      note << "  U(1)=" << format_double(uc.value_at_one);

      if (r1 * r2 > 1) {
        const ULocalSet set = u_locals(data, r1, r2);
        const double B = u_bound_sum(set);
        const double nu = static_cast<double>(set.primes.size());
        const double rhs_base = std::pow(static_cast<double>(r1 * r2), 3.0);
        const double creq = std::pow(B / rhs_base, 1.0 / nu);
        c_required = std::max(c_required, creq);
      }
      rep.notes.push_back(note.str());
    }
  }
  rep.notes.push_back("L(1;sym2)=" + format_double(L2.value) +
                      ", L(1;sym4)=" + format_double(L4.value) +
                      (L2.divergence_flag || L4.divergence_flag
                           ? " [degenerate-flag]"
                           : ""));
  rep.notes.push_back(
      "u-bound: smallest constant c with sum|u(d)|d^(-5/6) <= c^nu (r1 r2)^3 "
      "across the sweep: " +
      format_double(c_required));
  rep.finalize();
  return rep;
}

VerificationReport verify_g1_asymptotic(const SatakeData& data,
                                        std::span<const double> R_list,
                                        uint64_t l_value_cutoff) {
  if (R_list.empty()) throw DomainError("verify_g1_asymptotic: empty R_list");
  double R_cap = 0.0;
  for (double R : R_list) {
    if (R < 1.0) throw DomainError("verify_g1_asymptotic: R must be >= 1");
    R_cap = std::max(R_cap, R);
  }

  VerificationReport rep;
  rep.check_name = "g1_asymptotic";
  {
    std::ostringstream os;
    os << "R in {";
    for (size_t i = 0; i < R_list.size(); ++i)
      os << (i ? "," : "") << format_double(R_list[i]);
    os << "} on " << data.source_tag();
    rep.range_tested = os.str();
  }
  rep.tolerance = 1.0;

  const SieveLocals locals(data, static_cast<uint64_t>(std::floor(R_cap)));
  uint64_t cutoff = l_value_cutoff;
  if (cutoff == 0) cutoff = std::min<uint64_t>(data.p_max(), 1000000);
  const LValueEstimate L2 = l_value_at_one(data, SymPowerKind::sym2, cutoff);
  const LValueEstimate L4 = l_value_at_one(data, SymPowerKind::sym4, cutoff);
  const double c = L2.value * L4.value;
  if (c <= 0.0)
    throw DivergentLocalError("g1_asymptotic: non-positive L-value product");

  double rmin = std::numeric_limits<double>::infinity();
  double rmax = 0.0;
  for (double R : R_list) {
    const double G1 = big_g(1, R, locals);
    const double ratio = G1 / (c * std::log(R));
    std::ostringstream note;
    note << "R=" << format_double(R) << "  G1=" << format_double(G1)
         << "  G1/(L2*L4*logR)=" << format_double(ratio);
    if (R >= 10.0) {
      rep.observe(std::abs(std::log(ratio)) / std::log(3.0),
                  "band at R=" + format_double(R));
      rmin = std::min(rmin, ratio);
      rmax = std::max(rmax, ratio);
    } else {
      note << "  [diagnostic only: log R too small for the band test]";
    }
    rep.notes.push_back(note.str());
  }
  if (rmax > 0.0 && std::isfinite(rmin))
    rep.observe(std::log(rmax / rmin) / std::log(2.0),
                "variation max/min across sweep");
  rep.notes.push_back("L(1;sym2)*L(1;sym4) = " + format_double(c) +
                      " (positive, as required)");
  rep.finalize();
  return rep;
}

double Mollifier::support_bound() const {
  return std::pow(v, 1.0 + static_cast<double>(l) * theta);
}

Mollifier build_mollifier(double v, double theta, int l) {
  if (!(v >= 3.0)) throw DomainError("build_mollifier: v must be >= 3");
  if (!(theta > 0.0)) throw DomainError("build_mollifier: theta must be > 0");
  if (l < 0 || l > 3)
    throw DomainError("build_mollifier: l must be in 0..3");

  Mollifier m;
  m.v = v;
  m.theta = theta;
  m.l = l;

  const double D = m.support_bound();
  const uint64_t d_top = static_cast<uint64_t>(std::floor(D * (1.0 + 1e-12)));
  const auto mu = mobius_table(static_cast<uint32_t>(d_top));

  std::vector<double> cut(static_cast<size_t>(l) + 1);
  for (int j = 0; j <= l; ++j)
    cut[j] = std::pow(v, 1.0 + static_cast<double>(j) * theta);

  std::vector<double> binml(static_cast<size_t>(l) + 1, 1.0);
  for (int j = 1; j <= l; ++j)
    binml[j] = binml[j - 1] * static_cast<double>(l - j + 1) /
               static_cast<double>(j);

  double lfact = 1.0;
  for (int k = 2; k <= l; ++k) lfact *= k;
  const double norm =
      l == 0 ? 1.0
             : 1.0 / (lfact * std::pow(theta * std::log(v),
                                       static_cast<double>(l)));

  for (uint64_t d = 1; d <= d_top; ++d) {
    if (mu[d] == 0) continue;
    double acc = 0.0;
    for (int j = 0; j <= l; ++j) {
      if (static_cast<double>(d) > cut[j] * (1.0 + 1e-12)) continue;
      const double lg = std::log(cut[j] / static_cast<double>(d));
      const double term =
          binml[j] * std::pow(lg, static_cast<double>(l));
      acc += ((l - j) % 2 == 0) ? term : -term;
    }
    const double xi = static_cast<double>(mu[d]) * norm * acc;
    if (xi != 0.0) m.xi.emplace(d, xi);
  }
  return m;
}

VerificationReport verify_mollifier_bound(const Mollifier& m, int l,
                                          double omega, uint64_t n_max) {
  if (l == -1) l = m.l;
  if (l < 0 || l > 3)
    throw DomainError("verify_mollifier_bound: l must be in 0..3");
  if (omega < 1.0 + 1.0 / std::log(m.v) - 1e-12)
    throw DomainError(
        "verify_mollifier_bound: omega must be at least 1 + 1/log v");
  if (n_max < 100)
    throw DomainError("verify_mollifier_bound: n_max too small");

  VerificationReport rep;
  {
    std::ostringstream os;
    os << "mollifier_bound(v=" << format_double(m.v)
       << ",theta=" << format_double(m.theta) << ",l=" << l
       << ",omega=" << format_double(omega) << ")";
    rep.check_name = os.str();
  }
  rep.range_tested = "n<=" + std::to_string(n_max);
  rep.tolerance = 0.10;

  // inner[n] = sum_{d|n} Xi_d over the mollifier support.
  std::vector<double> inner(n_max + 1, 0.0);
  for (const auto& [d, xi] : m.xi) {
    if (d > n_max) continue;
    for (uint64_t mult = d; mult <= n_max; mult += d) inner[mult] += xi;
  }

  // Divisor weight d_l(n): coefficients of zeta^l.
  CoeffSeries dl = delta_series(n_max);
  for (int i = 0; i < l; ++i) dl = convolve(dl, zeta_series(n_max));

  // Decade-resolved accumulation of d_l(n) inner(n)^2 n^-omega.
  std::vector<std::pair<uint64_t, double>> decades;
  uint64_t hi = n_max;
  while (hi >= 1) {
    decades.emplace_back(hi, 0.0);
    if (hi < 10) break;
    hi /= 10;
  }
  std::reverse(decades.begin(), decades.end());

  double total = 0.0;
  double block_v = 0.0;  // contribution of n <= v (must be exactly the n=1 term)
  uint64_t lo = 1;
  for (auto& [top, acc] : decades) {
    for (uint64_t n = lo; n <= top; ++n) {
      const double t = dl.coeffs[n] * inner[n] * inner[n] *
                       std::pow(static_cast<double>(n), -omega);
      acc += t;
      total += t;
      if (static_cast<double>(n) <= m.v) block_v += t;
    }
    lo = top + 1;
  }

  const double last = decades.back().second;
  rep.observe(total > 0.0 ? last / total : 0.0,
              "last-decade share of the total");
  rep.notes.push_back("total = " + format_double(total));
  for (const auto& [top, acc] : decades)
    rep.notes.push_back("decade up to n=" + std::to_string(top) +
                        ": increment " + format_double(acc));
  rep.notes.push_back(
      "n <= v block = " + format_double(block_v) +
      " (inner sum collapses to the n=1 term there)");
  rep.finalize();
  return rep;
}

VerificationReport verify_mollifier_telescoping(const Mollifier& m,
                                                double tol) {
  VerificationReport rep;
  rep.check_name = "mollifier_telescoping";
  rep.tolerance = tol;
  const uint64_t v = static_cast<uint64_t>(std::floor(m.v));
  rep.range_tested = "d <= " + std::to_string(v) + " (v=" + format_double(m.v) +
                     ", theta=" + format_double(m.theta) +
                     ", l=" + std::to_string(m.l) + ")";
  const auto mu = mobius_table(static_cast<uint32_t>(v));
  for (uint64_t d = 1; d <= v; ++d) {
    const auto it = m.xi.find(d);
    const double got = it == m.xi.end() ? 0.0 : it->second;
    rep.observe(std::abs(got - static_cast<double>(mu[d])),
                "d=" + std::to_string(d));
  }
  rep.notes.push_back("support bound " + format_double(m.support_bound()));
  rep.finalize();
  return rep;
}

VerificationReport verify_local_lower_bound(const SatakeData& data,
                                            uint64_t p_limit) {
  VerificationReport rep;
  rep.check_name = "local_lower_bound";
  rep.tolerance = 0.0;
  rep.range_tested =
      "p <= " + std::to_string(p_limit) + " on " + data.source_tag();
  double min_margin = std::numeric_limits<double>::infinity();
  uint64_t min_p = 0;
  for (uint64_t p : sieve_primes(p_limit)) {
    const LocalSieveData lsd = local_sieve_data(data, p);
    const double pc = static_cast<double>(p);
    const double margin = (lsd.F_p - 1.0) * pc * pc * pc;  // units of 1/p^3
    if (margin < min_margin) {
      min_margin = margin;
      min_p = p;
    }
    rep.observe(std::max(0.0, 1.0 - margin), "p=" + std::to_string(p));
  }
  rep.notes.push_back("smallest (F_p - 1) p^3 = " + format_double(min_margin) +
                      " at p=" + std::to_string(min_p) + " (must stay >= 1)");
  rep.finalize();
  return rep;
}

}  // namespace symsieve
