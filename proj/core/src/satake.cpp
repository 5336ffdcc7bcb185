#include "symsieve/satake.hpp"

#include <cmath>
#include <sstream>

#include "symsieve/constants.hpp"
#include "symsieve/errors.hpp"
#include "symsieve/primes.hpp"

namespace symsieve {

namespace {

bool is_prime_u64(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace

bool satake_admissible(uint64_t p, std::complex<double> alpha) {
  const double r = std::abs(alpha);
  if (std::abs(r - 1.0) <= kUnitaryTolerance) return true;
  // Non-unitary parameters must be real: alpha or -alpha in (1, p^(7/64)].
  if (std::abs(alpha.imag()) > kUnitaryTolerance * r) return false;
  const double m = std::abs(alpha.real());
  const double cap = std::pow(static_cast<double>(p), kKimSarnakExponent);
  return m > 1.0 && m <= cap * (1.0 + kUnitaryTolerance);
}

SatakeData SatakeData::create(double nu_abs,
                              std::unordered_map<uint64_t, std::complex<double>> alphas,
                              std::string source_tag) {
  for (const auto& [p, a] : alphas) {
    if (!is_prime_u64(p)) {
      std::ostringstream os;
      os << "SatakeData: index " << p << " is not prime";
      throw DomainError(os.str());
    }
    if (!satake_admissible(p, a)) {
      std::ostringstream os;
      os << "SatakeData: alpha at p=" << p << " (" << a.real() << "+"
         << a.imag() << "i) is neither unitary nor in the Kim-Sarnak window";
      throw BoundError(os.str());
    }
  }
  return create_unchecked(nu_abs, std::move(alphas), std::move(source_tag));
}

SatakeData SatakeData::create_unchecked(double nu_abs,
                                        std::unordered_map<uint64_t, std::complex<double>> alphas,
                                        std::string source_tag) {
  SatakeData d;
  d.nu_abs_ = nu_abs;
  d.alphas_ = std::move(alphas);
  d.source_tag_ = std::move(source_tag);
  for (const auto& [p, a] : d.alphas_) {
    (void)a;
    if (p > d.p_max_) d.p_max_ = p;
  }
  return d;
}

std::complex<double> SatakeData::alpha(uint64_t p) const {
  auto it = alphas_.find(p);
  if (it == alphas_.end()) {
    std::ostringstream os;
    os << "no Satake parameter at p=" << p << " (coverage ends at " << p_max_
       << ")";
    throw MissingPrimeError(os.str());
  }
  return it->second;
}

double hecke_prime_power(const SatakeData& data, uint64_t p, int m) {
  if (m < 0) throw DomainError("hecke_prime_power: m must be non-negative");
  if (m == 0) return 1.0;
  const std::complex<double> a = data.alpha(p);
  const std::complex<double> inv = 1.0 / a;
  // sum_{j=0..m} alpha^(m-2j): start at alpha^m, divide by alpha^2 per step.
  std::complex<double> term = std::pow(a, m);
  std::complex<double> sum = 0.0;
  for (int j = 0; j <= m; ++j) {
    sum += term;
    term *= inv * inv;
  }
  if (std::abs(sum.imag()) > kRealTolerance) {
    std::ostringstream os;
    os << "tau(p^m) not real at p=" << p << " m=" << m
       << ": imag=" << sum.imag();
    throw NonRealCoefficientError(os.str());
  }
  return sum.real();
}

double hecke_eigenvalue(const SatakeData& data, uint64_t n) {
  if (n == 0) throw DomainError("hecke_eigenvalue: n must be positive");
  double out = 1.0;
  for (const auto& [p, e] : factorize(n)) out *= hecke_prime_power(data, p, e);
  return out;
}

VerificationReport validate_kim_sarnak(const SatakeData& data, uint64_t n_max) {
  VerificationReport rep;
  rep.check_name = "kim_sarnak";
  {
    std::ostringstream os;
    os << "n<=" << n_max << " on " << data.source_tag();
    rep.range_tested = os.str();
  }
  rep.tolerance = 1.0 + kIdentityTolerance;

  // Memoised tau(p^m) per prime power keeps the sweep near-linear.
  std::unordered_map<uint64_t, double> tau_pp;
  for (uint64_t n = 1; n <= n_max; ++n) {
    double tau = 1.0;
    uint64_t d = 1;
    for (const auto& [p, e] : factorize(n)) {
      uint64_t pe = 1;
      for (int i = 0; i < e; ++i) pe *= p;
      auto it = tau_pp.find(pe);
      if (it == tau_pp.end())
        it = tau_pp.emplace(pe, hecke_prime_power(data, p, e)).first;
      tau *= it->second;
      d *= static_cast<uint64_t>(e) + 1;
    }
    const double cap = static_cast<double>(d) *
                       std::pow(static_cast<double>(n), kKimSarnakExponent);
    const double ratio = std::abs(tau) / cap;
    std::ostringstream os;
    os << "n=" << n << " |tau|=" << std::abs(tau) << " cap=" << cap;
    rep.observe(ratio, os.str());
  }
  rep.finalize();
  return rep;
}

}  // namespace symsieve
