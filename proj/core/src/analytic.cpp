#include "symsieve/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>

#include "symsieve/constants.hpp"
#include "symsieve/errors.hpp"
#include "symsieve/primes.hpp"
#include "symsieve/sympower.hpp"

namespace symsieve {

namespace {

// Realised local factor of sym^ell at s=1:
// prod_{j=0..ell} (1 - alpha^(ell-2j)/p)^-1.
double local_at_one(const SatakeData& data, uint64_t p, int ell) {
  const std::complex<double> alpha = data.alpha(p);
  std::complex<double> prod = 1.0;
  const double pinv = 1.0 / static_cast<double>(p);
  std::complex<double> pw = std::pow(alpha, ell);
  const std::complex<double> step = 1.0 / (alpha * alpha);
  for (int j = 0; j <= ell; ++j) {
    prod *= 1.0 - pw * pinv;
    pw *= step;
  }
  if (std::abs(prod.imag()) > kRealTolerance * std::abs(prod)) {
    std::ostringstream os;
    os << "local factor at s=1 not real at p=" << p;
    throw NonRealCoefficientError(os.str());
  }
  const double v = prod.real();
  if (v <= 0.0) {
    std::ostringstream os;
    os << "local factor at s=1 non-positive at p=" << p << " (" << v << ")";
    throw DivergentLocalError(os.str());
  }
  return 1.0 / v;
}

bool all_unitary(const SatakeData& data, const std::vector<uint64_t>& primes) {
  for (uint64_t p : primes)
    if (std::abs(std::abs(data.alpha(p)) - 1.0) > kUnitaryTolerance)
      return false;
  return true;
}

// Every prime the sum will touch must have a parameter; a gap in the table
// is a data error, not a zero contribution.
void require_coverage(const SatakeData& data,
                      const std::vector<uint64_t>& primes) {
  for (uint64_t p : primes) {
    if (!data.covers(p)) {
      std::ostringstream os;
      os << "prime " << p << " in the summation range has no parameter"
         << " (coverage ends at " << data.p_max() << ")";
      throw CoverageExceededError(os.str());
    }
  }
}

}  // namespace

LValueEstimate l_value_at_one(const SatakeData& data, SymPowerKind which,
                              uint64_t p_cutoff) {
  const int ell = static_cast<int>(which);
  LValueEstimate est;
  est.p_cutoff = p_cutoff;
  est.label = "L(1;sym" + std::to_string(ell) + ") p<=" +
              std::to_string(p_cutoff) + " on " + data.source_tag();

  const std::vector<uint64_t> primes = sieve_primes(p_cutoff);
  double value = 1.0;
  double value_at_half = 1.0;
  for (uint64_t p : primes) {
    value *= local_at_one(data, p, ell);
    if (2 * p <= p_cutoff) value_at_half = value;
  }
  est.value = value;

  // Drift over the last octave of primes flags degenerate (zeta-power-like)
  // behaviour that a genuine unitary-generic form does not show.
  if (p_cutoff >= 8 && value_at_half > 0.0) {
    const double drift = std::abs(value / value_at_half - 1.0);
    if (drift > 0.05) {
      est.divergence_flag = true;
      std::ostringstream os;
      os << "partial product drifted " << format_double(drift)
         << " over the last octave; data degenerate for this product";
      est.note = os.str();
    }
  }

  // Dispersion-model tail: sigma^2 = sum_{p>X} A_p^2/p^2 with A_p the
  // per-prime amplitude cap, integral-estimated; bound = value*(e^(2 sigma)-1).
  const double X = std::max<double>(p_cutoff, 2);
  const double lx = std::log(X);
  double sigma2;
  if (all_unitary(data, primes)) {
    sigma2 = static_cast<double>((ell + 1) * (ell + 1)) / (X * lx);
  } else {
    const double a = 2.0 * ell * kKimSarnakExponent;  // A(t)^2 ~ t^a
    sigma2 = static_cast<double>((ell + 1) * (ell + 1)) *
             std::pow(X, a - 1.0) / ((1.0 - a) * lx);
  }
  const double sigma = std::sqrt(sigma2);
  est.tail_bound = est.value * (std::exp(2.0 * sigma) - 1.0);
  return est;
}

VerificationReport verify_mean_value(const SatakeData& data,
                                     std::span<const uint64_t> N_list,
                                     uint64_t l_value_cutoff) {
  if (N_list.empty()) throw DomainError("verify_mean_value: empty N_list");
  for (size_t i = 1; i < N_list.size(); ++i)
    if (N_list[i] <= N_list[i - 1])
      throw DomainError("verify_mean_value: N_list must be increasing");

  VerificationReport rep;
  rep.check_name = "mean_value";
  {
    std::ostringstream os;
    os << "N in {";
    for (size_t i = 0; i < N_list.size(); ++i)
      os << (i ? "," : "") << N_list[i];
    os << "} on " << data.source_tag();
    rep.range_tested = os.str();
  }
  rep.tolerance = 1.0;

  const uint64_t N = N_list.back();
  const SymPowerSpec spec(2, data);
  const CoeffSeries rk = rankin_series(spec, N);

  uint64_t cutoff = l_value_cutoff;
  if (cutoff == 0) cutoff = std::min<uint64_t>(data.p_max(), 1000000);
  const LValueEstimate L2 = l_value_at_one(data, SymPowerKind::sym2, cutoff);
  const LValueEstimate L4 = l_value_at_one(data, SymPowerKind::sym4, cutoff);
  const double c = L2.value * L4.value;

  std::vector<double> ratios;
  double running = 0.0;
  double sup_mean = 0.0;
  size_t next = 0;
  for (uint64_t n = 1; n <= N; ++n) {
    running += rk.coeffs[n];
    sup_mean = std::max(sup_mean, running / static_cast<double>(n));
    if (next < N_list.size() && n == N_list[next]) {
      ratios.push_back(running / (c * static_cast<double>(n)));
      ++next;
    }
  }

  double mono_violation = 0.0;
  for (size_t i = 0; i + 1 < ratios.size(); ++i) {
    const double prev = std::abs(ratios[i] - 1.0);
    const double cur = std::abs(ratios[i + 1] - 1.0);
    mono_violation = std::max(mono_violation, cur - prev);
  }
  const double final_err = std::abs(ratios.back() - 1.0);

  // Normalised residual: final ratio within [0.9, 1.1] and |ratio-1|
  // non-increasing across the sweep.
  rep.observe(final_err / 0.1,
              "final N=" + std::to_string(N_list.back()) + " ratio=" +
                  format_double(ratios.back()));
  if (mono_violation > 0.0)
    rep.observe(1.0 + mono_violation, "|ratio-1| not decreasing");

  for (size_t i = 0; i < ratios.size(); ++i) {
    std::ostringstream os;
    os << "N=" << N_list[i] << " ratio=" << format_double(ratios[i])
       << " |ratio-1|=" << format_double(std::abs(ratios[i] - 1.0));
    rep.notes.push_back(os.str());
  }
  rep.notes.push_back("L(1;sym2)=" + format_double(L2.value) +
                      (L2.divergence_flag ? " [degenerate-flag]" : ""));
  rep.notes.push_back("L(1;sym4)=" + format_double(L4.value) +
                      (L4.divergence_flag ? " [degenerate-flag]" : ""));
  rep.notes.push_back("sup over n of partial_sum/n = " +
                      format_double(sup_mean));
  rep.finalize();
  return rep;
}

PrimeSumResult short_interval_prime_sum(const SatakeData& data, double x,
                                        double theta) {
  if (!(x >= 3.0)) throw DomainError("short_interval_prime_sum: x must be >= 3");
  if (!(theta > 0.0 && theta < 1.0))
    throw DomainError("short_interval_prime_sum: theta must be in (0,1)");

  PrimeSumResult res;
  res.x = x;
  res.theta = theta;
  res.y = std::pow(x, 1.0 - theta);

  const uint64_t hi = static_cast<uint64_t>(std::floor(x));
  const double lo_real = x - res.y;
  const uint64_t lo =
      lo_real <= 2.0 ? 2 : static_cast<uint64_t>(std::ceil(lo_real));

  if (theta < 1.0 / std::sqrt(std::log(x)))
    res.warning = "theta below (log x)^(-1/2); outside the supported range";

  const std::vector<uint64_t> ps = primes_in_range(lo, hi);
  require_coverage(data, ps);
  double sum = 0.0;
  uint64_t count = 0;
  for (uint64_t p : ps) {
    const double tau = hecke_prime_power(data, p, 1);
    sum += tau * tau;
    ++count;
  }
  res.sum_value = sum;
  res.prime_count = count;
  res.main_term = res.y / std::log(x);
  res.ratio = res.sum_value / res.main_term;
  return res;
}

namespace {

// Taper ramp h(t) = f(t)/(f(t)+f(1-t)) with f(t) = exp(-1/t): 0 at t<=0,
// 1 at t>=1, C-infinity throughout.
double ramp(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / t);
  const double b = std::exp(-1.0 / (1.0 - t));
  return a / (a + b);
}

// Measured suprema of |ramp^(k)| on (0,1), frozen with ~25% margin.
// k = 0..4; the window's k-th derivative is then bounded by these over U^k.
constexpr double kRampDerivSup[5] = {1.0, 2.5, 12.5, 140.0, 2900.0};

}  // namespace

SmoothWindow::SmoothWindow(double N, double M, double U) : n_(N), m_(M), u_(U) {
  if (!(U > 0.0) || !(M > 0.0) || U > M / 2.0) {
    std::ostringstream os;
    os << "smooth_window: need 0 < U <= M/2, got M=" << M << " U=" << U;
    throw InvalidTaperError(os.str());
  }
}

double SmoothWindow::operator()(double x) const {
  if (x <= n_ - m_ - u_ || x >= n_ + u_) return 0.0;
  if (x < n_ - m_) return ramp((x - (n_ - m_ - u_)) / u_);
  if (x <= n_) return 1.0;
  return ramp(((n_ + u_) - x) / u_);
}

double SmoothWindow::derivative_bound(int k) const {
  if (k < 0 || k > 4)
    throw DomainError("smooth_window derivative bound: k must be in 0..4");
  return kRampDerivSup[k] / std::pow(u_, k);
}

const char* SmoothWindow::shape_name() { return "exp(-1/t) ramp"; }

SmoothWindow smooth_window(double N, double M, double U) {
  return SmoothWindow(N, M, U);
}

double smoothed_prime_sum(const SatakeData& data, double N, double M,
                          double U) {
  const SmoothWindow g(N, M, U);
  const uint64_t hi = static_cast<uint64_t>(std::floor(N + U));
  const double lo_real = N - M - U;
  const uint64_t lo =
      lo_real <= 2.0 ? 2 : static_cast<uint64_t>(std::ceil(lo_real));
  const std::vector<uint64_t> ps = primes_in_range(lo, hi);
  require_coverage(data, ps);
  double sum = 0.0;
  for (uint64_t p : ps) {
    const double w = g(static_cast<double>(p));
    if (w == 0.0) continue;
    const double tau = hecke_prime_power(data, p, 1);
    sum += std::log(static_cast<double>(p)) * tau * tau * w;
  }
  return sum;
}

double sharp_prime_sum_logweight(const SatakeData& data, double lo, double hi) {
  const uint64_t top = static_cast<uint64_t>(std::floor(hi));
  const uint64_t bot = lo <= 2.0 ? 2 : static_cast<uint64_t>(std::ceil(lo));
  const std::vector<uint64_t> ps = primes_in_range(bot, top);
  require_coverage(data, ps);
  double sum = 0.0;
  for (uint64_t p : ps) {
    const double tau = hecke_prime_power(data, p, 1);
    sum += std::log(static_cast<double>(p)) * tau * tau;
  }
  return sum;
}

}  // namespace symsieve
