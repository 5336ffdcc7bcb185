#include <doctest.h>

#include <cmath>
#include <complex>
#include <unordered_map>

#include "symsieve/constants.hpp"
#include "symsieve/errors.hpp"
#include "symsieve/ingest.hpp"
#include "symsieve/primes.hpp"
#include "symsieve/satake.hpp"

using namespace symsieve;
using cplx = std::complex<double>;

namespace {

SatakeData one_prime(uint64_t p, cplx alpha) {
  std::unordered_map<uint64_t, cplx> a{{p, alpha}};
  return SatakeData::create(1.0, std::move(a), "test");
}

// Direct evaluation of the power sum over {alpha, 1/alpha} exponents.
double tau_brute(cplx alpha, int m) {
  cplx s = 0.0;
  for (int j = 0; j <= m; ++j)
    s += std::pow(alpha, m - j) * std::pow(1.0 / alpha, j);
  return s.real();
}

}  // namespace

TEST_SUITE("satake") {
  TEST_CASE("admissibility boundary") {
    CHECK(satake_admissible(7, cplx(std::cos(1.1), std::sin(1.1))));
    CHECK(satake_admissible(7, cplx(1.0, 0.0)));
    CHECK(satake_admissible(7, cplx(-1.0, 0.0)));
    // real window (1, p^(7/64)]
    const double cap = std::pow(7.0, 7.0 / 64.0);
    CHECK(satake_admissible(7, cplx(cap * 0.999, 0.0)));
    CHECK(satake_admissible(7, cplx(-cap * 0.999, 0.0)));
    CHECK_FALSE(satake_admissible(7, cplx(cap * 1.01, 0.0)));
    // complex off the unit circle
    CHECK_FALSE(satake_admissible(7, cplx(1.02 * std::cos(0.5),
                                          1.02 * std::sin(0.5))));
    // inside the unit disc
    CHECK_FALSE(satake_admissible(7, cplx(0.5, 0.0)));
  }

  TEST_CASE("create validates") {
    CHECK_THROWS_AS(one_prime(7, cplx(1.3, 0.4)), BoundError);
    std::unordered_map<uint64_t, cplx> bad{{6, cplx(1.0, 0.0)}};
    CHECK_THROWS_AS(SatakeData::create(1.0, std::move(bad), "t"), DomainError);
  }

  TEST_CASE("alpha lookup and coverage") {
    SatakeData d = one_prime(5, cplx(0.0, 1.0));
    CHECK(d.covers(5));
    CHECK_FALSE(d.covers(7));
    CHECK(d.p_max() == 5);
    CHECK_THROWS_AS(d.alpha(7), MissingPrimeError);
  }

  TEST_CASE("prime powers match direct power sum") {
    for (double th : {0.3, 1.2, 2.9}) {
      const cplx a(std::cos(th), std::sin(th));
      SatakeData d = one_prime(11, a);
      for (int m = 0; m <= 12; ++m)
        CHECK(hecke_prime_power(d, 11, m) ==
              doctest::Approx(tau_brute(a, m)).epsilon(1e-12));
    }
    // real admissible alpha
    const double r = std::pow(13.0, 7.0 / 64.0) * 0.97;
    SatakeData d = one_prime(13, cplx(r, 0.0));
    for (int m = 0; m <= 8; ++m)
      CHECK(hecke_prime_power(d, 13, m) ==
            doctest::Approx(tau_brute(cplx(r, 0.0), m)).epsilon(1e-12));
  }

  TEST_CASE("degenerate alpha=1 gives m+1") {
    SatakeData d = one_prime(3, cplx(1.0, 0.0));
    for (int m = 0; m <= 10; ++m)
      CHECK(hecke_prime_power(d, 3, m) == doctest::Approx(m + 1.0));
  }

  TEST_CASE("hecke recursion tau(p)^2 = tau(p^2) + 1") {
    SatakeData d = synthesize_form(99, 500, SynthProfile::unitary);
    for (uint64_t p : sieve_primes(500)) {
      const double t1 = hecke_prime_power(d, p, 1);
      const double t2 = hecke_prime_power(d, p, 2);
      CHECK(t1 * t1 == doctest::Approx(t2 + 1.0).epsilon(1e-12));
    }
  }

  TEST_CASE("alpha and 1/alpha give the same tau") {
    const cplx a(std::cos(0.77), std::sin(0.77));
    SatakeData d1 = one_prime(7, a);
    SatakeData d2 = one_prime(7, 1.0 / a);
    for (int m = 0; m <= 9; ++m)
      CHECK(hecke_prime_power(d1, 7, m) ==
            doctest::Approx(hecke_prime_power(d2, 7, m)).epsilon(1e-12));
  }

  TEST_CASE("negative exponent rejected") {
    SatakeData d = one_prime(5, cplx(0.0, 1.0));
    CHECK_THROWS_AS(hecke_prime_power(d, 5, -1), DomainError);
  }

  TEST_CASE("multiplicativity") {
    SatakeData d = synthesize_form(7, 100, SynthProfile::unitary);
    CHECK(hecke_eigenvalue(d, 1) == 1.0);
    CHECK(hecke_eigenvalue(d, 12) ==
          doctest::Approx(hecke_prime_power(d, 2, 2) *
                          hecke_prime_power(d, 3, 1)));
    CHECK(hecke_eigenvalue(d, 90) ==
          doctest::Approx(hecke_prime_power(d, 2, 1) *
                          hecke_prime_power(d, 3, 2) *
                          hecke_prime_power(d, 5, 1)));
  }

  TEST_CASE("corrupt parameter trips the real check") {
    std::unordered_map<uint64_t, cplx> a{{2, cplx(1.3, 0.6)}};
    SatakeData d = SatakeData::create_unchecked(1.0, std::move(a), "corrupt");
    CHECK_THROWS_AS(hecke_prime_power(d, 2, 1), NonRealCoefficientError);
  }

  TEST_CASE("kim-sarnak sweep passes on admissible forms") {
    for (auto profile : {SynthProfile::unitary, SynthProfile::mixed}) {
      SatakeData d = synthesize_form(4, 3000, profile);
      const VerificationReport r = validate_kim_sarnak(d, 3000);
      CHECK(r.passed);
      CHECK(r.max_abs_error <= r.tolerance);
      CHECK(r.check_name == "kim_sarnak");
    }
  }

  TEST_CASE("kim-sarnak sweep fails on an out-of-bound parameter") {
    std::unordered_map<uint64_t, cplx> a{{2, cplx(3.0, 0.0)},
                                         {3, cplx(0.0, 1.0)}};
    SatakeData d = SatakeData::create_unchecked(1.0, std::move(a), "bad");
    // coverage ends at p=3, so sweep only n <= 4
    const VerificationReport r = validate_kim_sarnak(d, 4);
    CHECK_FALSE(r.passed);
    CHECK(r.max_abs_error > 1.0);
  }

  TEST_CASE("input precision is carried") {
    SatakeData d = one_prime(5, cplx(0.0, 1.0));
    CHECK(d.input_precision() == 0.0);
    d.set_input_precision(5e-4);
    CHECK(d.input_precision() == 5e-4);
  }
}
