#include <doctest.h>

#include <cmath>
#include <complex>
#include <numeric>
#include <unordered_map>
#include <vector>

#include "symsieve/errors.hpp"
#include "symsieve/ingest.hpp"
#include "symsieve/primes.hpp"
#include "symsieve/satake.hpp"
#include "symsieve/sieve.hpp"
#include "symsieve/sympower.hpp"

using namespace symsieve;
using cplx = std::complex<double>;

namespace {

SatakeData alpha_one_form(uint64_t p_max) {
  std::unordered_map<uint64_t, cplx> a;
  for (uint64_t p : sieve_primes(p_max)) a.emplace(p, cplx(1.0, 0.0));
  return SatakeData::create(1.0, std::move(a), "alpha-one");
}

}  // namespace

TEST_SUITE("sieve") {
  TEST_CASE("F_2 at alpha=1 is 512") {
    SatakeData d = alpha_one_form(2);
    const LocalSieveData lsd = local_sieve_data(d, 2);
    CHECK(lsd.F_p == doctest::Approx(512.0).epsilon(1e-9));
  }

  TEST_CASE("F_p matches a longer direct evaluation") {
    SatakeData d = synthesize_form(21, 100, SynthProfile::unitary);
    for (uint64_t p : {2ull, 3ull, 53ull}) {
      const LocalSieveData lsd = local_sieve_data(d, p);
      const EulerLocal deep = rankin_local({2, d}, p, lsd.F_p_series.deg_max + 60);
      double direct = 0.0;
      for (int l = deep.deg_max; l >= 0; --l)
        direct = direct / static_cast<double>(p) + deep.c[l];
      CHECK(lsd.F_p == doctest::Approx(direct).epsilon(1e-11));
    }
  }

  TEST_CASE("requested degree is honoured") {
    SatakeData d = synthesize_form(21, 10, SynthProfile::unitary);
    const LocalSieveData lsd = local_sieve_data(d, 2, 55);
    CHECK(lsd.F_p_series.deg_max == 55);
  }

  TEST_CASE("local lower bound sweep") {
    SatakeData d = synthesize_form(22, 2000, SynthProfile::unitary);
    const VerificationReport r = verify_local_lower_bound(d, 2000);
    CHECK(r.passed);
    CHECK(r.max_abs_error == 0.0);
    CHECK(r.check_name == "local_lower_bound");
  }

  TEST_CASE("sieve locals tables") {
    SatakeData d = synthesize_form(23, 100, SynthProfile::unitary);
    SieveLocals locals(d, 30);
    CHECK(locals.K(1) == 1.0);
    for (uint64_t p : {2ull, 3ull, 5ull})
      CHECK(locals.K(p) == doctest::Approx(locals.F(p) - 1.0));
    CHECK(locals.K(6) == doctest::Approx(locals.K(2) * locals.K(3)).epsilon(1e-13));
    CHECK(locals.K(30) ==
          doctest::Approx(locals.K(2) * locals.K(3) * locals.K(5)).epsilon(1e-13));
    CHECK_THROWS_AS(locals.K(4), DomainError);
    CHECK_THROWS_AS(locals.K(31), DomainError);
    CHECK_THROWS_AS(locals.local(31), MissingPrimeError);
    const auto mu = mobius_table(30);
    for (uint64_t n = 1; n <= 30; ++n)
      CHECK(locals.mobius(n) == static_cast<int>(mu[n]));
    // squarefree list agrees with the Moebius table
    std::vector<uint64_t> expect;
    for (uint64_t n = 1; n <= 30; ++n)
      if (mu[n] != 0) expect.push_back(n);
    CHECK(locals.squarefree() == expect);
  }

  TEST_CASE("big_g against brute enumeration") {
    SatakeData d = synthesize_form(24, 60, SynthProfile::unitary);
    SieveLocals locals(d, 50);
    const auto mu = mobius_table(50);
    for (uint64_t dd : {1ull, 2ull, 6ull, 15ull}) {
      for (double x : {1.0, 7.5, 33.0, 50.0}) {
        double expect = 0.0;
        for (uint64_t r = 1; r <= static_cast<uint64_t>(x); ++r)
          if (mu[r] != 0 && std::gcd(r, dd) == 1) expect += locals.K(r);
        CHECK(big_g(dd, x, locals) == doctest::Approx(expect).epsilon(1e-12));
      }
    }
    CHECK_THROWS_AS(big_g(1, 51.0, locals), DomainError);
  }

  TEST_CASE("lambda weights") {
    SatakeData d = synthesize_form(25, 100, SynthProfile::unitary);
    const SieveWeights w = build_weights(d, 10.0);
    CHECK(w.lambda.at(1) == 1.0);  // exact by construction
    const auto mu = mobius_table(10);
    for (const auto& [dd, lam] : w.lambda) {
      CHECK(dd <= 10);
      CHECK(mu[dd] != 0);
      if (dd > 1) CHECK(lam * mu[dd] >= 0.0);  // sign carried by mu(d)
      CHECK(std::abs(lam) <= 1.0 + 1e-12);     // |lambda_d| <= lambda_1
    }
    CHECK(w.G1 > 0.0);
  }

  TEST_CASE("lambda sum closed form") {
    SatakeData d = synthesize_form(26, 2000, SynthProfile::unitary);
    for (double R : {10.0, 30.0}) {
      const VerificationReport r = verify_lambda_sum(d, R, 1500);
      CHECK(r.passed);
      bool noted = false;
      for (const auto& n : r.notes)
        if (n.find("lambda_1 == 1 exactly: yes") != std::string::npos)
          noted = true;
      CHECK(noted);
    }
  }

  TEST_CASE("phi_r values") {
    SatakeData d = synthesize_form(27, 50, SynthProfile::unitary);
    SieveLocals locals(d, 30);
    CHECK(phi_r(1, 977, locals) == 1.0);
    CHECK(phi_r(6, 35, locals) == 1.0);  // coprime
    CHECK(phi_r(5, 35, locals) == doctest::Approx(-1.0 / locals.K(5)));
    CHECK(phi_r(6, 4, locals) == doctest::Approx(-1.0 / locals.K(2)));
    CHECK(phi_r(6, 12, locals) ==
          doctest::Approx(1.0 / (locals.K(2) * locals.K(3))));
  }

  TEST_CASE("bilinear sum overloads agree and match brute force") {
    SatakeData d = synthesize_form(28, 800, SynthProfile::unitary);
    const CoeffSeries rk = rankin_series({2, d}, 800);
    SieveLocals locals(d, 10);
    for (auto [r1, r2] : std::vector<std::pair<uint64_t, uint64_t>>{
             {1, 1}, {2, 3}, {5, 5}, {6, 10}}) {
      double brute = 0.0;
      for (uint64_t n = 1; n <= 800; ++n)
        brute += rk[n] * phi_r(r1, n, locals) * phi_r(r2, n, locals);
      CHECK(bilinear_sum(rk, locals, 800, r1, r2) ==
            doctest::Approx(brute).epsilon(1e-12));
      CHECK(bilinear_sum(d, 800, r1, r2) ==
            doctest::Approx(brute).epsilon(1e-12));
    }
  }

  TEST_CASE("u coefficients: closed form at one and cross route") {
    SatakeData d = synthesize_form(29, 1500, SynthProfile::unitary);
    const CoeffSeries rk = rankin_series({2, d}, 1500);
    SieveLocals locals(d, 12);
    std::vector<double> T(1501, 0.0);
    for (uint64_t n = 1; n <= 1500; ++n) T[n] = T[n - 1] + rk[n];
    for (auto [r1, r2] : std::vector<std::pair<uint64_t, uint64_t>>{
             {1, 1}, {2, 2}, {3, 2}, {10, 10}, {6, 5}, {7, 7}}) {
      const UCoefficients u = u_coefficients(d, r1, r2, 1500);
      CHECK(u.values.at(1) == 1.0);
      const double expect_one =
          r1 == r2 ? 1.0 / locals.K(r1) : 0.0;
      CHECK(u.value_at_one == doctest::Approx(expect_one).epsilon(1e-10));
      // S(N; r1, r2) = sum_d u(d) T(N/d): both routes computed independently
      double via_u = 0.0;
      for (const auto& [dd, ud] : u.values)
        if (dd <= 1500) via_u += ud * T[1500 / dd];
      const double direct = bilinear_sum(rk, locals, 1500, r1, r2);
      CHECK(via_u == doctest::Approx(direct).epsilon(1e-9));
    }
  }

  TEST_CASE("u support is a product of prime powers of r1 r2") {
    SatakeData d = synthesize_form(29, 100, SynthProfile::unitary);
    const UCoefficients u = u_coefficients(d, 6, 5, 100000);
    for (const auto& [dd, ud] : u.values) {
      for (auto [p, e] : factorize(dd)) {
        CHECK((p == 2 || p == 3 || p == 5));
        CHECK(e <= 9);  // inverse local factors are degree-9 polynomials
      }
    }
  }

  TEST_CASE("diagonal behaviour report structure") {
    SatakeData d = synthesize_form(3, 10000, SynthProfile::unitary);
    const VerificationReport r = verify_diagonal_behavior(d, 10000, 5);
    CHECK(r.check_name.rfind("diagonal(", 0) == 0);
    CHECK(!r.notes.empty());
    CHECK(r.tolerance == 1.0);
  }

  TEST_CASE("g1 asymptotic on a well-behaved form") {
    SatakeData d = synthesize_form(3, 10000, SynthProfile::unitary);
    const std::vector<double> Rs{100.0, 1000.0};
    const VerificationReport r = verify_g1_asymptotic(d, Rs);
    CHECK(r.passed);
  }

  TEST_CASE("mollifier construction validates") {
    CHECK_THROWS_AS(build_mollifier(2.0, 0.5, 1), DomainError);
    CHECK_THROWS_AS(build_mollifier(100.0, 0.0, 1), DomainError);
    CHECK_THROWS_AS(build_mollifier(100.0, 0.5, 4), DomainError);
    CHECK_THROWS_AS(build_mollifier(100.0, 0.5, -1), DomainError);
  }

  TEST_CASE("mollifier telescopes to mu below v for every order") {
    for (int l : {1, 2, 3}) {
      for (double v : {50.0, 100.0}) {
        const Mollifier m = build_mollifier(v, 0.5, l);
        const VerificationReport r = verify_mollifier_telescoping(m);
        CHECK(r.passed);
        CHECK(r.max_abs_error <= 1e-12);
      }
    }
  }

  TEST_CASE("mollifier support is bounded") {
    const Mollifier m = build_mollifier(100.0, 0.5, 2);
    CHECK(m.support_bound() == doctest::Approx(std::pow(100.0, 2.0)));
    for (const auto& [dd, xi] : m.xi)
      CHECK(static_cast<double>(dd) <= m.support_bound() * (1.0 + 1e-9));
  }

  TEST_CASE("order zero collapses to a sharp mu cutoff") {
    const Mollifier m = build_mollifier(50.0, 0.5, 0);
    const auto mu = mobius_table(50);
    for (uint64_t dd = 1; dd <= 50; ++dd) {
      const auto it = m.xi.find(dd);
      const double got = it == m.xi.end() ? 0.0 : it->second;
      CHECK(got == doctest::Approx(static_cast<double>(mu[dd])));
    }
    CHECK(m.support_bound() == doctest::Approx(50.0));
  }

  TEST_CASE("mollifier damped sum stabilises") {
    const Mollifier m = build_mollifier(100.0, 0.5, 1);
    const double omega = 1.0 + 1.0 / std::log(100.0);
    const VerificationReport r = verify_mollifier_bound(m, -1, omega, 50000);
    CHECK(r.passed);
    bool total_noted = false;
    for (const auto& n : r.notes)
      if (n.rfind("total = ", 0) == 0) total_noted = true;
    CHECK(total_noted);
    CHECK_THROWS_AS(verify_mollifier_bound(m, -1, 1.0, 50000), DomainError);
  }
}
