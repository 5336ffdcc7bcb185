#include "symsieve/primes.hpp"

#include <algorithm>
#include <cmath>

#include "symsieve/errors.hpp"

namespace symsieve {

std::vector<uint64_t> sieve_primes(uint64_t limit) {
  std::vector<uint64_t> primes;
  if (limit < 2) return primes;
  std::vector<bool> composite(limit + 1, false);
  for (uint64_t i = 2; i * i <= limit; ++i) {
    if (composite[i]) continue;
    for (uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
  }
  for (uint64_t i = 2; i <= limit; ++i)
    if (!composite[i]) primes.push_back(i);
  return primes;
}

std::vector<uint64_t> primes_in_range(uint64_t lo, uint64_t hi) {
  std::vector<uint64_t> primes;
  if (hi < 2 || hi < lo) return primes;
  lo = std::max<uint64_t>(lo, 2);
  const uint64_t root = static_cast<uint64_t>(std::sqrt(static_cast<double>(hi))) + 1;
  const std::vector<uint64_t> base = sieve_primes(root);
  std::vector<bool> composite(hi - lo + 1, false);
  for (uint64_t p : base) {
    uint64_t start = std::max(p * p, ((lo + p - 1) / p) * p);
    for (uint64_t j = start; j <= hi; j += p) composite[j - lo] = true;
  }
  for (uint64_t n = lo; n <= hi; ++n)
    if (!composite[n - lo]) primes.push_back(n);
  return primes;
}

std::vector<uint32_t> smallest_prime_factor_table(uint32_t limit) {
  std::vector<uint32_t> spf(limit + 1, 0);
  for (uint32_t i = 2; i <= limit; ++i) {
    if (spf[i] != 0) continue;
    for (uint64_t j = i; j <= limit; j += i)
      if (spf[j] == 0) spf[j] = i;
  }
  return spf;
}

std::vector<int8_t> mobius_table(uint32_t limit) {
  const std::vector<uint32_t> spf = smallest_prime_factor_table(limit);
  std::vector<int8_t> mu(limit + 1, 0);
  if (limit >= 1) mu[1] = 1;
  for (uint32_t n = 2; n <= limit; ++n) {
    const uint32_t p = spf[n];
    const uint32_t m = n / p;
    mu[n] = (m % p == 0) ? 0 : -mu[m];
  }
  return mu;
}

std::vector<std::pair<uint64_t, int>> factorize(uint64_t n) {
  if (n == 0) throw DomainError("factorize: n must be positive");
  std::vector<std::pair<uint64_t, int>> out;
  for (uint64_t p = 2; p * p <= n; p += (p == 2) ? 1 : 2) {
    if (n % p != 0) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

uint64_t divisor_count(uint64_t n) {
  uint64_t d = 1;
  for (const auto& [p, e] : factorize(n)) d *= static_cast<uint64_t>(e) + 1;
  return d;
}

int max_exponent(uint64_t p, uint64_t limit) {
  if (p < 2) throw DomainError("max_exponent: p must be at least 2");
  int e = 0;
  uint64_t v = 1;
  while (v <= limit / p) {
    v *= p;
    ++e;
  }
  return e;
}

}  // namespace symsieve
