#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace symsieve {

// Primes p <= limit in increasing order (Eratosthenes).
std::vector<uint64_t> sieve_primes(uint64_t limit);

// Primes in [lo, hi] in increasing order.  Segmented so hi may be large
// (up to 1e8) while memory stays O(sqrt(hi) + hi - lo).
std::vector<uint64_t> primes_in_range(uint64_t lo, uint64_t hi);

// spf[n] = smallest prime factor of n for 2 <= n <= limit; spf[0] = spf[1] = 0.
std::vector<uint32_t> smallest_prime_factor_table(uint32_t limit);

// mu[n] = Moebius function for n <= limit; mu[0] = 0.
std::vector<int8_t> mobius_table(uint32_t limit);

// Prime factorisation of n as (p, e) pairs, p increasing.  Trial division;
// fine for the n <= 1e12 range used here.
std::vector<std::pair<uint64_t, int>> factorize(uint64_t n);

// Number of divisors of n from its factorisation.
uint64_t divisor_count(uint64_t n);

// Largest e with p^e <= limit (e >= 0).
int max_exponent(uint64_t p, uint64_t limit);

}  // namespace symsieve
