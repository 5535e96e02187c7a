#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

namespace zc1 {

long euler_phi(long n);
int mobius(long n);
std::vector<long> divisors(long n);
std::vector<long> prime_factors(long n);  // distinct primes, ascending

inline long lcm_long(long a, long b) { return a / std::gcd(a, b) * b; }

}  // namespace zc1
