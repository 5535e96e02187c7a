#include "zc1/numtheory.hpp"

#include <algorithm>

namespace zc1 {

long euler_phi(long n) {
  long r = 1;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      long pk = 1;
      while (n % p == 0) {
        n /= p;
        pk *= p;
      }
      r *= pk / p * (p - 1);
    }
  }
  if (n > 1) r *= n - 1;
  return r;
}

int mobius(long n) {
  int r = 1;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      n /= p;
      if (n % p == 0) return 0;
      r = -r;
    }
  }
  if (n > 1) r = -r;
  return r;
}

std::vector<long> divisors(long n) {
  std::vector<long> ds;
  for (long d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      ds.push_back(d);
      if (d != n / d) ds.push_back(n / d);
    }
  }
  std::sort(ds.begin(), ds.end());
  return ds;
}

std::vector<long> prime_factors(long n) {
  std::vector<long> ps;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      ps.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) ps.push_back(n);
  return ps;
}

}  // namespace zc1
