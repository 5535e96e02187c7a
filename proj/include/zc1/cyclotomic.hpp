#pragma once

#include <optional>
#include <string>
#include <vector>

#include "zc1/rational.hpp"

namespace zc1 {

// An exact element of a cyclotomic field Q(zeta_n), stored at its minimal
// conductor (1 for rationals; never 2 mod 4) as the coefficient vector of the
// canonical remainder modulo the n-th cyclotomic polynomial. Two equal field
// elements always have identical stored form. Immutable after construction.
class Cyclotomic {
 public:
  Cyclotomic() : n_(1), c_{Rational(0)} {}
  /* implicit */ Cyclotomic(const Rational& q) : n_(1), c_{q} {}
  /* implicit */ Cyclotomic(long v) : n_(1), c_{Rational(v)} {}

  // zeta_n^k, canonicalized. n >= 1.
  static Cyclotomic root_of_unity(long n, long k);

  long conductor() const { return n_; }
  const std::vector<Rational>& coeffs() const { return c_; }

  bool is_zero() const;
  bool is_rational() const { return n_ == 1; }
  std::optional<Rational> to_rational() const;

  Cyclotomic operator-() const;
  friend Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b);
  friend Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b);
  friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b);
  Cyclotomic scale(const Rational& q) const;

  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
    return a.n_ == b.n_ && a.c_ == b.c_;
  }
  friend bool operator!=(const Cyclotomic& a, const Cyclotomic& b) { return !(a == b); }
  bool less(const Cyclotomic& o) const;  // deterministic total order

  // sigma_k: zeta_n -> zeta_n^k. Requires gcd(k, conductor) = 1.
  Cyclotomic galois(long k) const;
  bool galois_defined(long k) const;
  Cyclotomic conj() const { return galois(n_ > 1 ? n_ - 1 : 1); }

  // Absolute trace to Q over the minimal conductor field.
  Rational trace_to_q() const;
  // Trace relative to an ambient field Q(zeta_m), defined for every element
  // by the scaling identity  phi(m)/phi(cond(x)) * trace_to_q(x).
  Rational trace_in_field(long m) const;

  // True iff x lies in Q(zeta_m), i.e. cond(x) | m (with the 2 mod 4 fold).
  bool in_field(long m) const;

  // Coefficient vector over the power basis of Q(zeta_N); requires
  // conductor | N after folding. Length phi(N).
  std::vector<Rational> lift_to(long N) const;

  std::string str() const;

 private:
  Cyclotomic(long n, std::vector<Rational> c) : n_(n), c_(std::move(c)) {}
  static Cyclotomic make_canonical(long n, std::vector<Rational> c);
  long n_;
  std::vector<Rational> c_;
};

std::ostream& operator<<(std::ostream& os, const Cyclotomic& x);

}  // namespace zc1
