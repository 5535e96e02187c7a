#include "zc1/cyclotomic.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <ostream>
#include <sstream>

#include "zc1/numtheory.hpp"

namespace zc1 {
namespace {

std::mutex g_cache_mutex;

// Integer coefficients of the n-th cyclotomic polynomial, ascending degree.
const std::vector<mpz_class>& cyclotomic_poly(long n) {
  static std::map<long, std::vector<mpz_class>> cache;
  std::lock_guard<std::mutex> lock(g_cache_mutex);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  auto polymul = [](const std::vector<mpz_class>& a, const std::vector<mpz_class>& b) {
    std::vector<mpz_class> r(a.size() + b.size() - 1, mpz_class(0));
    for (size_t i = 0; i < a.size(); ++i)
      if (a[i] != 0)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
  };
  std::vector<mpz_class> num{1}, den{1};
  for (long d : divisors(n)) {
    int mu = mobius(n / d);
    if (mu == 0) continue;
    std::vector<mpz_class> f(d + 1, mpz_class(0));
    f[0] = -1;
    f[d] = 1;
    (mu == 1 ? num : den) = polymul(mu == 1 ? num : den, f);
  }
  std::vector<mpz_class> q(num.size() - den.size() + 1, mpz_class(0));
  std::vector<mpz_class> rem = num;
  for (long i = static_cast<long>(q.size()) - 1; i >= 0; --i) {
    mpz_class c = rem[i + den.size() - 1] / den.back();
    q[i] = c;
    if (c != 0)
      for (size_t j = 0; j < den.size(); ++j) rem[i + j] -= c * den[j];
  }
  return cache.emplace(n, std::move(q)).first->second;
}

// Remainder of the coefficient vector modulo Phi_n; result has length phi(n).
std::vector<Rational> reduce_mod_phi(long n, std::vector<Rational> co) {
  const auto& f = cyclotomic_poly(n);
  size_t d = f.size() - 1;
  for (size_t i = co.size(); i-- > d;) {
    Rational c = co[i];
    if (!c.is_zero()) {
      co[i] = Rational(0);
      for (size_t j = 0; j < d; ++j) co[i - d + j] -= c * Rational(f[j]);
    }
  }
  co.resize(d, Rational(0));
  return co;
}

struct DescendSolver {
  std::vector<int> pivots;                       // pivot columns (size r)
  std::vector<std::vector<Rational>> transform;  // dn x dn RREF transform
  int rank;
};

// Solver for rewriting an element of Q(zeta_n) over the power basis of the
// subfield Q(zeta_m), m | n. Cached per (n, m).
const DescendSolver& descend_solver(long n, long m) {
  static std::map<std::pair<long, long>, DescendSolver> cache;
  std::lock_guard<std::mutex> lock(g_cache_mutex);
  auto key = std::make_pair(n, m);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  long step = n / m;
  long dm = euler_phi(m), dn = euler_phi(n);
  std::vector<std::vector<Rational>> cols;
  for (long j = 0; j < dm; ++j) {
    std::vector<Rational> col(step * j + 1, Rational(0));
    col[step * j] = Rational(1);
    cols.push_back(reduce_mod_phi(n, std::move(col)));
  }
  // A = [M | I], reduce to RREF
  std::vector<std::vector<Rational>> A(dn, std::vector<Rational>(dm + dn, Rational(0)));
  for (long i = 0; i < dn; ++i) {
    for (long j = 0; j < dm; ++j) A[i][j] = cols[j][i];
    A[i][dm + i] = Rational(1);
  }
  DescendSolver s;
  int r = 0;
  for (long col = 0; col < dm; ++col) {
    int sel = -1;
    for (long i = r; i < dn; ++i)
      if (!A[i][col].is_zero()) {
        sel = static_cast<int>(i);
        break;
      }
    if (sel < 0) continue;
    std::swap(A[r], A[sel]);
    Rational pv = A[r][col];
    for (auto& v : A[r]) v /= pv;
    for (long i = 0; i < dn; ++i) {
      if (i != r && !A[i][col].is_zero()) {
        Rational f = A[i][col];
        for (long j = 0; j < dm + dn; ++j) A[i][j] -= f * A[r][j];
      }
    }
    s.pivots.push_back(static_cast<int>(col));
    ++r;
  }
  s.rank = r;
  s.transform.assign(dn, std::vector<Rational>(dn));
  for (long i = 0; i < dn; ++i)
    for (long j = 0; j < dn; ++j) s.transform[i][j] = A[i][dm + j];
  return cache.emplace(key, std::move(s)).first->second;
}

long fold_conductor(long n) { return (n % 4 == 2) ? n / 2 : n; }

}  // namespace

Cyclotomic Cyclotomic::make_canonical(long n, std::vector<Rational> c) {
  c = reduce_mod_phi(n, std::move(c));
  Cyclotomic x(n, std::move(c));
  bool changed = true;
  while (changed && x.n_ > 1) {
    changed = false;
    for (long p : prime_factors(x.n_)) {
      long target = fold_conductor(x.n_ / p);
      const auto& s = descend_solver(x.n_, target);
      long dn = euler_phi(x.n_), dm = euler_phi(target);
      std::vector<Rational> tv(dn, Rational(0));
      bool feasible = true;
      for (long i = 0; i < dn && feasible; ++i) {
        Rational acc(0);
        for (long k = 0; k < dn; ++k)
          if (!x.c_[k].is_zero()) acc += s.transform[i][k] * x.c_[k];
        if (i >= s.rank && !acc.is_zero()) feasible = false;
        tv[i] = acc;
      }
      if (!feasible) continue;
      std::vector<Rational> sol(dm, Rational(0));
      for (int i = 0; i < s.rank; ++i) sol[s.pivots[i]] = tv[i];
      x = Cyclotomic(target, std::move(sol));
      changed = true;
      break;
    }
  }
  return x;
}

Cyclotomic Cyclotomic::root_of_unity(long n, long k) {
  if (n < 1) throw error(errc::invalid_argument, "root_of_unity: order must be positive");
  k %= n;
  if (k < 0) k += n;
  long g = std::gcd(n, k);
  long n2 = n / g, k2 = k / g;
  bool negate = false;
  if (n2 % 4 == 2) {
    // zeta_{2u}^k = (-1)^k * zeta_u^{k (u+1)/2} for odd u
    long u = n2 / 2;
    negate = (k2 % 2) != 0;
    k2 = (k2 % u) * ((u + 1) / 2) % u;
    n2 = u;
  }
  if (n2 == 1) {
    return negate ? Cyclotomic(Rational(-1)) : Cyclotomic(Rational(1));
  }
  long d = euler_phi(n2);
  std::vector<Rational> co;
  if (k2 < d) {
    co.assign(d, Rational(0));
    co[k2] = Rational(negate ? -1 : 1);
    return Cyclotomic(n2, std::move(co));  // already reduced; n2 minimal for a primitive root
  }
  co.assign(k2 + 1, Rational(0));
  co[k2] = Rational(negate ? -1 : 1);
  return make_canonical(n2, std::move(co));
}

bool Cyclotomic::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const Rational& r) { return r.is_zero(); });
}

std::optional<Rational> Cyclotomic::to_rational() const {
  if (n_ == 1) return c_[0];
  return std::nullopt;
}

Cyclotomic Cyclotomic::operator-() const {
  std::vector<Rational> co(c_);
  for (auto& v : co) v = -v;
  return Cyclotomic(n_, std::move(co));
}

Cyclotomic Cyclotomic::scale(const Rational& q) const {
  if (q.is_zero()) return Cyclotomic();
  std::vector<Rational> co(c_);
  for (auto& v : co) v *= q;
  return Cyclotomic(n_, std::move(co));
}

std::vector<Rational> Cyclotomic::lift_to(long N) const {
  if (N % n_ != 0)
    throw error(errc::internal, "lift_to: conductor does not divide ambient");
  if (N == n_) return c_;
  long step = N / n_;
  std::vector<Rational> co(step * (c_.size() - 1) + 1, Rational(0));
  for (size_t i = 0; i < c_.size(); ++i)
    if (!c_[i].is_zero()) co[step * i] = c_[i];
  if (N == 1) return co;
  return reduce_mod_phi(N, std::move(co));
}

Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b) {
  long L = lcm_long(a.n_, b.n_);
  auto ca = a.lift_to(L);
  auto cb = b.lift_to(L);
  for (size_t i = 0; i < ca.size(); ++i) ca[i] += cb[i];
  return Cyclotomic::make_canonical(L, std::move(ca));
}

Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b) { return a + (-b); }

Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
  if (a.is_rational()) return b.scale(a.c_[0]);
  if (b.is_rational()) return a.scale(b.c_[0]);
  long L = lcm_long(a.n_, b.n_);
  auto ca = a.lift_to(L);
  auto cb = b.lift_to(L);
  std::vector<Rational> r(ca.size() + cb.size() - 1, Rational(0));
  for (size_t i = 0; i < ca.size(); ++i)
    if (!ca[i].is_zero())
      for (size_t j = 0; j < cb.size(); ++j)
        if (!cb[j].is_zero()) r[i + j] += ca[i] * cb[j];
  return Cyclotomic::make_canonical(L, std::move(r));
}

bool Cyclotomic::less(const Cyclotomic& o) const {
  if (n_ != o.n_) return n_ < o.n_;
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] != o.c_[i]) return c_[i] < o.c_[i];
  }
  return false;
}

bool Cyclotomic::galois_defined(long k) const {
  if (n_ == 1) return true;
  k %= n_;
  if (k < 0) k += n_;
  return std::gcd(k, n_) == 1;
}

Cyclotomic Cyclotomic::galois(long k) const {
  if (n_ == 1) return *this;
  k %= n_;
  if (k < 0) k += n_;
  if (std::gcd(k, n_) != 1)
    throw error(errc::invalid_argument,
                "galois_apply: exponent " + std::to_string(k) + " not coprime to conductor " +
                    std::to_string(n_));
  // sigma_k permutes the power basis up to reduction
  std::vector<Rational> co(n_, Rational(0));
  for (size_t i = 0; i < c_.size(); ++i)
    if (!c_[i].is_zero()) co[(i * k) % n_] += c_[i];
  return make_canonical(n_, std::move(co));
}

Rational Cyclotomic::trace_to_q() const {
  if (n_ == 1) return c_[0];
  Rational tot(0);
  long ph = euler_phi(n_);
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    long d = n_ / std::gcd(n_, static_cast<long>(i));
    int mu = mobius(d);
    if (mu != 0) tot += c_[i] * Rational(mu * (ph / euler_phi(d)));
  }
  return tot;
}

Rational Cyclotomic::trace_in_field(long m) const {
  if (m < 1) throw error(errc::invalid_argument, "trace_in_field: bad ambient");
  return Rational(euler_phi(m), euler_phi(n_)) * trace_to_q();
}

bool Cyclotomic::in_field(long m) const { return m % n_ == 0 || fold_conductor(m) % n_ == 0; }

std::string Cyclotomic::str() const {
  if (n_ == 1) return c_[0].str();
  std::ostringstream os;
  bool first = true;
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    if (!first) os << " + ";
    os << c_[i].str();
    if (i > 0) os << "*z" << n_ << "^" << i;
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Cyclotomic& x) { return os << x.str(); }

}  // namespace zc1
