#include "zc1/rational.hpp"

#include <ostream>

namespace zc1 {

Rational Rational::parse(const std::string& s) {
  auto bad = [&] { return error(errc::parse, "malformed rational '" + s + "'"); };
  if (s.empty()) throw bad();
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) {
      return Rational(mpz_class(s));
    }
    mpz_class n(s.substr(0, slash));
    mpz_class d(s.substr(slash + 1));
    if (d == 0) throw bad();
    return Rational(n, d);
  } catch (const std::invalid_argument&) {
    throw bad();
  }
}

bool Rational::fits_long() const {
  return is_integer() && q_.get_num().fits_slong_p();
}

long Rational::to_long() const {
  if (!fits_long()) throw error(errc::internal, "rational does not fit a long: " + str());
  return q_.get_num().get_si();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw error(errc::invalid_argument, "division by zero");
  q_ /= o.q_;
  return *this;
}

mpz_class Rational::floor() const {
  mpz_class r;
  mpz_fdiv_q(r.get_mpz_t(), q_.get_num().get_mpz_t(), q_.get_den().get_mpz_t());
  return r;
}

mpz_class Rational::ceil() const {
  mpz_class r;
  mpz_cdiv_q(r.get_mpz_t(), q_.get_num().get_mpz_t(), q_.get_den().get_mpz_t());
  return r;
}

std::string Rational::str() const {
  if (is_integer()) return q_.get_num().get_str();
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace zc1
