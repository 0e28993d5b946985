#include "bslab/numeric.hpp"

#include <cmath>
#include <limits>

namespace bslab {

Int floor_div(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Int floor_mod(const Int& a, const Int& b) {
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

Rational make_rational(const Int& num, const Int& den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Rational rational_from_double(double v) {
  if (!std::isfinite(v)) throw std::invalid_argument("non-finite double");
  Rational q;
  mpq_set_d(q.get_mpq_t(), v);
  return q;
}

Rational rational_pow(const Rational& base, long exp) {
  if (base == 0 && exp < 0) throw std::invalid_argument("0 to negative power");
  const unsigned long e = exp < 0 ? static_cast<unsigned long>(-exp)
                                  : static_cast<unsigned long>(exp);
  Int num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), e);
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), e);
  return exp < 0 ? make_rational(den, num) : make_rational(num, den);
}

double to_double(const Int& v) { return v.get_d(); }

double to_double(const Rational& v) { return v.get_d(); }

long to_long(const Int& v) {
  if (!v.fits_slong_p()) throw std::range_error("integer too large for long");
  return v.get_si();
}

int sign(const Int& v) { return mpz_sgn(v.get_mpz_t()); }

int sign(const Rational& v) { return mpq_sgn(v.get_mpq_t()); }

std::string to_string(const Int& v) { return v.get_str(); }

std::string to_string(const Rational& v) {
  if (v.get_den() == 1) return v.get_num().get_str();
  return v.get_num().get_str() + "/" + v.get_den().get_str();
}

}  // namespace bslab
