#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace bslab {

// Exponents grow like n^k under normal-form rewriting, so all group-word
// exponents and exact coordinates are arbitrary precision.
using Int = mpz_class;
using Rational = mpq_class;

// Floor division: quotient rounded toward -inf, remainder in [0, |b|).
Int floor_div(const Int& a, const Int& b);
Int floor_mod(const Int& a, const Int& b);

Rational make_rational(const Int& num, const Int& den);
Rational rational_from_double(double v);  // exact binary expansion
Rational rational_pow(const Rational& base, long exp);

double to_double(const Int& v);
double to_double(const Rational& v);
long to_long(const Int& v);  // throws std::range_error when out of range

int sign(const Int& v);
int sign(const Rational& v);

std::string to_string(const Int& v);
std::string to_string(const Rational& v);  // "p/q", or "p" when q == 1

// Enumeration budget exceeded (ball radius, sweep size, expansion length).
class budget_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input text rejected; line is 1-based, 0 when not line-oriented.
class parse_error : public std::runtime_error {
 public:
  explicit parse_error(const std::string& what, int line = 0)
      : std::runtime_error(what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// Operands built over different (m, n) parameters.
class param_mismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace bslab
