#pragma once

// Thin arbitrary-precision float wrapper over MPFR, used for the numeric
// verification routes (orbit closure, angle recognition). Precision is
// requested in decimal digits and mapped to bits with guard room.

#include <mpfr.h>

#include <gmpxx.h>

#include <string>

#include "qrt/number.hpp"

namespace qrt::num {

class BigFloat {
 public:
  static mpfr_prec_t bits_for_digits(int digits);

  explicit BigFloat(int digits = 50);
  BigFloat(const BigFloat& o);
  BigFloat(BigFloat&& o) noexcept;
  BigFloat& operator=(const BigFloat& o);
  BigFloat& operator=(BigFloat&& o) noexcept;
  ~BigFloat();

  static BigFloat from_rational(const mpq_class& q, int digits);
  static BigFloat from_number(const Number& x, int digits);
  static BigFloat from_double(double d, int digits);
  static BigFloat pi(int digits);

  int digits() const { return digits_; }

  BigFloat operator+(const BigFloat& o) const;
  BigFloat operator-(const BigFloat& o) const;
  BigFloat operator*(const BigFloat& o) const;
  BigFloat operator/(const BigFloat& o) const;
  BigFloat operator-() const;

  BigFloat sqrt() const;
  BigFloat abs() const;
  BigFloat acos() const;
  BigFloat cos() const;

  int cmp(const BigFloat& o) const;
  bool operator<(const BigFloat& o) const { return cmp(o) < 0; }
  bool operator>(const BigFloat& o) const { return cmp(o) > 0; }
  bool operator<=(const BigFloat& o) const { return cmp(o) <= 0; }
  bool operator>=(const BigFloat& o) const { return cmp(o) >= 0; }

  bool is_nan() const;
  bool is_inf() const;
  bool is_zero() const;
  int sign() const;

  double to_double() const;
  // Exact value as a rational (every finite MPFR value is dyadic).
  mpq_class to_rational() const;
  std::string str(int out_digits = 20) const;

  const mpfr_t& raw() const { return v_; }
  mpfr_t& raw() { return v_; }

 private:
  mpfr_t v_;
  int digits_;
};

// Best rational approximation m/n of x with 1 <= n <= max_den (continued
// fractions). Returns false for non-finite x.
bool rational_approx(const BigFloat& x, unsigned long max_den, mpq_class* out);

}  // namespace qrt::num
