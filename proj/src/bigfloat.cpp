#include "qrt/bigfloat.hpp"

#include <cmath>
#include <stdexcept>

namespace qrt::num {

mpfr_prec_t BigFloat::bits_for_digits(int digits) {
  if (digits < 2) digits = 2;
  return static_cast<mpfr_prec_t>(std::ceil(digits * 3.321928094887362)) + 64;
}

BigFloat::BigFloat(int digits) : digits_(digits) {
  mpfr_init2(v_, bits_for_digits(digits));
  mpfr_set_zero(v_, 1);
}

BigFloat::BigFloat(const BigFloat& o) : digits_(o.digits_) {
  mpfr_init2(v_, mpfr_get_prec(o.v_));
  mpfr_set(v_, o.v_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& o) noexcept : digits_(o.digits_) {
  mpfr_init2(v_, mpfr_get_prec(o.v_));
  mpfr_swap(v_, o.v_);
}

BigFloat& BigFloat::operator=(const BigFloat& o) {
  if (this != &o) {
    mpfr_set_prec(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
    digits_ = o.digits_;
  }
  return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& o) noexcept {
  if (this != &o) {
    mpfr_swap(v_, o.v_);
    digits_ = o.digits_;
  }
  return *this;
}

BigFloat::~BigFloat() { mpfr_clear(v_); }

BigFloat BigFloat::from_rational(const mpq_class& q, int digits) {
  BigFloat r(digits);
  mpfr_set_q(r.v_, q.get_mpq_t(), MPFR_RNDN);
  return r;
}

BigFloat BigFloat::from_number(const Number& x, int digits) {
  if (x.is_rational()) return from_rational(x.as_rational(), digits);
  BigFloat lo = from_number(x.lo(), digits);
  BigFloat hi = from_number(x.hi(), digits);
  BigFloat rad = from_number(*x.level()->radicand, digits);
  return lo + hi * rad.sqrt();
}

BigFloat BigFloat::from_double(double d, int digits) {
  BigFloat r(digits);
  mpfr_set_d(r.v_, d, MPFR_RNDN);
  return r;
}

BigFloat BigFloat::pi(int digits) {
  BigFloat r(digits);
  mpfr_const_pi(r.v_, MPFR_RNDN);
  return r;
}

namespace {
int out_digits(const BigFloat& a, const BigFloat& b) {
  return a.digits() > b.digits() ? a.digits() : b.digits();
}
}  // namespace

#define QRT_BF_BINOP(op, fn)                                   \
  BigFloat BigFloat::operator op(const BigFloat& o) const {    \
    BigFloat r(out_digits(*this, o));                          \
    fn(r.raw(), v_, o.v_, MPFR_RNDN);                          \
    return r;                                                  \
  }

QRT_BF_BINOP(+, mpfr_add)
QRT_BF_BINOP(-, mpfr_sub)
QRT_BF_BINOP(*, mpfr_mul)
QRT_BF_BINOP(/, mpfr_div)
#undef QRT_BF_BINOP

BigFloat BigFloat::operator-() const {
  BigFloat r(digits_);
  mpfr_neg(r.v_, v_, MPFR_RNDN);
  return r;
}

BigFloat BigFloat::sqrt() const {
  BigFloat r(digits_);
  mpfr_sqrt(r.v_, v_, MPFR_RNDN);
  return r;
}

BigFloat BigFloat::abs() const {
  BigFloat r(digits_);
  mpfr_abs(r.v_, v_, MPFR_RNDN);
  return r;
}

BigFloat BigFloat::acos() const {
  BigFloat r(digits_);
  mpfr_acos(r.v_, v_, MPFR_RNDN);
  return r;
}

BigFloat BigFloat::cos() const {
  BigFloat r(digits_);
  mpfr_cos(r.v_, v_, MPFR_RNDN);
  return r;
}

int BigFloat::cmp(const BigFloat& o) const { return mpfr_cmp(v_, o.v_); }

bool BigFloat::is_nan() const { return mpfr_nan_p(v_) != 0; }
bool BigFloat::is_inf() const { return mpfr_inf_p(v_) != 0; }
bool BigFloat::is_zero() const { return mpfr_zero_p(v_) != 0; }
int BigFloat::sign() const { return mpfr_sgn(v_); }

double BigFloat::to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

mpq_class BigFloat::to_rational() const {
  if (is_nan() || is_inf()) throw std::domain_error("non-finite float");
  if (is_zero()) return mpq_class(0);
  mpz_class mant;
  mpfr_exp_t e = mpfr_get_z_2exp(mant.get_mpz_t(), v_);
  mpq_class q(mant);
  if (e >= 0) {
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(e));
    q *= mpq_class(p);
  } else {
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(-e));
    q /= mpq_class(p);
  }
  q.canonicalize();
  return q;
}

std::string BigFloat::str(int out_digits) const {
  char* s = nullptr;
  if (mpfr_asprintf(&s, "%.*Rg", out_digits, v_) < 0)
    throw std::runtime_error("mpfr_asprintf failed");
  std::string rv(s);
  mpfr_free_str(s);
  return rv;
}

bool rational_approx(const BigFloat& x, unsigned long max_den, mpq_class* out) {
  if (x.is_nan() || x.is_inf()) return false;
  mpq_class target = x.to_rational();
  // Continued-fraction expansion with convergents capped at max_den.
  mpz_class p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  mpq_class rem = target;
  for (int it = 0; it < 512; ++it) {
    mpz_class a;
    mpz_fdiv_q(a.get_mpz_t(), rem.get_num().get_mpz_t(), rem.get_den().get_mpz_t());
    mpz_class p2 = a * p1 + p0;
    mpz_class q2 = a * q1 + q0;
    if (q2 > static_cast<long>(max_den)) {
      // Best semiconvergent within the bound.
      if (q1 == 0) return false;
      mpz_class k = (mpz_class(static_cast<long>(max_den)) - q0) / q1;
      mpz_class ps = k * p1 + p0, qs = k * q1 + q0;
      mpq_class conv(p1, q1), semi(ps, qs);
      conv.canonicalize();
      if (qs > 0) {
        semi.canonicalize();
        mpq_class d1 = ::abs(target - conv), d2 = ::abs(target - semi);
        *out = (q1 <= static_cast<long>(max_den) && d1 <= d2) ? conv : semi;
      } else {
        *out = conv;
      }
      return true;
    }
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    mpq_class frac = rem - mpq_class(a);
    if (frac == 0) break;
    rem = 1 / frac;
  }
  *out = mpq_class(p1, q1);
  out->canonicalize();
  return true;
}

}  // namespace qrt::num
