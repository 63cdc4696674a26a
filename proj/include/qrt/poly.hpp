#pragma once

// Dense univariate polynomials over exact Number coefficients, plus the
// matrix determinant utility used for Hankel tests.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qrt/number.hpp"

namespace qrt::poly {

using num::Number;
using num::Tower;

// Coefficients in ascending order: c[0] + c[1] x + ... + c[n] x^n.
// The zero polynomial is represented by an empty coefficient vector and
// has degree() == -1.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Number> coeffs);
  explicit Poly(const Number& constant);

  static Poly monomial(const Number& coeff, std::size_t power);

  long degree() const { return static_cast<long>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Number>& coeffs() const { return c_; }
  // Coefficient of x^i (zero beyond the degree).
  Number coeff(std::size_t i) const;
  const Number& leading() const;

  Number eval(const Number& x) const;
  Poly derivative() const;

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly operator-() const;
  Poly operator*(const Number& s) const;
  bool operator==(const Poly& o) const;
  bool operator!=(const Poly& o) const { return !(*this == o); }

  // Quotient and remainder; divisor must be nonzero.
  std::pair<Poly, Poly> divmod(const Poly& d) const;
  Poly operator/(const Poly& d) const { return divmod(d).first; }
  Poly operator%(const Poly& d) const { return divmod(d).second; }

  // Leading coefficient scaled to 1 (zero polynomial stays zero).
  Poly monic() const;

  // Reverse of the coefficient sequence of x^n * p(1/x) for n = degree;
  // used to inspect behavior at infinity.
  Poly reversed(std::size_t n) const;

  std::string str(const std::string& var = "x") const;

 private:
  void trim();
  std::vector<Number> c_;
};

// Monic greatest common divisor (Euclidean algorithm over the field).
Poly gcd(const Poly& a, const Poly& b);

// Squarefree decomposition p = lc * prod f_i^i with each f_i monic and
// squarefree (Yun's algorithm; characteristic zero). Entry i of the result
// holds the factor of multiplicity i+1. Trailing entries may be constant 1.
std::vector<Poly> squarefree_decomposition(const Poly& p);

// Root multiplicity pattern of p viewed as a degree-`deg_as` form on the
// projective line: each finite root of multiplicity m contributes m, and a
// degree drop of k contributes a root of multiplicity k at infinity.
// Sorted descending, e.g. x^2(x-1) as a quartic -> {2, 1, 1}.
// Undefined (empty) for the zero polynomial.
std::vector<int> multiplicity_pattern(const Poly& p, std::size_t deg_as);

// Resultant of a and b via the Euclidean remainder sequence.
Number resultant(const Poly& a, const Poly& b);

// disc(p) = (-1)^{n(n-1)/2} resultant(p, p') / lc(p).
Number discriminant(const Poly& p);

// If p == s^2 or p == -s^2 for a polynomial s over the tower, returns s
// (chosen with nonnegative leading sign where possible) and whether the sign
// was +1 or -1. Extends the tower only through square roots of the leading
// ratio if required.
struct SquareDecomposition {
  Poly root;   // s
  int sign;    // +1 if p == s^2, -1 if p == -s^2
};
std::optional<SquareDecomposition> as_signed_square(const Poly& p, Tower& tower);

// Exact determinant of a square matrix of Numbers via Bareiss
// fraction-free elimination.
Number det(const std::vector<std::vector<Number>>& m);

}  // namespace qrt::poly
