#pragma once

// The Weierstrass cubic associated with a smooth biquadratic, the
// distinguished point (X, Y), the Taylor coefficients C_n, the Hankel
// finite-order conditions, a chord-tangent group-law oracle, and the
// rational map onto the cubic.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qrt/biquad.hpp"
#include "qrt/number.hpp"

namespace qrt::cubic {

using biquad::Biquad;
using num::Number;

class singular_curve_error : public std::domain_error {
 public:
  singular_curve_error()
      : std::domain_error("curve is singular (F = 0); use the singular-case pipeline") {}
};

// y^2 = 4x^3 - D x + E with the distinguished point (X, Y), Y = det(a_ij).
struct CubicModel {
  Number D, E;            // g2 = D, g3 = -E
  Number X, Y;
  std::vector<Number> C;  // C_0..C_N of sqrt(4x^3 - Dx + E) about x = X;
                          // empty when Y = 0 (two-torsion point)
  bool two_torsion() const { return Y.is_zero(); }
};

// Taylor coefficients C_0..C_{count-1}: C_0 = Y and
// 2 C_0 C_n = f_n - sum_{k=1}^{n-1} C_k C_{n-k},
// f_1 = 12X^2 - D, f_2 = 12X, f_3 = 4, f_{>=4} = 0. Requires Y != 0.
std::vector<Number> taylor_coefficients(const Number& D, const Number& E,
                                        const Number& X, const Number& Y,
                                        int count);

// Closed forms of C_k (k = 2..5) as rational expressions in D, E, X and
// (4X^3 - DX + E)^{1/2} = Y; independent cross-check of the recursion.
Number closed_form_C(int k, const Number& D, const Number& E, const Number& X,
                     const Number& Y);

// Model with taylor_terms coefficients (none when Y = 0).
// Throws singular_curve_error when F = 0.
CubicModel cubic_model(const Biquad& q, int taylor_terms);

// True iff the QRT order divides n (n >= 2):
//   n = 2        <-> Y = det(a_ij) = 0;
//   n = 2k+1     <-> det of the k x k Hankel with entry(r,c) = C_{r+c+2};
//   n = 2k, k>=2 <-> det of the (k-1) x (k-1) Hankel, entry(r,c) = C_{r+c+3}.
// Throws std::length_error when the stored series is too short.
bool cayley_condition(const CubicModel& m, int n);

struct OrderVerdict {
  int qrt_order = 0;    // 0 = no order found up to the bound
  int group_order = 0;  // 2 * qrt_order when finite
  std::string certificate;
  std::optional<int> oracle_order;  // group-law oracle result when requested
  bool oracle_agreement = true;
};

// Minimal n <= n_max with cayley_condition true; optional group-law oracle
// cross-check. Throws singular_curve_error for singular input.
OrderVerdict qrt_order(const Biquad& q, int n_max, bool run_oracle = true);

// --- independent chord-tangent oracle on y^2 = 4x^3 - Dx + E ---

struct GroupPoint {
  bool infinity = true;
  Number xi, eta;

  static GroupPoint at_infinity() { return GroupPoint{}; }
  static GroupPoint affine(const Number& x, const Number& y) {
    return GroupPoint{false, x, y};
  }
};

bool gp_on_curve(const CubicModel& m, const GroupPoint& p);
GroupPoint gp_negate(const GroupPoint& p);
GroupPoint gp_add(const CubicModel& m, const GroupPoint& p, const GroupPoint& q);

// Minimal 1 <= n <= n_max with n * (X, Y) = infinity; 0 when none.
int group_law_order(const CubicModel& m, int n_max);

// Rational map onto the cubic for a curve with a_00 = 0: returns (P, P')
// with P'^2 = 4P^3 - D P + E at every curve point with x y != 0.
// Throws std::invalid_argument when a_00 != 0, std::domain_error when xy = 0.
std::pair<Number, Number> map_to_cubic(const Biquad& q, const Number& x,
                                       const Number& y);

}  // namespace qrt::cubic
