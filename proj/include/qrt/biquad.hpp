#pragma once

// Biquadratic correspondences Q(x,y) = sum a_ij x^i y^j (0 <= i,j <= 2):
// coefficient polynomials, discriminant quartics, projective invariants
// (D, E, F, J), coordinate transforms, exact switches / QRT step with
// points at infinity, fiber solving, and a floating-point orbit engine.

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "qrt/number.hpp"
#include "qrt/poly.hpp"

namespace qrt::biquad {

using num::Number;
using num::Tower;
using poly::Poly;

using Mat3 = std::array<std::array<Number, 3>, 3>;
using Mat4 = std::array<std::array<Number, 4>, 4>;

// A projective coordinate on P^1: finite value v, or the point at infinity.
struct Coord {
  Number v;
  bool at_inf = false;

  static Coord of(const Number& x) { return Coord{x, false}; }
  static Coord inf() { return Coord{Number(0), true}; }
  bool operator==(const Coord& o) const {
    if (at_inf != o.at_inf) return false;
    return at_inf || v == o.v;
  }
};

struct PointQ {
  Coord x, y;
  bool operator==(const PointQ& o) const { return x == o.x && y == o.y; }
};

struct CurveInvariants {
  Number D, E, F;
  bool smooth = false;            // F != 0
  std::optional<Number> J;        // defined iff smooth
};

class Biquad {
 public:
  explicit Biquad(Mat3 coeffs);

  // Entry a_ij multiplying x^i y^j.
  const Number& a(int i, int j) const { return a_[i][j]; }
  const Mat3& coeffs() const { return a_; }
  bool is_zero() const;

  Number eval(const Number& x, const Number& y) const;

  // Q = ax(x) y^2 + bx(x) y + cx(x)  (quadratic in y),
  // Q = ay(y) x^2 + by(y) x + cy(y)  (quadratic in x).
  Poly ax() const;  // a22 x^2 + a12 x + a02
  Poly bx() const;  // a21 x^2 + a11 x + a01
  Poly cx() const;  // a20 x^2 + a10 x + a00
  Poly ay() const;  // a22 y^2 + a21 y + a20
  Poly by() const;  // a12 y^2 + a11 y + a10
  Poly cy() const;  // a02 y^2 + a01 y + a00

  // Discriminant quartics of the two fiber quadratics.
  Poly disc_x() const;  // bx^2 - 4 ax cx, a quartic in x
  Poly disc_y() const;  // by^2 - 4 ay cy, a quartic in y

  // Common Eisenstein invariants of the two quartics (checked equal), the
  // curve discriminant F = 256(D^3-27E^2) and J = D^3/(D^3-27E^2).
  CurveInvariants invariants() const;
  bool is_smooth() const { return invariants().smooth; }

  // Critical divisor multiplicity patterns (including infinity).
  std::vector<int> d1() const { return poly::multiplicity_pattern(disc_x(), 4); }
  std::vector<int> d2() const { return poly::multiplicity_pattern(disc_y(), 4); }

  // Distinguished point on the associated cubic.
  Number X() const;
  Number Y() const { return detM(); }

  // Order matrices.
  Mat3 M() const;                 // rows (a2j; a1j; a0j), columns j=2,1,0
  Number detM() const;
  Number cofactor(int r, int c) const;  // cofactor of M at 1-based (r,c)
  Mat4 Delta() const;
  Number detDelta() const;
  Mat3 Omega() const;
  Number detOmega() const;

  // Coordinate transforms (returning the transformed coefficient matrix).
  Biquad translate_x(const Number& t) const;  // Q(x+t, y)
  Biquad translate_y(const Number& t) const;
  Biquad scale_x(const Number& s) const;      // Q(s x, y), s != 0
  Biquad scale_y(const Number& s) const;
  Biquad invert_x() const;                    // x^2 Q(1/x, y)
  Biquad invert_y() const;
  Biquad swap_xy() const;                     // Q(y, x)
  Biquad scaled(const Number& s) const;       // s * Q

  // Exact switches. nullopt when the fiber through the point degenerates
  // (a line component) or the point is inconsistent with the fiber.
  std::optional<Coord> vertical_switch(const PointQ& p) const;    // new y
  std::optional<Coord> horizontal_switch(const PointQ& p) const;  // new x
  // QRT step: vertical switch first, then horizontal at the new y.
  std::optional<PointQ> qrt_step(const PointQ& p) const;
  // The inverse composition (horizontal first).
  std::optional<PointQ> qrt_step_inverse(const PointQ& p) const;

  bool contains(const PointQ& p) const;

  // Fiber over x: the projective roots in y, with multiplicity (size 2),
  // or empty when no real solutions exist. Throws std::domain_error when
  // the whole fiber lies on the curve (vertical line component).
  std::vector<Coord> solve_fiber_y(const Coord& x, Tower& tower) const;
  std::vector<Coord> solve_fiber_x(const Coord& y, Tower& tower) const;

 private:
  // Projective fiber quadratic alpha w^2 + beta w + gamma through the given
  // coordinate of the other variable.
  struct FiberQ { Number alpha, beta, gamma; };
  FiberQ y_fiber(const Coord& x) const;
  FiberQ x_fiber(const Coord& y) const;
  static std::optional<Coord> switch_on(const FiberQ& f, const Coord& w);
  static std::vector<Coord> roots_of(const FiberQ& f, Tower& tower);

  Mat3 a_;
};

// Eisenstein invariants (D, E) of a polynomial of degree <= 4 regarded as a
// quartic: with raw coefficients b4..b0, set a4=b4, a3=b3/4, a2=b2/6,
// a1=b1/4, a0=b0; then D = a0 a4 + 3 a2^2 - 4 a1 a3 and
// E = a0 a3^2 + a1^2 a4 - a0 a2 a4 - 2 a1 a2 a3 + a2^3.
std::pair<Number, Number> eisenstein_DE(const Poly& quartic);

// ---------------------------------------------------------------------------
// Floating-point layer (orbit closure checks).

struct FPoint {
  double x = 0, y = 0;  // may be +-infinity
};

// Chordal distance on the real projective line; finite for infinities.
double chordal(double u, double v);
double fpoint_dist(const FPoint& p, const FPoint& q);

class FloatBiquad {
 public:
  explicit FloatBiquad(const Biquad& q);
  explicit FloatBiquad(const std::array<std::array<double, 3>, 3>& a);

  double eval(double x, double y) const;
  FPoint qrt_step(const FPoint& p) const;
  FPoint qrt_step_inverse(const FPoint& p) const;

  // Both fiber solutions in y over x (NaN when complex).
  std::array<double, 2> fiber_y(double x) const;

 private:
  std::array<double, 2> switch_coeffs_y(double x) const;  // (alpha, beta) ...
  double a_[3][3];
  friend struct FloatSwitchAccess;
};

// Smallest 1 <= n <= max_steps with dist(P_n, P_0) < tol under repeated QRT
// steps; 0 when the orbit does not close. Optionally records the trajectory
// P_0..P_n.
int float_orbit_period(const FloatBiquad& q, const FPoint& start, int max_steps,
                       double tol, std::vector<FPoint>* trajectory = nullptr);

}  // namespace qrt::biquad
