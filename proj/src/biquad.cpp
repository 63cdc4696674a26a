#include "qrt/biquad.hpp"

#include <cmath>
#include <stdexcept>

namespace qrt::biquad {

namespace {

std::vector<std::vector<Number>> to_rows3(const Mat3& m) {
  std::vector<std::vector<Number>> r(3, std::vector<Number>(3));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r[i][j] = m[i][j];
  return r;
}

std::vector<std::vector<Number>> to_rows4(const Mat4& m) {
  std::vector<std::vector<Number>> r(4, std::vector<Number>(4));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r[i][j] = m[i][j];
  return r;
}

}  // namespace

Biquad::Biquad(Mat3 coeffs) : a_(std::move(coeffs)) {
  if (is_zero()) throw std::invalid_argument("biquadratic is identically zero");
}

bool Biquad::is_zero() const {
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (!a_[i][j].is_zero()) return false;
  return true;
}

Number Biquad::eval(const Number& x, const Number& y) const {
  Number acc(0);
  for (int i = 2; i >= 0; --i) {
    Number row(0);
    for (int j = 2; j >= 0; --j) row = row * y + a_[i][j];
    acc = acc * x + row;
  }
  return acc;
}

Poly Biquad::ax() const { return Poly({a_[0][2], a_[1][2], a_[2][2]}); }
Poly Biquad::bx() const { return Poly({a_[0][1], a_[1][1], a_[2][1]}); }
Poly Biquad::cx() const { return Poly({a_[0][0], a_[1][0], a_[2][0]}); }
Poly Biquad::ay() const { return Poly({a_[2][0], a_[2][1], a_[2][2]}); }
Poly Biquad::by() const { return Poly({a_[1][0], a_[1][1], a_[1][2]}); }
Poly Biquad::cy() const { return Poly({a_[0][0], a_[0][1], a_[0][2]}); }

Poly Biquad::disc_x() const {
  return bx() * bx() - ax() * cx() * Number(4);
}

Poly Biquad::disc_y() const {
  return by() * by() - ay() * cy() * Number(4);
}

std::pair<Number, Number> eisenstein_DE(const Poly& quartic) {
  if (quartic.degree() > 4)
    throw std::invalid_argument("eisenstein_DE expects degree <= 4");
  Number a4 = quartic.coeff(4);
  Number a3 = quartic.coeff(3) / Number(4);
  Number a2 = quartic.coeff(2) / Number(6);
  Number a1 = quartic.coeff(1) / Number(4);
  Number a0 = quartic.coeff(0);
  Number D = a0 * a4 + Number(3) * a2 * a2 - Number(4) * a1 * a3;
  Number E = a0 * a3 * a3 + a1 * a1 * a4 - a0 * a2 * a4 -
             Number(2) * a1 * a2 * a3 + a2 * a2 * a2;
  return {D, E};
}

CurveInvariants Biquad::invariants() const {
  auto [Dx, Ex] = eisenstein_DE(disc_x());
  auto [Dy, Ey] = eisenstein_DE(disc_y());
  if (Dx != Dy || Ex != Ey)
    throw std::logic_error("invariant mismatch between discriminant quartics");
  CurveInvariants inv;
  inv.D = Dx;
  inv.E = Ex;
  Number disc = inv.D * inv.D * inv.D - Number(27) * inv.E * inv.E;
  inv.F = Number(256) * disc;
  inv.smooth = !inv.F.is_zero();
  if (inv.smooth) inv.J = inv.D * inv.D * inv.D / disc;
  return inv;
}

Number Biquad::X() const {
  return (a_[1][1] * a_[1][1] - Number(4) * a_[1][2] * a_[1][0] -
          Number(4) * a_[2][1] * a_[0][1] + Number(8) * a_[0][2] * a_[2][0] +
          Number(8) * a_[2][2] * a_[0][0]) /
         Number(12);
}

Mat3 Biquad::M() const {
  Mat3 m;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) m[r][c] = a_[2 - r][2 - c];
  return m;
}

Number Biquad::detM() const { return poly::det(to_rows3(M())); }

Number Biquad::cofactor(int r, int c) const {
  Mat3 m = M();
  int r0 = -1, r1 = -1, c0 = -1, c1 = -1;
  for (int i = 0; i < 3; ++i) {
    if (i != r - 1) (r0 < 0 ? r0 : r1) = i;
    if (i != c - 1) (c0 < 0 ? c0 : c1) = i;
  }
  Number minor = m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0];
  return ((r + c) % 2 == 0) ? minor : -minor;
}

Mat4 Biquad::Delta() const {
  Number d[4][4];
  for (int r = 1; r <= 3; ++r)
    for (int c = 1; c <= 3; ++c) d[r][c] = cofactor(r, c);
  Mat4 m;
  m[0] = {d[1][1], d[2][1], d[1][2], d[2][2]};
  m[1] = {d[1][2], d[2][2], d[1][3], d[2][3]};
  m[2] = {d[2][1], d[3][1], d[2][2], d[3][2]};
  m[3] = {d[2][2], d[3][2], d[2][3], d[3][3]};
  return m;
}

Number Biquad::detDelta() const { return poly::det(to_rows4(Delta())); }

Mat3 Biquad::Omega() const {
  Number d[4][4];
  for (int r = 1; r <= 3; ++r)
    for (int c = 1; c <= 3; ++c) d[r][c] = cofactor(r, c);
  Number M1 = -d[2][1] * d[3][3] + Number(2) * d[2][2] * d[3][2] - d[2][3] * d[3][1];
  Number M2 = d[1][1] * d[3][3] -
              Number(2) * (d[1][2] * d[3][2] - d[2][1] * d[2][3] + d[2][2] * d[2][2]) +
              d[1][3] * d[3][1];
  Number M3 = -d[1][1] * d[2][3] + Number(2) * d[1][2] * d[2][2] - d[1][3] * d[2][1];
  Mat3 m;
  m[0] = {M1, M2, M3};
  m[1] = {d[3][2] * d[3][2] - d[3][1] * d[3][3],
          d[2][1] * d[3][3] - Number(2) * d[2][2] * d[3][2] + d[2][3] * d[3][1],
          d[2][2] * d[2][2] - d[2][1] * d[2][3]};
  m[2] = {d[2][2] * d[2][2] - d[2][1] * d[2][3],
          d[1][1] * d[2][3] - Number(2) * d[1][2] * d[2][2] + d[1][3] * d[2][1],
          d[1][2] * d[1][2] - d[1][1] * d[1][3]};
  return m;
}

Number Biquad::detOmega() const { return poly::det(to_rows3(Omega())); }

Biquad Biquad::translate_x(const Number& t) const {
  Mat3 b;
  for (int j = 0; j < 3; ++j) {
    b[0][j] = a_[0][j] + a_[1][j] * t + a_[2][j] * t * t;
    b[1][j] = a_[1][j] + Number(2) * a_[2][j] * t;
    b[2][j] = a_[2][j];
  }
  return Biquad(b);
}

Biquad Biquad::translate_y(const Number& t) const {
  return swap_xy().translate_x(t).swap_xy();
}

Biquad Biquad::scale_x(const Number& s) const {
  if (s.is_zero()) throw std::domain_error("scale factor must be nonzero");
  Mat3 b;
  for (int j = 0; j < 3; ++j) {
    b[0][j] = a_[0][j];
    b[1][j] = a_[1][j] * s;
    b[2][j] = a_[2][j] * s * s;
  }
  return Biquad(b);
}

Biquad Biquad::scale_y(const Number& s) const {
  return swap_xy().scale_x(s).swap_xy();
}

Biquad Biquad::invert_x() const {
  Mat3 b;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) b[i][j] = a_[2 - i][j];
  return Biquad(b);
}

Biquad Biquad::invert_y() const { return swap_xy().invert_x().swap_xy(); }

Biquad Biquad::swap_xy() const {
  Mat3 b;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) b[i][j] = a_[j][i];
  return Biquad(b);
}

Biquad Biquad::scaled(const Number& s) const {
  if (s.is_zero()) throw std::domain_error("scalar must be nonzero");
  Mat3 b;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) b[i][j] = a_[i][j] * s;
  return Biquad(b);
}

Biquad::FiberQ Biquad::y_fiber(const Coord& x) const {
  if (x.at_inf) return {a_[2][2], a_[2][1], a_[2][0]};
  return {ax().eval(x.v), bx().eval(x.v), cx().eval(x.v)};
}

Biquad::FiberQ Biquad::x_fiber(const Coord& y) const {
  if (y.at_inf) return {a_[2][2], a_[1][2], a_[0][2]};
  return {ay().eval(y.v), by().eval(y.v), cy().eval(y.v)};
}

std::optional<Coord> Biquad::switch_on(const FiberQ& f, const Coord& w) {
  bool az = f.alpha.is_zero(), bz = f.beta.is_zero(), gz = f.gamma.is_zero();
  if (az && bz && gz) return std::nullopt;  // fiber lies on the curve
  if (w.at_inf) {
    if (!az) return std::nullopt;  // infinity is not on this fiber
    if (!bz) return Coord::of(-f.gamma / f.beta);
    return Coord::inf();  // double root at infinity
  }
  if (!az) return Coord::of(-f.beta / f.alpha - w.v);
  if (!bz) return Coord::inf();
  return std::nullopt;  // no finite roots on this fiber
}

std::optional<Coord> Biquad::vertical_switch(const PointQ& p) const {
  return switch_on(y_fiber(p.x), p.y);
}

std::optional<Coord> Biquad::horizontal_switch(const PointQ& p) const {
  return switch_on(x_fiber(p.y), p.x);
}

std::optional<PointQ> Biquad::qrt_step(const PointQ& p) const {
  auto y1 = vertical_switch(p);
  if (!y1) return std::nullopt;
  auto x1 = horizontal_switch(PointQ{p.x, *y1});
  if (!x1) return std::nullopt;
  return PointQ{*x1, *y1};
}

std::optional<PointQ> Biquad::qrt_step_inverse(const PointQ& p) const {
  auto x1 = horizontal_switch(p);
  if (!x1) return std::nullopt;
  auto y1 = vertical_switch(PointQ{*x1, p.y});
  if (!y1) return std::nullopt;
  return PointQ{*x1, *y1};
}

bool Biquad::contains(const PointQ& p) const {
  if (!p.x.at_inf && !p.y.at_inf) return eval(p.x.v, p.y.v).is_zero();
  if (p.x.at_inf && !p.y.at_inf) return ay().eval(p.y.v).is_zero();
  if (!p.x.at_inf && p.y.at_inf) return ax().eval(p.x.v).is_zero();
  return a_[2][2].is_zero();
}

std::vector<Coord> Biquad::roots_of(const FiberQ& f, Tower& tower) {
  bool az = f.alpha.is_zero(), bz = f.beta.is_zero(), gz = f.gamma.is_zero();
  if (az && bz && gz) throw std::domain_error("entire fiber on curve");
  if (az) {
    if (!bz) return {Coord::of(-f.gamma / f.beta), Coord::inf()};
    return {Coord::inf(), Coord::inf()};
  }
  Number disc = f.beta * f.beta - Number(4) * f.alpha * f.gamma;
  if (disc.sign() < 0) return {};
  Number s = num::sqrt_number(disc, tower);
  Number two_a = Number(2) * f.alpha;
  return {Coord::of((-f.beta + s) / two_a), Coord::of((-f.beta - s) / two_a)};
}

std::vector<Coord> Biquad::solve_fiber_y(const Coord& x, Tower& tower) const {
  return roots_of(y_fiber(x), tower);
}

std::vector<Coord> Biquad::solve_fiber_x(const Coord& y, Tower& tower) const {
  return roots_of(x_fiber(y), tower);
}

// ---------------------------------------------------------------------------

double chordal(double u, double v) {
  bool iu = std::isinf(u), iv = std::isinf(v);
  if (iu && iv) return 0.0;  // one projective point at infinity
  if (iu) return 1.0 / std::sqrt(1.0 + v * v);
  if (iv) return 1.0 / std::sqrt(1.0 + u * u);
  return std::fabs(u - v) / (std::sqrt(1.0 + u * u) * std::sqrt(1.0 + v * v));
}

double fpoint_dist(const FPoint& p, const FPoint& q) {
  return std::max(chordal(p.x, q.x), chordal(p.y, q.y));
}

FloatBiquad::FloatBiquad(const Biquad& q) {
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) a_[i][j] = q.a(i, j).to_double();
}

FloatBiquad::FloatBiquad(const std::array<std::array<double, 3>, 3>& a) {
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) a_[i][j] = a[i][j];
}

double FloatBiquad::eval(double x, double y) const {
  double acc = 0;
  for (int i = 2; i >= 0; --i) {
    double row = 0;
    for (int j = 2; j >= 0; --j) row = row * y + a_[i][j];
    acc = acc * x + row;
  }
  return acc;
}

namespace {
// Vieta partner of w on the projective quadratic alpha w^2 + beta w + gamma.
double partner(double alpha, double beta, double gamma, double w) {
  if (std::isinf(w)) return -gamma / beta;
  return -beta / alpha - w;
}
}  // namespace

FPoint FloatBiquad::qrt_step(const FPoint& p) const {
  double al, be, ga;
  if (std::isinf(p.x)) {
    al = a_[2][2]; be = a_[2][1]; ga = a_[2][0];
  } else {
    al = (a_[2][2] * p.x + a_[1][2]) * p.x + a_[0][2];
    be = (a_[2][1] * p.x + a_[1][1]) * p.x + a_[0][1];
    ga = (a_[2][0] * p.x + a_[1][0]) * p.x + a_[0][0];
  }
  double y1 = partner(al, be, ga, p.y);
  if (std::isinf(y1)) {
    al = a_[2][2]; be = a_[1][2]; ga = a_[0][2];
  } else {
    al = (a_[2][2] * y1 + a_[2][1]) * y1 + a_[2][0];
    be = (a_[1][2] * y1 + a_[1][1]) * y1 + a_[1][0];
    ga = (a_[0][2] * y1 + a_[0][1]) * y1 + a_[0][0];
  }
  double x1 = partner(al, be, ga, p.x);
  return FPoint{x1, y1};
}

FPoint FloatBiquad::qrt_step_inverse(const FPoint& p) const {
  double al, be, ga;
  if (std::isinf(p.y)) {
    al = a_[2][2]; be = a_[1][2]; ga = a_[0][2];
  } else {
    al = (a_[2][2] * p.y + a_[2][1]) * p.y + a_[2][0];
    be = (a_[1][2] * p.y + a_[1][1]) * p.y + a_[1][0];
    ga = (a_[0][2] * p.y + a_[0][1]) * p.y + a_[0][0];
  }
  double x1 = partner(al, be, ga, p.x);
  if (std::isinf(x1)) {
    al = a_[2][2]; be = a_[2][1]; ga = a_[2][0];
  } else {
    al = (a_[2][2] * x1 + a_[1][2]) * x1 + a_[0][2];
    be = (a_[2][1] * x1 + a_[1][1]) * x1 + a_[0][1];
    ga = (a_[2][0] * x1 + a_[1][0]) * x1 + a_[0][0];
  }
  double y1 = partner(al, be, ga, p.y);
  return FPoint{x1, y1};
}

std::array<double, 2> FloatBiquad::fiber_y(double x) const {
  double al = (a_[2][2] * x + a_[1][2]) * x + a_[0][2];
  double be = (a_[2][1] * x + a_[1][1]) * x + a_[0][1];
  double ga = (a_[2][0] * x + a_[1][0]) * x + a_[0][0];
  double disc = be * be - 4 * al * ga;
  if (disc < 0) {
    double nan = std::nan("");
    return {nan, nan};
  }
  double s = std::sqrt(disc);
  return {(-be + s) / (2 * al), (-be - s) / (2 * al)};
}

int float_orbit_period(const FloatBiquad& q, const FPoint& start, int max_steps,
                       double tol, std::vector<FPoint>* trajectory) {
  if (trajectory) {
    trajectory->clear();
    trajectory->push_back(start);
  }
  FPoint p = start;
  for (int n = 1; n <= max_steps; ++n) {
    p = q.qrt_step(p);
    if (std::isnan(p.x) || std::isnan(p.y)) return 0;
    if (trajectory) trajectory->push_back(p);
    if (fpoint_dist(p, start) < tol) return n;
  }
  return 0;
}

}  // namespace qrt::biquad
