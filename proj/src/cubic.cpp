#include "qrt/cubic.hpp"

#include <sstream>
#include <stdexcept>

#include "qrt/poly.hpp"

namespace qrt::cubic {

std::vector<Number> taylor_coefficients(const Number& D,
                                        [[maybe_unused]] const Number& E,
                                        const Number& X, const Number& Y,
                                        int count) {
  // E is implicit via Y^2 = 4X^3 - DX + E; kept so the model reads as a unit.
  if (Y.is_zero()) throw std::domain_error("Taylor series needs Y != 0");
  std::vector<Number> C;
  C.reserve(count);
  C.push_back(Y);
  Number f1 = Number(12) * X * X - D;
  Number f2 = Number(12) * X;
  Number f3 = Number(4);
  for (int n = 1; n < count; ++n) {
    Number fn = n == 1 ? f1 : n == 2 ? f2 : n == 3 ? f3 : Number(0);
    Number acc = fn;
    for (int k = 1; k <= n - 1; ++k) acc -= C[k] * C[n - k];
    C.push_back(acc / (Number(2) * C[0]));
  }
  return C;
}

Number closed_form_C(int k, const Number& D, const Number& E, const Number& X,
                     const Number& Y) {
  Number X2 = X * X, X3 = X2 * X, X4 = X3 * X, X5 = X4 * X, X6 = X5 * X;
  Number Y2 = Y * Y;
  switch (k) {
    case 2:
      return (-D * D - Number(24) * D * X2 + Number(48) * E * X +
              Number(48) * X4) /
             (Number(8) * Y2 * Y);
    case 3:
      return (-D * D * D + Number(20) * D * D * X2 - Number(16) * D * E * X +
              Number(80) * D * X4 + Number(32) * E * E -
              Number(320) * E * X3 - Number(64) * X6) /
             (Number(16) * Y2 * Y2 * Y);
    case 4: {
      Number num = Number(-5) * D.pow(4) + Number(80) * D.pow(3) * X2 +
                   Number(32) * D * D * E * X - Number(1120) * D * D * X4 +
                   Number(128) * D * E * E + Number(1792) * D * E * X3 -
                   Number(1792) * D * X6 - Number(3840) * E * E * X2 +
                   Number(10752) * E * X5 + Number(768) * X4 * X4;
      return num / (Number(128) * Y.pow(7));
    }
    case 5: {
      Number num =
          Number(-7) * D.pow(5) + Number(132) * D.pow(4) * X2 +
          Number(96) * D.pow(3) * X * (E - Number(9) * X3) +
          Number(192) * D * D *
              (E * E - Number(10) * E * X3 + Number(70) * X6) -
          Number(2304) * D * X2 *
              (E * E + Number(14) * E * X3 - Number(5) * X6) -
          Number(3072) * X *
              (E.pow(3) - Number(24) * E * E * X3 + Number(30) * E * X6 +
               X3.pow(3));
      return num / (Number(256) * Y.pow(9));
    }
    default:
      throw std::invalid_argument("closed_form_C supports k = 2..5");
  }
}

CubicModel cubic_model(const Biquad& q, int taylor_terms) {
  auto inv = q.invariants();
  if (!inv.smooth) throw singular_curve_error();
  CubicModel m;
  m.D = inv.D;
  m.E = inv.E;
  m.X = q.X();
  m.Y = q.Y();
  if (!m.Y.is_zero() && taylor_terms > 0)
    m.C = taylor_coefficients(m.D, m.E, m.X, m.Y, taylor_terms);
  return m;
}

bool cayley_condition(const CubicModel& m, int n) {
  if (n < 2) throw std::invalid_argument("order conditions start at n = 2");
  if (n == 2) return m.Y.is_zero();
  if (m.two_torsion()) return n % 2 == 0;  // exact order 2 divides even n
  std::size_t size, first;
  if (n % 2 == 1) {
    size = (n - 1) / 2;  // k x k, entries C_2..C_{2k}
    first = 2;
  } else {
    size = n / 2 - 1;  // (k-1) x (k-1), entries C_3..C_{2k-1}
    first = 3;
  }
  std::size_t max_index = first + 2 * (size - 1);
  if (m.C.size() <= max_index)
    throw std::length_error("Taylor series too short for requested order");
  std::vector<std::vector<Number>> h(size, std::vector<Number>(size));
  for (std::size_t r = 0; r < size; ++r)
    for (std::size_t c = 0; c < size; ++c) h[r][c] = m.C[first + r + c];
  return poly::det(h).is_zero();
}

OrderVerdict qrt_order(const Biquad& q, int n_max, bool run_oracle) {
  CubicModel m = cubic_model(q, n_max);
  OrderVerdict v;
  for (int n = 2; n <= n_max; ++n) {
    if (!cayley_condition(m, n)) continue;
    v.qrt_order = n;
    v.group_order = 2 * n;
    std::ostringstream cert;
    if (n == 2) {
      cert << "det(a_ij) = 0 (two-torsion)";
    } else if (n % 2 == 1) {
      int k = (n - 1) / 2;
      cert << "odd Hankel " << k << "x" << k << " det (entries C2..C" << 2 * k
           << ") = 0";
    } else {
      int k = n / 2;
      cert << "even Hankel " << (k - 1) << "x" << (k - 1)
           << " det (entries C3..C" << 2 * k - 1 << ") = 0";
    }
    v.certificate = cert.str();
    break;
  }
  if (v.qrt_order == 0) {
    std::ostringstream cert;
    cert << "no Hankel condition fired for n <= " << n_max;
    v.certificate = cert.str();
  }
  if (run_oracle) {
    v.oracle_order = group_law_order(m, n_max);
    v.oracle_agreement = (*v.oracle_order == v.qrt_order);
  }
  return v;
}

bool gp_on_curve(const CubicModel& m, const GroupPoint& p) {
  if (p.infinity) return true;
  Number rhs = Number(4) * p.xi.pow(3) - m.D * p.xi + m.E;
  return p.eta * p.eta == rhs;
}

GroupPoint gp_negate(const GroupPoint& p) {
  if (p.infinity) return p;
  return GroupPoint::affine(p.xi, -p.eta);
}

GroupPoint gp_add(const CubicModel& m, const GroupPoint& p, const GroupPoint& q) {
  if (p.infinity) return q;
  if (q.infinity) return p;
  Number slope;
  if (p.xi == q.xi) {
    if ((p.eta + q.eta).is_zero()) return GroupPoint::at_infinity();
    // doubling: 2 eta eta' = 12 xi^2 - D
    slope = (Number(12) * p.xi * p.xi - m.D) / (Number(2) * p.eta);
  } else {
    slope = (q.eta - p.eta) / (q.xi - p.xi);
  }
  Number x3 = slope * slope / Number(4) - p.xi - q.xi;
  Number y3 = -(slope * (x3 - p.xi) + p.eta);
  return GroupPoint::affine(x3, y3);
}

int group_law_order(const CubicModel& m, int n_max) {
  GroupPoint base = GroupPoint::affine(m.X, m.Y);
  GroupPoint acc = GroupPoint::at_infinity();
  for (int n = 1; n <= n_max; ++n) {
    acc = gp_add(m, acc, base);  // acc = n * base
    if (acc.infinity) return n;
  }
  return 0;
}

std::pair<Number, Number> map_to_cubic(const Biquad& q, const Number& x,
                                       const Number& y) {
  if (!q.a(0, 0).is_zero())
    throw std::invalid_argument("map_to_cubic requires a_00 = 0");
  if (x.is_zero() || y.is_zero())
    throw std::domain_error("map_to_cubic has a pole at xy = 0");
  const Number &a20 = q.a(2, 0), &a10 = q.a(1, 0), &a02 = q.a(0, 2),
               &a01 = q.a(0, 1), &a11 = q.a(1, 1), &a12 = q.a(1, 2),
               &a21 = q.a(2, 1), &a22 = q.a(2, 2);
  Number P = -(a20 * x + a10) * (a02 * y + a01) / (x * y) +
             (a11 * a11 - Number(4) * a12 * a10 - Number(4) * a21 * a01 +
              Number(8) * a20 * a02) /
                 Number(12);
  Number x2 = x * x, x3 = x2 * x, y2 = y * y, y3 = y2 * y;
  Number R = -a10 * a10 * a01 * x - Number(3) * a20 * a10 * a01 * x2 -
             Number(2) * a20 * a20 * a01 * x3 + a10 * a01 * a01 * y -
             (a20 * a11 + a21 * a10) * a01 * x2 * y -
             Number(2) * a21 * a20 * a01 * x3 * y +
             Number(3) * a10 * a02 * a01 * y2 +
             (a11 * a02 + a12 * a01) * a10 * x * y2 +
             (a21 * a10 * a02 - a20 * a12 * a01) * x2 * y2 -
             Number(2) * a22 * a20 * a01 * x3 * y2 +
             Number(2) * a10 * a02 * a02 * y3 +
             Number(2) * a12 * a10 * a02 * x * y3 +
             Number(2) * a22 * a10 * a02 * x2 * y3;
  Number Pp = R / (x2 * y2);
  return {P, Pp};
}

}  // namespace qrt::cubic
