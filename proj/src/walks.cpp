#include "qrt/walks.hpp"

#include <sstream>
#include <stdexcept>

#include "qrt/bigfloat.hpp"

namespace qrt::walks {

namespace {

Number nq(long n, long d) { return Number(mpq_class(n, d)); }

}  // namespace

// ---- walk specifications --------------------------------------------------

Number total_mass(const WalkSpec& w) {
  Number s = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) s += w.p[i][j];
  return s;
}

void validate(const WalkSpec& w) {
  bool moving = false;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      if ((i != 1 || j != 1) && !w.p[i][j].is_zero()) moving = true;
      if (w.strict && w.p[i][j].sign() < 0) {
        std::ostringstream os;
        os << "negative probability p(" << i - 1 << "," << j - 1
           << ") = " << w.p[i][j].str();
        throw std::invalid_argument(os.str());
      }
    }
  if (!moving)
    throw std::invalid_argument("walk never leaves the origin (all off-center "
                                "probabilities vanish)");
  if (w.strict) {
    Number mass = total_mass(w);
    if (!mass.is_one())
      throw std::invalid_argument("total mass is " + mass.str() + ", expected 1");
  }
}

Biquad kernel(const WalkSpec& w) {
  validate(w);
  Mat3 a;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) a[i][j] = w.p[i][j];
  a[1][1] = w.p[1][1] - Number(1);
  return Biquad(a);
}

WalkSpec walk_from_kernel(const Biquad& q, bool strict) {
  WalkSpec w;
  w.strict = strict;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) w.p[i][j] = q.a(i, j);
  w.p[1][1] = q.a(1, 1) + Number(1);
  if (strict) validate(w);
  return w;
}

// ---- step sets -------------------------------------------------------------

const std::vector<StepSet>& bundled_step_sets() {
  static const std::vector<StepSet> sets = {
      {"S1", {{1, 0}, {0, 1}, {-1, 0}, {0, -1}}},
      {"S17", {{0, 1}, {-1, 0}, {1, -1}}},
      {"S18", {{1, 0}, {0, 1}, {-1, 0}, {0, -1}, {1, -1}, {-1, 1}}},
      {"S19", {{0, -1}, {-1, 0}, {1, 1}}},
      {"S20", {{0, 1}, {1, 0}, {-1, -1}}},
      {"S21", {{1, 0}, {0, 1}, {-1, 0}, {0, -1}, {1, 1}, {-1, -1}}},
      {"S22", {{1, 0}, {-1, 0}, {1, -1}, {-1, 1}}},
      {"S23", {{1, 0}, {-1, 0}, {1, 1}, {-1, -1}}},
  };
  return sets;
}

std::optional<StepSet> step_set_by_name(const std::string& name) {
  for (const StepSet& s : bundled_step_sets())
    if (s.name == name) return s;
  return std::nullopt;
}

Biquad xys_curve(const StepSet& s) {
  Mat3 a;
  for (auto& row : a)
    for (auto& v : row) v = 0;
  for (auto [i, j] : s.steps) {
    if (i < -1 || i > 1 || j < -1 || j > 1 || (i == 0 && j == 0))
      throw std::invalid_argument("step (" + std::to_string(i) + "," +
                                  std::to_string(j) + ") outside the small-step range");
    a[i + 1][j + 1] += Number(1);
  }
  return Biquad(a);
}

Biquad kernel_t(const StepSet& s, const Number& t) {
  Biquad xys = xys_curve(s);
  Mat3 a;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) a[i][j] = -t * xys.a(i, j);
  a[1][1] += Number(1);
  return Biquad(a);
}

Biquad coupled_processor(const Number& l1, const Number& l2, const Number& m1,
                         const Number& m2) {
  Mat3 a;
  for (auto& row : a)
    for (auto& v : row) v = 0;
  a[2][1] = -m1;
  a[1][2] = -m2;
  a[1][1] = l1 + l2 + m1 + m2;
  a[1][0] = -l2;
  a[0][1] = -l1;
  return Biquad(a);
}

// ---- direct order conditions ------------------------------------------------

OrderData order_data(const Biquad& q) {
  OrderData d;
  d.M = q.M();
  d.Delta = q.Delta();
  d.Omega = q.Omega();
  d.det_M = q.detM();
  d.det_Delta = q.detDelta();
  d.det_Omega = q.detOmega();

  const Number a00 = q.a(0, 0), a01 = q.a(0, 1), a02 = q.a(0, 2);
  const Number a10 = q.a(1, 0), a11 = q.a(1, 1), a12 = q.a(1, 2);
  const Number a20 = q.a(2, 0), a21 = q.a(2, 1), a22 = q.a(2, 2);
  const Number two(2), four(4), six(6), eight(8);

  d.B1hat = eight * a00 * a22 - four * a01 * a21 + eight * a02 * a20 -
            four * a10 * a12 + a11 * a11;

  d.Xhat =
      a02 * (two * a00 * a21 * a21 - four * a00 * a20 * a22 -
             two * a01 * a20 * a21 + two * a10 * a10 * a22 - a10 * a11 * a21 -
             two * a10 * a12 * a20 + a11 * a11 * a20) -
      a01 * (two * a00 * a21 * a22 + a10 * a11 * a22 - two * a10 * a12 * a21 +
             a11 * a12 * a20) +
      two * a01 * a01 * a20 * a22 + two * a02 * a02 * a20 * a20 +
      a00 * (a22 * (two * a00 * a22 + a11 * a11) -
             a12 * (two * a10 * a22 + a11 * a21) + two * a12 * a12 * a20);

  d.C1hat =
      a11 * a11 * (a01 * a21 - four * a00 * a22 - four * a02 * a20 + a10 * a12) -
      a11.pow(4) / eight +
      two * a11 *
          (a00 * a12 * a21 + a01 * a10 * a22 + a01 * a12 * a20 + a02 * a10 * a21) -
      two * (six * a00 * a00 * a22 * a22 -
             two * a10 * a12 * (Number(3) * a00 * a22 - two * a01 * a21 +
                                Number(3) * a02 * a20) +
             two * a00 * (two * a02 * a20 * a22 - Number(3) * a01 * a21 * a22 +
                          a02 * a21 * a21 + a12 * a12 * a20) +
             two * a01 * a01 * a20 * a22 + a01 * a01 * a21 * a21 -
             six * a01 * a02 * a20 * a21 + six * a02 * a02 * a20 * a20 +
             a10 * a10 * (two * a02 * a22 + a12 * a12));

  return d;
}

Number closed_form_C4(const OrderData& d) {
  if (d.det_M.is_zero())
    throw std::domain_error("closed_form_C4 needs det M != 0");
  const Number det2 = d.det_M * d.det_M;
  const Number det3 = det2 * d.det_M;
  const Number det5 = det3 * det2;
  const Number det7 = det5 * det2;
  return -nq(5, 8) * d.Xhat.pow(4) / det7 +
         nq(3, 4) * d.B1hat * d.Xhat * d.Xhat / det5 + d.C1hat / det3;
}

Number order8_polynomial_P(const Biquad& q) {
  const Number a00 = q.a(0, 0), a01 = q.a(0, 1), a02 = q.a(0, 2);
  const Number a10 = q.a(1, 0), a11 = q.a(1, 1), a12 = q.a(1, 2);
  const Number a20 = q.a(2, 0), a21 = q.a(2, 1), a22 = q.a(2, 2);
  const Number two(2), four(4);
  const Number B1 = Number(8) * a00 * a22 - four * a01 * a21 +
                    Number(8) * a02 * a20 - four * a10 * a12 + a11 * a11;
  const Number R =
      four * (a00 * a22 + a01 * a21 + a02 * a20) - two * a10 * a12 - a11 * a11;
  const Number S = a10 * a11 - two * (a00 * a21 + a01 * a20);
  const Number T = a11 * a12 - two * (a01 * a22 + a02 * a21);
  const Number U = a10 * a10 - four * a00 * a20;
  const Number V = a12 * a12 - four * a02 * a22;
  return B1 * B1 - R * R + Number(12) * S * T - Number(12) * U * V;
}

bool order8_identity_holds(const OrderData& d, const Biquad& q) {
  const Number P = order8_polynomial_P(q);
  const Number lhs = Number(4608) * d.det_M.pow(4) * Number(12);
  const Number rhs =
      P * (Number(576) * d.det_M * d.det_M * d.B1hat - P * P);
  return lhs == rhs;
}

OrderConditionReport order_condition(const Biquad& q, int k) {
  if (k != 4 && k != 6 && k != 8 && k != 10)
    throw std::invalid_argument("direct conditions cover group orders 4, 6, 8, 10");
  if (!q.is_smooth()) throw cubic::singular_curve_error();

  OrderData d = order_data(q);
  OrderConditionReport r;
  r.group_order_tested = k;
  r.route = "determinant";
  std::ostringstream cert;

  const bool z1 = d.det_M.is_zero();
  const bool z2 = d.det_Delta.is_zero();
  const bool z3 = d.det_Omega.is_zero();

  switch (k) {
    case 4:
      r.condition_met = z1;
      cert << "det M " << (z1 ? "= 0" : "= " + d.det_M.str() + " != 0");
      break;
    case 6:
      r.condition_met = z2 && !z1;
      cert << "det Delta " << (z2 ? "= 0" : "!= 0") << ", det M "
           << (z1 ? "= 0" : "!= 0");
      break;
    case 8:
      r.condition_met = z3 && !z1;
      cert << "det Omega " << (z3 ? "= 0" : "!= 0") << ", det M "
           << (z1 ? "= 0" : "!= 0");
      if (r.condition_met && !order8_identity_holds(d, q))
        throw std::logic_error(
            "det Omega = 0 but the direct order-eight relation fails");
      if (r.condition_met) cert << "; direct order-eight relation holds";
      break;
    case 10: {
      if (z1 || z2 || z3) {
        // A lower determinant vanishes, so the order is 2, 3 or 4; settle
        // by the Taylor-coefficient Hankel route.
        r.route = "hankel-fallback";
        cubic::CubicModel m = cubic::cubic_model(q, 12);
        r.condition_met = cubic::cayley_condition(m, 5) &&
                          !cubic::cayley_condition(m, 2);
        cert << (z1 ? "det M = 0; " : "")
             << (z2 ? "det Delta = 0; " : "")
             << (z3 ? "det Omega = 0; " : "")
             << "settled by Taylor coefficients: order-5 Hankel "
             << (r.condition_met ? "vanishes" : "does not vanish");
        break;
      }
      // 16 detOmega^2 = (-10 Xhat^4 + 12 det^2 B1 Xhat^2 + 8 det^4 C1) detDelta
      const Number det2 = d.det_M * d.det_M;
      const Number det4 = det2 * det2;
      const Number lhs = Number(16) * d.det_Omega * d.det_Omega;
      const Number rhs = (Number(-10) * d.Xhat.pow(4) +
                          Number(12) * det2 * d.B1hat * d.Xhat * d.Xhat +
                          Number(8) * det4 * d.C1hat) *
                         d.det_Delta;
      r.condition_met = (lhs == rhs);
      cert << "det M, det Delta, det Omega all nonzero; order-ten relation "
           << (r.condition_met ? "holds" : "fails");
      break;
    }
  }
  r.certificate = cert.str();
  return r;
}

Order10Diagnostics order10_diagnostics(const OrderData& d, Tower& tower) {
  if (d.det_M.is_zero() || d.det_Delta.is_zero())
    throw std::domain_error("order-ten diagnostics need det M != 0 and det Delta != 0");
  Order10Diagnostics out;

  const Number det2 = d.det_M * d.det_M;
  const Number det4 = det2 * det2;
  const Number two_om2_over_delta =
      Number(2) * d.det_Omega * d.det_Omega / d.det_Delta;

  // Branch quadratic for u = Xhat^2:
  //   5 u^2 - 6 det^2 B1 u + (16 detOmega^2/detDelta - 8 det^4 C1) = 0,
  // discriminant 4 * (9 det^4 B1^2 - 40 (2 detOmega^2/detDelta - det^4 C1)).
  const Number disc = Number(9) * det4 * d.B1hat * d.B1hat -
                      Number(40) * (two_om2_over_delta - det4 * d.C1hat);
  out.discriminant_nonnegative = disc.sign() >= 0;
  out.sign_condition = d.B1hat.sign() >= 0 ||
                       (d.C1hat - two_om2_over_delta / det4).sign() >= 0;

  if (out.discriminant_nonnegative) {
    if (auto root = num::sqrt_in_chain(disc, tower.top())) {
      out.branch_plus = Number(3) * det2 * d.B1hat + *root;
      out.branch_minus = Number(3) * det2 * d.B1hat - *root;
    }
  }

  // 5 Xhat^2 solves the quadratic  <=>  the order-ten relation holds.
  const Number u = d.Xhat * d.Xhat;
  const Number residual = Number(5) * u * u - Number(6) * det2 * d.B1hat * u +
                          Number(16) * d.det_Omega * d.det_Omega / d.det_Delta -
                          Number(8) * det4 * d.C1hat;
  out.xhat_on_branch = residual.is_zero();
  return out;
}

// ---- analytic diagnostics ----------------------------------------------------

WalkDiagnostics walk_diagnostics(const WalkSpec& w, Tower& tower, int digits) {
  WalkDiagnostics out;
  out.drift_x = 0;
  out.drift_y = 0;
  out.mxx = 0;
  out.mxy = 0;
  out.myy = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const Number& p = w.p[i][j];
      const Number di(i - 1), dj(j - 1);
      out.drift_x += di * p;
      out.drift_y += dj * p;
      out.mxx += di * di * p;
      out.mxy += di * dj * p;
      out.myy += dj * dj * p;
    }
  out.zero_drift = out.drift_x.is_zero() && out.drift_y.is_zero();
  if (out.mxx.sign() <= 0 || out.myy.sign() <= 0)
    throw std::domain_error(
        "correlation needs nonzero horizontal and vertical second moments");

  if (auto root = num::sqrt_in_chain(out.mxx * out.myy, tower.top()))
    out.correlation = out.mxy / *root;

  const long prec = num::BigFloat::bits_for_digits(digits);
  num::BigFloat fx = num::BigFloat::from_number(out.mxx, prec).sqrt();
  num::BigFloat fy = num::BigFloat::from_number(out.myy, prec).sqrt();
  num::BigFloat r = num::BigFloat::from_number(out.mxy, prec) / (fx * fy);
  out.correlation_approx = r.to_double();
  out.theta = (-r).acos().to_double();
  return out;
}

// ---- unified group order of a kernel curve ------------------------------------

CurveOrderResult group_order_of_curve(const Biquad& q, Tower& tower, int n_max,
                                      int digits, bool run_oracle) {
  CurveOrderResult out;
  if (q.is_smooth()) {
    out.route = "cayley-smooth";
    cubic::OrderVerdict v = cubic::qrt_order(q, n_max, run_oracle);
    if (v.qrt_order > 0) {
      out.status = "periodic";
      out.qrt_order = v.qrt_order;
      out.group_order = v.group_order;
    } else {
      out.status = "aperiodic";
    }
    out.certificate = v.certificate;
    if (run_oracle && !v.oracle_agreement)
      throw std::logic_error("Hankel order and group-law oracle disagree");
    return out;
  }

  singular::SingularAnalysis an = singular::analyze_singular(q, tower, n_max, digits);
  out.route = "singular:" + singular::to_string(an.cls.label);
  out.status = an.status;
  if (an.status == "identity") {
    out.qrt_order = 1;
    out.group_order = 2;
    out.certificate = "correspondence acts as the identity";
  } else if (an.qrt_period) {
    out.qrt_order = *an.qrt_period;
    out.group_order = an.group_order.value_or(2 * *an.qrt_period);
    out.certificate = "singular pipeline: period " + std::to_string(out.qrt_order);
  } else {
    out.certificate = "singular pipeline: " + an.status;
  }
  out.singular_detail = std::move(an);
  return out;
}

// ---- finiteness survey ----------------------------------------------------------

std::vector<Number> default_t_samples() {
  return {nq(1, 5), nq(1, 3), nq(2, 7)};
}

StepSetSurvey survey_step_set(const StepSet& s, const std::vector<Number>& ts,
                              Tower& tower, int n_max, int digits) {
  StepSetSurvey out;
  out.set = s;
  out.unweighted = group_order_of_curve(xys_curve(s), tower, n_max, digits);

  bool consistent = true;
  int seen = -1;
  for (const Number& t : ts) {
    if (t.is_zero())
      throw std::invalid_argument("t = 0 degenerates the weighted kernel");
    WeightedOrder wo;
    wo.t = t;
    Biquad k = kernel_t(s, t);
    wo.curve_smooth = k.is_smooth();
    wo.result = group_order_of_curve(k, tower, n_max, digits);
    if (seen == -1)
      seen = wo.result.group_order;
    else if (wo.result.group_order != seen)
      consistent = false;
    out.weighted.push_back(std::move(wo));
  }
  out.weighted_consistent = consistent && !out.weighted.empty();
  return out;
}

}  // namespace qrt::walks
