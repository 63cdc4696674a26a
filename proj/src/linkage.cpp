#include "qrt/linkage.hpp"

#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <stdexcept>

#include "qrt/cubic.hpp"

namespace qrt::linkage {

namespace {

struct Squares {
  Number al, be, ga, de;  // a^2, b^2, c^2, d^2
};

Squares squares(const FourBarLink& L) {
  return {L.a * L.a, L.b * L.b, L.c * L.c, L.d * L.d};
}

Number sq(const Number& x) { return x * x; }

// K4 and K6 as polynomials in the squared side lengths.
Number k4_from_squares(const Number& al, const Number& be, const Number& ga,
                       const Number& de) {
  const Number two(2), four(4);
  return al.pow(3) * ga + al * al * (be * (de - two * ga) - two * ga * de) +
         be * de * (be * be - two * be * ga + sq(ga - de)) +
         al * (be * be * (ga - two * de) -
               two * be * (ga * ga - four * ga * de + de * de) +
               ga * sq(ga - de));
}

Number k6_from_squares(const Number& al, const Number& be, const Number& ga,
                       const Number& de) {
  const Number two(2), three(3), four(4);
  const Number gd = ga - de;
  return al.pow(5) * ga * (be * de + ga * ga) -
         al.pow(4) * ga *
             (four * be * be * de +
              be * (two * ga * ga - three * ga * de + four * de * de) +
              ga.pow(3) + two * ga * ga * de) +
         al.pow(3) * ga *
             (Number(6) * be.pow(3) * de +
              be * be * (ga * ga - Number(10) * ga * de + Number(11) * de * de) -
              two * be *
                  (ga.pow(3) - Number(9) * ga * ga * de + Number(5) * ga * de * de -
                   three * de.pow(3)) +
              ga * ga * sq(gd)) +
         al * al * be * de *
             (be * be * (Number(11) * ga * ga - Number(10) * ga * de + de * de) -
              four * be.pow(3) * ga -
              two * be * (Number(5) * ga.pow(3) - ga * ga * de +
                          Number(5) * ga * de * de) +
              (three * ga - four * de) * ga * sq(gd)) +
         al * be * de *
             (be.pow(4) * ga +
              be.pow(3) * (three * ga * de - four * ga * ga - two * de * de) +
              two * be * be *
                  (three * ga.pow(3) - Number(5) * ga * ga * de +
                   Number(9) * ga * de * de - de.pow(3)) -
              be * (four * ga - three * de) * ga * sq(gd) + ga * sq(gd) * sq(gd)) +
         be.pow(3) * de.pow(3) * (be * be - be * (two * ga + de) + sq(gd));
}

// ---- double geometry helpers ----

struct P2 {
  double x, y;
};

P2 reflect_across(const P2& p, const P2& a, const P2& b) {
  const double ux = b.x - a.x, uy = b.y - a.y;
  const double len2 = ux * ux + uy * uy;
  if (len2 < 1e-24)
    throw std::runtime_error("degenerate diagonal: reflection axis collapses");
  const double t = ((p.x - a.x) * ux + (p.y - a.y) * uy) / len2;
  const double fx = a.x + t * ux, fy = a.y + t * uy;
  return {2 * fx - p.x, 2 * fy - p.y};
}

std::string fmt(double v) {
  char buf[48];
  if (std::abs(v) < 5e-5) v = 0.0;  // avoid "-0.0000"
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

}  // namespace

void validate(const FourBarLink& L) {
  const Number* sides[4] = {&L.a, &L.b, &L.c, &L.d};
  const char* names = "abcd";
  Number sum = 0;
  for (const Number* s : sides) sum += *s;
  for (int i = 0; i < 4; ++i) {
    if (sides[i]->sign() <= 0)
      throw std::invalid_argument(std::string("side ") + names[i] +
                                  " must be positive");
    if ((sum - *sides[i] - *sides[i]).sign() <= 0)
      throw std::invalid_argument(std::string("side ") + names[i] +
                                  " is not shorter than the sum of the others");
  }
}

Biquad link_correspondence(const FourBarLink& L) {
  validate(L);
  const Number c2 = L.c * L.c;
  biquad::Mat3 m;
  for (auto& row : m)
    for (auto& v : row) v = 0;
  m[2][2] = sq(L.a + L.b + L.d) - c2;
  m[2][0] = sq(L.a + L.b - L.d) - c2;
  m[0][2] = sq(L.a - L.b + L.d) - c2;
  m[0][0] = sq(L.a - L.b - L.d) - c2;
  m[1][1] = Number(8) * L.b * L.d;
  return Biquad(m);
}

Number S_invariant(const FourBarLink& L) {
  auto [al, be, ga, de] = squares(L);
  return al - be + ga - de;
}

Number W_invariant(const FourBarLink& L) {
  auto [al, be, ga, de] = squares(L);
  return al * ga - be * de;
}

Number T_invariant(const FourBarLink& L) {
  auto [al, be, ga, de] = squares(L);
  return al * al - Number(2) * al * (be + ga + de) + be * be -
         Number(2) * be * (ga + de) + sq(ga - de);
}

Number K4_invariant(const FourBarLink& L) {
  auto [al, be, ga, de] = squares(L);
  return k4_from_squares(al, be, ga, de);
}

Number K6_invariant(const FourBarLink& L) {
  auto [al, be, ga, de] = squares(L);
  return k6_from_squares(al, be, ga, de);
}

bool closed_form_divisibility(const FourBarLink& L, int n) {
  auto [al, be, ga, de] = squares(L);
  const Number S = al - be + ga - de;
  const Number W = al * ga - be * de;
  const Number S2 = S * S;
  switch (n) {
    case 2:
      return S.is_zero();
    case 3:
      return be * de * S2 == W * W;
    case 4:
      return S.is_zero() || al * ga == be * de ||
             k4_from_squares(al, be, ga, de).is_zero();
    case 5: {
      const Number lhs = be * de * S2 * sq(al * ga * S2 - W * W);
      const Number rhs = W * W * sq(W * W - be * de * S2);
      return lhs == rhs;
    }
    case 6:
      return S.is_zero() || be * de * S2 == W * W || al * ga * S2 == W * W ||
             k6_from_squares(al, be, ga, de).is_zero();
    default:
      throw std::invalid_argument("closed forms cover n = 2..6");
  }
}

PeriodicityReport periodicity(const FourBarLink& L, Tower& tower, int n_max,
                              int digits) {
  PeriodicityReport r;
  Biquad q = link_correspondence(L);
  r.smooth = q.is_smooth();
  r.order = walks::group_order_of_curve(q, tower, n_max, digits);
  for (int n = 2; n <= 6; ++n) r.divides[n - 2] = closed_form_divisibility(L, n);
  if (r.smooth) {
    cubic::CubicModel m = cubic::cubic_model(q, 8);
    for (int n = 2; n <= 6; ++n)
      if (cubic::cayley_condition(m, n) != r.divides[n - 2]) {
        r.closed_form_agrees = false;
        throw std::logic_error(
            "closed-form divisibility disagrees with the Taylor route at n = " +
            std::to_string(n));
      }
  }
  return r;
}

// ---- secondary curve and semi-periodicity -----------------------------------

Biquad secondary_curve(const Biquad& q) {
  if (!q.a(2, 1).is_zero() || !q.a(1, 2).is_zero() || !q.a(1, 0).is_zero() ||
      !q.a(0, 1).is_zero())
    throw std::invalid_argument("secondary curve needs a centrally symmetric "
                                "biquadratic (a21 = a12 = a10 = a01 = 0)");
  const Number a22 = q.a(2, 2), a20 = q.a(2, 0), a02 = q.a(0, 2),
               a00 = q.a(0, 0), a11 = q.a(1, 1);
  const Number two(2);
  biquad::Mat3 m;
  m[2][2] = a22 * a22;
  m[2][1] = two * a22 * a20;
  m[1][2] = two * a22 * a02;
  m[1][1] = two * a22 * a00 + two * a02 * a20 - a11 * a11;
  m[2][0] = a20 * a20;
  m[0][2] = a02 * a02;
  m[1][0] = two * a20 * a00;
  m[0][1] = two * a02 * a00;
  m[0][0] = a00 * a00;
  return Biquad(m);
}

SemiPeriodicityReport semi_periodicity(const FourBarLink& L, Tower& tower,
                                       int n_max, int digits) {
  SemiPeriodicityReport r;
  Biquad q = link_correspondence(L);
  Biquad qh = secondary_curve(q);
  r.primary = walks::group_order_of_curve(q, tower, n_max, digits);
  r.secondary = walks::group_order_of_curve(qh, tower, n_max, digits);

  auto [al, be, ga, de] = squares(L);
  const Number S = al - be + ga - de;
  const Number W = al * ga - be * de;
  r.closed2 = (L.a * L.c == L.b * L.d);
  r.closed3 = (al * ga * S * S == W * W);

  std::ostringstream cert;
  if (q.is_smooth() && qh.is_smooth()) {
    cubic::CubicModel m = cubic::cubic_model(q, n_max + 3);
    cubic::CubicModel mh = cubic::cubic_model(qh, n_max + 3);
    for (int k = 2; k <= n_max; ++k)
      if (cubic::cayley_condition(mh, k) && !cubic::cayley_condition(m, k)) {
        r.semi_period = k;
        break;
      }
    const bool sem2 = cubic::cayley_condition(mh, 2) && !cubic::cayley_condition(m, 2);
    if (sem2 != (r.closed2 && !closed_form_divisibility(L, 2)))
      throw std::logic_error("semi-period-2 closed form disagrees with the "
                             "secondary-curve route");
    const bool sem3 = cubic::cayley_condition(mh, 3) && !cubic::cayley_condition(m, 3);
    if (sem3 != (r.closed3 && !closed_form_divisibility(L, 3)))
      throw std::logic_error("semi-period-3 closed form disagrees with the "
                             "secondary-curve route");
    if (r.semi_period > 0) {
      r.implied_period = 2 * r.semi_period;
      cert << "secondary order divides " << r.semi_period
           << ", primary order does not; full period " << r.implied_period;
    } else {
      cert << "no semi-period up to " << n_max;
    }
  } else {
    cert << "semi-periodicity scan needs smooth primary and secondary curves "
            "(primary: "
         << r.primary.status << ", secondary: " << r.secondary.status << ")";
  }
  r.certificate = cert.str();
  return r;
}

// ---- tangential degenerations -------------------------------------------------

TangentialReport tangential_analysis(const FourBarLink& L, Tower& tower,
                                     int n_max, int digits) {
  validate(L);
  TangentialReport r;
  r.tangential = (L.a + L.c == L.b + L.d);
  r.ex_tangential_ab = (L.a + L.b == L.c + L.d);
  r.ex_tangential_ad = (L.a + L.d == L.b + L.c);

  const bool kite = (L.a == L.b && L.c == L.d) || (L.b == L.c && L.d == L.a);
  const bool rhombus = L.a == L.b && L.b == L.c && L.c == L.d;
  const bool parallelogram = L.a == L.c && L.b == L.d;

  if (!r.tangential && !r.ex_tangential_ab && !r.ex_tangential_ad) {
    r.shape = parallelogram ? "parallelogram" : "none";
    r.status = "not-tangential";
    return r;
  }
  r.shape = rhombus ? "rhombus" : kite ? "kite" : "generic";

  const int relations = int(r.tangential) + int(r.ex_tangential_ab) +
                        int(r.ex_tangential_ad);
  if (r.shape == "generic" && relations == 1) {
    if (r.tangential)
      r.node_ratio = L.b * L.d / ((L.a - L.d) * (L.a - L.b));
    else if (r.ex_tangential_ab)
      r.node_ratio = L.b * L.d / ((L.d - L.a) * (L.a + L.b));
    else
      r.node_ratio = L.b * L.d / ((L.b - L.a) * (L.a + L.d));
  }

  Biquad q = link_correspondence(L);
  singular::SingularAnalysis an =
      singular::analyze_singular(q, tower, n_max, digits);
  r.status = an.status;
  if (r.node_ratio && an.double_point && an.double_point->ratio)
    r.ratio_matches_pipeline = (*an.double_point->ratio == *r.node_ratio);
  r.analysis = std::move(an);
  return r;
}

// ---- walk conversion ------------------------------------------------------------

LinkWalkConversion link_to_walk(const FourBarLink& L, const Number& lambda) {
  validate(L);
  if (lambda.is_zero()) throw std::invalid_argument("lambda must be nonzero");
  LinkWalkConversion out;
  out.lambda = lambda;
  out.walk.strict = false;
  for (auto& row : out.walk.p)
    for (auto& v : row) v = Number(0);
  const Number c2 = L.c * L.c;
  out.walk.p[2][2] = (sq(L.a + L.b + L.d) - c2) / lambda;
  out.walk.p[2][0] = (sq(L.a + L.b - L.d) - c2) / lambda;
  out.walk.p[0][2] = (sq(L.a - L.b + L.d) - c2) / lambda;
  out.walk.p[0][0] = (sq(L.a - L.b - L.d) - c2) / lambda;
  out.walk.p[1][1] = (Number(8) * L.b * L.d + lambda) / lambda;
  out.mass = walks::total_mass(out.walk);
  out.stochastic = out.mass.is_one();
  if (out.stochastic)
    for (auto& row : out.walk.p)
      for (auto& v : row)
        if (v.sign() < 0) out.stochastic = false;

  Biquad scaled = link_correspondence(L).scaled(lambda.inverse());
  Biquad from_walk = walks::kernel(out.walk);
  out.kernel_matches = true;
  for (int i = 0; i < 3 && out.kernel_matches; ++i)
    for (int j = 0; j < 3; ++j)
      if (from_walk.a(i, j) != scaled.a(i, j)) {
        out.kernel_matches = false;
        break;
      }
  return out;
}

WalkLinkInversion walk_to_link(const walks::WalkSpec& w, const Number& lambda,
                               Tower& tower) {
  if (lambda.is_zero()) throw std::invalid_argument("lambda must be nonzero");
  if (!w.p[2][1].is_zero() || !w.p[1][2].is_zero() || !w.p[0][1].is_zero() ||
      !w.p[1][0].is_zero())
    throw std::invalid_argument(
        "side recovery needs a diagonal walk (axial steps must vanish)");
  const Number p00 = w.p[1][1], p11 = w.p[2][2], p1m1 = w.p[2][0],
               pm11 = w.p[0][2], pm1m1 = w.p[0][0];

  const Number q1_den = pm1m1 - p11;
  if (q1_den.is_zero())
    throw std::invalid_argument(
        "p(-1,-1) = p(1,1) forces a degenerate base side a = 0");
  const Number q1 = (pm11 - p1m1) / q1_den;
  if ((Number(1) - q1).sign() <= 0 || (q1 + Number(1)).sign() <= 0)
    throw std::invalid_argument("recovered (b-d)/(b+d) falls outside (-1, 1)");

  WalkLinkInversion out;
  const Number q2_den = pm1m1 - pm11;
  Number a_over_b;
  if (q2_den.is_zero()) {
    out.kite_limit = true;  // a = b limit
    a_over_b = Number(1);
  } else {
    const Number q2 = (p1m1 - p11) / q2_den;
    if ((q2 - Number(1)).is_zero())
      throw std::invalid_argument("recovered (a+b)/(a-b) degenerates (q2 = 1)");
    a_over_b = (q2 + Number(1)) / (q2 - Number(1));
  }

  const Number b_rad =
      lambda * (p00 - Number(1)) * (q1 + Number(1)) / (Number(8) * (Number(1) - q1));
  if (b_rad.sign() <= 0)
    throw std::invalid_argument("radicand for side b is not positive");
  const Number b = num::sqrt_number(b_rad, tower);
  const Number d = (Number(1) - q1) / (Number(1) + q1) * b;
  const Number a = a_over_b * b;
  if (a.sign() <= 0) throw std::invalid_argument("recovered side a is not positive");
  const Number c_rad = sq(a - b - d) - lambda * pm1m1;
  if (c_rad.sign() <= 0)
    throw std::invalid_argument("radicand for side c is not positive");
  const Number c = num::sqrt_number(c_rad, tower);

  out.link = FourBarLink{a, b, c, d};
  validate(out.link);

  LinkWalkConversion fwd = link_to_walk(out.link, lambda);
  out.round_trip = true;
  for (int i = 0; i < 3 && out.round_trip; ++i)
    for (int j = 0; j < 3; ++j)
      if (fwd.walk.p[i][j] != w.p[i][j]) {
        out.round_trip = false;
        break;
      }
  return out;
}

// ---- geometric layer --------------------------------------------------------------

QuadPoints configuration_points(const FourBarLink& L, const Configuration& c) {
  const double a = L.a.to_double(), b = L.b.to_double(), d = L.d.to_double();
  QuadPoints q;
  q.v[0] = {0.0, 0.0};
  q.v[1] = {a, 0.0};
  q.v[2] = {a + b * std::cos(c.phi), b * std::sin(c.phi)};
  q.v[3] = {d * std::cos(c.psi), d * std::sin(c.psi)};
  return q;
}

std::pair<double, double> chart_coordinates(const Configuration& c) {
  return {std::cos(c.phi / 2) / std::sin(c.phi / 2), -std::tan(c.psi / 2)};
}

Configuration configuration_from_chart(double x, double y) {
  return {2 * std::atan2(1.0, x), 2 * std::atan(-y)};
}

std::vector<Configuration> configurations_at_phi(const FourBarLink& L,
                                                 double phi) {
  const double a = L.a.to_double(), b = L.b.to_double(),
               c = L.c.to_double(), d = L.d.to_double();
  const P2 v3{a + b * std::cos(phi), b * std::sin(phi)};
  const double ell = std::hypot(v3.x, v3.y);
  std::vector<Configuration> out;
  if (ell < 1e-12) return out;
  const double alpha = (d * d - c * c + ell * ell) / (2 * ell);
  const double h2 = d * d - alpha * alpha;
  if (h2 < -1e-12) return out;
  const double h = h2 > 0 ? std::sqrt(h2) : 0.0;
  const double ux = v3.x / ell, uy = v3.y / ell;
  const P2 base{alpha * ux, alpha * uy};
  const P2 p1{base.x - h * uy, base.y + h * ux};
  const P2 p2{base.x + h * uy, base.y - h * ux};
  out.push_back({phi, std::atan2(p1.y, p1.x)});
  if (h > 1e-12) out.push_back({phi, std::atan2(p2.y, p2.x)});
  return out;
}

Configuration darboux_step_geometric(const FourBarLink& L,
                                     const Configuration& c) {
  QuadPoints q = configuration_points(L, c);
  const P2 v1{q.v[0].first, q.v[0].second};
  const P2 v2{q.v[1].first, q.v[1].second};
  const P2 v3{q.v[2].first, q.v[2].second};
  const P2 v4{q.v[3].first, q.v[3].second};
  const P2 v4p = reflect_across(v4, v1, v3);
  const P2 v3p = reflect_across(v3, v2, v4p);
  const double a = L.a.to_double();
  return {std::atan2(v3p.y, v3p.x - a), std::atan2(v4p.y, v4p.x)};
}

bool orbit_closes(const FourBarLink& L, const Configuration& start, int n,
                  double tol) {
  QuadPoints q0 = configuration_points(L, start);
  Configuration c = start;
  for (int i = 0; i < n; ++i) c = darboux_step_geometric(L, c);
  QuadPoints qn = configuration_points(L, c);
  const double err =
      std::hypot(qn.v[2].first - q0.v[2].first, qn.v[2].second - q0.v[2].second) +
      std::hypot(qn.v[3].first - q0.v[3].first, qn.v[3].second - q0.v[3].second);
  return err < tol;
}

bool orbit_reflects(const FourBarLink& L, const Configuration& start, int n,
                    double tol) {
  QuadPoints q0 = configuration_points(L, start);
  Configuration c = start;
  for (int i = 0; i < n; ++i) c = darboux_step_geometric(L, c);
  QuadPoints qn = configuration_points(L, c);
  const double err =
      std::hypot(qn.v[2].first - q0.v[2].first, qn.v[2].second + q0.v[2].second) +
      std::hypot(qn.v[3].first - q0.v[3].first, qn.v[3].second + q0.v[3].second);
  return err < tol;
}

Configuration random_configuration(const FourBarLink& L, unsigned seed) {
  std::mt19937 gen(seed);
  std::uniform_real_distribution<double> ang(-3.1, 3.1);
  std::bernoulli_distribution coin(0.5);
  for (int tries = 0; tries < 10000; ++tries) {
    const double phi = ang(gen);
    auto sols = configurations_at_phi(L, phi);
    if (sols.empty()) continue;
    // reject near-degenerate branch points for numerical robustness
    if (sols.size() == 2 &&
        std::abs(sols[0].psi - sols[1].psi) < 1e-3)
      continue;
    return (sols.size() == 2 && coin(gen)) ? sols[1] : sols[0];
  }
  throw std::runtime_error("no valid configuration found (degenerate linkage?)");
}

bool poristic_check(const FourBarLink& L, int n, int trials, unsigned seed,
                    double tol) {
  for (int t = 0; t < trials; ++t) {
    Configuration start = random_configuration(L, seed + 1000003u * t);
    if (!orbit_closes(L, start, n, tol)) return false;
  }
  return true;
}

std::string render_orbit_svg(const FourBarLink& L, const Configuration& start,
                             int steps) {
  std::vector<QuadPoints> frames;
  Configuration c = start;
  for (int i = 0; i <= steps; ++i) {
    frames.push_back(configuration_points(L, c));
    if (i < steps) c = darboux_step_geometric(L, c);
  }
  double minx = 0, maxx = 0, miny = 0, maxy = 0;
  for (const auto& f : frames)
    for (const auto& [x, y] : f.v) {
      minx = std::min(minx, x);
      maxx = std::max(maxx, x);
      miny = std::min(miny, y);
      maxy = std::max(maxy, y);
    }
  const double margin = 0.1 * std::max(maxx - minx, maxy - miny) + 0.1;
  minx -= margin;
  maxx += margin;
  miny -= margin;
  maxy += margin;
  const double w = maxx - minx, h = maxy - miny;
  const double panel = 120.0, scale = panel / std::max(w, h);

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\""
      << fmt(panel * frames.size()) << "\" height=\"" << fmt(panel)
      << "\" viewBox=\"0 0 " << fmt(panel * frames.size()) << " " << fmt(panel)
      << "\">\n";
  for (size_t i = 0; i < frames.size(); ++i) {
    const double ox = panel * double(i);
    auto tx = [&](double x) { return ox + (x - minx) * scale; };
    auto ty = [&](double y) { return panel - (y - miny) * scale; };
    const auto& f = frames[i];
    svg << "<polygon points=\"";
    for (int k = 0; k < 4; ++k)
      svg << fmt(tx(f.v[k].first)) << "," << fmt(ty(f.v[k].second))
          << (k < 3 ? " " : "");
    svg << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";
    svg << "<line x1=\"" << fmt(tx(f.v[0].first)) << "\" y1=\""
        << fmt(ty(f.v[0].second)) << "\" x2=\"" << fmt(tx(f.v[1].first))
        << "\" y2=\"" << fmt(ty(f.v[1].second))
        << "\" stroke=\"black\" stroke-width=\"2.5\"/>\n";
    for (int k = 0; k < 4; ++k)
      svg << "<circle cx=\"" << fmt(tx(f.v[k].first)) << "\" cy=\""
          << fmt(ty(f.v[k].second)) << "\" r=\"2\" fill=\""
          << (k < 2 ? "black" : "white") << "\" stroke=\"black\"/>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace qrt::linkage
