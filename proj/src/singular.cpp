#include "qrt/singular.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <utility>

#include "qrt/bigfloat.hpp"

namespace qrt::singular {
namespace {

using biquad::Mat3;
using num::BigFloat;
using num::rational_approx;
using num::sqrt_number;

int xdeg_of(const Mat3& m) {
  for (int i = 2; i >= 0; --i)
    for (int j = 0; j < 3; ++j)
      if (!m[i][j].is_zero()) return i;
  return -1;
}

int ydeg_of(const Mat3& m) {
  for (int j = 2; j >= 0; --j)
    for (int i = 0; i < 3; ++i)
      if (!m[i][j].is_zero()) return j;
  return -1;
}

Poly col_poly(const Mat3& m, int j) {
  return Poly(std::vector<Number>{m[0][j], m[1][j], m[2][j]});
}

Poly row_poly(const Mat3& m, int i) {
  return Poly(std::vector<Number>{m[i][0], m[i][1], m[i][2]});
}

// Exact division of every y-column (a polynomial in x) by g.
Mat3 divide_cols(const Mat3& m, const Poly& g) {
  Mat3 out{};
  for (int j = 0; j < 3; ++j) {
    auto [quo, rem] = col_poly(m, j).divmod(g);
    if (!rem.is_zero())
      throw std::logic_error("extracted x-content does not divide the curve");
    for (int i = 0; i < 3; ++i) out[i][j] = quo.coeff(i);
  }
  return out;
}

Mat3 divide_rows(const Mat3& m, const Poly& g) {
  Mat3 out{};
  for (int i = 0; i < 3; ++i) {
    auto [quo, rem] = row_poly(m, i).divmod(g);
    if (!rem.is_zero())
      throw std::logic_error("extracted y-content does not divide the curve");
    for (int j = 0; j < 3; ++j) out[i][j] = quo.coeff(j);
  }
  return out;
}

// Line components in one direction: the finite content (a monic polynomial of
// degree <= 2) split into locations where the tower allows, plus the
// multiplicity of the line at infinity.
struct LineSet {
  std::vector<std::pair<Number, int>> finite;  // (location, multiplicity)
  int inf_mult = 0;
  std::optional<Poly> pair_quadratic;  // unsplit quadratic factor
  bool pair_complex = false;
  int total = 0;            // total multiplicity, equals content degree + inf
  std::vector<int> mults;   // multiplicity profile, descending
};

LineSet collect_lines(const Poly& content, int inf_mult, Tower& tower) {
  LineSet ls;
  ls.inf_mult = inf_mult;
  ls.total = inf_mult;
  if (inf_mult > 0) ls.mults.push_back(inf_mult);
  if (content.degree() >= 1) {
    const auto factors = poly::squarefree_decomposition(content);
    for (std::size_t k = 0; k < factors.size(); ++k) {
      const Poly& f = factors[k];
      const int mult = static_cast<int>(k) + 1;
      if (f.degree() <= 0) continue;
      if (f.degree() == 1) {
        ls.finite.emplace_back(-f.coeff(0), mult);
        ls.mults.push_back(mult);
        ls.total += mult;
      } else {  // degree 2, squarefree: two distinct (possibly complex) roots
        const Number p = f.coeff(1);
        const Number disc = p * p - f.coeff(0) * 4;
        bool split = false;
        if (disc.sign() > 0) {
          try {
            const Number s = sqrt_number(disc, tower);
            ls.finite.emplace_back((s - p) / 2, mult);
            ls.finite.emplace_back((-s - p) / 2, mult);
            split = true;
          } catch (const std::runtime_error&) {
            // tower depth exhausted; keep the factor unsplit
          }
        }
        if (!split) {
          ls.pair_quadratic = f;
          ls.pair_complex = disc.sign() < 0;
        }
        ls.mults.push_back(mult);
        ls.mults.push_back(mult);
        ls.total += 2 * mult;
      }
    }
  }
  std::sort(ls.mults.begin(), ls.mults.end(), std::greater<int>());
  return ls;
}

void add_line_components(std::vector<Component>& out, const LineSet& ls,
                         bool vertical) {
  const std::string base = vertical ? "vertical-line" : "horizontal-line";
  if (ls.inf_mult > 0) {
    Component c;
    c.kind = base;
    c.multiplicity = ls.inf_mult;
    c.location = Coord::inf();
    c.bidegree_x = vertical ? 1 : 0;
    c.bidegree_y = vertical ? 0 : 1;
    out.push_back(std::move(c));
  }
  for (const auto& [loc, mult] : ls.finite) {
    Component c;
    c.kind = base;
    c.multiplicity = mult;
    c.location = Coord::of(loc);
    c.bidegree_x = vertical ? 1 : 0;
    c.bidegree_y = vertical ? 0 : 1;
    out.push_back(std::move(c));
  }
  if (ls.pair_quadratic) {
    Component c;
    c.kind = base + (ls.pair_complex ? "-pair-conjugate" : "-pair");
    c.multiplicity = 1;
    c.coeffs = ls.pair_quadratic->coeffs();
    c.bidegree_x = vertical ? 2 : 0;
    c.bidegree_y = vertical ? 0 : 2;
    out.push_back(std::move(c));
  }
}

Component conic_from_graph(const Mobius& m) {
  Component c;
  c.kind = "conic";
  c.coeffs = {m.c, -m.a, m.d, -m.b};  // {xy, x, y, 1}
  c.bidegree_x = 1;
  c.bidegree_y = 1;
  return c;
}

Mobius mobius_mul(const Mobius& a, const Mobius& b) {
  return Mobius{a.a * b.a + a.b * b.c, a.a * b.b + a.b * b.d,
                a.c * b.a + a.d * b.c, a.c * b.b + a.d * b.d};
}

bool proportional_identity(const Mobius& m) {
  return m.b.is_zero() && m.c.is_zero() && !m.a.is_zero() && m.a == m.d;
}

Mobius mobius_normalized(const Mobius& m) {
  const Number* pivot = nullptr;
  for (const Number* e : {&m.a, &m.b, &m.c, &m.d})
    if (!e->is_zero()) {
      pivot = e;
      break;
    }
  if (!pivot) throw std::logic_error("zero Mobius matrix");
  return Mobius{m.a / *pivot, m.b / *pivot, m.c / *pivot, m.d / *pivot};
}

Mobius graph_from(Poly numtor, Poly dentor) {
  const Poly g = poly::gcd(numtor, dentor);
  if (g.degree() >= 1) {
    numtor = numtor / g;
    dentor = dentor / g;
  }
  if (dentor.is_zero() || numtor.degree() > 1 || dentor.degree() > 1)
    throw std::logic_error("fiber root is not the graph of a (1,1) curve");
  return Mobius{numtor.coeff(1), numtor.coeff(0), dentor.coeff(1),
                dentor.coeff(0)};
}

struct PatternRow {
  std::optional<std::vector<int>> d1, d2;
};

PatternRow expected_patterns(CaseLabel label) {
  using V = std::vector<int>;
  switch (label) {
    case CaseLabel::i:    return {V{2, 1, 1}, V{2, 1, 1}};
    case CaseLabel::ii:   return {V{3, 1}, V{3, 1}};
    case CaseLabel::iii:  return {V{2, 2}, V{2, 2}};
    case CaseLabel::iv:   return {V{4}, V{4}};
    case CaseLabel::v:    return {std::nullopt, std::nullopt};
    case CaseLabel::vi:   return {V{2, 2}, V{2, 2}};
    case CaseLabel::vii:  return {V{4}, V{4}};
    case CaseLabel::viii: return {V{2, 2}, V{2, 2}};
    case CaseLabel::ix:   return {std::nullopt, std::nullopt};
    case CaseLabel::x:    return {V{4}, std::nullopt};
    case CaseLabel::xi:   return {std::nullopt, V{4}};
    case CaseLabel::xii:  return {V{2, 2}, V{2, 1, 1}};
    case CaseLabel::xiii: return {V{4}, V{3, 1}};
    case CaseLabel::xiv:  return {V{2, 1, 1}, V{2, 2}};
    case CaseLabel::xv:   return {V{3, 1}, V{4}};
    case CaseLabel::smooth: break;
  }
  return {std::nullopt, std::nullopt};
}

BigFloat tolerance_1e30(int digits) {
  mpz_class tail;
  mpz_ui_pow_ui(tail.get_mpz_t(), 10, 30);
  return BigFloat::from_rational(mpq_class(mpz_class(1), tail), digits);
}

}  // namespace

std::string to_string(CaseLabel label) {
  switch (label) {
    case CaseLabel::smooth: return "smooth";
    case CaseLabel::i:      return "i";
    case CaseLabel::ii:     return "ii";
    case CaseLabel::iii:    return "iii";
    case CaseLabel::iv:     return "iv";
    case CaseLabel::v:      return "v";
    case CaseLabel::vi:     return "vi";
    case CaseLabel::vii:    return "vii";
    case CaseLabel::viii:   return "viii";
    case CaseLabel::ix:     return "ix";
    case CaseLabel::x:      return "x";
    case CaseLabel::xi:     return "xi";
    case CaseLabel::xii:    return "xii";
    case CaseLabel::xiii:   return "xiii";
    case CaseLabel::xiv:    return "xiv";
    case CaseLabel::xv:     return "xv";
  }
  return "?";
}

std::string describe(CaseLabel label) {
  switch (label) {
    case CaseLabel::smooth: return "nonsingular biquadratic";
    case CaseLabel::i:      return "irreducible with one ordinary double point";
    case CaseLabel::ii:     return "irreducible with one cusp";
    case CaseLabel::iii:    return "two (1,1) conics through two distinct points";
    case CaseLabel::iv:     return "two (1,1) conics tangent at one point";
    case CaseLabel::v:      return "one (1,1) conic doubled";
    case CaseLabel::vi:     return "conic + horizontal + vertical line, crossing off the conic";
    case CaseLabel::vii:    return "conic + horizontal + vertical line, crossing on the conic";
    case CaseLabel::viii:   return "two horizontal + two vertical lines";
    case CaseLabel::ix:     return "double horizontal + double vertical line";
    case CaseLabel::x:      return "two horizontal lines + double vertical line";
    case CaseLabel::xi:     return "double horizontal line + two vertical lines";
    case CaseLabel::xii:    return "horizontal line + transversal (2,1) curve";
    case CaseLabel::xiii:   return "horizontal line + tangent (2,1) curve";
    case CaseLabel::xiv:    return "vertical line + transversal (1,2) curve";
    case CaseLabel::xv:     return "vertical line + tangent (1,2) curve";
  }
  return "?";
}

SingularClass classify(const Biquad& q, Tower& tower) {
  SingularClass out;
  const Poly dx = q.disc_x();
  const Poly dy = q.disc_y();
  if (!dx.is_zero()) out.d1 = poly::multiplicity_pattern(dx, 4);
  if (!dy.is_zero()) out.d2 = poly::multiplicity_pattern(dy, 4);

  if (q.invariants().smooth) {
    out.label = CaseLabel::smooth;
    out.symmetrizable = true;
    return out;
  }

  const Mat3& a = q.coeffs();
  const int vinf = 2 - xdeg_of(a);
  const int hinf = 2 - ydeg_of(a);

  Poly gv = poly::gcd(poly::gcd(col_poly(a, 0), col_poly(a, 1)), col_poly(a, 2));
  Mat3 rest = a;
  if (gv.degree() >= 1) rest = divide_cols(rest, gv);
  Poly gh = poly::gcd(poly::gcd(row_poly(rest, 0), row_poly(rest, 1)),
                      row_poly(rest, 2));
  if (gh.degree() >= 1) rest = divide_rows(rest, gh);

  const LineSet vert = collect_lines(gv, vinf, tower);
  const LineSet horiz = collect_lines(gh, hinf, tower);
  const int rx = xdeg_of(rest);
  const int ry = ydeg_of(rest);
  if (rx != 2 - vert.total || ry != 2 - horiz.total)
    throw std::logic_error("component bidegrees do not sum to (2,2)");

  add_line_components(out.components, vert, true);
  add_line_components(out.components, horiz, false);

  if (rx == 0 && ry == 0) {
    const std::vector<int> two{2}, one_one{1, 1};
    const bool vd = vert.mults == two, vs = vert.mults == one_one;
    const bool hd = horiz.mults == two, hs = horiz.mults == one_one;
    if (vs && hs)      out.label = CaseLabel::viii;
    else if (vd && hd) out.label = CaseLabel::ix;
    else if (vd && hs) out.label = CaseLabel::x;
    else if (vs && hd) out.label = CaseLabel::xi;
    else throw std::logic_error("line multiplicities match no configuration");
  } else if (rx == 1 && ry == 1) {
    if (vert.total != 1 || horiz.total != 1)
      throw std::logic_error("(1,1) remainder with wrong line content");
    const Number alpha = rest[1][1], beta = rest[1][0];
    const Number gamma = rest[0][1], delta = rest[0][0];
    if ((alpha * delta - beta * gamma).is_zero())
      throw std::logic_error("residual (1,1) factor is degenerate");
    const Coord vx = vert.inf_mult ? Coord::inf() : Coord::of(vert.finite[0].first);
    const Coord hy = horiz.inf_mult ? Coord::inf() : Coord::of(horiz.finite[0].first);
    Number val;
    if (vx.at_inf && hy.at_inf)      val = alpha;
    else if (vx.at_inf)              val = alpha * hy.v + beta;
    else if (hy.at_inf)              val = alpha * vx.v + gamma;
    else val = alpha * vx.v * hy.v + beta * vx.v + gamma * hy.v + delta;
    out.label = val.is_zero() ? CaseLabel::vii : CaseLabel::vi;
    Component c;
    c.kind = "conic";
    c.coeffs = {alpha, beta, gamma, delta};
    c.bidegree_x = c.bidegree_y = 1;
    out.components.push_back(std::move(c));
  } else if ((rx == 2 && ry == 1) || (rx == 1 && ry == 2)) {
    const bool hside = (ry == 1);  // horizontal line + (2,1) remainder
    const LineSet& line = hside ? horiz : vert;
    const LineSet& other = hside ? vert : horiz;
    if (line.total != 1 || other.total != 0)
      throw std::logic_error("cubic remainder with wrong line content");
    const Coord at = line.inf_mult ? Coord::inf() : Coord::of(line.finite[0].first);
    std::vector<Number> restricted(3);
    for (int k = 0; k < 3; ++k) {
      if (hside)
        restricted[k] = at.at_inf ? rest[k][1] : rest[k][0] + rest[k][1] * at.v;
      else
        restricted[k] = at.at_inf ? rest[1][k] : rest[0][k] + rest[1][k] * at.v;
    }
    const Poly on_line{std::vector<Number>(restricted)};
    if (on_line.is_zero())
      throw std::logic_error("line lies inside the residual curve");
    const bool tangent = poly::multiplicity_pattern(on_line, 2) == std::vector<int>{2};
    out.label = hside ? (tangent ? CaseLabel::xiii : CaseLabel::xii)
                      : (tangent ? CaseLabel::xv : CaseLabel::xiv);
    Component c;
    c.kind = hside ? "curve-(2,1)" : "curve-(1,2)";
    c.bidegree_x = hside ? 2 : 1;
    c.bidegree_y = hside ? 1 : 2;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) c.coeffs.push_back(rest[i][j]);
    out.components.push_back(std::move(c));
  } else if (rx == 2 && ry == 2) {
    if (vert.total != 0 || horiz.total != 0)
      throw std::logic_error("full remainder after line extraction");
    if (dx.is_zero()) {
      if (!dy.is_zero())
        throw std::logic_error("one-sided identically-zero discriminant");
      out.label = CaseLabel::v;
      const ConicSplit sp = split_conic_pair(q, tower);
      if (sp.phi1) {
        Component c = conic_from_graph(*sp.phi1);
        c.multiplicity = 2;
        out.components.push_back(std::move(c));
      }
    } else {
      const auto square = poly::as_signed_square(dx, tower);
      const std::vector<int>& pat = *out.d1;
      if (square) {
        if (pat == std::vector<int>{2, 2})     out.label = CaseLabel::iii;
        else if (pat == std::vector<int>{4})   out.label = CaseLabel::iv;
        else throw std::logic_error("conic pair with unexpected contact pattern");
        const ConicSplit sp = split_conic_pair(q, tower);
        if (sp.real && sp.phi1 && sp.phi2) {
          out.components.push_back(conic_from_graph(*sp.phi1));
          out.components.push_back(conic_from_graph(*sp.phi2));
        } else {
          Component c;
          c.kind = "conic-pair-conjugate";
          c.bidegree_x = c.bidegree_y = 2;
          out.components.push_back(std::move(c));
        }
      } else {
        if (pat == std::vector<int>{2, 1, 1})  out.label = CaseLabel::i;
        else if (pat == std::vector<int>{3, 1}) out.label = CaseLabel::ii;
        else throw std::logic_error("pattern matches no irreducible configuration");
        Component c;
        c.kind = out.label == CaseLabel::i ? "irreducible-nodal"
                                           : "irreducible-cuspidal";
        c.bidegree_x = c.bidegree_y = 2;
        out.components.push_back(std::move(c));
      }
    }
  } else {
    throw std::logic_error("residual bidegree inconsistent with line extraction");
  }

  const PatternRow expect = expected_patterns(out.label);
  if (expect.d1 != out.d1 || expect.d2 != out.d2)
    throw std::logic_error("configuration " + to_string(out.label) +
                           " inconsistent with discriminant patterns");
  out.symmetrizable =
      static_cast<int>(out.label) <= static_cast<int>(CaseLabel::ix);
  return out;
}

CosSqRecognition recognize_cos_sq(const Number& r, int n_max, int digits) {
  CosSqRecognition rec;
  if (r.sign() < 0 || r > Number(1)) {
    rec.method = "out-of-range";
    return rec;
  }
  if (r == Number(1)) {
    rec.degenerate_identity = true;
    rec.method = "degenerate-unit";
    return rec;
  }
  if (r.is_rational()) {
    rec.method = "rational-closed-form";
    static const struct { long num, den, n; } kTable[] = {
        {0, 1, 2}, {1, 4, 3}, {1, 2, 4}, {3, 4, 6}};
    const mpq_class& v = r.as_rational();
    for (const auto& row : kTable) {
      mpq_class cell(row.num, row.den);
      cell.canonicalize();
      if (v == cell) {
        if (row.n <= static_cast<long>(n_max)) {
          rec.periodic = true;
          rec.n = static_cast<int>(row.n);
          rec.m = 1;
        }
        return rec;
      }
    }
    return rec;
  }
  rec.method = "continued-fraction";
  const BigFloat rf = BigFloat::from_number(r, digits);
  const BigFloat theta = rf.sqrt().acos();
  const BigFloat frac = theta / BigFloat::pi(digits);
  mpq_class mn;
  if (!rational_approx(frac, static_cast<unsigned long>(n_max), &mn)) return rec;
  if (mn.get_num() <= 0 || mn.get_den() < 2) return rec;
  const BigFloat err = (frac - BigFloat::from_rational(mn, digits)).abs();
  if (!(err < tolerance_1e30(digits))) return rec;
  rec.periodic = true;
  rec.n = static_cast<int>(mn.get_den().get_si());
  rec.m = static_cast<int>(mn.get_num().get_si());
  return rec;
}

NormalizedDoublePoint normalize_double_point(const Biquad& q) {
  Biquad cur = q;
  bool inv_x = false, inv_y = false;
  Poly dx = cur.disc_x();
  if (dx.is_zero())
    throw std::invalid_argument("fiber discriminant vanishes identically");
  if (4 - dx.degree() >= 2) {  // multiple root at x = infinity
    cur = cur.invert_x();
    inv_x = true;
    dx = cur.disc_x();
  }
  const Poly g = poly::gcd(dx, dx.derivative());
  if (g.degree() < 1)
    throw std::invalid_argument("no double point: discriminant is squarefree");
  Poly g1 = g;
  if (g.degree() > 1) g1 = (g / poly::gcd(g, g.derivative())).monic();
  if (g1.degree() != 1)
    throw std::invalid_argument(
        "multiple double points; not a one-double-point configuration");
  const Number x0 = -g1.coeff(0);
  if (cur.ax().eval(x0).is_zero()) {
    cur = cur.invert_y();
    inv_y = true;
    if (cur.ax().eval(x0).is_zero())
      throw std::invalid_argument("degenerate fiber through the double point");
  }
  const Number y0 = -cur.bx().eval(x0) / (cur.ax().eval(x0) * 2);
  const Biquad norm = cur.translate_x(x0).translate_y(y0);
  if (!norm.a(0, 0).is_zero() || !norm.a(1, 0).is_zero() ||
      !norm.a(0, 1).is_zero())
    throw std::logic_error("double point normalization failed");
  const auto original = [](bool inverted, const Number& t) {
    if (!inverted) return Coord::of(t);
    return t.is_zero() ? Coord::inf() : Coord::of(t.inverse());
  };
  return NormalizedDoublePoint{norm,
                               PointQ{original(inv_x, x0), original(inv_y, y0)},
                               inv_x, inv_y};
}

DoublePointReport double_point_period(const Biquad& qn, int n_max, int digits) {
  if (!qn.a(0, 0).is_zero() || !qn.a(1, 0).is_zero() || !qn.a(0, 1).is_zero())
    throw std::invalid_argument("curve is not normalized at the origin");
  const Number& a11 = qn.a(1, 1);
  const Number lhs = a11 * a11;
  const Number denom = qn.a(2, 0) * qn.a(0, 2) * 4;
  DoublePointReport rep;
  if (lhs == denom) {  // tangent cone is a perfect square: cusp
    if (a11.is_zero() && qn.a(2, 0).is_zero() && qn.a(0, 2).is_zero())
      throw std::invalid_argument("tangent cone vanishes; higher singularity");
    rep.is_cusp = true;
    if (!denom.is_zero()) rep.ratio = lhs / denom;  // == 1
    rep.recognition.method = "cusp";
    return rep;
  }
  if (denom.is_zero()) {  // ratio infinite: never a squared cosine
    rep.recognition.method = "out-of-range";
    return rep;
  }
  rep.ratio = lhs / denom;
  rep.recognition = recognize_cos_sq(*rep.ratio, n_max, digits);
  return rep;
}

ConicSplit split_conic_pair(const Biquad& q, Tower& tower) {
  const Poly a = q.ax();
  const Poly b = q.bx();
  if (a.is_zero())
    throw std::invalid_argument("curve is linear in y; no conic pair");
  const Poly dx = q.disc_x();
  ConicSplit out;
  if (dx.is_zero()) {
    out.identical = true;
    out.phi1 = out.phi2 = graph_from(-b, a * Number(2));
    return out;
  }
  const auto square = poly::as_signed_square(dx, tower);
  if (!square)
    throw std::invalid_argument(
        "fiber discriminant is not a signed square over the tower");
  out.s = square->root;
  out.sign = square->sign;
  if (square->sign < 0) {
    out.real = false;
    return out;
  }
  out.phi1 = graph_from(out.s - b, a * Number(2));
  out.phi2 = graph_from(-out.s - b, a * Number(2));
  return out;
}

MobiusOrderReport mobius_order(const Mobius& phi1, const Mobius& phi2,
                               int n_max, int digits) {
  if (phi1.det().is_zero() || phi2.det().is_zero())
    throw std::invalid_argument("degenerate graph: zero determinant");
  const Mobius inv2{phi2.d, -phi2.b, -phi2.c, phi2.a};
  const Mobius m = mobius_mul(inv2, phi1);
  MobiusOrderReport rep;
  rep.ratio = m.tr() * m.tr() / (m.det() * 4);
  if (proportional_identity(m)) {
    rep.type = "identity";
    rep.order = rep.power_oracle_order = 1;
    rep.recognition.degenerate_identity = true;
    rep.recognition.method = "proportional-identity";
    return rep;
  }
  rep.recognition = recognize_cos_sq(rep.ratio, n_max, digits);
  if (rep.ratio == Number(1))
    rep.type = "parabolic";
  else if (rep.ratio.sign() >= 0 && rep.ratio < Number(1))
    rep.type = "elliptic";
  else
    rep.type = "loxodromic";
  if (rep.recognition.periodic) rep.order = rep.recognition.n;
  Mobius power = mobius_normalized(m);
  for (int k = 1; k <= n_max; ++k) {
    if (proportional_identity(power)) {
      rep.power_oracle_order = k;
      break;
    }
    power = mobius_normalized(mobius_mul(power, m));
  }
  rep.oracle_agreement = (rep.order == rep.power_oracle_order);
  return rep;
}

ZeroDriftReport zero_drift_period(const Biquad& q, int n_max, int digits) {
  Number total(0);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) total += q.a(i, j);
  const Number row0 = q.a(0, 0) + q.a(0, 1) + q.a(0, 2);
  const Number row2 = q.a(2, 0) + q.a(2, 1) + q.a(2, 2);
  const Number col0 = q.a(0, 0) + q.a(1, 0) + q.a(2, 0);
  const Number col2 = q.a(0, 2) + q.a(1, 2) + q.a(2, 2);
  std::string bad;
  if (!total.is_zero()) bad += " total-sum";
  if (row0 != row2) bad += " x-drift";
  if (col0 != col2) bad += " y-drift";
  if (!bad.empty())
    throw std::invalid_argument("zero-drift relations violated:" + bad);
  if ((row2 * col2).is_zero())
    throw std::invalid_argument("a second moment vanishes; ratio undefined");

  ZeroDriftReport rep;
  const Number corner = q.a(0, 0) - q.a(0, 2) - q.a(2, 0) + q.a(2, 2);
  rep.ratio = (corner * corner) / (row2 * col2 * 4);
  rep.recognition = recognize_cos_sq(rep.ratio, n_max, digits);

  // Probability view: weights p_jk = a_{j+1,k+1} except p00 = a11 + 1.
  bool stochastic = true;
  Number p[3][3];
  for (int i = 0; i < 3 && stochastic; ++i)
    for (int j = 0; j < 3 && stochastic; ++j) {
      p[i][j] = (i == 1 && j == 1) ? q.a(1, 1) + Number(1) : q.a(i, j);
      if (p[i][j].sign() < 0) stochastic = false;
    }
  if (!stochastic) return rep;

  rep.probability_data = true;
  Number mxy(0), mxx(0), myy(0);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const long sx = i - 1, sy = j - 1;
      mxy += p[i][j] * Number(sx * sy);
      mxx += p[i][j] * Number(sx * sx);
      myy += p[i][j] * Number(sy * sy);
    }
  if (rep.ratio * (mxx * myy) != mxy * mxy)
    throw std::logic_error("correlation identity failed");
  const BigFloat rbf = BigFloat::from_number(mxy, digits) /
                       (BigFloat::from_number(mxx, digits) *
                        BigFloat::from_number(myy, digits)).sqrt();
  rep.correlation = rbf.to_double();
  const BigFloat theta = (-rbf).acos();
  rep.theta = theta.to_double();
  const BigFloat frac = theta / BigFloat::pi(digits);
  mpq_class mn;
  if (rational_approx(frac, static_cast<unsigned long>(n_max), &mn)) {
    const BigFloat err = (frac - BigFloat::from_rational(mn, digits)).abs();
    if (err < tolerance_1e30(digits) && mn.get_den() >= 1)
      rep.group_order_from_theta = 2 * static_cast<int>(mn.get_den().get_si());
  }
  if (rep.recognition.periodic)
    rep.paths_agree = (rep.group_order_from_theta == 2 * rep.recognition.n);
  else if (!rep.recognition.degenerate_identity)
    rep.paths_agree = (rep.group_order_from_theta == 0);
  return rep;
}

SingularAnalysis analyze_singular(const Biquad& q, Tower& tower, int n_max,
                                  int digits) {
  SingularAnalysis out;
  out.cls = classify(q, tower);
  switch (out.cls.label) {
    case CaseLabel::smooth:
      out.status = "smooth";
      return out;
    case CaseLabel::i:
    case CaseLabel::ii: {
      const auto nd = normalize_double_point(q);
      out.double_point_location = nd.location;
      const auto rep = double_point_period(nd.curve, n_max, digits);
      out.double_point = rep;
      if (rep.recognition.periodic) {
        out.status = "periodic";
        out.qrt_period = rep.recognition.n;
        out.group_order = 2 * rep.recognition.n;
      } else {
        out.status = "aperiodic";
      }
      return out;
    }
    case CaseLabel::iii:
    case CaseLabel::iv:
    case CaseLabel::v: {
      const ConicSplit sp = split_conic_pair(q, tower);
      if (!sp.real) {
        out.status = "not-computed-complex-pair";
        return out;
      }
      const auto rep = mobius_order(*sp.phi1, *sp.phi2, n_max, digits);
      out.mobius = rep;
      if (rep.type == "identity") {
        out.status = "identity";
        out.qrt_period = 1;
        out.group_order = 2;
      } else if (rep.order > 0) {
        out.status = "periodic";
        out.qrt_period = rep.order;
        out.group_order = 2 * rep.order;
      } else {
        out.status = "aperiodic";
      }
      return out;
    }
    default:
      out.status = "undefined-line-component";
      return out;
  }
}

}  // namespace qrt::singular
