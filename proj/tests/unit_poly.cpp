#include <optional>
#include <vector>

#include "doctest.h"
#include "qrt/number.hpp"
#include "qrt/poly.hpp"

using qrt::num::Number;
using qrt::num::Tower;
using qrt::poly::Poly;

namespace {
Number Q(long n, long d = 1) { return Number(n) / Number(d); }
Poly P(std::initializer_list<long> ascending) {
  std::vector<Number> c;
  for (long v : ascending) c.emplace_back(v);
  return Poly(std::move(c));
}
}  // namespace

TEST_CASE("basic polynomial algebra") {
  Poly p = P({-1, 0, 1});  // x^2 - 1
  Poly q = P({-2, 1});     // x - 2
  CHECK(p.degree() == 2);
  CHECK(Poly().degree() == -1);
  CHECK(p.eval(Number(3)) == Number(8));
  CHECK(p.derivative() == P({0, 2}));
  CHECK((p * q).degree() == 3);
  CHECK((p * q).eval(Q(1, 2)) == (p.eval(Q(1, 2)) * q.eval(Q(1, 2))));
  CHECK(p - p == Poly());
  CHECK((p + q).coeff(0) == Number(-3));
  CHECK(Poly::monomial(Q(3, 2), 4) == Poly(std::vector<Number>{
                                          Number(0), Number(0), Number(0),
                                          Number(0), Q(3, 2)}));
}

TEST_CASE("divmod satisfies the division identity") {
  Poly a = P({1, -4, 0, 2, 5});
  Poly d = P({-3, 1, 2});
  auto [q, r] = a.divmod(d);
  CHECK(a == q * d + r);
  CHECK(r.degree() < d.degree());
  CHECK((a * d) % d == Poly());
  CHECK((a * d) / d == a);
}

TEST_CASE("monic and reversed") {
  Poly p = P({2, 0, 4});
  CHECK(p.monic() == Poly(std::vector<Number>{Q(1, 2), Number(0), Number(1)}));
  // reversed as its own degree: 2 + 4x^2 -> 4 + 2x^2
  CHECK(p.reversed(2) == P({4, 0, 2}));
  // reversed as a quartic picks up the degree drop
  CHECK(p.reversed(4) == P({0, 0, 4, 0, 2}));
}

TEST_CASE("gcd is monic and correct") {
  Poly a = P({2, -3, 1});   // (x-1)(x-2)
  Poly b = P({6, -5, 1});   // (x-2)(x-3)
  CHECK(qrt::poly::gcd(a, b) == P({-2, 1}));
  CHECK(qrt::poly::gcd(a, P({1})) == P({1}));
  CHECK(qrt::poly::gcd(Poly(), a) == a.monic());
}

TEST_CASE("squarefree decomposition via Yun") {
  // p = (x+2)(x-1)^2, leading coefficient 3
  Poly p = P({-1, 1}) * P({-1, 1}) * P({2, 1}) * Poly(Number(3));
  auto parts = qrt::poly::squarefree_decomposition(p);
  REQUIRE(parts.size() >= 2);
  CHECK(parts[0] == P({2, 1}));
  CHECK(parts[1] == P({-1, 1}));
  // reconstruction: lc * prod parts[i]^(i+1)
  Poly rec = Poly(p.leading());
  for (std::size_t i = 0; i < parts.size(); ++i)
    for (std::size_t k = 0; k <= i; ++k) rec = rec * parts[i];
  CHECK(rec == p);
}

TEST_CASE("multiplicity pattern counts infinity") {
  // x^2 (x - 1) as a quartic: double root at 0, simple at 1, simple at inf
  Poly p = P({0, 0, -1, 1});
  CHECK(qrt::poly::multiplicity_pattern(p, 4) == std::vector<int>{2, 1, 1});
  // (x-1)^2 (x-2)(x-3) as a quartic: no infinity root
  Poly q = P({-1, 1}) * P({-1, 1}) * P({-2, 1}) * P({-3, 1});
  CHECK(qrt::poly::multiplicity_pattern(q, 4) == std::vector<int>{2, 1, 1});
  // constant as a quartic: quadruple root at infinity
  CHECK(qrt::poly::multiplicity_pattern(P({5}), 4) == std::vector<int>{4});
}

TEST_CASE("resultant and discriminant") {
  Poly a = P({-1, 0, 1});  // x^2 - 1
  Poly b = P({-2, 1});     // x - 2
  // res(a, b) = lc(b)^deg(a) * prod a(roots of b) = a(2) = 3
  CHECK(qrt::poly::resultant(a, b) == Number(3));
  CHECK(qrt::poly::resultant(b, a) == Number(3));
  // disc(x^2 + bx + c) = b^2 - 4c
  CHECK(qrt::poly::discriminant(P({6, -5, 1})) == Number(1));
  CHECK(qrt::poly::discriminant(P({1, 2, 1})) == Number(0));
  // disc(4x^3 - g2 x + g3): known shape -16(... ) check numerically:
  // disc of 4x^3 - 4x = (16)(4)(... ) -- verify against the resultant form
  Poly c = P({0, -4, 0, 4});
  CHECK(qrt::poly::discriminant(c) ==
        -qrt::poly::resultant(c, c.derivative()) / c.leading());
  // shared root => resultant zero
  CHECK(qrt::poly::resultant(a, P({-1, 1})) == Number(0));
}

TEST_CASE("signed square recognition") {
  Tower t;
  Poly s = P({-2, 0, 3});
  Poly plus = s * s;
  Poly minus = -(s * s);
  auto d1 = qrt::poly::as_signed_square(plus, t);
  REQUIRE(d1.has_value());
  CHECK(d1->sign == 1);
  CHECK(d1->root * d1->root == plus);
  auto d2 = qrt::poly::as_signed_square(minus, t);
  REQUIRE(d2.has_value());
  CHECK(d2->sign == -1);
  CHECK(d2->root * d2->root == -minus);
  CHECK_FALSE(qrt::poly::as_signed_square(P({0, 1}), t).has_value());
  CHECK_FALSE(qrt::poly::as_signed_square(P({1, 2, 2}), t).has_value());

  // irrational leading ratio: 5 (x-1)^2 = (sqrt(5)(x-1))^2
  Tower t2;
  Poly five = P({-1, 1}) * P({-1, 1}) * Poly(Number(5));
  auto d3 = qrt::poly::as_signed_square(five, t2);
  REQUIRE(d3.has_value());
  CHECK(d3->sign == 1);
  CHECK(d3->root * d3->root == five);
  CHECK(t2.depth() == 1);
}

TEST_CASE("exact determinant via Bareiss") {
  using Row = std::vector<Number>;
  CHECK(qrt::poly::det({Row{Q(1), Q(2)}, Row{Q(3), Q(4)}}) == Q(-2));
  CHECK(qrt::poly::det({Row{Q(2, 3)}}) == Q(2, 3));
  CHECK(qrt::poly::det({Row{Q(1), Q(2), Q(3)}, Row{Q(4), Q(5), Q(6)},
                        Row{Q(7), Q(8), Q(9)}}) == Q(0));
  CHECK(qrt::poly::det({Row{Q(0), Q(1), Q(0), Q(0)},
                        Row{Q(0), Q(0), Q(1), Q(0)},
                        Row{Q(1), Q(0), Q(0), Q(1)},
                        Row{Q(0), Q(1), Q(0), Q(0)}}) == Q(0));
  CHECK(qrt::poly::det({Row{Q(2), Q(0), Q(1), Q(0)},
                        Row{Q(1), Q(3), Q(0), Q(2)},
                        Row{Q(0), Q(1), Q(4), Q(1)},
                        Row{Q(1), Q(0), Q(2), Q(5)}}) == Q(122));
  // zero pivot requiring a row swap
  CHECK(qrt::poly::det({Row{Q(0), Q(1)}, Row{Q(1), Q(0)}}) == Q(-1));
  // irrational entries
  Tower t;
  Number s2 = qrt::num::sqrt_number(Number(2), t);
  CHECK(qrt::poly::det({Row{s2, Q(1)}, Row{Q(1), s2}}) == Q(1));
}
