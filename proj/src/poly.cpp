#include "qrt/poly.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace qrt::poly {

Poly::Poly(std::vector<Number> coeffs) : c_(std::move(coeffs)) { trim(); }

Poly::Poly(const Number& constant) {
  if (!constant.is_zero()) c_.push_back(constant);
}

Poly Poly::monomial(const Number& coeff, std::size_t power) {
  if (coeff.is_zero()) return Poly();
  std::vector<Number> c(power + 1, Number(0));
  c[power] = coeff;
  return Poly(std::move(c));
}

void Poly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Number Poly::coeff(std::size_t i) const {
  return i < c_.size() ? c_[i] : Number(0);
}

const Number& Poly::leading() const {
  if (c_.empty()) throw std::logic_error("leading() of zero polynomial");
  return c_.back();
}

Number Poly::eval(const Number& x) const {
  Number acc(0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Poly Poly::derivative() const {
  if (c_.size() <= 1) return Poly();
  std::vector<Number> d;
  d.reserve(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i)
    d.push_back(c_[i] * Number(static_cast<long>(i)));
  return Poly(std::move(d));
}

Poly Poly::operator+(const Poly& o) const {
  std::vector<Number> r(std::max(c_.size(), o.c_.size()), Number(0));
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] = c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
  return Poly(std::move(r));
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator-() const {
  std::vector<Number> r;
  r.reserve(c_.size());
  for (const auto& x : c_) r.push_back(-x);
  return Poly(std::move(r));
}

Poly Poly::operator*(const Poly& o) const {
  if (c_.empty() || o.c_.empty()) return Poly();
  std::vector<Number> r(c_.size() + o.c_.size() - 1, Number(0));
  for (std::size_t i = 0; i < c_.size(); ++i)
    for (std::size_t j = 0; j < o.c_.size(); ++j)
      r[i + j] += c_[i] * o.c_[j];
  return Poly(std::move(r));
}

Poly Poly::operator*(const Number& s) const {
  std::vector<Number> r;
  r.reserve(c_.size());
  for (const auto& x : c_) r.push_back(x * s);
  return Poly(std::move(r));
}

bool Poly::operator==(const Poly& o) const {
  if (c_.size() != o.c_.size()) return false;
  for (std::size_t i = 0; i < c_.size(); ++i)
    if (c_[i] != o.c_[i]) return false;
  return true;
}

std::pair<Poly, Poly> Poly::divmod(const Poly& d) const {
  if (d.is_zero()) throw std::domain_error("polynomial division by zero");
  if (degree() < d.degree()) return {Poly(), *this};
  std::vector<Number> rem = c_;
  std::vector<Number> quo(degree() - d.degree() + 1, Number(0));
  const Number& lead = d.leading();
  for (long i = degree(); i >= d.degree(); --i) {
    Number f = rem[i] / lead;
    if (!f.is_zero()) {
      quo[i - d.degree()] = f;
      for (long j = 0; j <= d.degree(); ++j)
        rem[i - d.degree() + j] -= f * d.c_[j];
    }
    rem[i] = Number(0);
  }
  return {Poly(std::move(quo)), Poly(std::move(rem))};
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  return *this * leading().inverse();
}

Poly Poly::reversed(std::size_t n) const {
  std::vector<Number> r(n + 1, Number(0));
  for (std::size_t i = 0; i < c_.size() && i <= n; ++i) r[n - i] = c_[i];
  return Poly(std::move(r));
}

std::string Poly::str(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (long i = degree(); i >= 0; --i) {
    if (c_[i].is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    os << "(" << c_[i].str() << ")";
    if (i >= 1) os << "*" << var;
    if (i >= 2) os << "^" << i;
  }
  return os.str();
}

Poly gcd(const Poly& a, const Poly& b) {
  Poly x = a, y = b;
  while (!y.is_zero()) {
    Poly r = x % y;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

std::vector<Poly> squarefree_decomposition(const Poly& p) {
  std::vector<Poly> out;
  if (p.is_zero()) return out;
  Poly f = p.monic();
  if (f.degree() == 0) return out;
  // Yun's algorithm (characteristic zero).
  Poly fp = f.derivative();
  Poly a = gcd(f, fp);
  Poly b = f / a;
  Poly c = fp / a;
  Poly d = c - b.derivative();
  while (b.degree() > 0) {
    Poly g = gcd(b, d);
    out.push_back(g);
    b = b / g;
    c = d / g;
    d = c - b.derivative();
  }
  return out;
}

std::vector<int> multiplicity_pattern(const Poly& p, std::size_t deg_as) {
  std::vector<int> pattern;
  if (p.is_zero()) return pattern;
  auto parts = squarefree_decomposition(p);
  for (std::size_t i = 0; i < parts.size(); ++i)
    for (long k = 0; k < parts[i].degree(); ++k)
      pattern.push_back(static_cast<int>(i + 1));
  long drop = static_cast<long>(deg_as) - p.degree();
  if (drop > 0) pattern.push_back(static_cast<int>(drop));
  std::sort(pattern.rbegin(), pattern.rend());
  return pattern;
}

Number resultant(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Number(0);
  if (a.degree() == 0) return a.leading().pow(b.degree());
  if (b.degree() == 0) return b.leading().pow(a.degree());
  Poly r = a % b;
  long m = a.degree(), n = b.degree();
  Number sign = (m % 2 == 1 && n % 2 == 1) ? Number(-1) : Number(1);
  if (r.is_zero()) return Number(0);
  return sign * b.leading().pow(m - r.degree()) * resultant(b, r);
}

Number discriminant(const Poly& p) {
  long n = p.degree();
  if (n < 1) throw std::domain_error("discriminant needs degree >= 1");
  Number res = resultant(p, p.derivative());
  Number d = res / p.leading();
  long s = (n * (n - 1) / 2) % 2;
  return s ? -d : d;
}

std::optional<SquareDecomposition> as_signed_square(const Poly& p, Tower& tower) {
  if (p.is_zero()) return std::nullopt;
  auto parts = squarefree_decomposition(p);
  Poly m(Number(1));
  for (std::size_t i = 0; i < parts.size(); ++i) {
    int mult = static_cast<int>(i + 1);
    if (parts[i].degree() <= 0) continue;
    if (mult % 2 != 0) return std::nullopt;
    for (int k = 0; k < mult / 2; ++k) m = m * parts[i];
  }
  // p = lc * m^2 with m monic; need lc = +-u^2 over the tower.
  Number lc = p.leading();
  int sign = lc.sign();
  Number u;
  try {
    u = sqrt_number(sign < 0 ? -lc : lc, tower);
  } catch (const std::runtime_error&) {
    return std::nullopt;  // depth cap; treat as not a recognizable square
  }
  SquareDecomposition sd;
  sd.root = m * u;
  sd.sign = sign < 0 ? -1 : 1;
  // Sanity: the reconstruction must reproduce p exactly.
  Poly check = sd.root * sd.root;
  if (sd.sign < 0) check = -check;
  if (!(check == p)) return std::nullopt;
  return sd;
}

Number det(const std::vector<std::vector<Number>>& m) {
  const std::size_t n = m.size();
  for (const auto& row : m)
    if (row.size() != n) throw std::invalid_argument("det of non-square matrix");
  if (n == 0) return Number(1);
  std::vector<std::vector<Number>> a = m;
  Number prev(1);
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k].is_zero()) {
      std::size_t r = k + 1;
      while (r < n && a[r][k].is_zero()) ++r;
      if (r == n) return Number(0);
      std::swap(a[k], a[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]) / prev;
      }
      a[i][k] = Number(0);
    }
    prev = a[k][k];
  }
  Number d = a[n - 1][n - 1];
  return sign < 0 ? -d : d;
}

}  // namespace qrt::poly
