#include "qrt/number.hpp"

#include <cctype>
#include <cmath>
#include <cstring>

namespace qrt::num {

namespace {

// Chain utilities -----------------------------------------------------------

// True when `a` is the same chain as `b` or a prefix of it.
bool is_prefix(const LevelPtr& a, const LevelPtr& b) {
  if (!a) return true;
  for (LevelPtr p = b; p; p = p->base)
    if (p.get() == a.get()) return true;
  return false;
}

// The deeper of two compatible chains; throws when incompatible.
const LevelPtr& join_level(const LevelPtr& a, const LevelPtr& b) {
  int da = a ? a->depth : 0, db = b ? b->depth : 0;
  const LevelPtr& deep = da >= db ? a : b;
  const LevelPtr& shallow = da >= db ? b : a;
  if (!is_prefix(shallow, deep)) throw incompatible_towers();
  return deep;
}

// Decomposes x viewed as an element of the field topped by lv into lo + hi*sqrt(rad).
void split_at(const Number& x, const LevelPtr& lv, Number* lo, Number* hi) {
  if (x.level().get() == lv.get()) {
    *lo = x.lo();
    *hi = x.hi();
  } else {
    *lo = x;  // x lives strictly below lv
    *hi = Number(0);
  }
}

}  // namespace

// Number basics --------------------------------------------------------------

const mpq_class& Number::as_rational() const {
  if (level_) throw std::logic_error("not a rational");
  return rat_;
}

const Number& Number::lo() const {
  if (!level_) throw std::logic_error("rational has no lo part");
  return *lo_;
}

const Number& Number::hi() const {
  if (!level_) throw std::logic_error("rational has no hi part");
  return *hi_;
}

Number Number::make(const LevelPtr& lv, const Number& lo, const Number& hi) {
  if (!lv) throw std::logic_error("make() needs a level");
  if (hi.is_zero()) return lo;
  Number n;
  n.level_ = lv;
  n.rat_ = 0;
  n.lo_ = std::make_shared<const Number>(lo);
  n.hi_ = std::make_shared<const Number>(hi);
  return n;
}

bool Number::is_zero() const {
  if (!level_) return rat_ == 0;
  // hi is nonzero by construction; lo + hi*sqrt(r) = 0 needs opposite signs
  // and equal squares.
  int sl = lo_->sign(), sh = hi_->sign();
  if (sl == 0) return false;  // hi*sqrt(r) != 0
  if (sl * sh >= 0) return false;
  Number diff = *lo_ * *lo_ - *hi_ * *hi_ * *level_->radicand;
  return diff.is_zero();
}

int Number::sign() const {
  if (!level_) return sgn(rat_);
  int sl = lo_->sign(), sh = hi_->sign();
  if (sl == 0) return sh;
  if (sh == 0) return sl;
  if (sl == sh) return sl;
  Number diff = *lo_ * *lo_ - *hi_ * *hi_ * *level_->radicand;
  int c = diff.sign();
  if (c == 0) return 0;
  return c > 0 ? sl : sh;
}

bool Number::is_one() const {
  if (!level_) return rat_ == 1;
  return (*this - Number(1)).is_zero();
}

Number Number::operator-() const {
  if (!level_) return Number(mpq_class(-rat_));
  Number n;
  n.level_ = level_;
  n.lo_ = std::make_shared<const Number>(-*lo_);
  n.hi_ = std::make_shared<const Number>(-*hi_);
  return n;
}

Number Number::operator+(const Number& o) const {
  if (!level_ && !o.level_) return Number(mpq_class(rat_ + o.rat_));
  const LevelPtr& lv = join_level(level_, o.level_);
  Number a_lo, a_hi, b_lo, b_hi;
  split_at(*this, lv, &a_lo, &a_hi);
  split_at(o, lv, &b_lo, &b_hi);
  return make(lv, a_lo + b_lo, a_hi + b_hi);
}

Number Number::operator-(const Number& o) const { return *this + (-o); }

Number Number::operator*(const Number& o) const {
  if (!level_ && !o.level_) return Number(mpq_class(rat_ * o.rat_));
  const LevelPtr& lv = join_level(level_, o.level_);
  Number a_lo, a_hi, b_lo, b_hi;
  split_at(*this, lv, &a_lo, &a_hi);
  split_at(o, lv, &b_lo, &b_hi);
  const Number& r = *lv->radicand;
  return make(lv, a_lo * b_lo + a_hi * b_hi * r, a_lo * b_hi + a_hi * b_lo);
}

Number Number::inverse() const {
  if (!level_) {
    if (rat_ == 0) throw std::domain_error("division by zero");
    return Number(mpq_class(1 / rat_));
  }
  // 1/(lo + hi*sqrt(r)) = (lo - hi*sqrt(r)) / (lo^2 - hi^2 r)
  const Number& r = *level_->radicand;
  Number den = *lo_ * *lo_ - *hi_ * *hi_ * r;
  if (den.is_zero()) {
    // lo - hi*sqrt(r) = 0, so x = 2*lo and the conjugate trick degenerates;
    // but then x is in the base field already: x = 2*lo.
    Number twice_lo = *lo_ + *lo_;
    if (twice_lo.is_zero()) throw std::domain_error("division by zero");
    return twice_lo.inverse();
  }
  Number inv_den = den.inverse();
  return make(level_, *lo_ * inv_den, -(*hi_ * inv_den));
}

Number Number::operator/(const Number& o) const { return *this * o.inverse(); }

Number Number::pow(long e) const {
  if (e == 0) return Number(1);
  Number base = e < 0 ? inverse() : *this;
  unsigned long n = e < 0 ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
  Number acc(1);
  while (n) {
    if (n & 1) acc = acc * base;
    base = base * base;
    n >>= 1;
  }
  return acc;
}

double Number::to_double() const {
  if (!level_) return rat_.get_d();
  return lo_->to_double() + hi_->to_double() * std::sqrt(level_->radicand->to_double());
}

// Tower -----------------------------------------------------------------------

int Tower::depth() const {
  std::lock_guard<std::mutex> g(mu_);
  return static_cast<int>(chain_.size());
}

LevelPtr Tower::top() const {
  std::lock_guard<std::mutex> g(mu_);
  return chain_.empty() ? nullptr : chain_.back();
}

LevelPtr Tower::extend(const Number& radicand) {
  std::lock_guard<std::mutex> g(mu_);
  LevelPtr base = chain_.empty() ? nullptr : chain_.back();
  if (!is_prefix(radicand.level(), base))
    throw incompatible_towers();
  if (static_cast<int>(chain_.size()) >= kMaxDepth)
    throw std::runtime_error("extension tower depth cap (" +
                             std::to_string(kMaxDepth) + ") exceeded");
  auto lv = std::make_shared<Level>();
  lv->base = base;
  lv->radicand = std::make_shared<const Number>(radicand);
  lv->depth = static_cast<int>(chain_.size()) + 1;
  chain_.push_back(lv);
  return chain_.back();
}

// Square roots ----------------------------------------------------------------

bool rational_sqrt(const mpq_class& q, mpq_class* root) {
  if (q < 0) return false;
  const mpz_class& nu = q.get_num();
  const mpz_class& de = q.get_den();
  if (mpz_perfect_square_p(nu.get_mpz_t()) && mpz_perfect_square_p(de.get_mpz_t())) {
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), nu.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), de.get_mpz_t());
    *root = mpq_class(rn, rd);
    root->canonicalize();
    return true;
  }
  return false;
}

std::optional<Number> sqrt_in_chain(const Number& x, const LevelPtr& lv) {
  if (x.sign() < 0) return std::nullopt;
  if (x.is_zero()) return Number(0);
  if (!lv) {
    if (!x.is_rational()) return std::nullopt;
    mpq_class root;
    if (rational_sqrt(x.as_rational(), &root)) return Number(root);
    return std::nullopt;
  }
  if (!is_prefix(x.level(), lv)) return std::nullopt;
  const Number& r = *lv->radicand;
  Number lo, hi;
  split_at(x, lv, &lo, &hi);
  if (hi.is_zero()) {
    // x lives below: sqrt may live below too, or be a pure multiple of sqrt(r).
    if (auto t = sqrt_in_chain(lo, lv->base)) return *t;
    if (auto t = sqrt_in_chain(lo / r, lv->base))
      return Number::make(lv, Number(0), *t);
    return std::nullopt;
  }
  // Seek y = u + v*sqrt(r) with y^2 = x: u^2 + v^2 r = lo, 2uv = hi.
  // The norm lo^2 - hi^2 r = (u^2 - v^2 r)^2 must be a square below.
  Number norm = lo * lo - hi * hi * r;
  auto n = sqrt_in_chain(norm, lv->base);
  if (!n) return std::nullopt;
  for (int branch = 0; branch < 2; ++branch) {
    Number u2 = (branch == 0 ? lo + *n : lo - *n) / Number(2);
    if (u2.sign() <= 0) continue;
    auto u = sqrt_in_chain(u2, lv->base);
    if (!u || u->is_zero()) continue;
    Number v = hi / (Number(2) * *u);
    Number y = Number::make(lv, *u, v);
    if ((y * y - x).is_zero()) {
      if (y.sign() < 0) y = -y;
      return y;
    }
  }
  return std::nullopt;
}

Number sqrt_number(const Number& x, Tower& tower) {
  if (x.sign() < 0) throw std::domain_error("square root of a negative number");
  if (x.is_zero()) return Number(0);
  if (auto y = sqrt_in_chain(x, tower.top())) return *y;
  LevelPtr lv = tower.extend(x);
  return Number::make(lv, Number(0), Number(1));
}

// Serialization ---------------------------------------------------------------

namespace {

std::string rational_str(const mpq_class& q) {
  std::string s = q.get_num().get_str();
  if (q.get_den() != 1) s += "/" + q.get_den().get_str();
  return s;
}

// Appends "+ TERM" / "- TERM" pieces of x to out; `leading` marks the first term.
void serialize_into(const Number& x, std::string* out, bool leading) {
  if (x.is_rational()) {
    const mpq_class& q = x.as_rational();
    if (q == 0 && !leading) return;
    if (!leading) {
      *out += (q >= 0) ? "+" : "-";
      *out += rational_str(mpq_class(::abs(q)));
    } else {
      *out += rational_str(q);
    }
    return;
  }
  const Number& lo = x.lo();
  const Number& hi = x.hi();
  const Number& r = *x.level()->radicand;
  bool lo_zero = lo.is_zero();
  if (!lo_zero) {
    serialize_into(lo, out, leading);
    leading = false;
  } else if (leading) {
    // nothing printed yet; the sqrt term below must carry its own sign
  }
  // hi * sqrt(r): rational hi prints as q*sqrt(...); otherwise fold the
  // magnitude into the radicand: hi*sqrt(r) = sign(hi)*sqrt(hi^2 r).
  int sh = hi.sign();
  std::string sqrt_body;
  std::string coeff;
  if (hi.is_rational()) {
    mpq_class q = ::abs(hi.as_rational());
    if (q != 1) coeff = rational_str(q) + "*";
    serialize_into(r, &sqrt_body, true);
  } else {
    Number folded = hi * hi * r;
    serialize_into(folded, &sqrt_body, true);
  }
  if (leading && lo_zero) {
    if (sh < 0) *out += "-";
  } else {
    *out += sh < 0 ? "-" : "+";
  }
  *out += coeff + "sqrt(" + sqrt_body + ")";
}

}  // namespace

std::string Number::str() const {
  std::string out;
  serialize_into(*this, &out, true);
  return out;
}

// Parser ------------------------------------------------------------------------

namespace {

class Parser {
 public:
  Parser(const std::string& text, Tower& tower) : s_(text), tower_(tower) {}

  Number parse() {
    Number v = expr();
    skip_ws();
    if (pos_ != s_.size()) throw parse_error("trailing input", pos_);
    return v;
  }

 private:
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  bool peek_str(const char* kw) {
    skip_ws();
    return s_.compare(pos_, strlen(kw), kw) == 0;
  }

  Number expr() {
    skip_ws();
    bool neg = false;
    if (eat('-')) neg = true;
    else eat('+');
    Number acc = term();
    if (neg) acc = -acc;
    while (true) {
      skip_ws();
      if (eat('+')) acc = acc + term();
      else if (eat('-')) acc = acc - term();
      else break;
    }
    return acc;
  }

  Number term() {
    skip_ws();
    if (pos_ >= s_.size()) throw parse_error("expected a term", pos_);
    if (peek_str("sqrt")) return sqrt_term();
    Number q = rational();
    skip_ws();
    if (eat('*')) {
      skip_ws();
      if (!peek_str("sqrt")) throw parse_error("expected sqrt(...) after '*'", pos_);
      return q * sqrt_term();
    }
    return q;
  }

  Number sqrt_term() {
    skip_ws();
    if (!peek_str("sqrt")) throw parse_error("expected sqrt", pos_);
    pos_ += 4;
    if (!eat('(')) throw parse_error("expected '(' after sqrt", pos_);
    Number inner = expr();
    if (!eat(')')) throw parse_error("expected ')'", pos_);
    if (inner.sign() < 0) throw parse_error("sqrt of a negative value", pos_);
    return sqrt_number(inner, tower_);
  }

  Number rational() {
    skip_ws();
    size_t start = pos_;
    if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) ++pos_;
    size_t digits = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      ++pos_;
      ++digits;
    }
    if (!digits) throw parse_error("expected an integer", start);
    std::string num = s_.substr(start, pos_ - start);
    std::string den = "1";
    size_t save = pos_;
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == '/') {
      ++pos_;
      skip_ws();
      size_t dstart = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (pos_ == dstart) throw parse_error("expected a denominator", dstart);
      den = s_.substr(dstart, pos_ - dstart);
      if (den == "0") throw parse_error("zero denominator", dstart);
    } else {
      pos_ = save;
    }
    mpq_class q(num + "/" + den);
    q.canonicalize();
    return Number(q);
  }

  const std::string& s_;
  Tower& tower_;
  size_t pos_ = 0;
};

}  // namespace

Number parse_number(const std::string& text, Tower& tower) {
  return Parser(text, tower).parse();
}

}  // namespace qrt::num
