#pragma once

// Exact arithmetic in chains of real quadratic extensions of Q.
//
// A Number is either a rational (GMP mpq) or a pair (lo, hi) representing
// lo + hi*sqrt(radicand) over a Level. Levels form a chain: each Level
// extends the field below it by the positive square root of a radicand that
// lives in that lower field. Numbers are immutable and share structure.
//
// Numbers are compatible when the Level chain of one is a prefix of the
// other's (pointer identity). A Tower owns one chain and hands out new
// levels; every analysis session uses its own Tower.

#include <gmpxx.h>

#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qrt::num {

class Number;
struct Level;
using LevelPtr = std::shared_ptr<const Level>;

struct Level {
  LevelPtr base;                          // field below; null = Q
  std::shared_ptr<const Number> radicand; // positive, lives in the base field
  int depth = 1;                          // chain length including this level
};

class incompatible_towers : public std::logic_error {
 public:
  incompatible_towers() : std::logic_error("numbers from incompatible towers") {}
};

class Number {
 public:
  Number() : rat_(0) {}
  Number(long v) : rat_(v) {}
  Number(int v) : rat_(static_cast<long>(v)) {}
  explicit Number(const mpq_class& q) : rat_(q) { rat_.canonicalize(); }

  // lo + hi*sqrt(lv->radicand); collapses to lo when hi == 0.
  static Number make(const LevelPtr& lv, const Number& lo, const Number& hi);

  bool is_rational() const { return level_ == nullptr; }
  const mpq_class& as_rational() const;
  const LevelPtr& level() const { return level_; }
  const Number& lo() const;
  const Number& hi() const;
  int depth() const { return level_ ? level_->depth : 0; }

  bool is_zero() const;
  int sign() const;  // exact: -1, 0, +1
  bool is_one() const;

  Number operator-() const;
  Number operator+(const Number& o) const;
  Number operator-(const Number& o) const;
  Number operator*(const Number& o) const;
  Number operator/(const Number& o) const;  // throws std::domain_error on /0
  Number& operator+=(const Number& o) { return *this = *this + o; }
  Number& operator-=(const Number& o) { return *this = *this - o; }
  Number& operator*=(const Number& o) { return *this = *this * o; }
  Number& operator/=(const Number& o) { return *this = *this / o; }

  bool operator==(const Number& o) const { return (*this - o).is_zero(); }
  bool operator!=(const Number& o) const { return !(*this == o); }
  bool operator<(const Number& o) const { return (*this - o).sign() < 0; }
  bool operator>(const Number& o) const { return (*this - o).sign() > 0; }
  bool operator<=(const Number& o) const { return (*this - o).sign() <= 0; }
  bool operator>=(const Number& o) const { return (*this - o).sign() >= 0; }

  Number inverse() const;
  Number pow(long e) const;  // integer exponent, e may be negative
  Number abs() const { return sign() < 0 ? -*this : *this; }

  double to_double() const;  // convenience; exact conversion is in bigfloat.hpp

  std::string str() const;  // grammar-conforming serialization

 private:
  LevelPtr level_;  // null => rational
  mpq_class rat_;   // payload when rational
  std::shared_ptr<const Number> lo_, hi_;
};

// The extension chain for one analysis session. Append-only; thread-safe.
class Tower {
 public:
  static constexpr int kMaxDepth = 4;

  Tower() = default;
  Tower(const Tower&) = delete;
  Tower& operator=(const Tower&) = delete;

  int depth() const;
  LevelPtr top() const;

  // Adjoins sqrt(radicand) above the current top. The radicand must live on
  // a prefix of the chain, be positive, and not already have a square root
  // in the chain (callers go through sqrt_number which checks that).
  LevelPtr extend(const Number& radicand);

 private:
  mutable std::mutex mu_;
  std::vector<LevelPtr> chain_;
};

// Exact square root. Tries to express sqrt(x) inside the tower's existing
// chain; if impossible and the chain has room, adjoins a new level.
// Throws std::domain_error when x < 0 and std::runtime_error when the depth
// cap would be exceeded.
Number sqrt_number(const Number& x, Tower& tower);

// sqrt(x) inside the chain topped by `lv` only; no adjunction.
std::optional<Number> sqrt_in_chain(const Number& x, const LevelPtr& lv);

// Parser for the number grammar:
//   EXPR   := TERM ( ('+'|'-') TERM )*
//   TERM   := RATIONAL ( '*' SQRT )? | SQRT
//   SQRT   := "sqrt(" EXPR ")"
//   RATIONAL := INT | INT "/" INT
// Whitespace is allowed between tokens. Errors carry byte positions.
class parse_error : public std::runtime_error {
 public:
  parse_error(const std::string& what, size_t pos)
      : std::runtime_error(what + " at position " + std::to_string(pos)), pos_(pos) {}
  size_t position() const { return pos_; }

 private:
  size_t pos_;
};

Number parse_number(const std::string& text, Tower& tower);

// True when q = (p/r)^2 for a rational; outputs the positive root.
bool rational_sqrt(const mpq_class& q, mpq_class* root);

}  // namespace qrt::num
