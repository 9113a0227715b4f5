#pragma once

#include <gmpxx.h>

#include <compare>
#include <optional>
#include <string>

namespace treedim {

/// Arbitrary-precision integer. Lengths, exponents and counts all use this
/// type; level lengths overflow 64 bits after a handful of levels.
using Int = mpz_class;

Int ipow(const Int& base, unsigned long exp);
Int ipow(const Int& base, const Int& exp);  // exp >= 0, must fit unsigned long
Int ceil_div(const Int& a, const Int& b);   // b > 0
bool fits_ulong(const Int& v);
Int parse_int(const std::string& text);

/// Exact rational, stored reduced with positive denominator.
class Rat {
 public:
  Rat() : v_(0) {}
  Rat(long n) : v_(n) {}  // NOLINT: implicit on purpose, mirrors integer use
  explicit Rat(const Int& n) : v_(n) {}
  Rat(const Int& num, const Int& den);

  /// Accepts "num/den" or a bare integer, optionally signed.
  static Rat parse(const std::string& text);

  Int num() const { return v_.get_num(); }
  Int den() const { return v_.get_den(); }
  bool is_zero() const { return sgn(v_) == 0; }
  bool is_integer() const { return v_.get_den() == 1; }
  int sign() const { return sgn(v_); }

  /// Canonical "num/den" form, e.g. "1/2", "-3/1".
  std::string str() const;
  /// "num" when integral, else "num/den".
  std::string str_plain() const;

  Rat operator-() const;
  Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
  Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
  Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
  Rat& operator/=(const Rat& o);

  friend Rat operator+(Rat a, const Rat& b) { return a += b; }
  friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
  friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
  friend Rat operator/(Rat a, const Rat& b) { return a /= b; }

  friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
    int c = cmp(a.v_, b.v_);
    return c < 0   ? std::strong_ordering::less
           : c > 0 ? std::strong_ordering::greater
                   : std::strong_ordering::equal;
  }

  /// Largest integer <= value.
  Int floor() const;

 private:
  mpq_class v_;
};

Rat rat_pow(const Rat& base, unsigned long e);
/// base^e for integer e (negative allowed; base must be nonzero then).
Rat rat_pow_int(const Rat& base, const Int& e);

/// The rational x with base^x == value, when one exists (base >= 2).
std::optional<Rat> log_in_base(unsigned base, const Rat& value);

}  // namespace treedim
