#include "treedim/rat.hpp"

#include <vector>

#include "treedim/error.hpp"

namespace treedim {

Int ipow(const Int& base, unsigned long exp) {
  Int out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exp);
  return out;
}

Int ipow(const Int& base, const Int& exp) {
  if (sgn(exp) < 0) throw Error("ipow: negative exponent");
  if (!fits_ulong(exp)) throw Error("ipow: exponent too large: " + exp.get_str());
  return ipow(base, exp.get_ui());
}

Int ceil_div(const Int& a, const Int& b) {
  Int q;
  mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

bool fits_ulong(const Int& v) { return v.fits_ulong_p(); }

Int parse_int(const std::string& text) {
  if (text.empty()) throw Error("empty integer literal");
  Int v;
  if (mpz_set_str(v.get_mpz_t(), text.c_str(), 10) != 0)
    throw Error("malformed integer: '" + text + "'");
  return v;
}

Rat::Rat(const Int& num, const Int& den) {
  if (sgn(den) == 0) throw Error("rational with zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

Rat Rat::parse(const std::string& text) {
  auto slash = text.find('/');
  if (slash == std::string::npos) return Rat(parse_int(text));
  Int num = parse_int(text.substr(0, slash));
  Int den = parse_int(text.substr(slash + 1));
  if (sgn(den) == 0) throw Error("malformed rational (zero denominator): '" + text + "'");
  return Rat(num, den);
}

std::string Rat::str() const {
  return num().get_str() + "/" + den().get_str();
}

std::string Rat::str_plain() const {
  return is_integer() ? num().get_str() : str();
}

Rat Rat::operator-() const {
  Rat r;
  r.v_ = -v_;
  return r;
}

Rat& Rat::operator/=(const Rat& o) {
  if (o.is_zero()) throw Error("rational division by zero");
  v_ /= o.v_;
  return *this;
}

Int Rat::floor() const {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), num().get_mpz_t(), den().get_mpz_t());
  return q;
}

Rat rat_pow(const Rat& base, unsigned long e) {
  return Rat(ipow(base.num(), e), ipow(base.den(), e));
}

Rat rat_pow_int(const Rat& base, const Int& e) {
  if (sgn(e) >= 0) {
    if (!fits_ulong(e)) throw Error("rat_pow_int: exponent too large");
    return rat_pow(base, e.get_ui());
  }
  if (base.is_zero()) throw Error("rat_pow_int: zero base with negative exponent");
  Int mag = -e;
  if (!fits_ulong(mag)) throw Error("rat_pow_int: exponent too large");
  Rat p = rat_pow(base, mag.get_ui());
  return Rat(p.den(), p.num());
}

namespace {

// Prime factorization of a small positive integer (the alphabet size).
std::vector<std::pair<Int, unsigned long>> factor_small(Int n) {
  std::vector<std::pair<Int, unsigned long>> out;
  for (Int p = 2; p * p <= n; ++p) {
    unsigned long mult = 0;
    while (n % p == 0) {
      n /= p;
      ++mult;
    }
    if (mult > 0) out.emplace_back(p, mult);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

// value = base^result for a positive integer value, or nullopt.
std::optional<Rat> int_log(const std::vector<std::pair<Int, unsigned long>>& base_factors,
                           const Int& value) {
  if (value == 1) return Rat(0);
  Int rest = value;
  std::vector<unsigned long> mult(base_factors.size(), 0);
  for (std::size_t j = 0; j < base_factors.size(); ++j) {
    while (rest % base_factors[j].first == 0) {
      rest /= base_factors[j].first;
      ++mult[j];
    }
  }
  if (rest != 1) return std::nullopt;  // a prime outside the base's support
  Rat exp(Int(mult[0]), Int(base_factors[0].second));
  for (std::size_t j = 1; j < base_factors.size(); ++j)
    if (Rat(Int(mult[j]), Int(base_factors[j].second)) != exp) return std::nullopt;
  return exp;
}

}  // namespace

std::optional<Rat> log_in_base(unsigned base, const Rat& value) {
  if (base < 2) throw Error("log_in_base: base must be >= 2");
  if (value.sign() <= 0) return std::nullopt;
  const auto factors = factor_small(Int(base));
  // base^x is an integer for x >= 0 and a unit fraction for x < 0; a value
  // with both num and den > 1 is never a pure power.
  if (value.num() == 1 && value.den() > 1) {
    auto e = int_log(factors, value.den());
    if (!e) return std::nullopt;
    return -*e;
  }
  if (!value.is_integer()) return std::nullopt;
  return int_log(factors, value.num());
}

}  // namespace treedim
