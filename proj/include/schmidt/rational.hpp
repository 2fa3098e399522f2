#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>

#include "schmidt/error.hpp"

namespace schmidt {

/// Exact arbitrary-precision fraction kept in lowest terms with a positive
/// denominator. Backed by GMP's mpq_t.
class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t n) { set_int(value_, n); }  // NOLINT: implicit by intent
  Rational(std::int64_t num, std::int64_t den) {
    if (den == 0) throw Error(ErrorKind::InvalidArgument, "zero denominator");
    mpz_class n, d;
    set_int_z(n, num);
    set_int_z(d, den);
    value_ = mpq_class(n, d);
    value_.canonicalize();
  }
  explicit Rational(mpq_class v) : value_(std::move(v)) { value_.canonicalize(); }

  /// Parses "p/q" or "p" in base 10 (optional leading '-').
  static Rational parse(std::string_view text) {
    auto bad = [&] { return Error(ErrorKind::ParseError, "not a rational: '" + std::string(text) + "'"); };
    if (text.empty()) throw bad();
    auto valid_int = [](std::string_view s, bool allow_sign) {
      if (!s.empty() && allow_sign && s.front() == '-') s.remove_prefix(1);
      if (s.empty()) return false;
      for (char c : s)
        if (c < '0' || c > '9') return false;
      return true;
    };
    auto slash = text.find('/');
    std::string_view num = text.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
    if (!valid_int(num, true) || !valid_int(den, false)) throw bad();
    mpz_class n(std::string(num), 10);
    mpz_class d(std::string(den), 10);
    if (d == 0) throw bad();
    return Rational(mpq_class(n, d));
  }

  /// Canonical "numerator/denominator", e.g. "-3/40" or "1/1".
  std::string str() const { return value_.get_num().get_str(10) + "/" + value_.get_den().get_str(10); }

  std::string numerator_str() const { return value_.get_num().get_str(10); }
  std::string denominator_str() const { return value_.get_den().get_str(10); }

  const mpq_class& raw() const noexcept { return value_; }
  double to_double() const { return value_.get_d(); }

  int sign() const { return sgn(value_); }
  bool is_zero() const { return sign() == 0; }
  bool is_integer() const { return value_.get_den() == 1; }

  Rational abs() const { return Rational(mpq_class(::abs(value_))); }
  Rational reciprocal() const {
    if (is_zero()) throw Error(ErrorKind::InvalidArgument, "reciprocal of zero");
    return Rational(mpq_class(1 / value_));
  }

  Rational floor() const {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), value_.get_num_mpz_t(), value_.get_den_mpz_t());
    return Rational(mpq_class(q));
  }
  Rational ceil() const {
    mpz_class q;
    mpz_cdiv_q(q.get_mpz_t(), value_.get_num_mpz_t(), value_.get_den_mpz_t());
    return Rational(mpq_class(q));
  }

  /// Integer power; negative exponents invert.
  Rational pow(int exponent) const {
    if (exponent < 0) return reciprocal().pow(-exponent);
    mpz_class n, d;
    mpz_pow_ui(n.get_mpz_t(), value_.get_num_mpz_t(), static_cast<unsigned long>(exponent));
    mpz_pow_ui(d.get_mpz_t(), value_.get_den_mpz_t(), static_cast<unsigned long>(exponent));
    return Rational(mpq_class(n, d));
  }

  Rational operator-() const { return Rational(mpq_class(-value_)); }

  Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
  Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
  Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw Error(ErrorKind::InvalidArgument, "division by zero");
    value_ /= o.value_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.value_, b.value_) == 0; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

  std::size_t hash() const {
    std::size_t h = std::hash<std::string>{}(str());
    return h;
  }

 private:
  static void set_int_z(mpz_class& z, std::int64_t n) {
    static_assert(sizeof(long) == sizeof(std::int64_t), "LP64 target expected");
    z = mpz_class(static_cast<long>(n));
  }
  static void set_int(mpq_class& q, std::int64_t n) {
    mpz_class z;
    set_int_z(z, n);
    q = mpq_class(z);
  }

  mpq_class value_;
};

inline Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

}  // namespace schmidt

template <>
struct std::hash<schmidt::Rational> {
  std::size_t operator()(const schmidt::Rational& r) const { return r.hash(); }
};
