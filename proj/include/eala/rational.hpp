#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <Eigen/Core>

#include <string>
#include <utility>

#include "eala/errors.hpp"

namespace eala {

using BigInt = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                             boost::multiprecision::et_off>;

namespace detail {
using BoostRational =
    boost::multiprecision::number<boost::multiprecision::rational_adaptor<
                                      boost::multiprecision::cpp_int_backend<>>,
                                  boost::multiprecision::et_off>;
}

// Exact rational scalar, always gcd-reduced with positive denominator
// (maintained by the backend).  A deliberate thin wrapper: Boost's number
// type itself is not SFINAE-clean against Eigen's scalar-promotion probes,
// so Eigen only ever sees this plain class.
class Rational {
 public:
  Rational() : v_(0) {}
  Rational(int v) : v_(v) {}   // NOLINT: implicit by design
  Rational(long v) : v_(v) {}  // NOLINT
  Rational(const BigInt& v) : v_(v) {}
  Rational(const BigInt& num, const BigInt& den) {
    if (den == 0) throw DivisionByZero();
    v_ = detail::BoostRational(num) / detail::BoostRational(den);
  }
  explicit Rational(detail::BoostRational v) : v_(std::move(v)) {}

  bool is_zero() const { return v_.is_zero(); }
  BigInt num() const { return numerator(v_); }
  BigInt den() const { return denominator(v_); }
  std::string str() const { return v_.str(); }
  const detail::BoostRational& raw() const { return v_; }

  friend Rational operator+(const Rational& a, const Rational& b) { return Rational(a.v_ + b.v_); }
  friend Rational operator-(const Rational& a, const Rational& b) { return Rational(a.v_ - b.v_); }
  friend Rational operator*(const Rational& a, const Rational& b) { return Rational(a.v_ * b.v_); }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw DivisionByZero();
    return Rational(a.v_ / b.v_);
  }
  friend Rational operator-(const Rational& a) { return Rational(-a.v_); }

  Rational& operator+=(const Rational& o) {
    v_ += o.v_;
    return *this;
  }
  Rational& operator-=(const Rational& o) {
    v_ -= o.v_;
    return *this;
  }
  Rational& operator*=(const Rational& o) {
    v_ *= o.v_;
    return *this;
  }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw DivisionByZero();
    v_ /= o.v_;
    return *this;
  }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

 private:
  detail::BoostRational v_;
};

inline bool is_zero(const Rational& q) { return q.is_zero(); }
inline BigInt numerator(const Rational& q) { return q.num(); }
inline BigInt denominator(const Rational& q) { return q.den(); }
inline std::string to_string(const Rational& q) { return q.str(); }

// Accepts "p", "-p", "p/q"; anything else is a ConfigError.
inline Rational parse_rational(const std::string& s) {
  if (s.empty()) throw ConfigError("empty rational literal");
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  bool seen_digit = false, seen_slash = false;
  for (; i < s.size(); ++i) {
    if (s[i] >= '0' && s[i] <= '9') {
      seen_digit = true;
    } else if (s[i] == '/' && !seen_slash && seen_digit && i + 1 < s.size()) {
      seen_slash = true;
      seen_digit = false;
    } else {
      throw ConfigError("bad rational literal: '" + s + "'");
    }
  }
  if (!seen_digit) throw ConfigError("bad rational literal: '" + s + "'");
  if (seen_slash) {
    std::size_t slash = s.find('/');
    BigInt num(s.substr(0, slash));
    BigInt den(s.substr(slash + 1));
    if (den == 0) throw DivisionByZero();
    return Rational(num, den);
  }
  return Rational(BigInt(s));
}

}  // namespace eala

namespace Eigen {

template <>
struct NumTraits<eala::Rational> : GenericNumTraits<eala::Rational> {
  typedef eala::Rational Real;
  typedef eala::Rational NonInteger;
  typedef eala::Rational Nested;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 120,
    MulCost = 120,
  };
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen
