#pragma once

#include <string>

#include "eala/cyclotomic.hpp"
#include "eala/rational.hpp"

namespace eala {

// Uniform scalar access for code templated on the field K.  The two
// instantiations are Rational (cyclotomic order <= 2, with e folded to +-1)
// and Cyclotomic (any order, values carry their order).
template <class K>
struct FieldOps;

template <>
struct FieldOps<Rational> {
  static Rational from_int(long v) { return Rational(v); }
  static Rational from_rational(const Rational& q) { return q; }
  static Rational parse(const std::string& s, unsigned order) {
    Cyclotomic c = parse_cyclotomic(s, order);
    if (!c.is_rational()) throw ConfigError("scalar '" + s + "' is not rational");
    return c.rational_part();
  }
  static Rational root_of_unity(unsigned r, unsigned order) {
    Cyclotomic c = Cyclotomic::root_in(r, order);
    if (!c.is_rational())
      throw FieldMismatch("e_" + std::to_string(r) + " does not lie in Q");
    return c.rational_part();
  }
  static bool print_negative(const Rational& q) { return q < 0; }
  static std::string coef_text(const Rational& q) { return to_string(q); }
  static constexpr const char* name() { return "rational"; }
};

template <>
struct FieldOps<Cyclotomic> {
  static Cyclotomic from_int(long v) { return Cyclotomic(v); }
  static Cyclotomic from_rational(const Rational& q) { return Cyclotomic(q); }
  static Cyclotomic parse(const std::string& s, unsigned order) {
    return parse_cyclotomic(s, order);
  }
  static Cyclotomic root_of_unity(unsigned r, unsigned order) {
    return Cyclotomic::root_in(r, order);
  }
  static bool print_negative(const Cyclotomic& c) {
    return c.is_rational() && c.rational_part() < 0;
  }
  static std::string coef_text(const Cyclotomic& c) {
    if (c.is_rational()) return to_string(c.rational_part());
    return "(" + to_string(c) + ")";
  }
  static constexpr const char* name() { return "cyclotomic"; }
};

template <class K>
K pow_int(const K& base, long e);

template <>
inline Rational pow_int<Rational>(const Rational& base, long e) {
  if (e < 0) {
    if (is_zero(base)) throw DivisionByZero();
    return pow_int(Rational(1) / base, -e);
  }
  Rational acc(1), b = base;
  while (e > 0) {
    if (e & 1) acc *= b;
    b *= b;
    e >>= 1;
  }
  return acc;
}

template <>
inline Cyclotomic pow_int<Cyclotomic>(const Cyclotomic& base, long e) {
  return Cyclotomic::pow(base, e);
}

}  // namespace eala
