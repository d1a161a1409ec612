#pragma once

#include <Eigen/Core>

#include <map>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "eala/errors.hpp"
#include "eala/rational.hpp"

namespace eala {

namespace detail {

// Little-endian polynomials over Q (index = degree).
using Poly = std::vector<Rational>;

inline void poly_trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// Exact long division; throws if the remainder is nonzero.
inline Poly poly_div_exact(Poly num, const Poly& den) {
  if (den.empty() || is_zero(den.back())) throw Error("polynomial division by zero");
  if (num.size() < den.size()) throw Error("inexact polynomial division");
  Poly quo(num.size() - den.size() + 1, Rational(0));
  for (std::size_t shift = quo.size(); shift-- > 0;) {
    Rational f = num[shift + den.size() - 1] / den.back();
    quo[shift] = f;
    if (is_zero(f)) continue;
    for (std::size_t j = 0; j < den.size(); ++j) num[shift + j] -= f * den[j];
  }
  poly_trim(num);
  if (!num.empty()) throw Error("inexact polynomial division");
  return quo;
}

// Phi_d for every divisor d of r, bottom up: Phi_d = (x^d - 1) / prod of the
// Phi_e over proper divisors e of d.  Self-contained so the caller can hold
// a cache lock.
inline Poly cyclotomic_poly_uncached(unsigned r) {
  std::map<unsigned, Poly> by_divisor;
  for (unsigned d = 1; d <= r; ++d) {
    if (r % d != 0) continue;
    Poly num(d + 1, Rational(0));  // x^d - 1
    num[0] = -1;
    num[d] = 1;
    for (const auto& [e, phi_e] : by_divisor) {
      if (d % e == 0) num = poly_div_exact(std::move(num), phi_e);
    }
    by_divisor.emplace(d, std::move(num));
  }
  return by_divisor.at(r);
}

struct CycTable {
  unsigned phi = 1;
  Poly minimal;                              // Phi_r, monic of degree phi
  std::vector<std::vector<Rational>> red;    // x^(phi+i) mod Phi_r
};

inline const CycTable& cyc_table(unsigned r) {
  static std::mutex mu;
  static std::map<unsigned, CycTable> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(r);
  if (it != cache.end()) return it->second;

  CycTable t;
  t.minimal = cyclotomic_poly_uncached(r);
  t.phi = static_cast<unsigned>(t.minimal.size() - 1);
  // x^phi = -(lower part of Phi), then shift-and-reduce up to degree 2*phi-2.
  std::vector<Rational> row(t.phi, Rational(0));
  for (unsigned j = 0; j < t.phi; ++j) row[j] = -t.minimal[j];
  t.red.push_back(row);
  for (unsigned k = t.phi + 1; t.phi >= 2 && k <= 2 * t.phi - 2; ++k) {
    std::vector<Rational> next(t.phi, Rational(0));
    Rational top = row[t.phi - 1];
    for (unsigned j = t.phi - 1; j > 0; --j) next[j] = row[j - 1];
    next[0] = 0;
    if (!is_zero(top)) {
      for (unsigned j = 0; j < t.phi; ++j) next[j] += top * t.red[0][j];
    }
    t.red.push_back(next);
    row = next;
  }
  return cache.emplace(r, std::move(t)).first->second;
}

}  // namespace detail

inline unsigned cyclotomic_phi(unsigned r) { return detail::cyc_table(r).phi; }

// An element of Q(e_r) in the power basis 1, e, ..., e^(phi(r)-1) of
// Q[x]/Phi_r(x).  Order 1 is plain Q and embeds into any other order;
// mixing two orders > 1 is an error rather than a silent coercion.
class Cyclotomic {
 public:
  Cyclotomic() : order_(1), coeff_{Rational(0)} {}
  Cyclotomic(int v) : order_(1), coeff_{Rational(v)} {}  // NOLINT: implicit by design
  Cyclotomic(long v) : order_(1), coeff_{Rational(v)} {}
  Cyclotomic(const Rational& v) : order_(1), coeff_{v} {}
  Cyclotomic(unsigned order, std::vector<Rational> coeff)
      : order_(order), coeff_(std::move(coeff)) {
    if (coeff_.size() != cyclotomic_phi(order_)) throw Error("coefficient size != phi(order)");
  }

  static Cyclotomic root(unsigned r) {
    if (r == 1) return Cyclotomic(1);
    unsigned phi = cyclotomic_phi(r);
    std::vector<Rational> c(phi, Rational(0));
    if (phi == 1) {
      // r == 2: the basis is {1} and e == -1.
      c[0] = -1;
    } else {
      c[1] = 1;
    }
    return Cyclotomic(r, std::move(c));
  }

  // e_r inside Q(e_order): requires r | order.
  static Cyclotomic root_in(unsigned r, unsigned order) {
    if (order % r != 0) {
      throw FieldMismatch("no canonical e_" + std::to_string(r) + " inside Q(e_" +
                          std::to_string(order) + ")");
    }
    return pow(root(order), static_cast<long>(order / r));
  }

  unsigned order() const { return order_; }
  const std::vector<Rational>& coeff() const { return coeff_; }

  bool is_zero() const {
    for (const auto& c : coeff_)
      if (!eala::is_zero(c)) return false;
    return true;
  }

  bool is_rational() const {
    for (std::size_t i = 1; i < coeff_.size(); ++i)
      if (!eala::is_zero(coeff_[i])) return false;
    return true;
  }

  // Only valid when is_rational(); the constant coordinate otherwise.
  const Rational& rational_part() const { return coeff_[0]; }

  friend Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b) {
    auto [x, y] = promote(a, b);
    for (std::size_t i = 0; i < x.coeff_.size(); ++i) x.coeff_[i] += y.coeff_[i];
    return x;
  }
  friend Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b) {
    auto [x, y] = promote(a, b);
    for (std::size_t i = 0; i < x.coeff_.size(); ++i) x.coeff_[i] -= y.coeff_[i];
    return x;
  }
  friend Cyclotomic operator-(const Cyclotomic& a) {
    Cyclotomic x = a;
    for (auto& c : x.coeff_) c = -c;
    return x;
  }
  friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
    auto [x, y] = promote(a, b);
    const unsigned phi = static_cast<unsigned>(x.coeff_.size());
    if (phi == 1) {
      x.coeff_[0] *= y.coeff_[0];
      return x;
    }
    std::vector<Rational> prod(2 * phi - 1, Rational(0));
    for (unsigned i = 0; i < phi; ++i) {
      if (eala::is_zero(x.coeff_[i])) continue;
      for (unsigned j = 0; j < phi; ++j) {
        if (eala::is_zero(y.coeff_[j])) continue;
        prod[i + j] += x.coeff_[i] * y.coeff_[j];
      }
    }
    const auto& t = detail::cyc_table(x.order_);
    std::vector<Rational> out(prod.begin(), prod.begin() + phi);
    for (unsigned k = phi; k < prod.size(); ++k) {
      if (eala::is_zero(prod[k])) continue;
      const auto& row = t.red[k - phi];
      for (unsigned j = 0; j < phi; ++j) out[j] += prod[k] * row[j];
    }
    x.coeff_ = std::move(out);
    return x;
  }
  friend Cyclotomic operator/(const Cyclotomic& a, const Cyclotomic& b) { return a * inverse(b); }

  Cyclotomic& operator+=(const Cyclotomic& o) { return *this = *this + o; }
  Cyclotomic& operator-=(const Cyclotomic& o) { return *this = *this - o; }
  Cyclotomic& operator*=(const Cyclotomic& o) { return *this = *this * o; }
  Cyclotomic& operator/=(const Cyclotomic& o) { return *this = *this / o; }

  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
    auto [x, y] = promote(a, b);
    return x.coeff_ == y.coeff_;
  }
  friend bool operator!=(const Cyclotomic& a, const Cyclotomic& b) { return !(a == b); }
  // Lexicographic on (order, coords); only used as a container key.
  friend bool operator<(const Cyclotomic& a, const Cyclotomic& b) {
    auto [x, y] = promote(a, b);
    for (std::size_t i = 0; i < x.coeff_.size(); ++i) {
      if (x.coeff_[i] != y.coeff_[i]) return x.coeff_[i] < y.coeff_[i];
    }
    return false;
  }

  static Cyclotomic inverse(const Cyclotomic& a) {
    if (a.is_zero()) throw DivisionByZero();
    if (a.coeff_.size() == 1) {
      Cyclotomic x = a;
      x.coeff_[0] = Rational(1) / x.coeff_[0];
      return x;
    }
    // Extended Euclid in Q[x] against Phi_r; gcd is a nonzero constant
    // because Phi_r is irreducible over Q.
    detail::Poly r0 = detail::cyc_table(a.order_).minimal;
    detail::Poly r1(a.coeff_.begin(), a.coeff_.end());
    detail::poly_trim(r1);
    detail::Poly s0{Rational(0)}, s1{Rational(1)};  // coefficients of `a`
    while (true) {
      // r0 = q*r1 + r2
      detail::Poly rem = r0;
      detail::Poly quo(rem.size() >= r1.size() ? rem.size() - r1.size() + 1 : 0, Rational(0));
      while (rem.size() >= r1.size() && !rem.empty()) {
        Rational f = rem.back() / r1.back();
        std::size_t shift = rem.size() - r1.size();
        quo[shift] = f;
        for (std::size_t j = 0; j < r1.size(); ++j) rem[shift + j] -= f * r1[j];
        detail::poly_trim(rem);
      }
      // s2 = s0 - q*s1
      detail::Poly s2 = s0;
      if (s2.size() < quo.size() + s1.size()) s2.resize(quo.size() + s1.size(), Rational(0));
      for (std::size_t i = 0; i < quo.size(); ++i) {
        if (eala::is_zero(quo[i])) continue;
        for (std::size_t j = 0; j < s1.size(); ++j) s2[i + j] -= quo[i] * s1[j];
      }
      detail::poly_trim(s2);
      if (rem.empty()) {
        // r1 is the gcd (a constant); s1 * a == r1 mod Phi.
        if (r1.size() != 1) throw Error("cyclotomic inverse: non-constant gcd");
        std::vector<Rational> c(a.coeff_.size(), Rational(0));
        for (std::size_t i = 0; i < s1.size() && i < c.size(); ++i) c[i] = s1[i] / r1[0];
        return Cyclotomic(a.order_, std::move(c));
      }
      r0 = std::move(r1);
      r1 = std::move(rem);
      s0 = std::move(s1);
      s1 = std::move(s2);
    }
  }

  static Cyclotomic pow(const Cyclotomic& a, long e) {
    if (e < 0) return pow(inverse(a), -e);
    Cyclotomic base = a, acc = Cyclotomic(1);
    while (e > 0) {
      if (e & 1) acc *= base;
      base *= base;
      e >>= 1;
    }
    return acc;
  }

 private:
  static std::pair<Cyclotomic, Cyclotomic> promote(const Cyclotomic& a, const Cyclotomic& b) {
    if (a.order_ == b.order_) return {a, b};
    if (a.order_ == 1) {
      Cyclotomic x(b.order_, std::vector<Rational>(cyclotomic_phi(b.order_), Rational(0)));
      x.coeff_[0] = a.coeff_[0];
      return {x, b};
    }
    if (b.order_ == 1) {
      auto [y, x] = promote(b, a);
      return {x, y};
    }
    throw FieldMismatch("mixed cyclotomic orders " + std::to_string(a.order_) + " and " +
                        std::to_string(b.order_));
  }

  unsigned order_;
  std::vector<Rational> coeff_;
};

inline bool is_zero(const Cyclotomic& c) { return c.is_zero(); }

inline std::string to_string(const Cyclotomic& c) {
  if (c.is_zero()) return "0";
  std::string out;
  const auto& cf = c.coeff();
  for (std::size_t d = cf.size(); d-- > 0;) {
    if (is_zero(cf[d])) continue;
    Rational v = cf[d];
    if (out.empty()) {
      if (v < 0) {
        out += "-";
        v = -v;
      }
    } else {
      out += (v < 0) ? " - " : " + ";
      if (v < 0) v = -v;
    }
    if (d == 0) {
      out += to_string(v);
    } else {
      if (v != 1) out += to_string(v) + "*";
      out += (d == 1) ? "e" : "e^" + std::to_string(d);
    }
  }
  return out;
}

// Parses sums of terms "q", "e", "e^k", "q*e^k" over the generator e of
// Q(e_order); exponents >= phi(order) are reduced.
inline Cyclotomic parse_cyclotomic(const std::string& raw, unsigned order) {
  std::string s;
  for (char ch : raw)
    if (ch != ' ' && ch != '\t') s += ch;
  if (s.empty()) throw ConfigError("empty cyclotomic literal");

  Cyclotomic acc(0);
  Cyclotomic e = Cyclotomic::root(order);
  std::size_t i = 0;
  bool first = true;
  while (i < s.size()) {
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = (s[i] == '-') ? -1 : 1;
      ++i;
    } else if (!first) {
      throw ConfigError("bad cyclotomic literal: '" + raw + "'");
    }
    first = false;
    std::size_t start = i;
    while (i < s.size() && s[i] != '+' && s[i] != '-') ++i;
    std::string term = s.substr(start, i - start);
    if (term.empty()) throw ConfigError("bad cyclotomic literal: '" + raw + "'");

    Rational coef(1);
    long expo = 0;
    std::size_t estar = term.find('e');
    if (estar == std::string::npos) {
      coef = parse_rational(term);
    } else {
      std::string pre = term.substr(0, estar);
      if (!pre.empty()) {
        if (pre.back() != '*') throw ConfigError("bad cyclotomic literal: '" + raw + "'");
        coef = parse_rational(pre.substr(0, pre.size() - 1));
      }
      std::string post = term.substr(estar + 1);
      if (post.empty()) {
        expo = 1;
      } else if (post[0] == '^') {
        try {
          expo = std::stol(post.substr(1));
        } catch (...) {
          throw ConfigError("bad cyclotomic exponent in '" + raw + "'");
        }
      } else {
        throw ConfigError("bad cyclotomic literal: '" + raw + "'");
      }
    }
    if (sign < 0) coef = -coef;
    acc += Cyclotomic(coef) * Cyclotomic::pow(e, expo);
  }
  return acc;
}

}  // namespace eala

namespace Eigen {

template <>
struct NumTraits<eala::Cyclotomic> : GenericNumTraits<eala::Cyclotomic> {
  typedef eala::Cyclotomic Real;
  typedef eala::Cyclotomic NonInteger;
  typedef eala::Cyclotomic Nested;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 16,
    AddCost = 240,
    MulCost = 480,
  };
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen
