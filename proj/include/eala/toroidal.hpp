#pragma once

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "eala/errors.hpp"
#include "eala/field.hpp"
#include "eala/simple_algebra.hpp"

namespace eala {

enum class TorKind : int { Loop = 0, Central = 1, Skew = 2, Deg = 3 };

// Basis key of the double-loop algebra with Kahler center and skew
// derivations: t0^m0 t1^m1 (x | k_a), d(m0,m1), or the degree derivations
// d0, d1.  Central keys are kept canonical (see central_canonical).
struct ToroidalKey {
  TorKind kind = TorKind::Deg;
  GLabel x{};
  int a = 0;
  long m0 = 0;
  long m1 = 0;

  static ToroidalKey loop(GLabel g, long d0, long d1) {
    return {TorKind::Loop, g, 0, d0, d1};
  }
  static ToroidalKey central(int a, long d0, long d1) {
    if (a != 0 && a != 1) throw Error("central index must be 0 or 1");
    return {TorKind::Central, {}, a, d0, d1};
  }
  static ToroidalKey skew(long d0, long d1) {
    if (d0 == 0 && d1 == 0) throw Error("d(0,0) is zero, not a basis key");
    return {TorKind::Skew, {}, 0, d0, d1};
  }
  static ToroidalKey deg(int i) {
    if (i != 0 && i != 1) throw Error("degree derivation index must be 0 or 1");
    return {TorKind::Deg, {}, i, 0, 0};
  }

  friend auto operator<=>(const ToroidalKey&, const ToroidalKey&) = default;
};

// Canonical form of t^(m0,m1) k_a modulo exact forms: the relation
// m0 t^m k0 + m1 t^m k1 = 0 leaves k1 at degrees with m0 != 0 and k0 at
// degrees with m0 = 0 != m1.  Returns the surviving key and the factor it
// picks up; nullopt when the term dies.
template <class K>
std::optional<std::pair<ToroidalKey, K>> central_canonical(int a, long m0, long m1) {
  if (m0 == 0 && m1 == 0) return {{ToroidalKey::central(a, 0, 0), K(1)}};
  if (m0 != 0) {
    if (a == 1) return {{ToroidalKey::central(1, m0, m1), K(1)}};
    if (m1 == 0) return std::nullopt;
    return {{ToroidalKey::central(1, m0, m1), K(-1) * K(m1) / K(m0)}};
  }
  if (a == 0) return {{ToroidalKey::central(0, m0, m1), K(1)}};
  return std::nullopt;
}

template <class K>
class ToroidalElem {
 public:
  using Terms = std::map<ToroidalKey, K>;

  ToroidalElem() = default;

  void add(const ToroidalKey& key, const K& coeff) {
    if (eala::is_zero(coeff)) return;
    ToroidalKey k = key;
    K c = coeff;
    if (key.kind == TorKind::Central) {
      auto canon = central_canonical<K>(key.a, key.m0, key.m1);
      if (!canon) return;
      k = canon->first;
      c = coeff * canon->second;
    }
    auto [it, inserted] = terms_.try_emplace(k, c);
    if (!inserted) {
      it->second += c;
      if (eala::is_zero(it->second)) terms_.erase(it);
    }
  }

  void add(const ToroidalElem& other, const K& scale = K(1)) {
    for (const auto& [k, c] : other.terms_) add(k, c * scale);
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  K coeff(const ToroidalKey& k) const {
    auto it = terms_.find(k);
    return it == terms_.end() ? K(0) : it->second;
  }

  friend ToroidalElem operator+(ToroidalElem a, const ToroidalElem& b) {
    a.add(b);
    return a;
  }
  friend ToroidalElem operator-(ToroidalElem a, const ToroidalElem& b) {
    a.add(b, K(-1));
    return a;
  }
  friend ToroidalElem operator*(const K& s, const ToroidalElem& e) {
    ToroidalElem out;
    out.add(e, s);
    return out;
  }
  friend bool operator==(const ToroidalElem& a, const ToroidalElem& b) {
    return a.terms_ == b.terms_;
  }

  static ToroidalElem single(const ToroidalKey& k, const K& c = K(1)) {
    ToroidalElem e;
    e.add(k, c);
    return e;
  }

 private:
  Terms terms_;
};

template <class K>
ToroidalElem<K> kahler_reduce(int a, long m0, long m1) {
  return ToroidalElem<K>::single(ToroidalKey::central(a, m0, m1));
}

// cocycle_exponent is 2 for the honest algebra; the jacobi suite flips it
// to 1 as a deliberate corruption that must be caught.
template <class K>
struct AlgebraConfig {
  SimpleAlgebra<K> simple;
  K mu = K(0);
  int cocycle_exponent = 2;
};

namespace detail {

template <class K>
void add_center_row(ToroidalElem<K>& out, long w0, long w1, long m0, long m1, const K& scale) {
  // scale * sum_a w_a t^(m0,m1) k_a
  if (w0 != 0) out.add(ToroidalKey::central(0, m0, m1), scale * K(w0));
  if (w1 != 0) out.add(ToroidalKey::central(1, m0, m1), scale * K(w1));
}

template <class K>
ToroidalElem<K> bracket_keys(const AlgebraConfig<K>& cfg, const ToroidalKey& p,
                             const ToroidalKey& q) {
  ToroidalElem<K> out;
  if (p.kind > q.kind) {
    out.add(bracket_keys(cfg, q, p), K(-1));
    return out;
  }

  switch (p.kind) {
    case TorKind::Loop:
      switch (q.kind) {
        case TorKind::Loop: {
          // [t^m x, t^n y] = t^(m+n) [x,y] + <x,y> sum_a m_a t^(m+n) k_a
          Mat<K> xm = cfg.simple.matrix(p.x), ym = cfg.simple.matrix(q.x);
          Mat<K> comm = SimpleAlgebra<K>::bracket(xm, ym);
          for (const auto& [lab, c] : cfg.simple.decompose(comm))
            out.add(ToroidalKey::loop(lab, p.m0 + q.m0, p.m1 + q.m1), c);
          K pairing = SimpleAlgebra<K>::form(xm, ym);
          if (!is_zero(pairing))
            add_center_row(out, p.m0, p.m1, p.m0 + q.m0, p.m1 + q.m1, pairing);
          return out;
        }
        case TorKind::Central:
          return out;
        case TorKind::Skew: {
          // -[d(n), t^m x] with n = q, m = p
          K c = K(-1) * K(q.m0 * p.m1 - q.m1 * p.m0);
          out.add(ToroidalKey::loop(p.x, p.m0 + q.m0, p.m1 + q.m1), c);
          return out;
        }
        case TorKind::Deg: {
          // -[d_i, t^m x] = -m_i t^m x
          long mi = (q.a == 0) ? p.m0 : p.m1;
          out.add(p, K(-mi));
          return out;
        }
      }
      break;
    case TorKind::Central:
      switch (q.kind) {
        case TorKind::Central:
          return out;
        case TorKind::Skew: {
          // -[d(m), t^n k_j]; m = q, n = p, j = p.a
          long cross = q.m0 * p.m1 - q.m1 * p.m0;
          if (cross != 0) out.add(ToroidalKey::central(p.a, p.m0 + q.m0, p.m1 + q.m1), K(-cross));
          long w = (p.a == 1) ? q.m0 : -q.m1;  // m0 d_1j - m1 d_0j
          if (w != 0) add_center_row(out, q.m0, q.m1, p.m0 + q.m0, p.m1 + q.m1, K(-w));
          return out;
        }
        case TorKind::Deg: {
          // -[d_i, t^n k_j] = -n_i t^n k_j
          long ni = (q.a == 0) ? p.m0 : p.m1;
          out.add(p, K(-ni));
          return out;
        }
      }
      break;
    case TorKind::Skew:
      switch (q.kind) {
        case TorKind::Skew: {
          // [d(m), d(n)] = (m0 n1 - m1 n0) d(m+n) + mu (m0 n1 - m1 n0)^e sum_a m_a t^(m+n) k_a
          long cross = p.m0 * q.m1 - p.m1 * q.m0;
          long s0 = p.m0 + q.m0, s1 = p.m1 + q.m1;
          if (cross != 0 && !(s0 == 0 && s1 == 0)) out.add(ToroidalKey::skew(s0, s1), K(cross));
          if (!is_zero(cfg.mu)) {
            K tau = cfg.mu * pow_int(K(cross), cfg.cocycle_exponent);
            if (!is_zero(tau)) add_center_row(out, p.m0, p.m1, s0, s1, tau);
          }
          return out;
        }
        case TorKind::Deg: {
          // -[d_i, d(m)] = -m_i d(m)
          long mi = (q.a == 0) ? p.m0 : p.m1;
          out.add(p, K(-mi));
          return out;
        }
        default:
          break;
      }
      break;
    case TorKind::Deg:
      return out;  // [d_i, d_j] = 0
  }
  return out;
}

}  // namespace detail

template <class K>
ToroidalElem<K> bracket(const AlgebraConfig<K>& cfg, const ToroidalElem<K>& e1,
                        const ToroidalElem<K>& e2) {
  ToroidalElem<K> out;
  for (const auto& [k1, c1] : e1.terms())
    for (const auto& [k2, c2] : e2.terms()) out.add(detail::bracket_keys(cfg, k1, k2), c1 * c2);
  return out;
}

namespace detail {

template <class K>
K form_keys(const SimpleAlgebra<K>& simple, const ToroidalKey& p, const ToroidalKey& q) {
  if (p.kind > q.kind) return form_keys(simple, q, p);
  if (p.kind == TorKind::Loop && q.kind == TorKind::Loop) {
    if (p.m0 + q.m0 != 0 || p.m1 + q.m1 != 0) return K(0);
    return SimpleAlgebra<K>::form(simple.matrix(p.x), simple.matrix(q.x));
  }
  if (p.kind == TorKind::Central && q.kind == TorKind::Skew) {
    // <d(m), t^n k_j> = (m1 d_0j - m0 d_1j) delta_{m+n,0}
    if (p.m0 + q.m0 != 0 || p.m1 + q.m1 != 0) return K(0);
    return (p.a == 0) ? K(q.m1) : K(-q.m0);
  }
  if (p.kind == TorKind::Central && q.kind == TorKind::Deg) {
    // <d_i, t^n k_j> = delta_ij delta_{n,0}
    if (p.m0 != 0 || p.m1 != 0) return K(0);
    return (p.a == q.a) ? K(1) : K(0);
  }
  return K(0);
}

}  // namespace detail

template <class K>
K invariant_form(const SimpleAlgebra<K>& simple, const ToroidalElem<K>& e1,
                 const ToroidalElem<K>& e2) {
  K out(0);
  for (const auto& [k1, c1] : e1.terms())
    for (const auto& [k2, c2] : e2.terms()) out += c1 * c2 * detail::form_keys(simple, k1, k2);
  return out;
}

// Weight of a basis key: values on the finite coweights H_1..H_l plus the
// coefficients of delta_0, delta_1.
template <class K>
struct Weight {
  Vec<K> finite;
  K c0 = K(0);
  K c1 = K(0);

  friend bool operator==(const Weight& a, const Weight& b) {
    if (a.c0 != b.c0 || a.c1 != b.c1 || a.finite.size() != b.finite.size()) return false;
    for (Eigen::Index i = 0; i < a.finite.size(); ++i)
      if (a.finite(i) != b.finite(i)) return false;
    return true;
  }
  friend Weight operator+(const Weight& a, const Weight& b) {
    Weight w;
    w.finite = a.finite + b.finite;
    w.c0 = a.c0 + b.c0;
    w.c1 = a.c1 + b.c1;
    return w;
  }
};

template <class K>
Weight<K> root_of(const SimpleAlgebra<K>& simple, const ToroidalKey& key) {
  Weight<K> w;
  w.finite = Vec<K>::Zero(simple.rank());
  if (key.kind == TorKind::Loop) {
    auto coords = simple.finite_root(key.x);
    for (int c = 0; c < simple.rank(); ++c) {
      if (coords[c] == 0) continue;
      for (int r = 0; r < simple.rank(); ++r)
        w.finite(r) += K(coords[c]) * simple.cartan()(r, c);
    }
  }
  if (key.kind != TorKind::Deg) {
    w.c0 = K(key.m0);
    w.c1 = K(key.m1);
  }
  return w;
}

// Sign of the affine part alpha + m0 delta_0: the delta_1 direction never
// affects positivity.
inline char triangular_part(const ToroidalKey& key) {
  long m0 = (key.kind == TorKind::Deg) ? 0 : key.m0;
  if (m0 > 0) return '+';
  if (m0 < 0) return '-';
  if (key.kind == TorKind::Loop && !key.x.is_h()) return key.x.i < key.x.j ? '+' : '-';
  return '0';
}

template <class K>
ToroidalElem<K> jacobi_residual(const AlgebraConfig<K>& cfg, const ToroidalElem<K>& e1,
                                const ToroidalElem<K>& e2, const ToroidalElem<K>& e3) {
  ToroidalElem<K> out = bracket(cfg, bracket(cfg, e1, e2), e3);
  out.add(bracket(cfg, bracket(cfg, e2, e3), e1));
  out.add(bracket(cfg, bracket(cfg, e3, e1), e2));
  return out;
}

// ---- textual element syntax ----
// term := [coef *] [t0^a *] [t1^b *] atom
// atom := E12 | E(1,2) | H1 | e | f | h | k0 | k1 | k0(m0,m1) | d(m0,m1) | d0 | d1
// coef := rational, or any field literal in parentheses
// terms joined by top-level + or - (exponent signs as in t1^-2 stay inside)

namespace detail {

inline std::vector<std::pair<int, std::string>> split_signed_terms(const std::string& s) {
  std::vector<std::pair<int, std::string>> out;
  int depth = 0, sign = 1;
  std::string cur;
  for (std::size_t i = 0; i < s.size(); ++i) {
    char ch = s[i];
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    bool top_sign = (ch == '+' || ch == '-') && depth == 0 &&
                    (i == 0 || (s[i - 1] != '^' && s[i - 1] != '*' && s[i - 1] != '(' &&
                                s[i - 1] != ',' && s[i - 1] != '+' && s[i - 1] != '-'));
    if (top_sign) {
      if (!cur.empty()) out.push_back({sign, cur});
      cur.clear();
      sign = (ch == '-') ? -1 : 1;
    } else {
      cur += ch;
    }
  }
  if (!cur.empty()) out.push_back({sign, cur});
  return out;
}

inline std::vector<std::string> split_factors(const std::string& s) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char ch : s) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (ch == '*' && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

inline long parse_long(const std::string& s, const std::string& ctx) {
  try {
    std::size_t used = 0;
    long v = std::stol(s, &used);
    if (used != s.size()) throw ConfigError("");
    return v;
  } catch (...) {
    throw ConfigError("bad integer '" + s + "' in " + ctx);
  }
}

inline std::pair<long, long> parse_degree_pair(const std::string& body, const std::string& ctx) {
  std::size_t comma = body.find(',');
  if (comma == std::string::npos) throw ConfigError("expected (m0,m1) in " + ctx);
  return {parse_long(body.substr(0, comma), ctx), parse_long(body.substr(comma + 1), ctx)};
}

}  // namespace detail

template <class K>
ToroidalElem<K> parse_elem(const std::string& raw, const SimpleAlgebra<K>& simple,
                           unsigned cyc_order = 1) {
  std::string s;
  for (char ch : raw)
    if (ch != ' ' && ch != '\t') s += ch;
  if (s.empty()) throw ConfigError("empty element literal");

  ToroidalElem<K> out;
  for (const auto& [sign, term] : detail::split_signed_terms(s)) {
    K coef = (sign < 0) ? K(-1) : K(1);
    long t0 = 0, t1 = 0;
    bool have_t = false;
    std::optional<ToroidalKey> atom;
    bool atom_is_zero = false;

    for (const std::string& f : detail::split_factors(term)) {
      if (f.empty()) throw ConfigError("empty factor in '" + raw + "'");
      if (f[0] == '(') {
        if (f.back() != ')') throw ConfigError("unbalanced parens in '" + raw + "'");
        coef *= FieldOps<K>::parse(f.substr(1, f.size() - 2), cyc_order);
        continue;
      }
      if (f[0] >= '0' && f[0] <= '9') {
        coef *= FieldOps<K>::parse(f, cyc_order);
        continue;
      }
      if (f.size() >= 2 && f[0] == 't' && (f[1] == '0' || f[1] == '1')) {
        long expo = 1;
        if (f.size() > 2) {
          if (f[2] != '^') throw ConfigError("bad factor '" + f + "'");
          expo = detail::parse_long(f.substr(3), raw);
        }
        (f[1] == '0' ? t0 : t1) += expo;
        have_t = true;
        continue;
      }
      if (atom) throw ConfigError("two algebra atoms in one term: '" + term + "'");
      if (f == "d0" || f == "d1") {
        atom = ToroidalKey::deg(f[1] - '0');
      } else if (f == "k0" || f == "k1") {
        atom = ToroidalKey::central(f[1] - '0', 0, 0);
      } else if ((f.size() > 3 && (f.rfind("k0(", 0) == 0 || f.rfind("k1(", 0) == 0)) &&
                 f.back() == ')') {
        auto [m0, m1] = detail::parse_degree_pair(f.substr(3, f.size() - 4), raw);
        atom = ToroidalKey::central(f[1] - '0', m0, m1);
      } else if (f.size() > 2 && f.rfind("d(", 0) == 0 && f.back() == ')') {
        auto [m0, m1] = detail::parse_degree_pair(f.substr(2, f.size() - 3), raw);
        if (m0 == 0 && m1 == 0)
          atom_is_zero = true;
        else
          atom = ToroidalKey::skew(m0, m1);
      } else if (f == "e" && simple.rank() == 1) {
        atom = ToroidalKey::loop({1, 2}, 0, 0);
      } else if (f == "f" && simple.rank() == 1) {
        atom = ToroidalKey::loop({2, 1}, 0, 0);
      } else if (f == "h" && simple.rank() == 1) {
        atom = ToroidalKey::loop({1, 1}, 0, 0);
      } else if (f[0] == 'H') {
        int i = static_cast<int>(detail::parse_long(f.substr(1), raw));
        atom = ToroidalKey::loop({i, i}, 0, 0);
      } else if (f[0] == 'E' && f.size() == 3 && f[1] >= '1' && f[1] <= '9' && f[2] >= '1' &&
                 f[2] <= '9') {
        atom = ToroidalKey::loop({f[1] - '0', f[2] - '0'}, 0, 0);
      } else if (f[0] == 'E' && f.size() > 3 && f[1] == '(' && f.back() == ')') {
        auto [i, j] = detail::parse_degree_pair(f.substr(2, f.size() - 3), raw);
        atom = ToroidalKey::loop({static_cast<int>(i), static_cast<int>(j)}, 0, 0);
      } else {
        throw ConfigError("unrecognized factor '" + f + "' in '" + raw + "'");
      }
    }

    if (atom_is_zero) continue;
    if (!atom) throw ConfigError("term without algebra atom: '" + term + "'");
    ToroidalKey key = *atom;
    if (have_t) {
      if (key.kind == TorKind::Skew || key.kind == TorKind::Deg)
        throw ConfigError("derivations take no t-powers: '" + term + "'");
      if (key.kind == TorKind::Central && (key.m0 != 0 || key.m1 != 0))
        throw ConfigError("mix of t-powers and k(m0,m1) degrees: '" + term + "'");
      key.m0 = t0;
      key.m1 = t1;
    }
    if (key.kind == TorKind::Loop) simple.matrix(key.x);  // range check
    out.add(key, coef);
  }
  return out;
}

namespace detail {

inline std::string degree_prefix(long m0, long m1) {
  std::string s;
  if (m0 != 0) s += "t0^" + std::to_string(m0) + "*";
  if (m1 != 0) s += "t1^" + std::to_string(m1) + "*";
  return s;
}

inline std::string key_text(const ToroidalKey& k) {
  switch (k.kind) {
    case TorKind::Loop:
      return degree_prefix(k.m0, k.m1) + to_string(k.x);
    case TorKind::Central:
      return degree_prefix(k.m0, k.m1) + "k" + std::to_string(k.a);
    case TorKind::Skew:
      return "d(" + std::to_string(k.m0) + "," + std::to_string(k.m1) + ")";
    case TorKind::Deg:
      return "d" + std::to_string(k.a);
  }
  return "";
}

}  // namespace detail

template <class K>
std::string to_text(const ToroidalElem<K>& e) {
  if (e.is_zero()) return "0";
  std::string out;
  for (const auto& [key, coef] : e.terms()) {
    K c = coef;
    if (out.empty()) {
      if (FieldOps<K>::print_negative(c)) {
        out += "-";
        c = -c;
      }
    } else {
      bool neg = FieldOps<K>::print_negative(c);
      out += neg ? " - " : " + ";
      if (neg) c = -c;
    }
    if (c != K(1)) out += FieldOps<K>::coef_text(c) + "*";
    out += detail::key_text(key);
  }
  return out;
}

}  // namespace eala
