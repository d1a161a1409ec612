#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "field.hpp"
#include "toroidal.hpp"
#include "viraffine.hpp"

namespace eala {

// Vertex-operator realization of the double-loop algebra on a truncated
// highest weight module V, and of the full algebra on V (x) C[t1^{+-1}].
// Every operator family is a z-coefficient of a field dressed with the
// exponential series E(n,z) built from the k1 Heisenberg modes.

template <class K>
long vector_depth(const VermaVector<K>& v) {
  long d = 0;
  for (const auto& [mon, c] : v.terms()) d = std::max(d, mon.depth());
  return d;
}

namespace detail {

// partitions of m into exactly s parts, non-increasing
inline void partitions_rec(long m, long s, long maxpart,
                           std::vector<long>& cur,
                           std::vector<std::vector<long>>& out) {
  if (s == 0) {
    if (m == 0) out.push_back(cur);
    return;
  }
  long hi = std::min(maxpart, m - (s - 1));
  for (long first = hi; first >= 1; --first) {
    cur.push_back(first);
    partitions_rec(m - first, s - 1, first, cur, out);
    cur.pop_back();
  }
}

inline std::vector<std::vector<long>> partitions(long m, long s) {
  std::vector<std::vector<long>> out;
  std::vector<long> cur;
  partitions_rec(m, s, m, cur, out);
  return out;
}

}  // namespace detail

// phi^{sign}(m, s) as a list of (k1 mode multiset, coefficient).
// sign = -1 gives the creation series (modes -m_i), sign = +1 the
// annihilation series (modes +m_i).
template <class K>
std::vector<std::pair<std::vector<long>, K>> phi_terms(int sign, long m,
                                                       long s, const K& c) {
  if (sign != 1 && sign != -1) throw ConfigError("phi sign must be +-1");
  if (is_zero(c)) throw ConfigError("phi needs a nonzero level c");
  if (m < 0 || s < 0) throw ConfigError("phi indices must be nonnegative");
  std::vector<std::pair<std::vector<long>, K>> out;
  if (s == 0) {
    if (m == 0) out.push_back({{}, K(1)});
    return out;
  }
  K unit = K(-sign) / c;
  for (const auto& parts : detail::partitions(m, s)) {
    K coef = K(1);
    long run = 1;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      coef *= unit / K(parts[i]);
      if (i + 1 < parts.size() && parts[i + 1] == parts[i]) {
        ++run;
        coef /= K(run);
      } else {
        run = 1;
      }
    }
    std::vector<long> modes;
    for (long r : parts) modes.push_back(sign * r);
    out.push_back({std::move(modes), coef});
  }
  return out;
}

// Operator families of the loop construction on one truncated module.
// All evaluation runs annihilation side first, so intermediate depths never
// exceed the depth of the final result and window escapes are genuine.
template <class K>
class VertexOps {
 public:
  explicit VertexOps(TruncatedHWModule<K>& mod)
      : mod_(mod), c_(mod.params().c) {
    if (is_zero(c_)) throw ConfigError("loop operators need level c != 0");
  }

  TruncatedHWModule<K>& module() const { return mod_; }
  const K& level() const { return c_; }

  VermaVector<K> phi(int sign, long m, long s, const VermaVector<K>& v) const {
    VermaVector<K> out;
    for (const auto& [modes, coef] : phi_terms(sign, m, s, c_)) {
      VermaVector<K> cur = v;
      for (long mode : modes) {
        cur = mod_.act(VAKey::k1(mode), cur);
        if (cur.empty()) break;
      }
      out.add(cur, coef);
    }
    return out;
  }

  VermaVector<K> phi_n(int sign, long m, long n,
                       const VermaVector<K>& v) const {
    VermaVector<K> out;
    for (long s = 0; s <= m; ++s) {
      if (n == 0 && s > 0) break;
      VermaVector<K> piece = phi(sign, m, s, v);
      out.add(piece, pow_int(K(n), s));
    }
    return out;
  }

  // coefficient of z^{-j} in E(n,z) = E^-(n,z) E^+(n,z)
  VermaVector<K> e_coeff(long j, long n, const VermaVector<K>& v) const {
    VermaVector<K> out;
    long dv = vector_depth(v);
    for (long beta = std::max<long>(j, 0); beta <= dv; ++beta) {
      VermaVector<K> u = phi_n(1, beta, n, v);
      if (u.empty()) continue;
      out.add(phi_n(-1, beta - j, n, u));
    }
    return out;
  }

  // coefficient of z^{-m} in c Y-level field: t0^m t1^n k0 acts as c E_m(n)
  VermaVector<K> k0_op(long m, long n, const VermaVector<K>& v) const {
    return c_ * e_coeff(m, n, v);
  }

  // coefficient of z^{-m-1} in k1(z) E(n,z)
  VermaVector<K> k1_op(long m, long n, const VermaVector<K>& v) const {
    return sandwich(m, n, v, [&](long p, const VermaVector<K>& u) {
      return mod_.act(VAKey::k1(p), u);
    });
  }

  // coefficient of z^{-m-1} in x(z) E(n,z) for x in the finite algebra
  VermaVector<K> x_op(GLabel x, long m, long n,
                      const VermaVector<K>& v) const {
    return sandwich(m, n, v, [&](long p, const VermaVector<K>& u) {
      return mod_.act(VAKey::gmode(x, p), u);
    });
  }

  // coefficient of z^{-m-2} in ((1/z + d/dz) k1(z)) E(n,z)
  VermaVector<K> bark1_op(long m, long n, const VermaVector<K>& v) const {
    return sandwich(m, n, v, [&](long p, const VermaVector<K>& u) {
      if (p == 0) return VermaVector<K>{};
      return K(-p) * mod_.act(VAKey::k1(p), u);
    });
  }

  // coefficient of z^{-m-2} in :((1/z + d/dz) d1(z)) E(n,z): where d1 modes
  // p <= 0 stand left of the pair series and p > 0 right of it
  VermaVector<K> bard1_op(long m, long n, const VermaVector<K>& v) const {
    VermaVector<K> out = sandwich(m, n, v, [&](long p, const VermaVector<K>& u) {
      if (p >= 0) return VermaVector<K>{};
      return K(-p) * mod_.act(VAKey::d1(p), u);
    });
    long dv = vector_depth(v);
    for (long p = 1; p <= dv; ++p) {
      VermaVector<K> t = mod_.act(VAKey::d1(p), v);
      if (t.empty()) continue;
      t = K(-p) * t;
      long dt = vector_depth(t);
      for (long beta = 0; beta <= dt; ++beta) {
        long alpha = p + beta - m;
        if (alpha < 0) continue;
        VermaVector<K> u = phi_n(1, beta, n, t);
        if (u.empty()) continue;
        out.add(phi_n(-1, alpha, n, u));
      }
    }
    return out;
  }

  // normally ordered :d1 k1: mode p, the Heisenberg part of the coset
  // Virasoro field; d1 modes a <= -1 left, a >= 0 right
  VermaVector<K> no_d1k1_mode(long p, const VermaVector<K>& v) const {
    VermaVector<K> out;
    long dv = vector_depth(v);
    for (long a = p - dv; a <= -1; ++a)
      out.add(mod_.act(VAKey::d1(a), mod_.act(VAKey::k1(p - a), v)));
    for (long a = 0; a <= dv; ++a)
      out.add(mod_.act(VAKey::k1(p - a), mod_.act(VAKey::d1(a), v)));
    return out;
  }

  // coset Virasoro mode: L(p) - (1/c) :d1 k1:(p), commutes with all k1, d1
  VermaVector<K> lbar_mode(long p, const VermaVector<K>& v) const {
    VermaVector<K> out = mod_.act(VAKey::vir(p), v);
    out.add(no_d1k1_mode(p, v), K(-1) / c_);
    return out;
  }

  // coefficient of z^{-m-2} in Lbar(z) E(n,z)
  VermaVector<K> barL_op(long m, long n, const VermaVector<K>& v) const {
    return sandwich(m, n, v, [&](long p, const VermaVector<K>& u) {
      return lbar_mode(p, u);
    });
  }

  // action of the skew derivation frame element dtilde(m,n):
  // n Lbar(m,n) + n^2 mu bark1(m,n) - bard1(m,n)
  VermaVector<K> bard_op(long m, long n, const K& mu,
                         const VermaVector<K>& v) const {
    VermaVector<K> out = K(-1) * bard1_op(m, n, v);
    if (n != 0) {
      out.add(barL_op(m, n, v), K(n));
      out.add(bark1_op(m, n, v), K(n) * K(n) * mu);
    }
    return out;
  }

  // t0 degree derivation, diagonal in the depth grading
  VermaVector<K> d0_op(const VermaVector<K>& v) const {
    VermaVector<K> out;
    const K& d0val = mod_.params().d0val;
    for (const auto& [mon, c] : v.terms())
      out.add(mon, c * (d0val - K(mon.depth())));
    return out;
  }

 private:
  // sum over p of phi^-(p + beta - m) mid(p) phi^+(beta); valid whenever
  // mid(p) commutes with every creation mode k1(-r)
  template <class MidFn>
  VermaVector<K> sandwich(long m, long n, const VermaVector<K>& v,
                          MidFn&& mid) const {
    VermaVector<K> out;
    long dv = vector_depth(v);
    for (long beta = 0; beta <= dv; ++beta) {
      VermaVector<K> u = phi_n(1, beta, n, v);
      if (u.empty()) continue;
      long du = vector_depth(u);
      for (long p = m - beta; p <= du; ++p) {
        VermaVector<K> t = mid(p, u);
        if (t.empty()) continue;
        out.add(phi_n(-1, p + beta - m, n, t));
      }
    }
    return out;
  }

  TruncatedHWModule<K>& mod_;
  K c_;
};

// Action of the double-loop algebra with Kahler center on V itself.  The
// degree derivation d1 lies outside this subalgebra and is rejected.
template <class K>
VermaVector<K> module_action(const VertexOps<K>& ops, const K& mu,
                             const ToroidalElem<K>& g,
                             const VermaVector<K>& v) {
  VermaVector<K> out;
  for (const auto& [key, coef] : g.terms()) {
    VermaVector<K> piece;
    switch (key.kind) {
      case TorKind::Loop:
        piece = ops.x_op(key.x, key.m0, key.m1, v);
        break;
      case TorKind::Central:
        piece = key.a == 0 ? ops.k0_op(key.m0, key.m1, v)
                           : ops.k1_op(key.m0, key.m1, v);
        break;
      case TorKind::Skew:
        piece = ops.bard_op(key.m0, key.m1, mu, v);
        piece.add(ops.k0_op(key.m0, key.m1, v), K(-key.m1) * mu);
        break;
      case TorKind::Deg:
        if (key.a == 1)
          throw ConfigError("d1 does not act on the plain module; use the charged module");
        piece = ops.d0_op(v);
        break;
    }
    out.add(piece, coef);
  }
  return out;
}

// V (x) C[t1^{+-1}] vectors, graded by the t1 exponent
using ChargeKey = std::pair<long, PBWMonomial>;
template <class K>
using ChargeVec = MapVector<ChargeKey, K>;

template <class K>
ChargeVec<K> charged(long l, const VermaVector<K>& v) {
  ChargeVec<K> out;
  for (const auto& [mon, c] : v.terms()) out.add({l, mon}, c);
  return out;
}

template <class K>
long charge_depth(const ChargeVec<K>& w) {
  long d = 0;
  for (const auto& [key, c] : w.terms()) d = std::max(d, key.second.depth());
  return d;
}

// Full-algebra action on V (x) C[t1^{+-1}]: degree-n operators multiply by
// t1^n, d1 reads the t1 exponent, and the skew derivations act through the
// z-coefficients of n :L(z)Y: + n^2 (mu - 1/c) (dk1(z)) Y - (1/z + d/dz) :d1(z)Y:
// in the shifted derivation frame.
template <class K>
class ChargedModule {
 public:
  explicit ChargedModule(TruncatedHWModule<K>& mod) : ops_(mod) {}

  VertexOps<K>& ops() { return ops_; }
  const VertexOps<K>& ops() const { return ops_; }

  static ChargeVec<K> shift(long n, const ChargeVec<K>& w) {
    if (n == 0) return w;
    ChargeVec<K> out;
    for (const auto& [key, c] : w.terms()) out.add({key.first + n, key.second}, c);
    return out;
  }

  template <class Fn>
  ChargeVec<K> per_charge(const ChargeVec<K>& w, Fn&& f) const {
    ChargeVec<K> out;
    auto it = w.terms().begin();
    while (it != w.terms().end()) {
      long l = it->first.first;
      VermaVector<K> sector;
      for (; it != w.terms().end() && it->first.first == l; ++it)
        sector.add(it->first.second, it->second);
      VermaVector<K> r = f(sector, l);
      for (const auto& [mon, c] : r.terms()) out.add({l, mon}, c);
    }
    return out;
  }

  ChargeVec<K> charge_read(const ChargeVec<K>& w) const {
    ChargeVec<K> out;
    for (const auto& [key, c] : w.terms()) out.add(key, c * K(key.first));
    return out;
  }

  ChargeVec<K> act_mode(VAKey g, const ChargeVec<K>& w) const {
    return per_charge(w, [&](const VermaVector<K>& s, long) {
      return ops_.module().act(g, s);
    });
  }

  // coefficient of z^{-j} in Y(n,z) = E(n,z) t1^n
  ChargeVec<K> y_coeff(long j, long n, const ChargeVec<K>& w) const {
    return shift(n, per_charge(w, [&](const VermaVector<K>& s, long) {
      return ops_.e_coeff(j, n, s);
    }));
  }

  ChargeVec<K> charged_action(const ToroidalElem<K>& g, const K& mu,
                              const ChargeVec<K>& w) const {
    ChargeVec<K> out;
    for (const auto& [key, coef] : g.terms()) {
      ChargeVec<K> piece;
      switch (key.kind) {
        case TorKind::Loop:
          piece = shift(key.m1, per_charge(w, [&](const VermaVector<K>& s, long) {
            return ops_.x_op(key.x, key.m0, key.m1, s);
          }));
          break;
        case TorKind::Central:
          piece = shift(key.m1, per_charge(w, [&](const VermaVector<K>& s, long) {
            return key.a == 0 ? ops_.k0_op(key.m0, key.m1, s)
                              : ops_.k1_op(key.m0, key.m1, s);
          }));
          break;
        case TorKind::Skew: {
          long m = key.m0, n = key.m1;
          piece = dhat_action(m, n, mu, w);
          if (n != 0 && m != -1 && !is_zero(mu)) {
            ChargeVec<K> k0part =
                shift(n, per_charge(w, [&](const VermaVector<K>& s, long) {
                  return ops_.k0_op(m, n, s);
                }));
            piece.add(k0part, K(-n) * mu * K(m + 1));
          }
          break;
        }
        case TorKind::Deg:
          if (key.a == 0)
            piece = per_charge(w, [&](const VermaVector<K>& s, long) {
              return ops_.d0_op(s);
            });
          else
            piece = charge_read(w);
          break;
      }
      out.add(piece, coef);
    }
    return out;
  }

  // z^{-m-2} coefficient of the dressed derivation field in the shifted frame
  ChargeVec<K> dhat_action(long m, long n, const K& mu,
                           const ChargeVec<K>& w) const {
    ChargeVec<K> out = K(m) * d1_split(m, n, w);
    if (n != 0) {
      out.add(l_split(m, n, w), K(n));
      K c = ops_.level();
      out.add(dk1_y(m, n, w), K(n) * K(n) * (mu - K(1) / c));
    }
    return out;
  }

  // :L(z)Y(n,z): at z^{-m-2}, split by the z power: L modes p <= -2 stand
  // left of Y, p >= -1 right. On a t1^l sector the d1 k1 cross term inside L
  // makes each mode act as vir(p) + (l'/c) k1(p), l' the exponent seen at the
  // point of application (l+n left of Y, l right). The straddling term
  // Y_{m+1} L(-1) is expanded creation-last through
  // [L(-1), E_j] = (1-j) E_{j-1} + (n/c) k1(0) E_{j-1} - (n/c) k1(-1) E_j
  // so intermediates never leave the window when the result fits.
  ChargeVec<K> l_split(long m, long n, const ChargeVec<K>& w) const {
    ChargeVec<K> out;
    long dw = charge_depth(w);
    K c = ops_.level();
    for (long p = m - dw; p <= -2; ++p) {
      ChargeVec<K> u = y_coeff(m - p, n, w);
      if (u.empty()) continue;
      out.add(act_mode(VAKey::vir(p), u));
      out.add(act_mode(VAKey::k1(p), charge_read(u)), K(1) / c);
    }
    ChargeVec<K> up = y_coeff(m + 1, n, w);
    if (!up.empty()) {
      out.add(act_mode(VAKey::vir(-1), up));
      out.add(act_mode(VAKey::k1(-1), up), K(n) / c);
    }
    ChargeVec<K> ru = y_coeff(m + 1, n, charge_read(w));
    if (!ru.empty()) out.add(act_mode(VAKey::k1(-1), ru), K(1) / c);
    ChargeVec<K> mid = y_coeff(m, n, w);
    if (!mid.empty()) {
      out.add(mid, K(m));
      out.add(act_mode(VAKey::k1(0), mid), K(-n) / c);
    }
    for (long p = 0; p <= dw; ++p) {
      ChargeVec<K> t = act_mode(VAKey::vir(p), w);
      if (!t.empty()) out.add(y_coeff(m - p, n, t));
      ChargeVec<K> s = act_mode(VAKey::k1(p), charge_read(w));
      if (!s.empty()) out.add(y_coeff(m - p, n, s), K(1) / c);
    }
    return out;
  }

  // :d1(z)Y(n,z): at z^{-m-1}; d1 modes a <= -1 left of Y, a >= 0 right,
  // with d1(0) reading the t1 exponent before the shift
  ChargeVec<K> d1_split(long m, long n, const ChargeVec<K>& w) const {
    ChargeVec<K> out;
    long dw = charge_depth(w);
    for (long a = m - dw; a <= -1; ++a)
      out.add(act_mode(VAKey::d1(a), y_coeff(m - a, n, w)));
    out.add(y_coeff(m, n, charge_read(w)));
    for (long a = 1; a <= dw; ++a) {
      ChargeVec<K> t = act_mode(VAKey::d1(a), w);
      if (t.empty()) continue;
      out.add(y_coeff(m - a, n, t));
    }
    return out;
  }

  // (d/dz k1(z)) Y(n,z) at z^{-m-2}; k1 commutes with Y
  ChargeVec<K> dk1_y(long m, long n, const ChargeVec<K>& w) const {
    return shift(n, per_charge(w, [&](const VermaVector<K>& s, long) {
      return dress_dk1(m, n, s);
    }));
  }

 private:
  VermaVector<K> dress_dk1(long m, long n, const VermaVector<K>& v) const {
    VermaVector<K> out;
    long dv = vector_depth(v);
    for (long beta = 0; beta <= dv; ++beta) {
      VermaVector<K> u = ops_.phi_n(1, beta, n, v);
      if (u.empty()) continue;
      long du = vector_depth(u);
      for (long p = m - beta; p <= du; ++p) {
        if (p == -1) continue;
        VermaVector<K> t = ops_.module().act(VAKey::k1(p), u);
        if (t.empty()) continue;
        out.add(ops_.phi_n(-1, p + beta - m, n, t), K(-p - 1));
      }
    }
    return out;
  }

  VertexOps<K> ops_;
};

// Residual of the reordering identity
//   ::d1(z)k1(z): Y(n,z): - :d1(z) :k1(z)Y(n,z):: - n (dk1(z)) Y(n,z)
// at z^{-m-2}; exactly zero when the normal ordering splits are consistent.
template <class K>
ChargeVec<K> reordering_residual(const ChargedModule<K>& cm, long m, long n,
                                 const ChargeVec<K>& w) {
  const VertexOps<K>& ops = cm.ops();
  long dw = charge_depth(w);

  // charge aware :d1 k1: mode, d1(0) reads the t1 exponent
  auto a_mode = [&](long p, const ChargeVec<K>& u) {
    ChargeVec<K> out;
    long du = charge_depth(u);
    for (long a = p - du; a <= -1; ++a)
      out.add(cm.act_mode(VAKey::d1(a), cm.act_mode(VAKey::k1(p - a), u)));
    out.add(cm.act_mode(VAKey::k1(p), cm.charge_read(u)));
    for (long a = 1; a <= du; ++a)
      out.add(cm.act_mode(VAKey::k1(p - a), cm.act_mode(VAKey::d1(a), u)));
    return out;
  };

  ChargeVec<K> lhs1;
  for (long p = m - dw - 1; p <= -2; ++p)
    lhs1.add(a_mode(p, cm.y_coeff(m - p, n, w)));
  for (long p = -1; p <= dw + 1; ++p) {
    ChargeVec<K> t = a_mode(p, w);
    if (t.empty()) continue;
    lhs1.add(cm.y_coeff(m - p, n, t));
  }

  // B_q = :k1(z)Y(n,z): at z^{-q-1}; k1 commutes with Y
  auto b_mode = [&](long q, const ChargeVec<K>& u) {
    return cm.shift(n, cm.per_charge(u, [&](const VermaVector<K>& s, long) {
      return ops.k1_op(q, n, s);
    }));
  };

  ChargeVec<K> lhs2;
  for (long a = m - dw; a <= -1; ++a)
    lhs2.add(cm.act_mode(VAKey::d1(a), b_mode(m - a, w)));
  lhs2.add(b_mode(m, cm.charge_read(w)));
  for (long a = 1; a <= dw; ++a) {
    ChargeVec<K> t = cm.act_mode(VAKey::d1(a), w);
    if (t.empty()) continue;
    lhs2.add(b_mode(m - a, t));
  }

  ChargeVec<K> rhs = K(n) * cm.dk1_y(m, n, w);

  ChargeVec<K> res = lhs1;
  res.add(lhs2, K(-1));
  res.add(rhs, K(-1));
  return res;
}

}  // namespace eala
