#pragma once

#include <algorithm>
#include <vector>

#include "loop.hpp"

namespace eala {

// Plain one-slot operators recoverable from the loop action.
enum class ExtractKind { K1, X, D1, L };

// Largest single-slot depth in v, the minimal window bound for the pulled
// systems: operators indexed by that bound agree with the full fields on v.
template <class K>
long slot_depth_bound(const TensorVec<K>& v) {
  long best = 0;
  for (const auto& [t, c] : v.terms())
    for (const auto& mono : t) best = std::max(best, static_cast<long>(mono.depth()));
  return best;
}

// Apply an operator on slot i to every pure tensor of v.
template <class K, class Op>
TensorVec<K> slot_apply(int i, Op&& op, const TensorVec<K>& v) {
  TensorVec<K> out;
  for (const auto& [t, coef] : v.terms()) {
    VermaVector<K> u = op(VermaVector<K>::single(t[i]));
    for (const auto& [mono, c2] : u.terms()) {
      TensorKey t2 = t;
      t2[i] = mono;
      out.add(t2, coef * c2);
    }
  }
  return out;
}

// Rows n = 1..k(N+1), columns (s, i) -> s*k + i, entries a_i^n n^s.  The
// square matrix that couples the evaluation points to the t1 degrees.
template <class K>
Mat<K> vandermonde_matrix(const std::vector<K>& a, long N) {
  const long k = static_cast<long>(a.size());
  const long R = k * (N + 1);
  Mat<K> m(R, R);
  for (long n = 1; n <= R; ++n) {
    for (long i = 0; i < k; ++i) {
      const K an = pow_int(a[i], n);
      K ns(1);
      for (long s = 0; s <= N; ++s) {
        m(n - 1, s * k + i) = an * ns;
        ns *= K(n);
      }
    }
  }
  return m;
}

// Recovers plain slot operators from the diagonal loop action: the images of
// v under t1-degree 1..k(N+1) elements form a square linear system whose
// solved unknowns contain the slot insertions of k1(m), x(m), d1(m), L(m).
template <class K>
class Extractor {
 public:
  explicit Extractor(const LoopModules<K>& lm) : lm_(lm) {
    for (int i = 0; i < lm.k(); ++i) ops_.emplace_back(lm.slot(i));
  }

  const LoopModules<K>& modules() const { return lm_; }

  // Window completion of the pair field coefficients on slot i.
  VermaVector<K> phi_window(int i, long M, long m, long s, const VermaVector<K>& u) const {
    if (s < 0) return {};
    const VertexOps<K>& ops = ops_[static_cast<std::size_t>(i)];
    VermaVector<K> out;
    for (long m2 = std::max(m, 0L); m2 <= M; ++m2) {
      const long m1 = m2 - m;
      for (long s2 = std::max(0L, s - m1); s2 <= std::min(s, m2); ++s2) {
        VermaVector<K> t = ops.phi(1, m2, s2, u);
        if (t.empty()) continue;
        out.add(ops.phi(-1, m1, s - s2, t));
      }
    }
    return out;
  }

  VermaVector<K> x_window(int i, GLabel x, long M, long m, long s, const VermaVector<K>& u) const {
    return mode_window(i, M, m, s, u, [&](long p, const VermaVector<K>& w) {
      return lm_.slot(i).act(VAKey::gmode(x, p), w);
    });
  }

  VermaVector<K> lbar_window(int i, long M, long m, long s, const VermaVector<K>& u) const {
    return mode_window(i, M, m, s, u, [&](long p, const VermaVector<K>& w) {
      return ops_[static_cast<std::size_t>(i)].lbar_mode(p, w);
    });
  }

  VermaVector<K> k1bar_window(int i, long M, long m, long s, const VermaVector<K>& u) const {
    return mode_window(i, M, m, s, u, [&](long p, const VermaVector<K>& w) {
      if (p == 0) return VermaVector<K>{};
      return K(-p) * lm_.slot(i).act(VAKey::k1(p), w);
    });
  }

  // Two sided normal ordering: creation d1 modes stand left of the pair
  // series, annihilation modes right of it.
  VermaVector<K> d1bar_window(int i, long M, long m, long s, const VermaVector<K>& u) const {
    if (s < 0) return {};
    TruncatedHWModule<K>& mod = lm_.slot(i);
    VermaVector<K> out;
    for (long m1 = m - M; m1 <= M; ++m1) {
      if (m1 == 0) continue;
      if (m1 <= -1) {
        VermaVector<K> t = phi_window(i, M, m - m1, s, u);
        if (!t.empty()) out.add(mod.act(VAKey::d1(m1), t), K(-m1));
      } else {
        VermaVector<K> t = mod.act(VAKey::d1(m1), u);
        if (!t.empty()) out.add(phi_window(i, M, m - m1, s, t), K(-m1));
      }
    }
    return out;
  }

  // Skew slot family: the t1-power coefficients of the dressed derivation.
  VermaVector<K> dbar_window(int i, long M, long m, long s, const VermaVector<K>& u) const {
    VermaVector<K> out = K(-1) * d1bar_window(i, M, m, s, u);
    out.add(lbar_window(i, M, m, s - 1, u));
    VermaVector<K> heis = k1bar_window(i, M, m, s - 2, u);
    if (!heis.empty()) out.add(heis, lm_.mu());
    return out;
  }

  // Difference between the Virasoro mode and the s = 1 skew coefficient: a
  // normally ordered d1 k1 pairing over all mode splits of m.
  VermaVector<K> l_corr(int i, long m, const VermaVector<K>& u) const {
    TruncatedHWModule<K>& mod = lm_.slot(i);
    const K& c = ops_[static_cast<std::size_t>(i)].level();
    const long du = vector_depth(u);
    VermaVector<K> out;
    for (long m1 = m - du; m1 <= du; ++m1) {
      const long m2 = m - m1;
      if (m2 == 0) continue;
      const K coef = (K(1) + K(m1) / K(m2)) / c;
      if (is_zero(coef)) continue;
      VermaVector<K> t;
      if (m1 <= -1)
        t = mod.act(VAKey::d1(m1), mod.act(VAKey::k1(m2), u));
      else
        t = mod.act(VAKey::k1(m2), mod.act(VAKey::d1(m1), u));
      out.add(t, coef);
    }
    return out;
  }

  // Solved unknowns of one pulled system, indexed by s*k + i.
  struct Pulled {
    std::vector<TensorVec<K>> unknowns;
    long window = 0;
    long degree = 0;
  };

  Pulled solve(ExtractKind kind, long m, const TensorVec<K>& v, GLabel x = GLabel{1, 1},
               long window = -1) const {
    const long k = lm_.k();
    Pulled p;
    p.window = window >= 0 ? window : slot_depth_bound(v);
    p.degree = std::max(system_degree(kind, p.window, m), 0L);
    const long R = k * (p.degree + 1);
    Mat<K> inv = exact_inverse(vandermonde_matrix(lm_.points(), p.degree));
    std::vector<TensorVec<K>> b(static_cast<std::size_t>(R));
    for (long n = 1; n <= R; ++n)
      b[n - 1] = lm_.hat_action(ToroidalElem<K>::single(system_key(kind, m, n, x)), v);
    p.unknowns.assign(static_cast<std::size_t>(R), {});
    for (long col = 0; col < R; ++col)
      for (long n = 0; n < R; ++n)
        if (!is_zero(inv(col, n))) p.unknowns[col].add(b[n], inv(col, n));
    return p;
  }

  // Slot components of the plain mode named by kind: out[i] = the tensor with
  // the operator applied in slot i only.
  std::vector<TensorVec<K>> components(ExtractKind kind, long m, const TensorVec<K>& v,
                                       GLabel x = GLabel{1, 1}) const {
    const int k = lm_.k();
    std::vector<TensorVec<K>> out(static_cast<std::size_t>(k));
    if (v.empty()) return out;
    const long M = slot_depth_bound(v);
    if (m > M) return out;
    if ((kind == ExtractKind::K1 || kind == ExtractKind::D1) && m == 0) return out;
    Pulled p = solve(kind, m, v, x);
    for (int i = 0; i < k; ++i) {
      switch (kind) {
        case ExtractKind::K1:
          out[i] = K(-m) * p.unknowns[static_cast<std::size_t>(k + i)];
          break;
        case ExtractKind::X:
          out[i] = p.unknowns[static_cast<std::size_t>(i)];
          break;
        case ExtractKind::D1:
          out[i] = (K(1) / K(m)) * p.unknowns[static_cast<std::size_t>(i)];
          break;
        case ExtractKind::L:
          out[i] = p.unknowns[static_cast<std::size_t>(k + i)];
          if (m == 0) out[i].add(v, lm_.mu() * lm_.slot_params(i).c);
          out[i].add(slot_apply(
              i, [&](const VermaVector<K>& w) { return l_corr(i, m, w); }, v));
          break;
      }
    }
    return out;
  }

  // Direct slot insertion of the same plain mode, the independent oracle.
  TensorVec<K> direct(ExtractKind kind, int i, long m, const TensorVec<K>& v,
                      GLabel x = GLabel{1, 1}) const {
    TruncatedHWModule<K>& mod = lm_.slot(i);
    return slot_apply(
        i,
        [&](const VermaVector<K>& w) {
          switch (kind) {
            case ExtractKind::K1:
              return mod.act(VAKey::k1(m), w);
            case ExtractKind::X:
              return mod.act(VAKey::gmode(x, m), w);
            case ExtractKind::D1:
              return mod.act(VAKey::d1(m), w);
            case ExtractKind::L:
              return mod.act(VAKey::vir(m), w);
          }
          return VermaVector<K>{};
        },
        v);
  }

 private:
  static long system_degree(ExtractKind kind, long M, long m) {
    switch (kind) {
      case ExtractKind::K1:
        return 2 * M - m;
      case ExtractKind::X:
        return 3 * M - m;
      case ExtractKind::D1:
      case ExtractKind::L:
        return 3 * M - m + 2;
    }
    return 0;
  }

  static ToroidalKey system_key(ExtractKind kind, long m, long n, GLabel x) {
    switch (kind) {
      case ExtractKind::K1:
        return ToroidalKey::central(0, m, n);
      case ExtractKind::X:
        return ToroidalKey::loop(x, m, n);
      case ExtractKind::D1:
      case ExtractKind::L:
        return ToroidalKey::skew(m, n);
    }
    return ToroidalKey::central(0, m, n);
  }

  template <class Mid>
  VermaVector<K> mode_window(int i, long M, long m, long s, const VermaVector<K>& u,
                             Mid&& mid) const {
    if (s < 0) return {};
    VermaVector<K> out;
    for (long m1 = m - M; m1 <= M; ++m1) {
      VermaVector<K> t = phi_window(i, M, m - m1, s, u);
      if (t.empty()) continue;
      out.add(mid(m1, t));
    }
    return out;
  }

  const LoopModules<K>& lm_;
  std::vector<VertexOps<K>> ops_;
};

}  // namespace eala
