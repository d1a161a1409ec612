#pragma once

#include <algorithm>
#include <compare>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "eala/errors.hpp"
#include "eala/linalg.hpp"
#include "eala/map_vector.hpp"
#include "eala/simple_algebra.hpp"

namespace eala {

enum class VAKind : int { Vir = 0, Mode = 1, K0 = 2, Kv = 3 };
enum class BLabel : int { None = 0, K1 = 1, D1 = 2 };

// Generator of the Virasoro-affine algebra: L(m), x(m) for x in the simple
// algebra or the two-dimensional abelian pair {k1, d1}, and the two central
// elements K0 (loop level) and Kv (Virasoro charge).
struct VAKey {
  VAKind kind = VAKind::Vir;
  GLabel g{};
  BLabel b = BLabel::None;
  long m = 0;

  static VAKey vir(long m) { return {VAKind::Vir, {}, BLabel::None, m}; }
  static VAKey gmode(GLabel lab, long m) { return {VAKind::Mode, lab, BLabel::None, m}; }
  static VAKey k1(long m) { return {VAKind::Mode, {}, BLabel::K1, m}; }
  static VAKey d1(long m) { return {VAKind::Mode, {}, BLabel::D1, m}; }
  static VAKey k0() { return {VAKind::K0, {}, BLabel::None, 0}; }
  static VAKey kv() { return {VAKind::Kv, {}, BLabel::None, 0}; }

  friend auto operator<=>(const VAKey&, const VAKey&) = default;
};

inline std::string to_string(const VAKey& k) {
  switch (k.kind) {
    case VAKind::Vir:
      return "L(" + std::to_string(k.m) + ")";
    case VAKind::Mode: {
      std::string lab = (k.b == BLabel::K1)   ? "k1"
                        : (k.b == BLabel::D1) ? "d1"
                                              : to_string(k.g);
      return lab + "(" + std::to_string(k.m) + ")";
    }
    case VAKind::K0:
      return "K0";
    case VAKind::Kv:
      return "Kv";
  }
  return "";
}

// PBW factor order: modes descending, then Vir < simple-algebra labels < k1 < d1.
inline int va_label_class(const VAKey& k) {
  if (k.kind == VAKind::Vir) return 0;
  if (k.b == BLabel::None) return 1;
  return k.b == BLabel::K1 ? 2 : 3;
}

inline bool atom_order_less(const VAKey& a, const VAKey& b) {
  if (a.m != b.m) return a.m > b.m;
  int ca = va_label_class(a), cb = va_label_class(b);
  if (ca != cb) return ca < cb;
  return a.g < b.g;
}

inline bool is_negative_atom(const VAKey& k) {
  switch (k.kind) {
    case VAKind::Vir:
      return k.m < 0;
    case VAKind::Mode:
      if (k.m < 0) return true;
      return k.m == 0 && k.b == BLabel::None && !k.g.is_h() && k.g.i > k.g.j;
    default:
      return false;
  }
}

struct PBWMonomial {
  std::vector<VAKey> atoms;

  bool empty() const { return atoms.empty(); }
  long depth() const {
    long d = 0;
    for (const VAKey& a : atoms) d -= a.m;
    return d;
  }
  friend auto operator<=>(const PBWMonomial&, const PBWMonomial&) = default;
};

inline std::string to_string(const PBWMonomial& m) {
  if (m.atoms.empty()) return "1";
  std::string out;
  for (const VAKey& a : m.atoms) {
    if (!out.empty()) out += "*";
    out += to_string(a);
  }
  return out;
}

template <class K>
int monomial_height(const SimpleAlgebra<K>& simple, const PBWMonomial& m) {
  int h = 0;
  for (const VAKey& a : m.atoms)
    if (a.kind == VAKind::Mode && a.b == BLabel::None) h += std::abs(simple.height(a.g));
  return h;
}

template <class K>
std::vector<int> monomial_shift(const SimpleAlgebra<K>& simple, const PBWMonomial& m) {
  std::vector<int> s(simple.rank(), 0);
  for (const VAKey& a : m.atoms) {
    if (a.kind != VAKind::Mode || a.b != BLabel::None) continue;
    auto coords = simple.finite_root(a.g);
    for (int i = 0; i < simple.rank(); ++i) s[i] += coords[i];
  }
  return s;
}

// Highest-weight data: lam holds the values on H_1..H_l; c, d0val are the
// values of k0 and d0; kv, k1val, d1val extend the functional to the
// Virasoro charge and the zero modes of the abelian pair.
template <class K>
struct HWParams {
  Vec<K> lam;
  K c = K(0);
  K d0val = K(0);
  K kv = K(0);
  K k1val = K(0);
  K d1val = K(0);
};

template <class K>
HWParams<K> barlambda_from_lambda(const Vec<K>& lam, const K& c, const K& d0val, const K& mu) {
  return HWParams<K>{lam, c, d0val, K(24) * mu * c, K(0), K(0)};
}

template <class K>
std::vector<std::pair<VAKey, K>> fbar_bracket(const SimpleAlgebra<K>& simple, const VAKey& a,
                                              const VAKey& b) {
  std::vector<std::pair<VAKey, K>> out;
  if (a.kind == VAKind::K0 || a.kind == VAKind::Kv || b.kind == VAKind::K0 ||
      b.kind == VAKind::Kv)
    return out;

  if (a.kind == VAKind::Vir && b.kind == VAKind::Vir) {
    if (a.m != b.m) out.push_back({VAKey::vir(a.m + b.m), K(a.m - b.m)});
    if (a.m + b.m == 0) {
      K num = K(a.m) * K(a.m) * K(a.m) - K(a.m);
      if (!is_zero(num)) out.push_back({VAKey::kv(), num / K(12)});
    }
    return out;
  }
  if (a.kind == VAKind::Vir && b.kind == VAKind::Mode) {
    if (b.m != 0) out.push_back({VAKey{VAKind::Mode, b.g, b.b, a.m + b.m}, K(-b.m)});
    return out;
  }
  if (a.kind == VAKind::Mode && b.kind == VAKind::Vir) {
    if (a.m != 0) out.push_back({VAKey{VAKind::Mode, a.g, a.b, a.m + b.m}, K(a.m)});
    return out;
  }

  // both Mode
  bool ag = a.b == BLabel::None, bg = b.b == BLabel::None;
  if (ag != bg) return out;
  if (ag) {
    Mat<K> xm = simple.matrix(a.g), ym = simple.matrix(b.g);
    Mat<K> comm = SimpleAlgebra<K>::bracket(xm, ym);
    for (const auto& [lab, c] : simple.decompose(comm))
      out.push_back({VAKey::gmode(lab, a.m + b.m), c});
    if (a.m + b.m == 0 && a.m != 0) {
      K pairing = SimpleAlgebra<K>::form(xm, ym);
      if (!is_zero(pairing)) out.push_back({VAKey::k0(), K(a.m) * pairing});
    }
    return out;
  }
  // abelian pair: only the pairing <k1,d1> = <d1,k1> = 1 contributes
  if (a.b != b.b && a.m + b.m == 0 && a.m != 0) out.push_back({VAKey::k0(), K(a.m)});
  return out;
}

// Verma-module straightening engine with a per-instance memo cache.
// Vectors are exact linear combinations of ordered PBW monomials applied to
// the highest-weight vector; the empty monomial is the vector itself.
template <class K>
using VermaVector = MapVector<PBWMonomial, K>;

template <class K>
class VermaContext {
 public:
  VermaContext(SimpleAlgebra<K> simple, HWParams<K> params)
      : simple_(std::move(simple)), params_(std::move(params)) {
    if (params_.lam.size() != simple_.rank())
      throw ConfigError("weight vector length does not match rank");
  }

  const SimpleAlgebra<K>& simple() const { return simple_; }
  const HWParams<K>& params() const { return params_; }

  VermaVector<K> act(const VAKey& g, const VermaVector<K>& v) {
    VermaVector<K> out;
    for (const auto& [mon, c] : v.terms()) out.add(apply(g, mon), c);
    return out;
  }

  VermaVector<K> act_word(const std::vector<VAKey>& word, VermaVector<K> v) {
    for (auto it = word.rbegin(); it != word.rend(); ++it) v = act(*it, v);
    return v;
  }

  // contravariant transpose: x(m) -> x^T(-m), L(m) -> L(-m), k1 <-> d1
  static VAKey omega(const VAKey& k) {
    switch (k.kind) {
      case VAKind::Vir:
        return VAKey::vir(-k.m);
      case VAKind::Mode:
        if (k.b == BLabel::None) return VAKey::gmode(SimpleAlgebra<K>::transpose(k.g), -k.m);
        return (k.b == BLabel::K1) ? VAKey::d1(-k.m) : VAKey::k1(-k.m);
      default:
        return k;
    }
  }

  // B(u, w) with B(v, v) = 1 on the highest-weight vector.
  K form(const VermaVector<K>& u, const VermaVector<K>& w) {
    K out(0);
    for (const auto& [mon, cu] : u.terms()) {
      VermaVector<K> cur = w;
      for (const VAKey& a : mon.atoms) {
        cur = act(omega(a), cur);
        if (cur.empty()) break;
      }
      out += cu * cur.coeff(PBWMonomial{});
    }
    return out;
  }

 private:
  const VermaVector<K>& apply(const VAKey& g, const PBWMonomial& mon) {
    auto key = std::make_pair(g, mon);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    VermaVector<K> out = compute(g, mon);
    return cache_.emplace(std::move(key), std::move(out)).first->second;
  }

  VermaVector<K> compute(const VAKey& g, const PBWMonomial& mon) {
    VermaVector<K> out;
    if (g.kind == VAKind::K0) {
      out.add(mon, params_.c);
      return out;
    }
    if (g.kind == VAKind::Kv) {
      out.add(mon, params_.kv);
      return out;
    }

    if (mon.empty()) {
      if (is_negative_atom(g)) {
        out.add(PBWMonomial{{g}}, K(1));
        return out;
      }
      if (g.m > 0) return out;
      // zero modes act by the highest weight
      if (g.kind == VAKind::Vir) {
        out.add(mon, -params_.d0val);  // L(0) = -d0
        return out;
      }
      if (g.b == BLabel::K1) {
        out.add(mon, params_.k1val);
        return out;
      }
      if (g.b == BLabel::D1) {
        out.add(mon, params_.d1val);
        return out;
      }
      if (g.g.is_h()) {
        out.add(mon, params_.lam(g.g.i - 1));
        return out;
      }
      return out;  // positive root at mode 0 annihilates
    }

    VAKey h = mon.atoms.front();
    PBWMonomial rest{std::vector<VAKey>(mon.atoms.begin() + 1, mon.atoms.end())};

    if (is_negative_atom(g) && !atom_order_less(h, g)) {
      PBWMonomial grown;
      grown.atoms.reserve(mon.atoms.size() + 1);
      grown.atoms.push_back(g);
      grown.atoms.insert(grown.atoms.end(), mon.atoms.begin(), mon.atoms.end());
      out.add(grown, K(1));
      return out;
    }

    const VermaVector<K>& moved = apply(g, rest);
    for (const auto& [m2, c2] : moved.terms()) out.add(apply(h, m2), c2);
    for (const auto& [bk, bc] : fbar_bracket(simple_, g, h)) out.add(apply(bk, rest), bc);
    return out;
  }

  SimpleAlgebra<K> simple_;
  HWParams<K> params_;
  std::map<std::pair<VAKey, PBWMonomial>, VermaVector<K>> cache_;
};

// Which families of negative generators span the module being induced:
// the affine loop algebra, the Virasoro modes, the abelian-pair modes.
struct GeneratorMenu {
  bool use_g = true;
  bool use_vir = true;
  bool use_heis = true;
};

template <class K>
std::vector<VAKey> negative_atom_pool(const SimpleAlgebra<K>& simple, int D, int H,
                                      const GeneratorMenu& menu) {
  std::vector<VAKey> pool;
  if (menu.use_g && H > 0) {
    for (int i = 1; i <= simple.n(); ++i)
      for (int j = 1; j <= simple.n(); ++j)
        if (i > j) pool.push_back(VAKey::gmode({i, j}, 0));
  }
  for (int m = 1; m <= D; ++m) {
    if (menu.use_vir) pool.push_back(VAKey::vir(-m));
    if (menu.use_g)
      for (const GLabel& lab : simple.basis()) pool.push_back(VAKey::gmode(lab, -m));
    if (menu.use_heis) {
      pool.push_back(VAKey::k1(-m));
      pool.push_back(VAKey::d1(-m));
    }
  }
  std::sort(pool.begin(), pool.end(), atom_order_less);
  return pool;
}

namespace detail {

template <class K>
void enumerate_monomials(const SimpleAlgebra<K>& simple, const std::vector<VAKey>& pool,
                         std::size_t idx, int rem_d, int rem_h, std::vector<VAKey>& cur,
                         std::vector<PBWMonomial>& out) {
  if (idx == pool.size()) {
    out.push_back(PBWMonomial{cur});
    return;
  }
  const VAKey& a = pool[idx];
  int d = static_cast<int>(-a.m);
  int h = (a.kind == VAKind::Mode && a.b == BLabel::None) ? std::abs(simple.height(a.g)) : 0;
  int max_mult = 0;
  if (d == 0 && h == 0) throw Error("atom with no budget cost");
  max_mult = rem_d + rem_h;  // loose cap, tightened below
  if (d > 0) max_mult = std::min(max_mult, rem_d / d);
  if (h > 0) max_mult = std::min(max_mult, rem_h / h);
  for (int k = 0; k <= max_mult; ++k) {
    for (int t = 0; t < k; ++t) cur.push_back(a);
    enumerate_monomials(simple, pool, idx + 1, rem_d - k * d, rem_h - k * h, cur, out);
    for (int t = 0; t < k; ++t) cur.pop_back();
  }
}

}  // namespace detail

// (depth, finite weight shift) of a monomial; every module vector that is
// weight homogeneous lives in exactly one slice.
using SliceKey = std::pair<long, std::vector<int>>;

inline std::string to_string(const SliceKey& s) {
  std::string out = std::to_string(s.first) + " @ (";
  for (std::size_t i = 0; i < s.second.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(s.second[i]);
  }
  return out + ")";
}

template <class K>
SliceKey slice_of(const SimpleAlgebra<K>& simple, const PBWMonomial& m) {
  return {m.depth(), monomial_shift(simple, m)};
}

template <class K>
std::map<SliceKey, std::vector<PBWMonomial>> verma_basis(const SimpleAlgebra<K>& simple, int D,
                                                         int H, const GeneratorMenu& menu) {
  if (D < 0 || H < 0) throw ConfigError("negative truncation bounds");
  auto pool = negative_atom_pool(simple, D, H, menu);
  std::vector<PBWMonomial> all;
  std::vector<VAKey> cur;
  detail::enumerate_monomials(simple, pool, 0, D, H, cur, all);
  std::map<SliceKey, std::vector<PBWMonomial>> out;
  for (auto& m : all) out[slice_of(simple, m)].push_back(std::move(m));
  for (auto& [k, v] : out) std::sort(v.begin(), v.end(), [](const auto& x, const auto& y) {
    return std::lexicographical_compare(x.atoms.begin(), x.atoms.end(), y.atoms.begin(),
                                        y.atoms.end(), atom_order_less);
  });
  return out;
}

// Truncated irreducible highest-weight module: the Verma slices inside the
// (depth <= D, height <= H) window, quotiented per slice by the radical of
// the contravariant form.  Vectors are canonical Verma representatives with
// zero coordinates on the radical pivot monomials.
template <class K>
class TruncatedHWModule {
 public:
  struct Slice {
    std::vector<PBWMonomial> basis;
    std::map<PBWMonomial, Eigen::Index> index;
    Mat<K> gram;
    Mat<K> radical;                     // RREF rows spanning the radical
    std::vector<Eigen::Index> pivots;   // pivot column of each radical row
    std::vector<Eigen::Index> kept;     // quotient basis positions
  };

  TruncatedHWModule(const SimpleAlgebra<K>& simple, const HWParams<K>& params, int D, int H,
                    const GeneratorMenu& menu)
      : ctx_(simple, params), depth_bound_(D), height_bound_(H), menu_(menu) {
    auto basis = verma_basis(simple, D, H, menu);
    for (auto& [key, monos] : basis) {
      Slice s;
      s.basis = std::move(monos);
      for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(s.basis.size()); ++i)
        s.index[s.basis[i]] = i;
      Eigen::Index n = static_cast<Eigen::Index>(s.basis.size());
      s.gram = Mat<K>(n, n);
      for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
          s.gram(i, j) = ctx_.form(VermaVector<K>::single(s.basis[i]),
                                   VermaVector<K>::single(s.basis[j]));
      auto rad = nullspace(s.gram);
      if (rad.empty()) {
        s.radical = Mat<K>(0, n);
      } else {
        Mat<K> rows(static_cast<Eigen::Index>(rad.size()), n);
        for (Eigen::Index r = 0; r < rows.rows(); ++r) rows.row(r) = rad[r].transpose();
        s.pivots = rref(rows);
        s.radical = rows;
      }
      std::vector<bool> is_pivot(n, false);
      for (Eigen::Index p : s.pivots) is_pivot[p] = true;
      for (Eigen::Index i = 0; i < n; ++i)
        if (!is_pivot[i]) s.kept.push_back(i);
      slices_.emplace(key, std::move(s));
    }
  }

  const SimpleAlgebra<K>& simple() const { return ctx_.simple(); }
  const HWParams<K>& params() const { return ctx_.params(); }
  int depth_bound() const { return depth_bound_; }
  int height_bound() const { return height_bound_; }
  const GeneratorMenu& menu() const { return menu_; }
  const std::map<SliceKey, Slice>& slices() const { return slices_; }
  VermaContext<K>& verma() { return ctx_; }

  bool in_window(const PBWMonomial& m) const {
    return m.depth() <= depth_bound_ && monomial_height(ctx_.simple(), m) <= height_bound_;
  }

  void check_window(const VermaVector<K>& v, const std::string& what) const {
    for (const auto& [mon, c] : v.terms()) {
      if (in_window(mon)) continue;
      throw TruncationEscape(static_cast<int>(mon.depth()), monomial_height(ctx_.simple(), mon),
                             what + " leaves the truncation window at " + to_string(mon));
    }
  }

  // canonical representative modulo the radical
  VermaVector<K> reduce(const VermaVector<K>& v) const {
    std::map<SliceKey, Vec<K>> coords;
    for (const auto& [mon, c] : v.terms()) {
      SliceKey key = slice_of(ctx_.simple(), mon);
      auto it = slices_.find(key);
      if (it == slices_.end()) throw Error("vector leaves the module basis at " + to_string(mon));
      auto& vec = coords[key];
      if (vec.size() == 0) vec = Vec<K>::Zero(it->second.basis.size());
      vec(it->second.index.at(mon)) += c;
    }
    VermaVector<K> out;
    for (auto& [key, vec] : coords) {
      const Slice& s = slices_.at(key);
      for (Eigen::Index r = 0; r < s.radical.rows(); ++r) {
        K lead = vec(s.pivots[r]);
        if (is_zero(lead)) continue;
        vec -= lead * Vec<K>(s.radical.row(r).transpose());
      }
      for (Eigen::Index i = 0; i < vec.size(); ++i)
        if (!is_zero(vec(i))) out.add(s.basis[i], vec(i));
    }
    return out;
  }

  VermaVector<K> act(const VAKey& g, const VermaVector<K>& v) {
    VermaVector<K> raw = ctx_.act(g, v);
    check_window(raw, to_string(g));
    return reduce(raw);
  }

  K form(const VermaVector<K>& u, const VermaVector<K>& w) { return ctx_.form(u, w); }

  VermaVector<K> highest() const { return VermaVector<K>::single(PBWMonomial{}); }

 private:
  VermaContext<K> ctx_;
  int depth_bound_;
  int height_bound_;
  GeneratorMenu menu_;
  std::map<SliceKey, Slice> slices_;
};

template <class K>
TruncatedHWModule<K> irreducible_quotient(const SimpleAlgebra<K>& simple,
                                          const HWParams<K>& params, int D, int H,
                                          const GeneratorMenu& menu = GeneratorMenu{}) {
  return TruncatedHWModule<K>(simple, params, D, H, menu);
}

// Symmetric algebra on the abelian-pair creation modes, level c.
template <class K>
TruncatedHWModule<K> fock_module(const SimpleAlgebra<K>& simple, const K& c, int D) {
  if (is_zero(c)) throw ConfigError("Fock level c must be nonzero");
  HWParams<K> p;
  p.lam = Vec<K>::Zero(simple.rank());
  p.c = c;
  return TruncatedHWModule<K>(simple, p, D, 0, GeneratorMenu{false, false, true});
}

// L^Sug(m) = 1/(2(c+h*)) sum_a sum_p :x_a(-p) x^a(m+p):, exact on any vector
// whose depth makes all but finitely many terms vanish.
template <class K>
VermaVector<K> sugawara_act(VermaContext<K>& ctx, long m, const VermaVector<K>& v) {
  const SimpleAlgebra<K>& g = ctx.simple();
  K denom = K(2) * (ctx.params().c + K(g.dual_coxeter()));
  if (is_zero(denom)) throw ConfigError("critical level: c equals minus the dual Coxeter number");

  long vdepth = 0;
  for (const auto& [mon, c] : v.terms()) vdepth = std::max(vdepth, mon.depth());
  long band = vdepth + std::abs(m) + 1;

  auto act_matrix = [&](const Mat<K>& x, long mode, const VermaVector<K>& w) {
    VermaVector<K> out;
    for (const auto& [lab, cf] : g.decompose(x)) out.add(ctx.act(VAKey::gmode(lab, mode), w), cf);
    return out;
  };

  VermaVector<K> out;
  auto pairs = g.dual_pairs();
  for (long p = -band; p <= band; ++p) {
    long mode_a = -p, mode_b = m + p;
    for (const auto& [xa, xua] : pairs) {
      // normal order: smaller mode to the left
      if (mode_a <= mode_b)
        out.add(act_matrix(xa, mode_a, act_matrix(xua, mode_b, v)));
      else
        out.add(act_matrix(xua, mode_b, act_matrix(xa, mode_a, v)));
    }
  }
  return (K(1) / denom) * out;
}

template <class K>
K sugawara_central_charge(const K& c, int dim_g, int dual_coxeter) {
  return c * K(dim_g) / (c + K(dual_coxeter));
}

// depth, finite weight, Verma dimension, irreducible dimension
template <class K>
std::string multiplicity_tsv(const TruncatedHWModule<K>& mod) {
  std::string out = "depth\tweight\tdim_verma\tdim_irreducible\n";
  for (const auto& [key, s] : mod.slices()) {
    out += std::to_string(key.first) + "\t";
    for (std::size_t i = 0; i < key.second.size(); ++i) {
      if (i) out += ",";
      out += std::to_string(key.second[i]);
    }
    out += "\t" + std::to_string(s.basis.size()) + "\t" + std::to_string(s.kept.size()) + "\n";
  }
  return out;
}

}  // namespace eala
