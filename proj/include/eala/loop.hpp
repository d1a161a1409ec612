#pragma once

#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "eala/field.hpp"
#include "eala/map_vector.hpp"
#include "eala/toroidal.hpp"
#include "eala/vertex_ops.hpp"
#include "eala/viraffine.hpp"

namespace eala {

// Highest-weight data of one tensor slot: values on H_1..H_rank, the level,
// and the d0 eigenvalue.
template <class K>
struct SlotWeight {
  Vec<K> lam;
  K c = K(1);
  K d0 = K(0);
};

// One scenario: k slots with their evaluation points, the twist mu, the
// truncation window shared by all slots, and the cyclotomic order of the
// working field.
template <class K>
struct LoopConfig {
  int rank = 1;
  std::vector<SlotWeight<K>> weights;
  std::vector<K> points;
  K mu = K(0);
  int depth = 2;
  int height = 2;
  unsigned field_order = 1;
};

// Pure tensor over the slot modules, one canonical monomial per slot.
using TensorKey = std::vector<PBWMonomial>;
template <class K>
using TensorVec = MapVector<TensorKey, K>;

// Pure tensor together with its t1 exponent.
using LoopKey = std::pair<long, TensorKey>;
template <class K>
using LoopVector = MapVector<LoopKey, K>;

template <class K>
LoopVector<K> with_exponent(long l, const TensorVec<K>& v) {
  LoopVector<K> out;
  for (const auto& [t, c] : v.terms()) out.add({l, t}, c);
  return out;
}

// Scalars by which the zero-root generators act on the top tensor, plus the
// lattice step of the t1 degrees that act nonzero.
template <class K>
struct PsiChar {
  std::map<ToroidalKey, K> values;
  long r = 1;
};

// Grouping of the slots into blocks of r with equal weights and points in
// geometric progression by a primitive r-th root of unity.
template <class K>
struct BlockWitness {
  std::vector<int> tau;  // slot occupying each normalized position
  std::vector<K> base;   // base point of each block
  K epsilon;
};

template <class K>
class LoopModules {
 public:
  explicit LoopModules(const LoopConfig<K>& cfg)
      : simple_(cfg.rank), mu_(cfg.mu), points_(cfg.points), field_order_(cfg.field_order) {
    int count = static_cast<int>(cfg.weights.size());
    if (count < 1) throw ConfigError("loop module needs at least one slot");
    if (static_cast<int>(cfg.points.size()) != count)
      throw ConfigError("slot count and point count differ");
    for (int i = 0; i < count; ++i) {
      if (is_zero(cfg.weights[i].c)) throw ConfigError("slot level must be nonzero");
      if (is_zero(cfg.points[i])) throw ConfigError("points must be nonzero");
      for (int j = 0; j < i; ++j)
        if (cfg.points[i] == cfg.points[j]) throw ConfigError("points must be distinct");
    }
    for (const SlotWeight<K>& w : cfg.weights) {
      HWParams<K> p = barlambda_from_lambda(w.lam, w.c, w.d0, cfg.mu);
      slots_.push_back(std::make_unique<Slot>(simple_, p, cfg.depth, cfg.height));
    }
  }

  int k() const { return static_cast<int>(slots_.size()); }
  const SimpleAlgebra<K>& simple() const { return simple_; }
  const K& mu() const { return mu_; }
  const std::vector<K>& points() const { return points_; }
  unsigned field_order() const { return field_order_; }
  TruncatedHWModule<K>& slot(int i) const { return slots_.at(i)->mod; }
  const HWParams<K>& slot_params(int i) const { return slots_.at(i)->mod.params(); }

  TensorVec<K> highest() const { return TensorVec<K>::single(TensorKey(slots_.size())); }
  LoopVector<K> omega_vector(long l) const {
    return LoopVector<K>::single({l, TensorKey(slots_.size())});
  }

  static long t1_degree(const ToroidalKey& key) {
    return key.kind == TorKind::Deg ? 0 : key.m1;
  }

  // Leibniz action of one basis element across the slots, slot i scaled by
  // a_i to the t1 degree.  scale_twist shifts that exponent; the module-axiom
  // suite flips it to 1 as a deliberate corruption that must be caught.
  TensorVec<K> key_action(const ToroidalKey& key, const TensorKey& tensor,
                          int scale_twist = 0) const {
    if (key.kind == TorKind::Deg && key.a == 1)
      throw ConfigError("d1 reads the t1 exponent; use tilde_action");
    TensorVec<K> out;
    ToroidalElem<K> g = ToroidalElem<K>::single(key);
    long n = t1_degree(key);
    for (std::size_t i = 0; i < slots_.size(); ++i) {
      VermaVector<K> moved =
          module_action(slots_[i]->ops, mu_, g, VermaVector<K>::single(tensor[i]));
      if (moved.empty()) continue;
      K scale = pow_int(points_[i], n + scale_twist);
      for (const auto& [mono, c] : moved.terms()) {
        TensorKey shifted = tensor;
        shifted[i] = mono;
        out.add(shifted, c * scale);
      }
    }
    return out;
  }

  TensorVec<K> hat_action(const ToroidalElem<K>& g, const TensorVec<K>& v,
                          int scale_twist = 0) const {
    TensorVec<K> out;
    for (const auto& [key, coef] : g.terms())
      for (const auto& [tensor, tc] : v.terms())
        out.add(key_action(key, tensor, scale_twist), coef * tc);
    return out;
  }

  LoopVector<K> tilde_action(const ToroidalElem<K>& g, const LoopVector<K>& w,
                             int scale_twist = 0) const {
    LoopVector<K> out;
    for (const auto& [key, coef] : g.terms()) {
      if (key.kind == TorKind::Deg && key.a == 1) {
        for (const auto& [lk, c] : w.terms()) out.add(lk, c * coef * K(lk.first));
        continue;
      }
      long n = t1_degree(key);
      for (const auto& [lk, c] : w.terms()) {
        TensorVec<K> moved = key_action(key, lk.second, scale_twist);
        for (const auto& [t, mc] : moved.terms()) out.add({lk.first + n, t}, mc * c * coef);
      }
    }
    return out;
  }

  // Scalar by which a zero-root basis element acts on the top tensor.  The
  // t1^n d0 line enters through d(0,n) = -n t1^n d0, and the twist shifts
  // each slot's d0 value by mu times its level.
  K psi_value(const ToroidalKey& key) const {
    switch (key.kind) {
      case TorKind::Loop:
        if (key.m0 == 0 && key.x.is_h()) {
          K s(0);
          for (std::size_t i = 0; i < slots_.size(); ++i)
            s += pow_int(points_[i], key.m1) * slot_params(i).lam(key.x.i - 1);
          return s;
        }
        break;
      case TorKind::Central:
        if (key.a == 0 && key.m0 == 0) {
          K s(0);
          for (std::size_t i = 0; i < slots_.size(); ++i)
            s += pow_int(points_[i], key.m1) * slot_params(i).c;
          return s;
        }
        if (key.a == 1 && key.m0 == 0 && key.m1 == 0) return K(0);
        break;
      case TorKind::Skew:
        if (key.m0 == 0) {
          K s(0);
          for (std::size_t i = 0; i < slots_.size(); ++i)
            s += pow_int(points_[i], key.m1) *
                 (slot_params(i).d0val + mu_ * slot_params(i).c);
          return K(-key.m1) * s;
        }
        break;
      case TorKind::Deg:
        if (key.a == 0) {
          K s(0);
          for (std::size_t i = 0; i < slots_.size(); ++i) s += slot_params(i).d0val;
          return s;
        }
        break;
    }
    throw Error("element is outside the zero-root subalgebra");
  }

  std::vector<ToroidalKey> zero_root_generators(long n) const {
    std::vector<ToroidalKey> out;
    for (int i = 1; i <= simple_.rank(); ++i) out.push_back(ToroidalKey::loop({i, i}, 0, n));
    out.push_back(ToroidalKey::central(0, 0, n));
    if (n == 0) {
      out.push_back(ToroidalKey::central(1, 0, 0));
      out.push_back(ToroidalKey::deg(0));
    } else {
      out.push_back(ToroidalKey::skew(0, n));
    }
    return out;
  }

  // Character table out to |degree| <= bound (default 2k) and the lattice
  // step: the gcd over single generators acting nonzero and products of two.
  // Distinct nonzero points with nonzero levels force a nonzero value at
  // some degree in [1, k], so the default bound always finds the step.
  PsiChar<K> psi_char(long bound = 0) const {
    if (bound <= 0) bound = 2 * k();
    PsiChar<K> ch;
    std::vector<long> hits;
    for (long n = -bound; n <= bound; ++n)
      for (const ToroidalKey& g : zero_root_generators(n)) {
        K v = psi_value(g);
        ch.values.emplace(g, v);
        if (n != 0 && !is_zero(v)) hits.push_back(n);
      }
    long r = 0;
    for (long n : hits) r = std::gcd(r, n);
    for (long n1 : hits)
      for (long n2 : hits) r = std::gcd(r, n1 + n2);
    if (r == 0) throw Error("no nonzero character degree within the probe bound");
    ch.r = r;
    return ch;
  }

  long detect_r(long bound = 0) const { return psi_char(bound).r; }

  bool equal_slot_weights(int i, int j) const {
    const HWParams<K>& p = slot_params(i);
    const HWParams<K>& q = slot_params(j);
    for (Eigen::Index t = 0; t < p.lam.size(); ++t)
      if (!(p.lam(t) == q.lam(t))) return false;
    return p.c == q.c && p.d0val == q.d0val;
  }

  // Search for a grouping of the slots into k/r blocks with equal weights
  // and points spiralling by a primitive r-th root of unity: position sr+j
  // carries epsilon^j times the block's base point.  Greedy matching is
  // complete here because distinct points meet each root-of-unity coset in
  // at most one block.
  std::optional<BlockWitness<K>> block_witness(long r) const {
    if (r < 1) throw ConfigError("block size must be positive");
    if (k() % r != 0) throw ConfigError("block size must divide the slot count");
    BlockWitness<K> w;
    w.epsilon = FieldOps<K>::root_of_unity(static_cast<unsigned>(r), field_order_);
    std::vector<char> used(slots_.size(), 0);
    for (int i = 0; i < k(); ++i) {
      if (used[i]) continue;
      K base = pow_int(w.epsilon, r - 1) * points_[i];
      w.base.push_back(base);
      for (long j = 1; j <= r; ++j) {
        K target = pow_int(w.epsilon, j) * base;
        int found = -1;
        for (int t = 0; t < k(); ++t)
          if (!used[t] && points_[t] == target && equal_slot_weights(t, i)) {
            found = t;
            break;
          }
        if (found < 0) return std::nullopt;
        used[found] = 1;
        w.tau.push_back(found);
      }
    }
    return w;
  }

  void require_normalized(long r) const {
    if (r < 1 || k() % r != 0)
      throw ConfigError("block size must be positive and divide the slot count");
    K eps = FieldOps<K>::root_of_unity(static_cast<unsigned>(r), field_order_);
    for (int s = 0; s + r <= k(); s += static_cast<int>(r))
      for (long j = 1; j < r; ++j) {
        if (!equal_slot_weights(s, s + static_cast<int>(j)))
          throw ConfigError("slot weights must agree within each block");
        if (!(points_[s + j] == eps * points_[s + j - 1]))
          throw ConfigError("block points must progress by the root of unity");
      }
  }

  // Rotate the slots one step within each block of r and scale the t1^l
  // sector by epsilon^l.
  LoopVector<K> sigma_apply(long r, const LoopVector<K>& w) const {
    require_normalized(r);
    K eps = FieldOps<K>::root_of_unity(static_cast<unsigned>(r), field_order_);
    LoopVector<K> out;
    for (const auto& [lk, c] : w.terms()) {
      const TensorKey& t = lk.second;
      TensorKey moved(t.size());
      for (int q = 0; q < k(); ++q) {
        int s = q - q % static_cast<int>(r);
        moved[s + (q - s + 1) % r] = t[q];
      }
      out.add({lk.first, std::move(moved)}, c * pow_int(eps, lk.first));
    }
    return out;
  }

  // projector onto the epsilon^{-i} eigenspace of sigma
  LoopVector<K> eigen_project(long r, long i, const LoopVector<K>& w) const {
    K eps = FieldOps<K>::root_of_unity(static_cast<unsigned>(r), field_order_);
    LoopVector<K> cur = w;
    LoopVector<K> acc = w;
    for (long j = 1; j < r; ++j) {
      cur = sigma_apply(r, cur);
      acc.add(cur, pow_int(eps, i * j));
    }
    LoopVector<K> out;
    out.add(acc, K(1) / K(r));
    return out;
  }

  std::vector<PBWMonomial> slot_basis(int i) const {
    std::vector<PBWMonomial> out;
    for (const auto& [key, s] : slots_.at(i)->mod.slices())
      for (Eigen::Index kept : s.kept) out.push_back(s.basis[kept]);
    return out;
  }

  // expanded tensor basis: every combination of slot basis monomials
  std::vector<TensorKey> tensor_basis() const {
    std::vector<TensorKey> out{TensorKey{}};
    for (int i = 0; i < k(); ++i) {
      std::vector<PBWMonomial> slot_monos = slot_basis(i);
      std::vector<TensorKey> grown;
      grown.reserve(out.size() * slot_monos.size());
      for (const TensorKey& t : out)
        for (const PBWMonomial& m : slot_monos) {
          TensorKey g = t;
          g.push_back(m);
          grown.push_back(std::move(g));
        }
      out = std::move(grown);
    }
    return out;
  }

  // total (depth, finite weight shift) over the slots
  SliceKey tensor_slice(const TensorKey& t) const {
    SliceKey total{0, std::vector<int>(simple_.rank(), 0)};
    for (const PBWMonomial& m : t) {
      SliceKey s = slice_of(simple_, m);
      total.first += s.first;
      for (int i = 0; i < simple_.rank(); ++i) total.second[i] += s.second[i];
    }
    return total;
  }

 private:
  struct Slot {
    TruncatedHWModule<K> mod;
    VertexOps<K> ops;
    Slot(const SimpleAlgebra<K>& s, const HWParams<K>& p, int D, int H)
        : mod(s, p, D, H, GeneratorMenu{}), ops(mod) {}
  };

  SimpleAlgebra<K> simple_;
  K mu_;
  std::vector<K> points_;
  unsigned field_order_;
  std::vector<std::unique_ptr<Slot>> slots_;
};

}  // namespace eala
