#pragma once

#include <compare>
#include <string>
#include <utility>
#include <vector>

#include "eala/errors.hpp"
#include "eala/linalg.hpp"

namespace eala {

// Basis label of sl_n: i != j is the matrix unit E_ij, i == j is
// H_i = E_ii - E_{i+1,i+1}.  Indices are 1-based.
struct GLabel {
  int i = 1;
  int j = 1;
  bool is_h() const { return i == j; }
  friend auto operator<=>(const GLabel&, const GLabel&) = default;
};

inline std::string to_string(const GLabel& g) {
  if (g.is_h()) return "H" + std::to_string(g.i);
  if (g.i <= 9 && g.j <= 9) return "E" + std::to_string(g.i) + std::to_string(g.j);
  return "E(" + std::to_string(g.i) + "," + std::to_string(g.j) + ")";
}

// Type A_l realized as traceless (l+1)x(l+1) matrices.  The trace form is
// already normalized: the highest root theta = E(1,n) has <theta,theta> = 2.
template <class K>
class SimpleAlgebra {
 public:
  explicit SimpleAlgebra(int rank) : rank_(rank) {
    if (rank < 1) throw ConfigError("simple algebra rank must be positive");
    for (int i = 1; i <= rank_; ++i) basis_.push_back({i, i});
    for (int i = 1; i <= rank_ + 1; ++i)
      for (int j = 1; j <= rank_ + 1; ++j)
        if (i != j) basis_.push_back({i, j});

    cartan_ = Mat<K>::Zero(rank_, rank_);
    for (int i = 0; i < rank_; ++i) {
      cartan_(i, i) = K(2);
      if (i + 1 < rank_) {
        cartan_(i, i + 1) = K(-1);
        cartan_(i + 1, i) = K(-1);
      }
    }
    cartan_inv_ = exact_inverse(cartan_);
  }

  int rank() const { return rank_; }
  int n() const { return rank_ + 1; }
  int dim() const { return n() * n() - 1; }
  int dual_coxeter() const { return rank_ + 1; }
  const std::vector<GLabel>& basis() const { return basis_; }
  const Mat<K>& cartan() const { return cartan_; }
  const Mat<K>& cartan_inverse() const { return cartan_inv_; }
  GLabel theta() const { return {1, n()}; }

  Mat<K> matrix(const GLabel& g) const {
    check_label(g);
    Mat<K> m = Mat<K>::Zero(n(), n());
    if (g.is_h()) {
      m(g.i - 1, g.i - 1) = K(1);
      m(g.i, g.i) = K(-1);
    } else {
      m(g.i - 1, g.j - 1) = K(1);
    }
    return m;
  }

  static Mat<K> bracket(const Mat<K>& x, const Mat<K>& y) { return x * y - y * x; }

  static K form(const Mat<K>& x, const Mat<K>& y) {
    K tr(0);
    for (int i = 0; i < x.rows(); ++i)
      for (int j = 0; j < x.cols(); ++j) tr += x(i, j) * y(j, i);
    return tr;
  }

  std::vector<std::pair<GLabel, K>> decompose(const Mat<K>& m) const {
    if (m.rows() != n() || m.cols() != n()) throw Error("matrix size mismatch");
    K tr(0);
    for (int i = 0; i < n(); ++i) tr += m(i, i);
    if (!is_zero(tr)) throw Error("matrix is not traceless");
    std::vector<std::pair<GLabel, K>> out;
    K partial(0);
    for (int i = 1; i <= rank_; ++i) {
      partial += m(i - 1, i - 1);
      if (!is_zero(partial)) out.push_back({{i, i}, partial});
    }
    for (int i = 1; i <= n(); ++i)
      for (int j = 1; j <= n(); ++j)
        if (i != j && !is_zero(m(i - 1, j - 1))) out.push_back({{i, j}, m(i - 1, j - 1)});
    return out;
  }

  // Coordinates in the simple roots; zero for Cartan labels.
  std::vector<int> finite_root(const GLabel& g) const {
    check_label(g);
    std::vector<int> coords(rank_, 0);
    if (g.is_h()) return coords;
    int lo = std::min(g.i, g.j), hi = std::max(g.i, g.j);
    int sign = (g.i < g.j) ? 1 : -1;
    for (int s = lo; s < hi; ++s) coords[s - 1] = sign;
    return coords;
  }

  int height(const GLabel& g) const {
    if (g.is_h()) return 0;
    return g.j - g.i;
  }

  static GLabel transpose(const GLabel& g) { return {g.j, g.i}; }

  // Pairs (x_a, x^a) with <x_a, x^b> = delta_ab spanning the whole algebra.
  std::vector<std::pair<Mat<K>, Mat<K>>> dual_pairs() const {
    std::vector<std::pair<Mat<K>, Mat<K>>> out;
    for (int i = 1; i <= rank_; ++i) {
      Mat<K> dual = Mat<K>::Zero(n(), n());
      for (int j = 1; j <= rank_; ++j) dual += cartan_inv_(i - 1, j - 1) * matrix({j, j});
      out.push_back({matrix({i, i}), dual});
    }
    for (int i = 1; i <= n(); ++i)
      for (int j = 1; j <= n(); ++j)
        if (i != j) out.push_back({matrix({i, j}), matrix({j, i})});
    return out;
  }

 private:
  void check_label(const GLabel& g) const {
    bool ok = g.is_h() ? (g.i >= 1 && g.i <= rank_)
                       : (g.i >= 1 && g.i <= n() && g.j >= 1 && g.j <= n());
    if (!ok) throw Error("basis label " + to_string(g) + " out of range for rank " +
                         std::to_string(rank_));
  }

  int rank_;
  std::vector<GLabel> basis_;
  Mat<K> cartan_;
  Mat<K> cartan_inv_;
};

}  // namespace eala
