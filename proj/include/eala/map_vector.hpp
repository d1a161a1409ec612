#pragma once

#include <map>

namespace eala {

// Sparse linear combination over an ordered key type; zero coefficients are
// never stored, so equality of maps is equality of vectors.
template <class Key, class K>
class MapVector {
 public:
  using Terms = std::map<Key, K>;

  MapVector() = default;

  void add(const Key& key, const K& coeff) {
    if (is_zero(coeff)) return;
    auto [it, inserted] = terms_.try_emplace(key, coeff);
    if (!inserted) {
      it->second += coeff;
      if (is_zero(it->second)) terms_.erase(it);
    }
  }

  void add(const MapVector& other, const K& scale = K(1)) {
    if (is_zero(scale)) return;
    for (const auto& [k, c] : other.terms_) add(k, c * scale);
  }

  const Terms& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  K coeff(const Key& key) const {
    auto it = terms_.find(key);
    return it == terms_.end() ? K(0) : it->second;
  }

  friend MapVector operator+(MapVector a, const MapVector& b) {
    a.add(b);
    return a;
  }
  friend MapVector operator-(MapVector a, const MapVector& b) {
    a.add(b, K(-1));
    return a;
  }
  friend MapVector operator*(const K& s, const MapVector& v) {
    MapVector out;
    out.add(v, s);
    return out;
  }
  friend bool operator==(const MapVector& a, const MapVector& b) {
    return a.terms_ == b.terms_;
  }

  static MapVector single(const Key& key, const K& coeff = K(1)) {
    MapVector v;
    v.add(key, coeff);
    return v;
  }

 private:
  Terms terms_;
};

}  // namespace eala
