#pragma once

#include <map>

#include "map_vector.hpp"

namespace eala {

// Growing exact basis of a subspace, stored in echelon form.  Each row has a
// unit leading coefficient at a key no other row mentions, so the stored rows
// are linearly independent by construction and membership tests are exact.
template <class Key, class K>
class SpanTracker {
 public:
  using Vector = MapVector<Key, K>;

  // Remainder of v after eliminating every key that leads a stored row.
  Vector reduce(Vector v) const {
    Vector out;
    while (!v.empty()) {
      auto top = std::prev(v.terms().end());
      const Key key = top->first;
      const K coeff = top->second;
      auto row = rows_.find(key);
      if (row == rows_.end()) {
        out.add(key, coeff);
        v.add(key, -coeff);
      } else {
        v.add(row->second, -coeff);
      }
    }
    return out;
  }

  bool contains(const Vector& v) const { return reduce(v).empty(); }

  // Adds v to the span; returns true if the span grew.
  bool insert(const Vector& v) {
    Vector rem = reduce(v);
    if (rem.empty()) return false;
    auto lead = std::prev(rem.terms().end());
    const Key key = lead->first;
    Vector row = (K(1) / lead->second) * rem;
    for (auto& [k, r] : rows_) {
      const K c = r.coeff(key);
      if (!is_zero(c)) r.add(row, -c);
    }
    rows_.emplace(key, std::move(row));
    return true;
  }

  long rank() const { return static_cast<long>(rows_.size()); }

  // Leading key of each stored row, mapped to the full row.
  const std::map<Key, Vector>& rows() const { return rows_; }

 private:
  std::map<Key, Vector> rows_;
};

}  // namespace eala
