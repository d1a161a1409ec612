#include <random>
#include <vector>

#include "doctest.h"
#include "eala/cyclotomic.hpp"
#include "eala/linalg.hpp"
#include "eala/loop.hpp"
#include "eala/rational.hpp"
#include "eala/span.hpp"
#include "testutil.hpp"

using eala::Cyclotomic;
using eala::MapVector;
using eala::Rational;
using eala::SpanTracker;

namespace {

template <class K>
MapVector<int, K> dense_to_sparse(const std::vector<K>& coords) {
  MapVector<int, K> v;
  for (int i = 0; i < static_cast<int>(coords.size()); ++i) v.add(i, coords[i]);
  return v;
}

}  // namespace

TEST_CASE("span tracker detects dependence and membership") {
  SpanTracker<int, Rational> span;
  auto v1 = dense_to_sparse<Rational>({Rational(1), Rational(2), Rational(0)});
  auto v2 = dense_to_sparse<Rational>({Rational(0), Rational(1), Rational(1)});
  auto v3 = dense_to_sparse<Rational>({Rational(2), Rational(5), Rational(1)});  // v3 = 2 v1 + v2

  CHECK(span.insert(v1));
  CHECK(span.rank() == 1);
  CHECK(span.contains(v1));
  CHECK(!span.contains(v2));
  CHECK(span.insert(v2));
  CHECK(!span.insert(v3));
  CHECK(span.rank() == 2);
  CHECK(span.contains(v3));

  auto v4 = dense_to_sparse<Rational>({Rational(1), Rational(0), Rational(0)});
  auto rem = span.reduce(v4);
  CHECK(!rem.empty());
  MapVector<int, Rational> back = v4 - rem;
  CHECK(span.contains(back));
}

TEST_CASE("span tracker rank matches dense exact rank") {
  std::mt19937 rng(11);
  const int dim = 7;
  const int count = 12;
  std::vector<std::vector<Rational>> rows;
  SpanTracker<int, Rational> span;
  for (int t = 0; t < count; ++t) {
    std::vector<Rational> coords(dim);
    for (auto& c : coords) c = testutil::rand_rational(rng, 4, 3);
    if (t % 3 == 2 && t >= 2) {
      // make every third vector an exact combination of two earlier ones
      for (int j = 0; j < dim; ++j) coords[j] = rows[t - 1][j] + Rational(2) * rows[t - 2][j];
    }
    rows.push_back(coords);
    span.insert(dense_to_sparse(coords));
  }
  eala::Mat<Rational> m(count, dim);
  for (int i = 0; i < count; ++i)
    for (int j = 0; j < dim; ++j) m(i, j) = rows[i][j];
  CHECK(span.rank() == eala::exact_rank(m));
  for (const auto& r : rows) CHECK(span.contains(dense_to_sparse(r)));
}

TEST_CASE("span tracker over cyclotomic scalars") {
  const unsigned order = 4;
  Cyclotomic eps = eala::FieldOps<Cyclotomic>::root_of_unity(4, order);
  SpanTracker<int, Cyclotomic> span;
  MapVector<int, Cyclotomic> a;
  a.add(0, Cyclotomic(1));
  a.add(1, eps);
  MapVector<int, Cyclotomic> b;
  b.add(0, eps);
  b.add(1, eps * eps);
  CHECK(span.insert(a));
  CHECK(!span.insert(b));  // b = eps * a
  MapVector<int, Cyclotomic> c;
  c.add(1, Cyclotomic(1));
  CHECK(span.insert(c));
  CHECK(span.rank() == 2);
}

TEST_CASE("span tracker works on tensor window vectors") {
  using K = Rational;
  eala::SlotWeight<K> w;
  w.lam = eala::Vec<K>::Zero(1);
  w.lam(0) = K(1);
  w.c = K(1);
  w.d0 = K(0);
  eala::LoopConfig<K> cfg;
  cfg.rank = 1;
  cfg.weights = {w, w};
  cfg.points = {K(1), K(-1)};
  cfg.mu = K(0);
  cfg.depth = 2;
  cfg.height = 2;
  eala::LoopModules<K> lm(cfg);

  SpanTracker<eala::TensorKey, K> span;
  long grew = 0;
  for (const auto& t : lm.tensor_basis())
    if (span.insert(MapVector<eala::TensorKey, K>::single(t))) ++grew;
  CHECK(grew == span.rank());
  CHECK(span.rank() == static_cast<long>(lm.tensor_basis().size()));

  // an algebra image lies in the window span
  auto img = lm.hat_action(eala::ToroidalElem<K>::single(eala::ToroidalKey::loop({2, 1}, 0, 1)),
                           lm.highest());
  CHECK(span.contains(img));
}
