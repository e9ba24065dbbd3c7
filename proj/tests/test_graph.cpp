#include <doctest.h>

#include <algorithm>

#include "oracles.hpp"
#include "speclat/errors.hpp"
#include "speclat/examples.hpp"
#include "speclat/graph.hpp"
#include "speclat/moments.hpp"

using namespace speclat;

namespace {

const WeightedPointSet honey = honeycomb_points();
const WeightedPointSet cheb = chebyshev_points();

TorusBipartiteGraph graph_of(const WeightedPointSet& ps, std::int64_t n) {
  return build_graph(ps, difference_lattice(ps), n);
}

}  // namespace

TEST_CASE("graph sizes and degrees") {
  const TorusBipartiteGraph g3 = graph_of(honey, 3);
  CHECK(g3.black_count() == 9);
  CHECK(g3.white_count() == 9);
  CHECK(g3.edges().size() == 27);
  for (std::size_t v = 0; v < 9; ++v) {
    CHECK(g3.out_edges(v).size() == 3);
    CHECK(g3.in_edges(v).size() == 3);
  }
  const TorusBipartiteGraph g1 = graph_of(honey, 1);
  CHECK(g1.black_count() == 1);
  CHECK(g1.white_count() == 1);
  CHECK(g1.edges().size() == 3);
}

TEST_CASE("coset condition") {
  IntVector o = IntVector::Zero(2), e1 = IntVector::Unit(2, 0), e2 = IntVector::Unit(2, 1);
  const WeightedPointSet with_origin(2, {{o, 1}, {e1, 1}, {e2, 1}});
  CHECK_THROWS_AS(build_graph(with_origin, difference_lattice(with_origin), 2), CosetViolation);
}

TEST_CASE("based walk sums") {
  for (std::int64_t n = 2; n <= 4; ++n) CHECK(based_walk_weight_sum(graph_of(honey, n), 1) == 3 * n * n);
  CHECK(based_walk_weight_sum(graph_of(honey, 1), 1) == 9);
  // N^n m_2^(2) = 2 * (1 + 6 + 1)
  CHECK(based_walk_weight_sum(graph_of(cheb, 2), 2) == 16);
  CHECK_THROWS_AS(based_walk_weight_sum(graph_of(honey, 2), 0), InvalidInput);
  WalkOptions tight;
  tight.enumeration_cap = 100;
  CHECK_THROWS_AS(based_walk_weight_sum(graph_of(honey, 2), 3, tight), ExplosionGuard);
}

TEST_CASE("walk sums equal traces of the convolution matrix") {
  for (const auto& ps : {honey, cheb}) {
    const LaurentPoly w = build_W(ps, difference_lattice(ps));
    for (std::int64_t n = 1; n <= 4; ++n) {
      const auto g = graph_of(ps, n);
      const Matrix<BigInt> m = convolution_matrix(w, n).entries().cast<BigInt>();
      for (unsigned k = 1; k <= 5; ++k) CHECK(based_walk_weight_sum(g, k) == oracle::matrix_power(m, k).trace());
    }
  }
}

TEST_CASE("weighted points") {
  IntVector a(1), b(1), c(1);
  a << 1;
  b << 3;
  c << 5;
  const WeightedPointSet ps(1, {{a, 2}, {b, 1}, {c, 3}});
  const LaurentPoly w = build_W(ps, difference_lattice(ps));
  for (std::int64_t n = 1; n <= 3; ++n) {
    const auto g = graph_of(ps, n);
    const Matrix<BigInt> m = convolution_matrix(w, n).entries().cast<BigInt>();
    for (unsigned k = 1; k <= 4; ++k) CHECK(based_walk_weight_sum(g, k) == oracle::matrix_power(m, k).trace());
  }
}

TEST_CASE("walk sum rationals") {
  const WalkSum s = walk_sum(graph_of(honey, 2), 3);
  CHECK(s.k == 3);
  CHECK(s.cycle_total * 3 == BigRational(s.based_total));
}

TEST_CASE("relabeling the points leaves walk sums unchanged") {
  IntVector p(2), q(2), r(2);
  p << 1, 0;
  q << 0, 1;
  r << -1, -1;
  const WeightedPointSet perm(2, {{r, 1}, {p, 1}, {q, 1}});
  for (std::int64_t n = 1; n <= 3; ++n)
    for (unsigned k = 1; k <= 4; ++k)
      CHECK(based_walk_weight_sum(graph_of(perm, n), k) == based_walk_weight_sum(graph_of(honey, n), k));
}

TEST_CASE("walk series check") {
  CHECK(walk_series_check(honey, 2, 10, 4));
  CHECK(walk_series_check(honey, 3, 10, 1));
  CHECK(walk_series_check(cheb, 3, 6, 5));
  CHECK_THROWS_AS(walk_series_check(honey, 2, 9, 3), InvalidInput);
}
