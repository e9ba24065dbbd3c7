#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "oracles.hpp"
#include "speclat/analysis.hpp"
#include "speclat/errors.hpp"
#include "speclat/graph.hpp"
#include "speclat/moments.hpp"
#include "speclat/specpoly.hpp"

using namespace speclat;

namespace {

// Random full-rank point sets in dimensions 1..3 with small coordinates.
std::vector<WeightedPointSet> random_sets(std::uint64_t seed, std::size_t count) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dim(1, 3), coord(-2, 2), weight(1, 3);
  std::vector<WeightedPointSet> out;
  while (out.size() < count) {
    const int n = dim(rng);
    std::uniform_int_distribution<int> size(n + 1, n + 2);
    const int m = size(rng);
    std::set<std::vector<int>> seen;
    std::vector<WeightedPoint> pts;
    while (static_cast<int>(pts.size()) < m) {
      std::vector<int> c(static_cast<std::size_t>(n));
      for (auto& x : c) x = coord(rng);
      if (!seen.insert(c).second) continue;
      IntVector a(n);
      for (int i = 0; i < n; ++i) a(i) = c[static_cast<std::size_t>(i)];
      pts.push_back({a, weight(rng)});
    }
    WeightedPointSet ps(n, pts);
    try {
      difference_lattice(ps);
      out.push_back(ps);
    } catch (const RankDeficient&) {
    }
  }
  return out;
}

// A random unimodular n x n matrix as a product of elementary moves.
IntMatrix random_unimodular(int n, std::mt19937_64& rng) {
  IntMatrix u = IntMatrix::Identity(n, n);
  if (n == 1) return u * (rng() % 2 ? 1 : -1);
  std::uniform_int_distribution<int> row(0, n - 1), mult(-2, 2);
  for (int step = 0; step < 6; ++step) {
    const int i = row(rng), j = row(rng);
    if (i == j) continue;
    u.row(i) += mult(rng) * u.row(j);
  }
  return u;
}

std::int64_t max_modulus(int n) { return n == 1 ? 8 : n == 2 ? 5 : 3; }

}  // namespace

TEST_CASE("lattice invariants on random sets") {
  for (const auto& ps : random_sets(1, 25)) {
    const LatticeBasis b = difference_lattice(ps);
    CHECK(b.is_hermite_normal_form());
    IntMatrix g = ps.differences();
    IntMatrix extra(g.rows() + 1, g.cols());
    extra << g, g.row(1) + g.row(g.rows() - 1);
    CHECK(hermite_normal_form(extra) == b.rows());
    for (std::int64_t n = 1; n <= 3; ++n) {
      const auto q = quotient_enumeration(b, n);
      CHECK(std::set<Residue>(q.begin(), q.end()).size() == q.size());
      CHECK(q.size() == static_cast<std::size_t>(std::pow(n, ps.dimension())));
    }
  }
}

TEST_CASE("basis change leaves B_N and the moments unchanged") {
  std::mt19937_64 rng(2);
  for (const auto& ps : random_sets(3, 12)) {
    const LatticeBasis hnf = difference_lattice(ps);
    const int n = ps.dimension();
    const IntMatrix rows = random_unimodular(n, rng) * hnf.rows();
    const LaurentPoly w0 = build_W(ps, hnf);
    const LaurentPoly w1 = build_W(ps, lattice_with_basis(ps, rows));
    CHECK(moments(w0, 6).values == moments(w1, 6).values);
    for (std::int64_t m = 1; m <= max_modulus(n); ++m) {
      CHECK(bn_polynomial(w0, m) == bn_polynomial(w1, m));
      CHECK(moments_N(w0, 5, m).values == moments_N(w1, 5, m).values);
    }
  }
}

TEST_CASE("exact B_N against Faddeev-LeVerrier and divisibility") {
  for (const auto& ps : random_sets(4, 12)) {
    const LaurentPoly w = build_W(ps, difference_lattice(ps));
    const BigInt c2 = w.coefficient_sum();
    std::vector<IntPolynomial> b(static_cast<std::size_t>(max_modulus(ps.dimension())) + 1);
    for (std::int64_t m = 1; m <= max_modulus(ps.dimension()); ++m) {
      const ConvolutionMatrix cm = convolution_matrix(w, m);
      b[m] = charpoly_exact(cm);
      if (cm.size() <= 16) CHECK(b[m] == oracle::faddeev_charpoly(cm.entries().cast<BigInt>()));
      CHECK(evaluate_at_integer(b[m], c2) == 0);
      CHECK(evaluate_at_integer(b[m], c2 + 1) > 0);
      for (std::int64_t d = 1; d < m; ++d)
        if (m % d == 0) CHECK(divides(b[d], b[m]));
    }
  }
}

TEST_CASE("moment identities on random sets") {
  for (const auto& ps : random_sets(5, 15)) {
    const LaurentPoly w = build_W(ps, difference_lattice(ps));
    const MomentSequence m = moments(w, 24);
    BigInt c2k = 1;
    for (unsigned k = 0; k <= 24; ++k) {
      CHECK(m[k] >= 0);
      CHECK(m[k] <= c2k);
      c2k *= w.coefficient_sum();
    }
    for (unsigned k = 0; k <= 3; ++k) CHECK(m[k] == oracle::constant_term_brute(w, k));
    for (unsigned p : {2u, 3u, 5u})
      for (unsigned k = 1; k * p * p <= 24; ++k) CHECK(check_congruence(m, p, k, 1));
    CHECK_NOTHROW(series_A(m));
    CHECK_NOTHROW(product_b(m));
    for (std::int64_t n = 1; n <= max_modulus(ps.dimension()); ++n) {
      const MomentSequence f = moments_N(w, 6, n);
      for (unsigned k = 0; k <= 6; ++k) {
        CHECK(f[k] >= m[k]);
        if (n > static_cast<std::int64_t>(k) * w.max_abs_exponent()) CHECK(f[k] == m[k]);
      }
    }
  }
}

TEST_CASE("walk sums match traces on random sets") {
  std::size_t tested = 0;
  for (const auto& ps : random_sets(6, 30)) {
    const LatticeBasis b = difference_lattice(ps);
    if (!disjointness_check(ps, b)) {
      CHECK_THROWS_AS(build_graph(ps, b, 2), CosetViolation);
      continue;
    }
    const LaurentPoly w = build_W(ps, b);
    for (std::int64_t n = 1; n <= std::min<std::int64_t>(3, max_modulus(ps.dimension())); ++n) {
      const auto g = build_graph(ps, b, n);
      const Matrix<BigInt> mat = convolution_matrix(w, n).entries().cast<BigInt>();
      for (unsigned k = 1; k <= 3; ++k) CHECK(based_walk_weight_sum(g, k) == oracle::matrix_power(mat, k).trace());
    }
    ++tested;
  }
  CHECK(tested > 0);
}

TEST_CASE("float spectrum agrees with exact B_N") {
  for (const auto& ps : random_sets(7, 10)) {
    const LaurentPoly w = build_W(ps, difference_lattice(ps));
    for (std::int64_t n = 1; n <= max_modulus(ps.dimension()); ++n) {
      const SpectrumHistogram h = spectrum(w, n);
      std::size_t total = 0;
      for (const auto& l : h.levels) total += l.multiplicity;
      CHECK(total == h.values.size());
      const IntPolynomial b = bn_polynomial(w, n);
      for (const auto& l : h.levels)
        if (l.integer_level && !h.ambiguous) CHECK(integer_root_multiplicity(b, *l.integer_level) == l.multiplicity);
      const BigInt z = w.coefficient_sum() + 2;
      const LogValue lv = bn_value_float(w, n, {static_cast<double>(z), 0.0});
      const double exact = std::log(static_cast<double>(evaluate_at_integer(b, z)));
      CHECK(lv.log_magnitude == doctest::Approx(exact).epsilon(1e-9));
    }
  }
}
