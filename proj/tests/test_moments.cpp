#include <doctest.h>

#include "oracles.hpp"
#include "speclat/errors.hpp"
#include "speclat/examples.hpp"
#include "speclat/moments.hpp"

using namespace speclat;

namespace {

LaurentPoly w_of(const WeightedPointSet& ps) { return build_W(ps, difference_lattice(ps)); }
const LaurentPoly honey = w_of(honeycomb_points());
const LaurentPoly cheb = w_of(chebyshev_points());

BigInt honeycomb_sum(unsigned k) {
  BigInt s = 0;
  for (unsigned j = 0; j <= k; ++j) s += oracle::binomial(k, j) * oracle::binomial(k, j) * oracle::binomial(2 * j, j);
  return s;
}

MomentSequence zeros(unsigned k) {
  MomentSequence m;
  m.values.assign(k + 1, 0);
  m.values[0] = 1;
  return m;
}

}  // namespace

TEST_CASE("exact moments") {
  CHECK(moment(cheb, 3) == 20);
  CHECK(moment(honey, 0) == 1);
  CHECK(moment(honey, 1) == 3);
  CHECK(moment(honey, 2) == 15);
  CHECK(moment(honey, 3) == 93);
  const MomentSequence hm = moments(honey, 30);
  const MomentSequence cm = moments(cheb, 30);
  CHECK(hm.source == MomentSequence::Source::ConstantTerm);
  for (unsigned k = 0; k <= 30; ++k) {
    CHECK(hm[k] == honeycomb_sum(k));
    CHECK(cm[k] == oracle::binomial(2 * k, k));
  }
  for (unsigned k = 0; k <= 5; ++k) CHECK(hm[k] == oracle::constant_term_brute(honey, k));
}

TEST_CASE("folded moments") {
  BigInt c2k = 1;
  for (unsigned k = 0; k <= 6; ++k) {
    CHECK(moment_N(honey, k, 1) == c2k);
    c2k *= 9;
  }
  // m_2^(2) for {-1, 1}: sum over even j of binom(4, j)
  CHECK(moment_N(cheb, 2, 2) == 8);
  const MomentSequence exact = moments(honey, 10);
  for (std::int64_t n = 1; n <= 9; ++n) {
    const MomentSequence f = moments_N(honey, 10, n);
    CHECK(f.source == MomentSequence::Source::Folded);
    CHECK(f.modulus == n);
    for (unsigned k = 0; k <= 10; ++k) {
      CHECK(f[k] >= exact[k]);
      CHECK(f[k] == moment_N(honey, k, n));
      if (n > static_cast<std::int64_t>(k)) CHECK(f[k] == exact[k]);
    }
  }
  CHECK(stable_modulus(honey, 5) == 11);
}

TEST_CASE("folded moments are normalized traces") {
  for (const auto& w : {honey, cheb}) {
    for (std::int64_t n = 1; n <= 4; ++n) {
      const Matrix<BigInt> m = convolution_matrix(w, n).entries().cast<BigInt>();
      const MomentSequence f = moments_N(w, 6, n);
      BigInt vol = 1;
      for (int i = 0; i < w.dimension(); ++i) vol *= n;
      for (unsigned k = 0; k <= 6; ++k) CHECK(oracle::matrix_power(m, k).trace() == vol * f[k]);
    }
  }
}

TEST_CASE("congruences") {
  CHECK(check_congruence(honey, 2, 1, 0));
  CHECK(check_congruence(cheb, 3, 1, 1));
  CHECK(check_congruence(honey, 5, 0, 3));
  for (unsigned p : {2u, 3u, 5u, 7u})
    for (unsigned k = 1; k <= 3; ++k) CHECK(check_congruence(honey, p, k, 0));
  MomentSequence bad = moments(cheb, 4);
  bad.values[2] += 1;
  CHECK_FALSE(check_congruence(bad, 2, 1, 0));
}

TEST_CASE("A and b series") {
  const auto ha = series_A(moments(honey, 20));
  const auto hb = product_b(moments(honey, 20));
  CHECK(ha[0] == 1);
  CHECK(ha[1] == 3);
  CHECK(hb[1] == 3);
  const auto ca = series_A(moments(cheb, 20));
  const auto cb = product_b(moments(cheb, 20));
  CHECK(ca[1] == 2);
  CHECK(cb[1] == 2);
  // n A_n = sum_k m_k A_{n-k}
  const MomentSequence m = moments(honey, 20);
  for (unsigned n = 1; n <= 20; ++n) {
    BigInt s = 0;
    for (unsigned k = 1; k <= n; ++k) s += m[k] * ha[n - k];
    CHECK(s == n * ha[n]);
  }
  const auto za = series_A(zeros(8));
  for (unsigned k = 1; k <= 8; ++k) CHECK(za[k] == 0);
  const auto zb = product_b(zeros(8));
  for (unsigned k = 1; k <= 8; ++k) CHECK(zb[k] == 0);

  MomentSequence odd = zeros(3);
  odd.values[1] = 1;
  odd.values[2] = 2;
  CHECK_THROWS_AS(series_A(odd), IntegralityViolation);
}

TEST_CASE("product exponents reproduce the A series") {
  const MomentSequence m = moments(honey, 15);
  const auto a = series_A(m);
  const auto b = product_b(m);
  // prod_k (1 - t^k)^{-b_k} via the log: sum_k b_k sum_j t^{kj} / j
  PowerSeries lg(16);
  for (unsigned k = 1; k <= 15; ++k)
    for (unsigned j = 1; k * j <= 15; ++j) lg[k * j] += BigRational(b[k], BigInt(j));
  const PowerSeries e = exp(lg);
  for (unsigned k = 0; k <= 15; ++k) CHECK(e[k] == BigRational(a[k]));
}

TEST_CASE("recurrences") {
  const MomentSequence m = moments(honey, 41);
  CHECK(4 * m[2] == 23 * m[1] - 9 * m[0]);
  CHECK(verify_recurrence(m, LinearRecurrence::honeycomb()));
  LinearRecurrence wrong = LinearRecurrence::honeycomb();
  wrong.terms[1].polynomial[0] += 1;
  CHECK_FALSE(verify_recurrence(m, wrong));
  // (k+1) m_{k+1} = (4k+2) m_k for binom(2k, k)
  LinearRecurrence central;
  central.terms = {{1, {1, 1}}, {0, {-2, -4}}};
  CHECK(verify_recurrence(moments(cheb, 20), central));
  CHECK_FALSE(verify_recurrence(moments(honey, 20), central));
}

TEST_CASE("generating series for {-1, 1}") {
  CHECK(chebyshev_generating_check(6, 17));
  CHECK(chebyshev_generating_check(4, 10));
  CHECK(chebyshev_generating_check(5, 5));
}

TEST_CASE("log expansion of B_N matches folded moments") {
  for (std::int64_t n = 1; n <= 4; ++n) {
    const IntPolynomial b = bn_polynomial(honey, n);
    const auto c = log_bn_expansion(b, 8);
    const MomentSequence f = moments_N(honey, 8, n);
    for (unsigned k = 1; k <= 8; ++k) CHECK(c[k] == -BigRational(f[k] * n * n, BigInt(k)));
  }
}

TEST_CASE("rate of convergence of B_N^{-1/N^n}") {
  const MomentSequence m = moments(honey, 8);
  const auto a = series_A(m);
  for (std::int64_t n = 1; n <= 6; ++n) {
    const auto e = inverse_root_expansion(bn_polynomial(honey, n), 6);
    // Stable through z^{-l} once N > l * 2.
    for (unsigned l = 1; l <= 6; ++l)
      if (n > 2 * static_cast<std::int64_t>(l)) CHECK(e[l] == BigRational(a[l]));
  }
}
