#pragma once

// Brute-force reference computations used by the unit tests. They share no
// code with the library beyond the number types.

#include <cstdint>
#include <map>
#include <numeric>
#include <vector>

#include "speclat/laurent.hpp"
#include "speclat/specpoly.hpp"
#include "speclat/types.hpp"

namespace oracle {

using speclat::BigInt;
using speclat::BigRational;

inline BigInt binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  BigInt r = 1;
  for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// Dense polynomial helpers, coefficients low degree first, untrimmed.
using Poly = std::vector<BigInt>;

inline Poly trim(Poly p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
  return p;
}

inline Poly add(const Poly& f, const Poly& g) {
  Poly r(std::max(f.size(), g.size()));
  for (std::size_t i = 0; i < f.size(); ++i) r[i] += f[i];
  for (std::size_t i = 0; i < g.size(); ++i) r[i] += g[i];
  return r;
}

inline Poly mul(const Poly& f, const Poly& g) {
  if (f.empty() || g.empty()) return {};
  Poly r(f.size() + g.size() - 1);
  for (std::size_t i = 0; i < f.size(); ++i)
    for (std::size_t j = 0; j < g.size(); ++j) r[i + j] += f[i] * g[j];
  return r;
}

inline Poly power(const Poly& f, unsigned k) {
  Poly r = {1};
  for (unsigned i = 0; i < k; ++i) r = mul(r, f);
  return r;
}

/// det(zI - A) by the Faddeev-LeVerrier recursion over exact integers.
inline speclat::IntPolynomial faddeev_charpoly(const speclat::Matrix<BigInt>& a) {
  const auto n = a.rows();
  Poly c(static_cast<std::size_t>(n) + 1);
  c[static_cast<std::size_t>(n)] = 1;
  speclat::Matrix<BigInt> m = speclat::Matrix<BigInt>::Zero(n, n);
  for (Eigen::Index k = 1; k <= n; ++k) {
    m = a * m;
    for (Eigen::Index i = 0; i < n; ++i) m(i, i) += c[static_cast<std::size_t>(n - k + 1)];
    const BigInt t = (a * m).trace();
    c[static_cast<std::size_t>(n - k)] = -t / k;
  }
  return speclat::IntPolynomial(c);
}

/// -2 + 2^{1-N} sum_j binom(N, 2j) z^j (z-4)^j (z-2)^{N-2j}.
inline speclat::IntPolynomial chebyshev_closed_form(unsigned n) {
  Poly sum;
  const Poly z = {0, 1}, z4 = {-4, 1}, z2 = {-2, 1};
  for (unsigned j = 0; 2 * j <= n; ++j) {
    Poly term = mul(mul(power(z, j), power(z4, j)), power(z2, n - 2 * j));
    for (auto& c : term) c *= binomial(n, 2 * j);
    sum = add(sum, term);
  }
  const BigInt scale = BigInt(1) << (n - 1);
  for (auto& c : sum) c /= scale;
  sum[0] -= 2;
  return speclat::IntPolynomial(trim(sum));
}

/// Constant term of f^k by expanding every k-fold product of terms.
inline BigInt constant_term_brute(const speclat::LaurentPoly& f, unsigned k) {
  std::vector<std::pair<speclat::Exponent, BigInt>> terms(f.terms().begin(), f.terms().end());
  const std::size_t dim = static_cast<std::size_t>(f.dimension());
  BigInt total = 0;
  std::vector<std::size_t> idx(k, 0);
  while (true) {
    speclat::Exponent e(dim, 0);
    BigInt c = 1;
    for (unsigned i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < dim; ++j) e[j] += terms[idx[i]].first[j];
      c *= terms[idx[i]].second;
    }
    if (std::all_of(e.begin(), e.end(), [](auto x) { return x == 0; })) total += c;
    std::size_t pos = 0;
    while (pos < k && ++idx[pos] == terms.size()) idx[pos++] = 0;
    if (pos == k) break;
  }
  return total;
}

inline speclat::Matrix<BigInt> matrix_power(const speclat::Matrix<BigInt>& m, unsigned k) {
  speclat::Matrix<BigInt> r = speclat::Matrix<BigInt>::Identity(m.rows(), m.cols());
  for (unsigned i = 0; i < k; ++i) r = r * m;
  return r;
}

/// Exact B_N(z) for the point set {-1, 1} from the companion
/// recurrence of s_N = B_N + 2 with s_0 = 2, s_1 = z - 2.
inline BigInt chebyshev_value(unsigned n, const BigInt& z) {
  BigInt s0 = 2, s1 = z - 2;
  if (n == 0) return 0;
  for (unsigned i = 1; i < n; ++i) {
    BigInt s2 = (z - 2) * s1 - s0;
    s0 = s1;
    s1 = s2;
  }
  return s1 - 2;
}

}  // namespace oracle
