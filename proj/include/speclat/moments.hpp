#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "speclat/laurent.hpp"
#include "speclat/series.hpp"
#include "speclat/specpoly.hpp"
#include "speclat/types.hpp"

namespace speclat {

/// m_0..m_K, either the exact constant-term moments or the N-folded ones.
struct MomentSequence {
  enum class Source { ConstantTerm, Folded };

  std::vector<BigInt> values;
  Source source = Source::ConstantTerm;
  /// N for folded sequences.
  std::optional<std::int64_t> modulus;

  std::size_t max_k() const { return values.empty() ? 0 : values.size() - 1; }
  const BigInt& operator[](std::size_t k) const { return values.at(k); }
};

/// Smallest N for which m_k^(N) = m_k is guaranteed in the coordinates of w:
/// k * max|exponent entry| + 1.
std::int64_t stable_modulus(const LaurentPoly& w, unsigned k);

/// m_k = constant term of w^k.
BigInt moment(const LaurentPoly& w, unsigned k);
/// m_k^(N) = sum of the coefficients of w^k over exponents in N Lambda.
BigInt moment_N(const LaurentPoly& w, unsigned k, std::int64_t modulus);

/// m_0..m_K via repeated multiplication of the N-folded power by w.
MomentSequence moments_N(const LaurentPoly& w, unsigned max_k, std::int64_t modulus);
/// Exact m_0..m_K from the unfolded powers W^j, j <= ceil(K/2).
/// Throws SizeLimit when the bounding cube of W^{ceil(K/2)} exceeds 5e7 cells.
MomentSequence moments(const LaurentPoly& w, unsigned max_k);

/// m_{k p^{alpha+1}} == m_{k p^alpha} mod p^{alpha+1}.
bool check_congruence(const LaurentPoly& w, unsigned p, unsigned k, unsigned alpha);
bool check_congruence(const MomentSequence& m, unsigned p, unsigned k, unsigned alpha);

/// Coefficients of exp(sum_k m_k t^k / k) = 1 + sum_k A_k t^k through
/// t^K, indexed by k (entry 0 is A_0 = 1). Throws IntegralityViolation.
std::vector<BigInt> series_A(const MomentSequence& m);

/// Exponents b_1..b_K with exp(sum m_k t^k / k) = prod_k (1 - t^k)^{-b_k},
/// indexed by k (entry 0 unused, set to 0). Throws IntegralityViolation.
std::vector<BigInt> product_b(const MomentSequence& m);

/// sum_s P_s(k) m_{k+s} = 0, P_s a polynomial in k with integer coefficients.
struct LinearRecurrence {
  struct Term {
    int shift = 0;
    /// Coefficients of P_s, low degree first.
    std::vector<BigInt> polynomial;
  };
  std::vector<Term> terms;

  /// (k+1)^2 m_{k+1} - (10k^2+10k+3) m_k + 9k^2 m_{k-1} = 0.
  static LinearRecurrence honeycomb();
};

/// Checks the recurrence at every k for which all referenced moments are
/// available; a term with an out-of-range index is admissible only if its
/// coefficient vanishes at that k. Returns false if no k could be checked.
bool verify_recurrence(const MomentSequence& m, const LinearRecurrence& rec);

/// Compares B_N(z) / N for N <= K, computed exactly for the point set
/// {-1, 1}, against the coefficients of -log(1 - (z - 4) T / (1 - T)^2).
bool chebyshev_generating_check(const BigInt& z, unsigned max_n);

/// Coefficients c_1..c_K (index k; entry 0 is 0) of log(B(z) z^{-deg B})
/// as a series in t = 1/z. B must be monic.
std::vector<BigRational> log_bn_expansion(const IntPolynomial& b, unsigned order);

/// Coefficients of z * B(z)^{-1/deg B} in t = 1/z through t^order; entry 0
/// is 1. B must be monic.
std::vector<BigRational> inverse_root_expansion(const IntPolynomial& b, unsigned order);

}  // namespace speclat
