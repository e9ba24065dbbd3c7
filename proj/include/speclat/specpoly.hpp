#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "speclat/laurent.hpp"
#include "speclat/lattice.hpp"
#include "speclat/types.hpp"

namespace speclat {

/// Dense univariate polynomial over Z, coefficients low degree first.
/// Trailing zero coefficients are stripped; the zero polynomial is empty.
class IntPolynomial {
 public:
  IntPolynomial() = default;
  explicit IntPolynomial(std::vector<BigInt> coeffs);

  /// prod (z - r)^m over the given (root, multiplicity) pairs.
  static IntPolynomial from_roots(const std::vector<std::pair<BigInt, unsigned>>& roots);

  /// Degree; -1 for the zero polynomial.
  long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_monic() const { return !coeffs_.empty() && coeffs_.back() == 1; }
  const std::vector<BigInt>& coefficients() const { return coeffs_; }
  BigInt coefficient(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : BigInt(0); }

  friend bool operator==(const IntPolynomial&, const IntPolynomial&) = default;

 private:
  std::vector<BigInt> coeffs_;
};

IntPolynomial operator*(const IntPolynomial& f, const IntPolynomial& g);

struct PolynomialDivision {
  IntPolynomial quotient;
  IntPolynomial remainder;
};

/// Division by a monic divisor. Throws InvalidInput if the divisor is not monic.
PolynomialDivision divide_monic(const IntPolynomial& dividend, const IntPolynomial& divisor);

/// True iff `divisor` (monic) divides `dividend` in Z[z].
bool divides(const IntPolynomial& divisor, const IntPolynomial& dividend);

BigInt evaluate_at_integer(const IntPolynomial& p, const BigInt& z);

/// Largest m with (z - r)^m dividing p. The zero polynomial yields 0.
unsigned integer_root_multiplicity(const IntPolynomial& p, const BigInt& r);

std::string to_string(const IntPolynomial& p);

/// Multiplication by W on the group algebra of Lambda / N Lambda, in the
/// basis of quotient_enumeration: entry (i, j) is the coefficient of residue
/// (j - i) in W folded mod N.
class ConvolutionMatrix {
 public:
  ConvolutionMatrix(std::int64_t modulus, Matrix<std::int64_t> entries)
      : modulus_(modulus), entries_(std::move(entries)) {}

  std::int64_t modulus() const { return modulus_; }
  Eigen::Index size() const { return entries_.rows(); }
  const Matrix<std::int64_t>& entries() const { return entries_; }
  std::int64_t trace() const { return entries_.trace(); }

 private:
  std::int64_t modulus_;
  Matrix<std::int64_t> entries_;
};

struct SpecPolyOptions {
  /// Largest admissible N^n for the exact path.
  std::size_t size_limit = 10000;
};

/// `w` may be folded or not; it is folded mod N internally.
ConvolutionMatrix convolution_matrix(const LaurentPoly& w, std::int64_t modulus,
                                     const SpecPolyOptions& options = {});

/// det(zI - M) by CRT over 62-bit primes. The number of primes is fixed in
/// advance from |e_j| <= binom(n, j) rho^j with rho the largest absolute row
/// sum, which bounds every eigenvalue.
IntPolynomial charpoly_exact(const Matrix<std::int64_t>& m);
IntPolynomial charpoly_exact(const ConvolutionMatrix& m);

/// B_N(z) = prod_{x in mu_N^Lambda} (z - W(x)), computed exactly as the
/// characteristic polynomial of the convolution matrix.
IntPolynomial bn_polynomial(const WeightedPointSet& ps, std::int64_t modulus,
                            const SpecPolyOptions& options = {});
IntPolynomial bn_polynomial(const LaurentPoly& w, std::int64_t modulus,
                            const SpecPolyOptions& options = {});

/// Principal-branch sum of log(z - W(x)) over all characters.
struct LogValue {
  double log_magnitude = 0.0;
  /// Total argument reduced into (-pi, pi].
  double argument = 0.0;
};

/// Floating evaluation of B_N(z) through its root-of-unity product; no size
/// limit. Throws SingularLevel if some factor |z - W(x)| is below
/// 1e-12 * max(1, C^2).
LogValue bn_value_float(const LaurentPoly& w, std::int64_t modulus, std::complex<double> z);
LogValue bn_value_float(const WeightedPointSet& ps, std::int64_t modulus, std::complex<double> z);

}  // namespace speclat
