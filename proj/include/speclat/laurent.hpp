#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "speclat/lattice.hpp"
#include "speclat/types.hpp"

namespace speclat {

/// Sparse Laurent polynomial in n variables with big-integer coefficients.
/// Exponents are lattice coordinates. Zero coefficients are never stored.
class LaurentPoly {
 public:
  using Terms = std::map<Exponent, BigInt>;

  explicit LaurentPoly(int dimension) : dimension_(dimension) {}
  static LaurentPoly constant(int dimension, const BigInt& c);
  static LaurentPoly monomial(const Exponent& e, const BigInt& c);

  int dimension() const { return dimension_; }
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  BigInt coefficient(const Exponent& e) const;
  void add_term(const Exponent& e, const BigInt& c);

  /// Value at the all-ones point.
  BigInt coefficient_sum() const;
  /// coeff(e) == coeff(-e) for every e.
  bool is_palindromic() const;
  /// Largest |e_j| over all stored exponents; 0 for constants.
  std::int64_t max_abs_exponent() const;

  friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;

 private:
  int dimension_;
  Terms terms_;
};

LaurentPoly operator+(const LaurentPoly& f, const LaurentPoly& g);

/// W = sum_{a,b} c_a c_b x^{a-b}, exponents in the coordinates of `basis`.
LaurentPoly build_W(const WeightedPointSet& ps, const LatticeBasis& basis);

LaurentPoly multiply(const LaurentPoly& f, const LaurentPoly& g);
LaurentPoly operator*(const LaurentPoly& f, const LaurentPoly& g);

/// f^k. With a modulus N the result and every intermediate square are folded
/// modulo N, so the result equals fold_mod_N(f^k, N).
LaurentPoly power(const LaurentPoly& f, unsigned k,
                  std::optional<std::int64_t> modulus = std::nullopt);

BigInt constant_term(const LaurentPoly& f);

/// Reduces every exponent componentwise into [0, N) and sums colliding terms.
LaurentPoly fold_mod_N(const LaurentPoly& f, std::int64_t modulus);

/// Values f(zeta^{r}) for every residue r of (Z/N)^n in ResidueIndex order,
/// where zeta^{r} maps the lattice exponent e to exp(2 pi i <r, e> / N).
std::vector<std::complex<double>> evaluate_on_characters(const LaurentPoly& f,
                                                         std::int64_t modulus);

/// Real part of evaluate_on_characters; exact up to rounding for palindromic f.
std::vector<double> real_values_on_characters(const LaurentPoly& f, std::int64_t modulus);

/// Real part of f at x_j = exp(2 pi i t_j); the full value when f is palindromic.
double evaluate_on_torus(const LaurentPoly& f, const std::vector<double>& t);

std::string to_string(const LaurentPoly& f);

}  // namespace speclat
