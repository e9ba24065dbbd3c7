#pragma once

#include <cstdint>
#include <map>
#include <ostream>
#include <vector>

#include "speclat/laurent.hpp"
#include "speclat/lattice.hpp"
#include "speclat/specpoly.hpp"
#include "speclat/types.hpp"

namespace speclat {

/// p-adic valuation; infinite for 0.
struct Valuation {
  bool infinite = false;
  std::uint64_t value = 0;

  friend bool operator==(const Valuation&, const Valuation&) = default;
};

std::ostream& operator<<(std::ostream& os, const Valuation& v);

/// Throws InvalidInput if p < 2.
Valuation vp(const BigInt& x, std::uint64_t p);

bool is_probable_prime(const BigInt& n);

struct FactoredInteger {
  int sign = 1;
  std::map<BigInt, unsigned> factors;
  /// Unfactored part (1 when the factorization is complete).
  BigInt cofactor = 1;

  bool complete() const { return cofactor == 1; }
  BigInt product() const;
};

struct FactorOptions {
  std::uint64_t trial_limit = 1000000;
  std::uint64_t rho_iterations = 2000000;
};

/// Trial division up to trial_limit, then Pollard-Brent rho. Composite parts
/// that resist rho within the iteration budget are left in the cofactor.
/// Factoring 0 throws InvalidInput.
FactoredInteger factorize(const BigInt& x, const FactorOptions& options = {});

/// F_{p^nu} = (Z/p)[x] / (f) for a monic irreducible f of degree nu.
/// Elements are integers in [0, p^nu) whose base-p digits are the
/// coefficients of the representing polynomial (low degree first).
class PrimePowerField {
 public:
  using Element = std::uint64_t;

  /// Finds a modulus by deterministic pseudo-random search with an
  /// irreducibility test. Requires p^nu < 2^31.
  PrimePowerField(std::uint64_t p, unsigned nu, std::uint64_t seed = 0x5eed);

  std::uint64_t characteristic() const { return p_; }
  unsigned degree() const { return nu_; }
  std::uint64_t order() const { return q_; }
  /// Coefficients of the monic modulus, low degree first, length nu + 1.
  const std::vector<std::uint64_t>& modulus() const { return modulus_; }

  Element from_integer(const BigInt& z) const;
  Element add(Element a, Element b) const;
  Element mul(Element a, Element b) const;
  Element scale(Element a, std::uint64_t c) const;
  Element pow(Element a, std::uint64_t e) const;
  Element inv(Element a) const;

  /// A generator of the multiplicative group.
  Element generator() const { return generator_; }

 private:
  std::vector<std::uint64_t> digits(Element a) const;
  Element pack(const std::vector<std::uint64_t>& d) const;

  std::uint64_t p_;
  unsigned nu_;
  std::uint64_t q_;
  std::vector<std::uint64_t> modulus_;
  Element generator_ = 1;
};

/// Irreducibility over Z/p of a monic polynomial (coefficients low first):
/// gcd(x^{p^i} - x, f) = 1 for all i <= deg/2.
bool is_irreducible_mod_p(const std::vector<std::uint64_t>& f, std::uint64_t p);

struct PointCountOptions {
  /// Upper bound on (p^nu - 1)^n.
  double enumeration_cap = 1e8;
};

/// #{ xi in (F_{p^nu}^*)^n : W(xi) = z }, with W in lattice coordinates.
std::uint64_t count_points(const LaurentPoly& w, const BigInt& z, std::uint64_t p, unsigned nu,
                           const PointCountOptions& options = {});
std::uint64_t count_points(const WeightedPointSet& ps, const BigInt& z, std::uint64_t p, unsigned nu,
                           const PointCountOptions& options = {});

struct ValuationCheck {
  Valuation lhs;  ///< v_p(B_{p^nu - 1}(z))
  std::uint64_t rhs = 0;  ///< point count
  bool holds = false;
};

ValuationCheck valuation_inequality_check(const WeightedPointSet& ps, const BigInt& z,
                                          std::uint64_t p, unsigned nu,
                                          const SpecPolyOptions& spec_options = {},
                                          const PointCountOptions& count_options = {});

/// Same check with B_{p^nu - 1} already computed.
ValuationCheck valuation_inequality_check(const IntPolynomial& b, const LaurentPoly& w,
                                          const BigInt& z, std::uint64_t p, unsigned nu,
                                          const PointCountOptions& count_options = {});

}  // namespace speclat
