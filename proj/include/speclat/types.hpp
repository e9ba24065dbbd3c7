#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>

namespace speclat {

// Expression templates are disabled so that BigInt behaves like a plain value
// type inside Eigen expressions and std containers.
using BigInt = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                             boost::multiprecision::et_off>;
using BigRational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                                  boost::multiprecision::et_off>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using IntMatrix = Matrix<BigInt>;
using IntVector = Vector<BigInt>;

/// Exponent vector of a Laurent monomial, in lattice coordinates.
using Exponent = std::vector<std::int64_t>;

/// Element of (Z/N)^n, each entry in [0, N).
using Residue = std::vector<std::int64_t>;

inline std::int64_t floor_mod(std::int64_t x, std::int64_t m) {
  const std::int64_t r = x % m;
  return r < 0 ? r + m : r;
}

inline BigInt floor_mod(const BigInt& x, const BigInt& m) {
  BigInt r = x % m;
  if (r < 0) r += m;
  return r;
}

std::int64_t to_int64(const BigInt& x);

inline std::string to_decimal(const BigInt& x) { return x.str(); }

}  // namespace speclat
