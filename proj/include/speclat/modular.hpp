#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "speclat/types.hpp"

namespace speclat {

/// Arithmetic in Z/p for a word-sized prime p < 2^63.
class PrimeModulus {
 public:
  explicit PrimeModulus(std::uint64_t p) : p_(p) {}

  std::uint64_t value() const { return p_; }
  std::uint64_t reduce(std::int64_t x) const {
    const auto r = x % static_cast<std::int64_t>(p_);
    return static_cast<std::uint64_t>(r < 0 ? r + static_cast<std::int64_t>(p_) : r);
  }
  std::uint64_t reduce(const BigInt& x) const;
  std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
    const std::uint64_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return a >= b ? a - b : a + p_ - b; }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p_);
  }
  std::uint64_t pow(std::uint64_t a, std::uint64_t e) const;
  /// Inverse of a nonzero residue (Fermat).
  std::uint64_t inv(std::uint64_t a) const { return pow(a, p_ - 2); }

 private:
  std::uint64_t p_;
};

/// Deterministic Miller-Rabin for 64-bit integers.
bool is_prime_u64(std::uint64_t n);

/// The `count` largest primes below 2^62, in decreasing order.
std::vector<std::uint64_t> crt_primes(std::size_t count);

/// Characteristic polynomial det(zI - M) over Z/p, coefficients low degree
/// first, via reduction to upper Hessenberg form. M is reduced mod p first.
std::vector<std::uint64_t> charpoly_mod(const Matrix<std::int64_t>& m, const PrimeModulus& mod);

/// Chinese remaindering of residues r_i mod p_i into the symmetric range
/// (-P/2, P/2], P = prod p_i.
BigInt crt_symmetric(std::span<const std::uint64_t> residues, std::span<const std::uint64_t> primes);

}  // namespace speclat
