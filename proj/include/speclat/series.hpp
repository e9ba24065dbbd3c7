#pragma once

#include <cstddef>
#include <vector>

#include "speclat/types.hpp"

namespace speclat {

/// Truncated formal power series sum_{i < order} c_i t^i over Q.
class PowerSeries {
 public:
  explicit PowerSeries(std::size_t order) : coeffs_(order) {}
  explicit PowerSeries(std::vector<BigRational> coeffs) : coeffs_(std::move(coeffs)) {}

  std::size_t order() const { return coeffs_.size(); }
  const BigRational& operator[](std::size_t i) const { return coeffs_[i]; }
  BigRational& operator[](std::size_t i) { return coeffs_[i]; }
  const std::vector<BigRational>& coefficients() const { return coeffs_; }

  friend bool operator==(const PowerSeries&, const PowerSeries&) = default;

 private:
  std::vector<BigRational> coeffs_;
};

PowerSeries operator+(const PowerSeries& f, const PowerSeries& g);
PowerSeries operator-(const PowerSeries& f, const PowerSeries& g);
PowerSeries operator*(const PowerSeries& f, const PowerSeries& g);
PowerSeries operator*(const BigRational& s, const PowerSeries& f);

/// 1/f; requires f[0] != 0.
PowerSeries inverse(const PowerSeries& f);
/// exp(f); requires f[0] == 0.
PowerSeries exp(const PowerSeries& f);
/// log(f); requires f[0] == 1.
PowerSeries log(const PowerSeries& f);
/// f^alpha = exp(alpha log f); requires f[0] == 1.
PowerSeries pow(const PowerSeries& f, const BigRational& alpha);

/// Sum of c_i x^i evaluated exactly.
BigRational evaluate(const PowerSeries& f, const BigRational& x);

}  // namespace speclat
