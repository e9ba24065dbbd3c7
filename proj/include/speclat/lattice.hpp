#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "speclat/types.hpp"

namespace speclat {

struct WeightedPoint {
  IntVector a;
  std::int64_t c = 1;
};

/// Finite subset of Z^n with positive integer weights.
///
/// Construction validates: n >= 1, at least two points, all points of
/// dimension n and pairwise distinct, all weights >= 1. Throws InvalidInput.
class WeightedPointSet {
 public:
  WeightedPointSet(int dimension, std::vector<WeightedPoint> points);

  int dimension() const { return dimension_; }
  std::size_t size() const { return points_.size(); }
  const std::vector<WeightedPoint>& points() const { return points_; }
  const WeightedPoint& operator[](std::size_t i) const { return points_[i]; }

  /// C, the sum of all weights.
  const BigInt& total_weight() const { return total_weight_; }

  /// Generators a - b for all ordered pairs, as rows.
  IntMatrix differences() const;

 private:
  int dimension_;
  std::vector<WeightedPoint> points_;
  BigInt total_weight_;
};

/// Full-rank sublattice of Z^n given by the rows of an invertible integer
/// matrix.
class LatticeBasis {
 public:
  /// Rows must be linearly independent; throws RankDeficient otherwise.
  explicit LatticeBasis(IntMatrix rows);

  int dimension() const { return static_cast<int>(rows_.rows()); }
  const IntMatrix& rows() const { return rows_; }
  /// |det|, the index of the lattice in Z^n.
  const BigInt& index() const { return index_; }
  /// Upper triangular with positive diagonal and centred above-pivot entries.
  bool is_hermite_normal_form() const;

 private:
  IntMatrix rows_;
  BigInt index_;
};

/// Row-style Hermite normal form of the lattice generated by the rows of
/// `generators`: upper triangular, positive pivots, and every entry above a
/// pivot d reduced into (-d/2, d/2]. Throws RankDeficient if the rank is
/// smaller than the number of columns.
IntMatrix hermite_normal_form(const IntMatrix& generators);

/// Exact determinant by fraction-free elimination.
BigInt determinant(const IntMatrix& m);

/// Lattice spanned by all differences of the point set, in canonical HNF.
LatticeBasis difference_lattice(const WeightedPointSet& ps);

/// Wraps a user-chosen basis after checking that it spans the difference
/// lattice of `ps`. Throws InvalidInput otherwise.
LatticeBasis lattice_with_basis(const WeightedPointSet& ps, const IntMatrix& rows);

/// Coordinates lambda with lambda * rows == v. Throws NotInLattice.
IntVector to_lattice_coords(const IntVector& v, const LatticeBasis& basis);
std::optional<IntVector> try_lattice_coords(const IntVector& v, const LatticeBasis& basis);

/// True iff no point of the set lies in the lattice.
bool disjointness_check(const WeightedPointSet& ps, const LatticeBasis& basis);

/// Lexicographic indexing of (Z/N)^n; the last coordinate varies fastest.
class ResidueIndex {
 public:
  ResidueIndex(int dimension, std::int64_t modulus);

  int dimension() const { return dimension_; }
  std::int64_t modulus() const { return modulus_; }
  std::size_t size() const { return size_; }

  std::size_t index_of(const Residue& r) const;
  /// Reduces an arbitrary exponent and returns its index.
  std::size_t index_of_exponent(const Exponent& e) const;
  Residue residue(std::size_t index) const;

 private:
  int dimension_;
  std::int64_t modulus_;
  std::size_t size_;
};

/// Representatives of Lambda / N Lambda in lattice coordinates, [0,N)^n,
/// lexicographic order. Exactly N^n entries.
std::vector<Residue> quotient_enumeration(const LatticeBasis& basis, std::int64_t modulus);

}  // namespace speclat
