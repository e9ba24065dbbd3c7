#include "speclat/lattice.hpp"

#include <algorithm>
#include <limits>
#include <utility>

#include "speclat/errors.hpp"

namespace speclat {

std::int64_t to_int64(const BigInt& x) {
  if (x > std::numeric_limits<std::int64_t>::max() || x < std::numeric_limits<std::int64_t>::min())
    throw InvalidInput("integer " + x.str() + " does not fit in 64 bits");
  return static_cast<std::int64_t>(x);
}

WeightedPointSet::WeightedPointSet(int dimension, std::vector<WeightedPoint> points)
    : dimension_(dimension), points_(std::move(points)) {
  if (dimension_ < 1) throw InvalidInput("dimension must be positive");
  if (points_.size() < 2) throw InvalidInput("point set needs at least two points");
  for (const auto& p : points_) {
    if (p.a.size() != dimension_)
      throw InvalidInput("point has dimension " + std::to_string(p.a.size()) + ", expected " +
                         std::to_string(dimension_));
    if (p.c < 1) throw InvalidInput("weights must be positive integers");
    total_weight_ += p.c;
  }
  for (std::size_t i = 0; i < points_.size(); ++i)
    for (std::size_t j = i + 1; j < points_.size(); ++j)
      if (points_[i].a == points_[j].a) throw InvalidInput("points must be pairwise distinct");
}

IntMatrix WeightedPointSet::differences() const {
  const auto m = static_cast<Eigen::Index>(points_.size());
  IntMatrix d(m * m, dimension_);
  Eigen::Index row = 0;
  for (const auto& p : points_)
    for (const auto& q : points_) d.row(row++) = (p.a - q.a).transpose();
  return d;
}

namespace {

// Centred residue of x modulo d > 0, in (-d/2, d/2].
BigInt centred_mod(const BigInt& x, const BigInt& d) {
  BigInt r = floor_mod(x, d);
  if (2 * r > d) r -= d;
  return r;
}

Vector<BigRational> solve_rational(const IntMatrix& a, const IntVector& b) {
  // Solves a * x = b for square invertible a by Gauss-Jordan elimination.
  const auto n = a.rows();
  Matrix<BigRational> m(n, n + 1);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = BigRational(a(i, j));
    m(i, n) = BigRational(b(i));
  }
  for (Eigen::Index col = 0; col < n; ++col) {
    Eigen::Index pivot = col;
    while (pivot < n && m(pivot, col) == 0) ++pivot;
    if (pivot == n) throw RankDeficient("basis matrix is singular");
    if (pivot != col) m.row(pivot).swap(m.row(col));
    const BigRational inv = 1 / m(col, col);
    for (Eigen::Index j = col; j <= n; ++j) m(col, j) *= inv;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (i == col || m(i, col) == 0) continue;
      const BigRational f = m(i, col);
      for (Eigen::Index j = col; j <= n; ++j) m(i, j) -= f * m(col, j);
    }
  }
  return m.col(n);
}

}  // namespace

BigInt determinant(const IntMatrix& input) {
  const auto n = input.rows();
  if (n != input.cols()) throw InvalidInput("determinant of a non-square matrix");
  if (n == 0) return 1;
  IntMatrix m = input;
  BigInt sign = 1;
  BigInt prev = 1;
  for (Eigen::Index k = 0; k < n - 1; ++k) {
    if (m(k, k) == 0) {
      Eigen::Index swap = k + 1;
      while (swap < n && m(swap, k) == 0) ++swap;
      if (swap == n) return 0;
      m.row(k).swap(m.row(swap));
      sign = -sign;
    }
    for (Eigen::Index i = k + 1; i < n; ++i)
      for (Eigen::Index j = k + 1; j < n; ++j)
        m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

IntMatrix hermite_normal_form(const IntMatrix& generators) {
  const auto cols = generators.cols();
  IntMatrix m = generators;
  const auto rows = m.rows();
  Eigen::Index pivot_row = 0;
  std::vector<Eigen::Index> pivot_cols;

  for (Eigen::Index col = 0; col < cols && pivot_row < rows; ++col) {
    // Euclid on the column: repeatedly move the smallest nonzero entry to the
    // pivot row and reduce the others by it.
    for (;;) {
      Eigen::Index best = -1;
      for (Eigen::Index r = pivot_row; r < rows; ++r)
        if (m(r, col) != 0 && (best < 0 || abs(m(r, col)) < abs(m(best, col)))) best = r;
      if (best < 0) break;
      if (best != pivot_row) m.row(best).swap(m.row(pivot_row));
      bool done = true;
      for (Eigen::Index r = pivot_row + 1; r < rows; ++r) {
        if (m(r, col) == 0) continue;
        const BigInt q = m(r, col) / m(pivot_row, col);
        m.row(r) -= q * m.row(pivot_row);
        if (m(r, col) != 0) done = false;
      }
      if (done) break;
    }
    if (m(pivot_row, col) == 0) continue;
    if (m(pivot_row, col) < 0) m.row(pivot_row) = -m.row(pivot_row);
    pivot_cols.push_back(col);
    ++pivot_row;
  }
  if (static_cast<Eigen::Index>(pivot_cols.size()) < cols)
    throw RankDeficient("difference lattice has rank " + std::to_string(pivot_cols.size()) +
                        " < " + std::to_string(cols));

  IntMatrix h = m.topRows(cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    const BigInt d = h(j, j);
    for (Eigen::Index i = 0; i < j; ++i) {
      const BigInt target = centred_mod(h(i, j), d);
      const BigInt q = (h(i, j) - target) / d;
      if (q != 0) h.row(i) -= q * h.row(j);
    }
  }
  return h;
}

LatticeBasis::LatticeBasis(IntMatrix rows) : rows_(std::move(rows)) {
  if (rows_.rows() != rows_.cols() || rows_.rows() == 0)
    throw InvalidInput("lattice basis must be a non-empty square matrix");
  index_ = abs(determinant(rows_));
  if (index_ == 0) throw RankDeficient("lattice basis is singular");
}

bool LatticeBasis::is_hermite_normal_form() const {
  const auto n = rows_.rows();
  for (Eigen::Index i = 0; i < n; ++i) {
    if (rows_(i, i) <= 0) return false;
    for (Eigen::Index j = 0; j < i; ++j)
      if (rows_(i, j) != 0) return false;
    for (Eigen::Index k = 0; k < i; ++k)
      if (centred_mod(rows_(k, i), rows_(i, i)) != rows_(k, i)) return false;
  }
  return true;
}

LatticeBasis difference_lattice(const WeightedPointSet& ps) {
  return LatticeBasis(hermite_normal_form(ps.differences()));
}

LatticeBasis lattice_with_basis(const WeightedPointSet& ps, const IntMatrix& rows) {
  if (rows.rows() != ps.dimension() || rows.cols() != ps.dimension())
    throw InvalidInput("basis must be an n x n matrix");
  LatticeBasis candidate(rows);
  if (hermite_normal_form(rows) != difference_lattice(ps).rows())
    throw InvalidInput("basis does not span the difference lattice");
  return candidate;
}

std::optional<IntVector> try_lattice_coords(const IntVector& v, const LatticeBasis& basis) {
  if (v.size() != basis.dimension()) throw InvalidInput("vector dimension mismatch");
  // lambda * B = v  <=>  B^T lambda^T = v^T
  const IntMatrix bt = basis.rows().transpose();
  const Vector<BigRational> x = solve_rational(bt, v);
  IntVector out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (denominator(x(i)) != 1) return std::nullopt;
    out(i) = numerator(x(i));
  }
  return out;
}

IntVector to_lattice_coords(const IntVector& v, const LatticeBasis& basis) {
  auto coords = try_lattice_coords(v, basis);
  if (!coords) throw NotInLattice("vector is not in the lattice");
  return *coords;
}

bool disjointness_check(const WeightedPointSet& ps, const LatticeBasis& basis) {
  return std::none_of(ps.points().begin(), ps.points().end(), [&](const WeightedPoint& p) {
    return try_lattice_coords(p.a, basis).has_value();
  });
}

ResidueIndex::ResidueIndex(int dimension, std::int64_t modulus)
    : dimension_(dimension), modulus_(modulus), size_(1) {
  if (dimension < 1) throw InvalidInput("dimension must be positive");
  if (modulus < 1) throw InvalidInput("modulus N must be positive");
  for (int i = 0; i < dimension; ++i) {
    if (size_ > std::numeric_limits<std::size_t>::max() / static_cast<std::size_t>(modulus))
      throw SizeLimit("N^n overflows");
    size_ *= static_cast<std::size_t>(modulus);
  }
}

std::size_t ResidueIndex::index_of(const Residue& r) const {
  std::size_t idx = 0;
  for (int i = 0; i < dimension_; ++i) idx = idx * modulus_ + static_cast<std::size_t>(r[i]);
  return idx;
}

std::size_t ResidueIndex::index_of_exponent(const Exponent& e) const {
  std::size_t idx = 0;
  for (int i = 0; i < dimension_; ++i)
    idx = idx * modulus_ + static_cast<std::size_t>(floor_mod(e[i], modulus_));
  return idx;
}

Residue ResidueIndex::residue(std::size_t index) const {
  Residue r(dimension_);
  for (int i = dimension_ - 1; i >= 0; --i) {
    r[i] = static_cast<std::int64_t>(index % modulus_);
    index /= modulus_;
  }
  return r;
}

std::vector<Residue> quotient_enumeration(const LatticeBasis& basis, std::int64_t modulus) {
  const ResidueIndex index(basis.dimension(), modulus);
  std::vector<Residue> out;
  out.reserve(index.size());
  for (std::size_t i = 0; i < index.size(); ++i) out.push_back(index.residue(i));
  return out;
}

}  // namespace speclat
