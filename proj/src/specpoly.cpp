#include "speclat/specpoly.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numbers>
#include <sstream>
#include <thread>

#include "speclat/errors.hpp"
#include "speclat/modular.hpp"

namespace speclat {

IntPolynomial::IntPolynomial(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs)) {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

IntPolynomial IntPolynomial::from_roots(const std::vector<std::pair<BigInt, unsigned>>& roots) {
  IntPolynomial p({BigInt(1)});
  for (const auto& [r, m] : roots)
    for (unsigned i = 0; i < m; ++i) p = p * IntPolynomial({-r, BigInt(1)});
  return p;
}

IntPolynomial operator*(const IntPolynomial& f, const IntPolynomial& g) {
  if (f.is_zero() || g.is_zero()) return {};
  const auto& a = f.coefficients();
  const auto& b = g.coefficients();
  std::vector<BigInt> out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return IntPolynomial(std::move(out));
}

PolynomialDivision divide_monic(const IntPolynomial& dividend, const IntPolynomial& divisor) {
  if (!divisor.is_monic()) throw InvalidInput("divisor must be monic");
  std::vector<BigInt> rem = dividend.coefficients();
  const auto& d = divisor.coefficients();
  const std::size_t dd = d.size() - 1;
  if (rem.size() < d.size()) return {IntPolynomial{}, dividend};
  std::vector<BigInt> quot(rem.size() - dd);
  for (std::size_t i = rem.size(); i-- > dd;) {
    const BigInt q = rem[i];
    quot[i - dd] = q;
    if (q == 0) continue;
    for (std::size_t j = 0; j <= dd; ++j) rem[i - dd + j] -= q * d[j];
  }
  rem.resize(dd);
  return {IntPolynomial(std::move(quot)), IntPolynomial(std::move(rem))};
}

bool divides(const IntPolynomial& divisor, const IntPolynomial& dividend) {
  return divide_monic(dividend, divisor).remainder.is_zero();
}

BigInt evaluate_at_integer(const IntPolynomial& p, const BigInt& z) {
  BigInt acc = 0;
  const auto& c = p.coefficients();
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * z + c[i];
  return acc;
}

unsigned integer_root_multiplicity(const IntPolynomial& p, const BigInt& r) {
  if (p.is_zero()) return 0;
  unsigned m = 0;
  std::vector<BigInt> c = p.coefficients();
  // Synthetic division by (z - r) while the remainder vanishes.
  while (c.size() > 1) {
    std::vector<BigInt> q(c.size() - 1);
    BigInt carry = 0;
    for (std::size_t i = c.size(); i-- > 0;) {
      carry = carry * r + c[i];
      if (i > 0) q[i - 1] = carry;
    }
    if (carry != 0) break;
    ++m;
    c = std::move(q);
  }
  return m;
}

std::string to_string(const IntPolynomial& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  const auto& c = p.coefficients();
  for (std::size_t i = c.size(); i-- > 0;) {
    if (c[i] == 0) continue;
    const BigInt mag = abs(c[i]);
    if (!first) os << (c[i] < 0 ? " - " : " + ");
    else if (c[i] < 0) os << "-";
    first = false;
    if (mag != 1 || i == 0) os << mag;
    if (i > 0) {
      if (mag != 1) os << "*";
      os << "z";
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

ConvolutionMatrix convolution_matrix(const LaurentPoly& w, std::int64_t modulus,
                                     const SpecPolyOptions& options) {
  const ResidueIndex index(w.dimension(), modulus);
  if (index.size() > options.size_limit)
    throw SizeLimit("N^n = " + std::to_string(index.size()) + " exceeds the exact size limit " +
                    std::to_string(options.size_limit));
  const LaurentPoly folded = fold_mod_N(w, modulus);
  struct Shift {
    Residue r;
    std::int64_t c;
  };
  std::vector<Shift> shifts;
  for (const auto& [e, c] : folded.terms()) shifts.push_back({e, to_int64(c)});

  const auto size = static_cast<Eigen::Index>(index.size());
  Matrix<std::int64_t> m = Matrix<std::int64_t>::Zero(size, size);
  for (Eigen::Index i = 0; i < size; ++i) {
    Residue target = index.residue(static_cast<std::size_t>(i));
    const Residue base = target;
    for (const auto& s : shifts) {
      for (std::size_t d = 0; d < base.size(); ++d) target[d] = (base[d] + s.r[d]) % modulus;
      m(i, static_cast<Eigen::Index>(index.index_of(target))) += s.c;
    }
  }
  return ConvolutionMatrix(modulus, std::move(m));
}

namespace {

BigInt binomial(long n, long k) {
  BigInt b = 1;
  for (long i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return b;
}

}  // namespace

IntPolynomial charpoly_exact(const Matrix<std::int64_t>& m) {
  const auto n = m.rows();
  if (n != m.cols()) throw InvalidInput("characteristic polynomial of a non-square matrix");
  if (n == 0) return IntPolynomial({BigInt(1)});

  BigInt rho = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    BigInt row = 0;
    for (Eigen::Index j = 0; j < n; ++j) row += abs(BigInt(m(i, j)));
    rho = std::max(rho, row);
  }
  BigInt bound = 1;
  BigInt rho_pow = 1;
  for (long j = 1; j <= n; ++j) {
    rho_pow *= rho;
    bound = std::max(bound, binomial(n, j) * rho_pow);
  }
  // Symmetric reconstruction is exact once the product exceeds 2 * bound.
  std::size_t count = 0;
  {
    // Every prime used lies in (2^61, 2^62).
    const BigInt lower = BigInt(1) << 61;
    BigInt product = 1;
    while (product <= 2 * bound) {
      product *= lower;
      ++count;
    }
  }
  const auto primes = crt_primes(count);

  std::vector<std::vector<std::uint64_t>> residues(primes.size());
  const std::size_t workers = std::max<std::size_t>(1, std::thread::hardware_concurrency());
  for (std::size_t start = 0; start < primes.size(); start += workers) {
    std::vector<std::future<std::vector<std::uint64_t>>> jobs;
    for (std::size_t i = start; i < std::min(primes.size(), start + workers); ++i)
      jobs.push_back(std::async(std::launch::async,
                                [&m, p = primes[i]] { return charpoly_mod(m, PrimeModulus(p)); }));
    for (std::size_t i = 0; i < jobs.size(); ++i) residues[start + i] = jobs[i].get();
  }

  std::vector<BigInt> coeffs(static_cast<std::size_t>(n) + 1);
  std::vector<std::uint64_t> column(primes.size());
  for (std::size_t d = 0; d <= static_cast<std::size_t>(n); ++d) {
    for (std::size_t i = 0; i < primes.size(); ++i) column[i] = residues[i][d];
    coeffs[d] = crt_symmetric(column, primes);
  }
  return IntPolynomial(std::move(coeffs));
}

IntPolynomial charpoly_exact(const ConvolutionMatrix& m) { return charpoly_exact(m.entries()); }

IntPolynomial bn_polynomial(const LaurentPoly& w, std::int64_t modulus, const SpecPolyOptions& options) {
  return charpoly_exact(convolution_matrix(w, modulus, options));
}

IntPolynomial bn_polynomial(const WeightedPointSet& ps, std::int64_t modulus,
                            const SpecPolyOptions& options) {
  return bn_polynomial(build_W(ps, difference_lattice(ps)), modulus, options);
}

LogValue bn_value_float(const LaurentPoly& w, std::int64_t modulus, std::complex<double> z) {
  const double scale = std::max(1.0, static_cast<double>(w.coefficient_sum()));
  const auto values = real_values_on_characters(w, modulus);
  double log_mag = 0.0;
  double arg = 0.0;
  for (double v : values) {
    const std::complex<double> factor = z - v;
    const double mag = std::abs(factor);
    if (mag < 1e-12 * scale)
      throw SingularLevel("z lies on the spectrum: |z - W(x)| = " + std::to_string(mag));
    log_mag += std::log(mag);
    arg += std::arg(factor);
  }
  arg = std::remainder(arg, 2.0 * std::numbers::pi);
  if (arg <= -std::numbers::pi) arg += 2.0 * std::numbers::pi;
  return {log_mag, arg};
}

LogValue bn_value_float(const WeightedPointSet& ps, std::int64_t modulus, std::complex<double> z) {
  return bn_value_float(build_W(ps, difference_lattice(ps)), modulus, z);
}

}  // namespace speclat
