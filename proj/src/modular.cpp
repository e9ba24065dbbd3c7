#include "speclat/modular.hpp"

#include "speclat/errors.hpp"

namespace speclat {

std::uint64_t PrimeModulus::reduce(const BigInt& x) const {
  BigInt r = x % p_;
  if (r < 0) r += p_;
  return static_cast<std::uint64_t>(r);
}

std::uint64_t PrimeModulus::pow(std::uint64_t a, std::uint64_t e) const {
  std::uint64_t result = 1 % p_;
  a %= p_;
  while (e > 0) {
    if (e & 1u) result = mul(result, a);
    a = mul(a, a);
    e >>= 1u;
  }
  return result;
}

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t small : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % small == 0) return n == small;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1u) == 0) {
    d >>= 1u;
    ++s;
  }
  const PrimeModulus mod(n);
  // These bases are a proven witness set for all n < 2^64.
  for (std::uint64_t a : {2ull, 325ull, 9375ull, 28178ull, 450775ull, 9780504ull, 1795265022ull}) {
    std::uint64_t x = mod.pow(a % n, d);
    if (a % n == 0 || x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mod.mul(x, x);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<std::uint64_t> crt_primes(std::size_t count) {
  std::vector<std::uint64_t> primes;
  primes.reserve(count);
  std::uint64_t candidate = (std::uint64_t{1} << 62) - 1;
  while (primes.size() < count) {
    if (is_prime_u64(candidate)) primes.push_back(candidate);
    candidate -= 2;
  }
  return primes;
}

std::vector<std::uint64_t> charpoly_mod(const Matrix<std::int64_t>& input, const PrimeModulus& mod) {
  const auto n = input.rows();
  if (n != input.cols()) throw InvalidInput("characteristic polynomial of a non-square matrix");
  Matrix<std::uint64_t> h(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) h(i, j) = mod.reduce(input(i, j));

  // Similarity transforms to upper Hessenberg form.
  for (Eigen::Index j = 0; j + 2 < n; ++j) {
    Eigen::Index pivot = j + 1;
    while (pivot < n && h(pivot, j) == 0) ++pivot;
    if (pivot == n) continue;
    if (pivot != j + 1) {
      h.row(pivot).swap(h.row(j + 1));
      h.col(pivot).swap(h.col(j + 1));
    }
    const std::uint64_t inv = mod.inv(h(j + 1, j));
    for (Eigen::Index r = j + 2; r < n; ++r) {
      if (h(r, j) == 0) continue;
      const std::uint64_t u = mod.mul(h(r, j), inv);
      // row_r -= u * row_{j+1}
      for (Eigen::Index c = 0; c < n; ++c) h(r, c) = mod.sub(h(r, c), mod.mul(u, h(j + 1, c)));
      // col_{j+1} += u * col_r
      for (Eigen::Index c = 0; c < n; ++c) h(c, j + 1) = mod.add(h(c, j + 1), mod.mul(u, h(c, r)));
    }
  }

  // p_m(z) = (z - h_{m-1,m-1}) p_{m-1}(z)
  //          - sum_{i=1}^{m-1} h_{m-1-i,m-1} (prod_{k=m-i}^{m-1} h_{k,k-1}) p_{m-1-i}(z)
  std::vector<std::vector<std::uint64_t>> p(static_cast<std::size_t>(n) + 1);
  p[0] = {1 % mod.value()};
  for (Eigen::Index m = 1; m <= n; ++m) {
    std::vector<std::uint64_t> next(static_cast<std::size_t>(m) + 1, 0);
    const auto& prev = p[m - 1];
    const std::uint64_t diag = h(m - 1, m - 1);
    for (std::size_t d = 0; d < prev.size(); ++d) {
      next[d + 1] = mod.add(next[d + 1], prev[d]);
      next[d] = mod.sub(next[d], mod.mul(diag, prev[d]));
    }
    std::uint64_t sub_product = 1;
    for (Eigen::Index i = 1; i < m; ++i) {
      sub_product = mod.mul(sub_product, h(m - i, m - i - 1));
      if (sub_product == 0) break;
      const std::uint64_t f = mod.mul(h(m - 1 - i, m - 1), sub_product);
      if (f == 0) continue;
      const auto& q = p[m - 1 - i];
      for (std::size_t d = 0; d < q.size(); ++d) next[d] = mod.sub(next[d], mod.mul(f, q[d]));
    }
    p[m] = std::move(next);
  }
  return p[n];
}

BigInt crt_symmetric(std::span<const std::uint64_t> residues, std::span<const std::uint64_t> primes) {
  if (residues.size() != primes.size() || primes.empty())
    throw InvalidInput("CRT needs one residue per prime");
  // Garner-style incremental combination.
  BigInt value = residues[0];
  BigInt modulus = primes[0];
  for (std::size_t i = 1; i < primes.size(); ++i) {
    const PrimeModulus mod(primes[i]);
    const std::uint64_t current = mod.reduce(value);
    const std::uint64_t diff = mod.sub(residues[i] % primes[i], current);
    const std::uint64_t t = mod.mul(diff, mod.inv(mod.reduce(modulus)));
    value += modulus * t;
    modulus *= primes[i];
  }
  if (2 * value > modulus) value -= modulus;
  return value;
}

}  // namespace speclat
