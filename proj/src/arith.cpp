#include "speclat/arith.hpp"

#include <cmath>
#include <random>

#include "speclat/errors.hpp"

namespace speclat {

std::ostream& operator<<(std::ostream& os, const Valuation& v) {
  if (v.infinite) return os << "inf";
  return os << v.value;
}

Valuation vp(const BigInt& x, std::uint64_t p) {
  if (p < 2) throw InvalidInput("valuation needs a prime p >= 2");
  if (x == 0) return {true, 0};
  BigInt rest;
  const BigInt prime(p);
  const auto count = mpz_remove(rest.backend().data(), x.backend().data(), prime.backend().data());
  return {false, static_cast<std::uint64_t>(count)};
}

bool is_probable_prime(const BigInt& n) {
  if (n < 2) return false;
  return mpz_probab_prime_p(n.backend().data(), 40) > 0;
}

BigInt FactoredInteger::product() const {
  BigInt r = cofactor;
  for (const auto& [prime, e] : factors)
    for (unsigned i = 0; i < e; ++i) r *= prime;
  return sign * r;
}

namespace {

BigInt gcd_big(const BigInt& a, const BigInt& b) {
  BigInt g;
  mpz_gcd(g.backend().data(), a.backend().data(), b.backend().data());
  return g;
}

// Pollard-Brent; returns a nontrivial factor of composite n or 0.
BigInt pollard_brent(const BigInt& n, std::uint64_t budget) {
  if (n % 2 == 0) return 2;
  for (std::uint64_t c = 1; c < 20; ++c) {
    BigInt y = 2, x, ys, q = 1, g = 1;
    std::uint64_t r = 1, spent = 0;
    const std::uint64_t batch = 128;
    auto f = [&](const BigInt& v) { return (v * v + c) % n; };
    while (g == 1 && spent < budget) {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = f(y);
      std::uint64_t k = 0;
      while (k < r && g == 1) {
        ys = y;
        for (std::uint64_t i = 0; i < std::min(batch, r - k); ++i) {
          y = f(y);
          q = q * abs(x - y) % n;
        }
        g = gcd_big(q, n);
        k += batch;
        spent += batch;
      }
      r *= 2;
    }
    if (g == n) {
      // Backtrack one step at a time.
      do {
        ys = f(ys);
        g = gcd_big(abs(x - ys), n);
      } while (g == 1);
    }
    if (g != 1 && g != n) return g;
  }
  return 0;
}

void split(const BigInt& n, const FactorOptions& options, FactoredInteger& out) {
  if (n == 1) return;
  if (is_probable_prime(n)) {
    ++out.factors[n];
    return;
  }
  const BigInt d = pollard_brent(n, options.rho_iterations);
  if (d == 0) {
    out.cofactor *= n;
    return;
  }
  split(d, options, out);
  split(n / d, options, out);
}

}  // namespace

FactoredInteger factorize(const BigInt& x, const FactorOptions& options) {
  if (x == 0) throw InvalidInput("cannot factor 0");
  FactoredInteger out;
  out.sign = x < 0 ? -1 : 1;
  BigInt n = abs(x);
  for (std::uint64_t d = 2; d <= options.trial_limit; d += (d == 2 ? 1 : 2)) {
    if (BigInt(d) * d > n) break;
    if (n % d != 0) continue;
    unsigned e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    out.factors[BigInt(d)] = e;
  }
  split(n, options, out);
  return out;
}

namespace {

using Poly = std::vector<std::uint64_t>;

void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) {
  std::uint64_t r = 1, e = p - 2;
  a %= p;
  while (e) {
    if (e & 1u) r = r * a % p;
    a = a * a % p;
    e >>= 1u;
  }
  return r;
}

Poly poly_mod(Poly a, const Poly& m, std::uint64_t p) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  const std::uint64_t lead_inv = inv_mod(m.back(), p);
  while (a.size() > dm) {
    const std::uint64_t f = a.back() * lead_inv % p;
    const std::size_t shift = a.size() - 1 - dm;
    for (std::size_t j = 0; j <= dm; ++j) a[shift + j] = (a[shift + j] + p - f * m[j] % p) % p;
    trim(a);
  }
  return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = (out[i + j] + a[i] * b[j]) % p;
  return poly_mod(std::move(out), m, p);
}

Poly poly_gcd(Poly a, Poly b, std::uint64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

Poly poly_powmod(Poly base, std::uint64_t e, const Poly& m, std::uint64_t p) {
  Poly result = {1};
  base = poly_mod(base, m, p);
  while (e) {
    if (e & 1u) result = poly_mulmod(result, base, m, p);
    base = poly_mulmod(base, base, m, p);
    e >>= 1u;
  }
  return result;
}

std::vector<std::uint64_t> prime_factors_u64(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d) continue;
    out.push_back(d);
    while (n % d == 0) n /= d;
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

bool is_irreducible_mod_p(const std::vector<std::uint64_t>& f, std::uint64_t p) {
  Poly m = f;
  trim(m);
  if (m.size() < 2) return false;
  const std::size_t deg = m.size() - 1;
  if (deg == 1) return true;
  const Poly x = {0, 1};
  Poly xp = x;
  for (std::size_t i = 1; i <= deg / 2; ++i) {
    xp = poly_powmod(xp, p, m, p);
    Poly diff = xp;
    diff.resize(std::max<std::size_t>(diff.size(), 2), 0);
    diff[1] = (diff[1] + p - 1) % p;
    const Poly g = poly_gcd(m, diff, p);
    if (g.size() != 1) return false;
  }
  return true;
}

PrimePowerField::PrimePowerField(std::uint64_t p, unsigned nu, std::uint64_t seed) : p_(p), nu_(nu) {
  if (p < 2 || !is_probable_prime(BigInt(p))) throw InvalidInput("field characteristic must be prime");
  if (nu < 1) throw InvalidInput("field degree must be positive");
  q_ = 1;
  for (unsigned i = 0; i < nu; ++i) {
    q_ *= p;
    if (q_ >= (std::uint64_t{1} << 31)) throw SizeLimit("p^nu must be below 2^31");
  }
  if (nu == 1) {
    modulus_ = {0, 1};
  } else {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::uint64_t> coeff(0, p - 1);
    do {
      modulus_.assign(nu + 1, 0);
      for (unsigned i = 0; i < nu; ++i) modulus_[i] = coeff(rng);
      modulus_[nu] = 1;
    } while (!is_irreducible_mod_p(modulus_, p));
  }
  const auto factors = prime_factors_u64(q_ - 1);
  for (Element g = 1; g < q_; ++g) {
    bool primitive = true;
    for (auto l : factors)
      if (pow(g, (q_ - 1) / l) == 1) {
        primitive = false;
        break;
      }
    if (primitive) {
      generator_ = g;
      break;
    }
  }
}

std::vector<std::uint64_t> PrimePowerField::digits(Element a) const {
  std::vector<std::uint64_t> d(nu_);
  for (unsigned i = 0; i < nu_; ++i) {
    d[i] = a % p_;
    a /= p_;
  }
  return d;
}

PrimePowerField::Element PrimePowerField::pack(const std::vector<std::uint64_t>& d) const {
  Element a = 0;
  for (std::size_t i = d.size(); i-- > 0;) a = a * p_ + d[i];
  return a;
}

PrimePowerField::Element PrimePowerField::from_integer(const BigInt& z) const {
  return static_cast<Element>(static_cast<std::uint64_t>(floor_mod(z, BigInt(p_))));
}

PrimePowerField::Element PrimePowerField::add(Element a, Element b) const {
  if (nu_ == 1) return (a + b) % p_;
  Element out = 0, scale_p = 1;
  for (unsigned i = 0; i < nu_; ++i) {
    out += ((a % p_ + b % p_) % p_) * scale_p;
    a /= p_;
    b /= p_;
    scale_p *= p_;
  }
  return out;
}

PrimePowerField::Element PrimePowerField::scale(Element a, std::uint64_t c) const {
  c %= p_;
  if (nu_ == 1) return a * c % p_;
  auto d = digits(a);
  for (auto& x : d) x = x * c % p_;
  return pack(d);
}

PrimePowerField::Element PrimePowerField::mul(Element a, Element b) const {
  if (nu_ == 1) return a * b % p_;
  Poly pa = digits(a), pb = digits(b);
  trim(pa);
  trim(pb);
  Poly r = poly_mulmod(pa, pb, modulus_, p_);
  r.resize(nu_, 0);
  return pack(r);
}

PrimePowerField::Element PrimePowerField::pow(Element a, std::uint64_t e) const {
  Element r = 1;
  while (e) {
    if (e & 1u) r = mul(r, a);
    a = mul(a, a);
    e >>= 1u;
  }
  return r;
}

PrimePowerField::Element PrimePowerField::inv(Element a) const {
  if (a == 0) throw InvalidInput("zero has no inverse");
  return pow(a, q_ - 2);
}

std::uint64_t count_points(const LaurentPoly& w, const BigInt& z, std::uint64_t p, unsigned nu,
                           const PointCountOptions& options) {
  const PrimePowerField field(p, nu);
  const std::uint64_t group = field.order() - 1;
  const int n = w.dimension();
  if (std::pow(static_cast<double>(group), n) > options.enumeration_cap)
    throw ExplosionGuard("(p^nu - 1)^n exceeds the point-count cap");

  // xi_j = g^{e_j}; a monomial x^lambda takes the value g^{<lambda, e>}.
  std::vector<PrimePowerField::Element> antilog(group);
  PrimePowerField::Element acc = 1;
  for (std::uint64_t e = 0; e < group; ++e) {
    antilog[e] = acc;
    acc = field.mul(acc, field.generator());
  }
  struct Term {
    std::vector<std::uint64_t> exponent;  // reduced mod (q - 1)
    std::vector<PrimePowerField::Element> table;  // c * g^e
  };
  std::vector<Term> terms;
  for (const auto& [e, c] : w.terms()) {
    Term t;
    for (auto x : e) t.exponent.push_back(static_cast<std::uint64_t>(floor_mod(x, static_cast<std::int64_t>(group))));
    const auto cmod = static_cast<std::uint64_t>(floor_mod(c, BigInt(p)));
    t.table.resize(group);
    for (std::uint64_t k = 0; k < group; ++k) t.table[k] = field.scale(antilog[k], cmod);
    terms.push_back(std::move(t));
  }
  const PrimePowerField::Element target = field.from_integer(z);

  std::vector<std::uint64_t> e(static_cast<std::size_t>(n), 0);
  std::uint64_t count = 0;
  for (;;) {
    PrimePowerField::Element value = 0;
    for (const auto& t : terms) {
      std::uint64_t phase = 0;
      for (int j = 0; j < n; ++j) phase = (phase + t.exponent[j] * e[j]) % group;
      value = field.add(value, t.table[phase]);
    }
    if (value == target) ++count;
    int j = n - 1;
    while (j >= 0 && ++e[j] == group) e[j--] = 0;
    if (j < 0) break;
  }
  return count;
}

std::uint64_t count_points(const WeightedPointSet& ps, const BigInt& z, std::uint64_t p, unsigned nu,
                           const PointCountOptions& options) {
  return count_points(build_W(ps, difference_lattice(ps)), z, p, nu, options);
}

ValuationCheck valuation_inequality_check(const IntPolynomial& b, const LaurentPoly& w,
                                          const BigInt& z, std::uint64_t p, unsigned nu,
                                          const PointCountOptions& count_options) {
  ValuationCheck check;
  check.lhs = vp(evaluate_at_integer(b, z), p);
  check.rhs = count_points(w, z, p, nu, count_options);
  check.holds = check.lhs.infinite || check.lhs.value >= check.rhs;
  return check;
}

ValuationCheck valuation_inequality_check(const WeightedPointSet& ps, const BigInt& z,
                                          std::uint64_t p, unsigned nu,
                                          const SpecPolyOptions& spec_options,
                                          const PointCountOptions& count_options) {
  const LaurentPoly w = build_W(ps, difference_lattice(ps));
  std::int64_t modulus = 1;
  for (unsigned i = 0; i < nu; ++i) modulus *= static_cast<std::int64_t>(p);
  const IntPolynomial b = bn_polynomial(w, modulus - 1, spec_options);
  return valuation_inequality_check(b, w, z, p, nu, count_options);
}

}  // namespace speclat
