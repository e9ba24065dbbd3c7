#include "speclat/moments.hpp"

#include <climits>

#include "speclat/errors.hpp"
#include "speclat/examples.hpp"

namespace speclat {

std::int64_t stable_modulus(const LaurentPoly& w, unsigned k) {
  return static_cast<std::int64_t>(k) * w.max_abs_exponent() + 1;
}

MomentSequence moments_N(const LaurentPoly& w, unsigned max_k, std::int64_t modulus) {
  const ResidueIndex index(w.dimension(), modulus);
  const LaurentPoly folded = fold_mod_N(w, modulus);

  struct Shift {
    Residue r;
    BigInt c;
    bool small;
  };
  std::vector<Shift> shifts;
  for (const auto& [e, c] : folded.terms())
    shifts.push_back({e, c, c > 0 && c <= BigInt(ULONG_MAX)});

  // targets[i * T + t] = index of residue(i) + shift t.
  const std::size_t size = index.size();
  const std::size_t nshift = shifts.size();
  std::vector<std::size_t> targets(size * nshift);
  for (std::size_t i = 0; i < size; ++i) {
    const Residue base = index.residue(i);
    Residue r(base.size());
    for (std::size_t t = 0; t < nshift; ++t) {
      for (std::size_t d = 0; d < base.size(); ++d) r[d] = (base[d] + shifts[t].r[d]) % modulus;
      targets[i * nshift + t] = index.index_of(r);
    }
  }

  MomentSequence out;
  out.source = MomentSequence::Source::Folded;
  out.modulus = modulus;
  out.values.reserve(max_k + 1);

  std::vector<BigInt> current(size);
  std::vector<BigInt> next(size);
  current[0] = 1;
  out.values.push_back(current[0]);
  for (unsigned k = 1; k <= max_k; ++k) {
    for (auto& x : next) x = 0;
    for (std::size_t i = 0; i < size; ++i) {
      const BigInt& src = current[i];
      if (src == 0) continue;
      for (std::size_t t = 0; t < nshift; ++t) {
        BigInt& dst = next[targets[i * nshift + t]];
        if (shifts[t].small)
          mpz_addmul_ui(dst.backend().data(), src.backend().data(),
                        static_cast<unsigned long>(shifts[t].c));
        else
          dst += shifts[t].c * src;
      }
    }
    std::swap(current, next);
    out.values.push_back(current[0]);
  }
  return out;
}

namespace {

// Calls f(flat index) for every point of the cube [-r, r]^n inside a dense
// array of side 2R + 1 centred at `centre`.
template <class F>
void for_each_in_box(int dim, std::int64_t r, const std::vector<std::int64_t>& stride, std::int64_t centre, F&& f) {
  std::vector<std::int64_t> x(static_cast<std::size_t>(dim), -r);
  std::int64_t flat = centre;
  for (int d = 0; d < dim; ++d) flat -= r * stride[static_cast<std::size_t>(d)];
  while (true) {
    f(static_cast<std::size_t>(flat));
    int d = dim - 1;
    while (d >= 0 && x[static_cast<std::size_t>(d)] == r) {
      flat -= 2 * r * stride[static_cast<std::size_t>(d)];
      x[static_cast<std::size_t>(d)] = -r;
      --d;
    }
    if (d < 0) return;
    ++x[static_cast<std::size_t>(d)];
    flat += stride[static_cast<std::size_t>(d)];
  }
}

void add_product(BigInt& acc, const BigInt& a, const BigInt& b) {
  mpz_addmul(acc.backend().data(), a.backend().data(), b.backend().data());
}

}  // namespace

// Exact moments from the unfolded powers W^j, j <= ceil(K/2), kept in a
// dense cube that grows with their support. The constant term of
// W^a * W^b is sum_e W^a(e) W^b(-e), and mirroring e -> -e is
// flat -> 2 * centre - flat in the cube.
MomentSequence moments(const LaurentPoly& w, unsigned max_k) {
  MomentSequence out;
  out.source = MomentSequence::Source::ConstantTerm;
  out.values.assign(max_k + 1, 0);
  out.values[0] = 1;
  if (max_k == 0) return out;
  const std::int64_t reach = w.max_abs_exponent();
  if (reach == 0) {
    const BigInt c = constant_term(w);
    for (unsigned k = 1; k <= max_k; ++k) out.values[k] = out.values[k - 1] * c;
    return out;
  }

  const int dim = w.dimension();
  const unsigned half = (max_k + 1) / 2;
  const std::int64_t radius = static_cast<std::int64_t>(half) * reach;
  const std::int64_t side = 2 * radius + 1;
  std::vector<std::int64_t> stride(static_cast<std::size_t>(dim));
  double cells = 1;
  std::int64_t s = 1;
  for (int d = dim - 1; d >= 0; --d) {
    stride[static_cast<std::size_t>(d)] = s;
    s *= side;
    cells *= static_cast<double>(side);
  }
  if (cells > 5e7) throw SizeLimit("exact moments up to k = " + std::to_string(max_k) + " need too large a box");
  std::int64_t centre = 0;
  for (int d = 0; d < dim; ++d) centre += radius * stride[static_cast<std::size_t>(d)];

  struct Shift {
    std::int64_t delta;
    BigInt c;
    bool small;
  };
  std::vector<Shift> shifts;
  for (const auto& [e, c] : w.terms()) {
    std::int64_t delta = 0;
    for (int d = 0; d < dim; ++d) delta += e[static_cast<std::size_t>(d)] * stride[static_cast<std::size_t>(d)];
    shifts.push_back({delta, c, c > 0 && c <= BigInt(ULONG_MAX)});
  }

  std::vector<BigInt> current(static_cast<std::size_t>(s)), next(static_cast<std::size_t>(s));
  current[static_cast<std::size_t>(centre)] = 1;
  const std::size_t mirror = static_cast<std::size_t>(2 * centre);
  for (unsigned j = 0; j < half; ++j) {
    const std::int64_t r0 = static_cast<std::int64_t>(j) * reach;
    const std::int64_t r1 = r0 + reach;
    for_each_in_box(dim, r1, stride, centre, [&](std::size_t i) { next[i] = 0; });
    for_each_in_box(dim, r0, stride, centre, [&](std::size_t i) {
      const BigInt& src = current[i];
      if (src == 0) return;
      for (const auto& t : shifts) {
        BigInt& dst = next[static_cast<std::size_t>(static_cast<std::int64_t>(i) + t.delta)];
        if (t.small)
          mpz_addmul_ui(dst.backend().data(), src.backend().data(), static_cast<unsigned long>(t.c));
        else
          dst += t.c * src;
      }
    });
    BigInt odd = 0, even = 0;
    const bool want_even = 2 * j + 2 <= max_k;
    // W^j vanishes outside radius r0, so the odd sum only needs that cube.
    for_each_in_box(dim, r0, stride, centre, [&](std::size_t i) {
      if (current[i] != 0) add_product(odd, current[i], next[mirror - i]);
    });
    if (want_even)
      for_each_in_box(dim, r1, stride, centre, [&](std::size_t i) {
        if (next[i] != 0) add_product(even, next[i], next[mirror - i]);
      });
    out.values[2 * j + 1] = odd;
    if (want_even) out.values[2 * j + 2] = even;
    std::swap(current, next);
  }
  return out;
}

BigInt moment(const LaurentPoly& w, unsigned k) { return moments(w, k).values.back(); }

BigInt moment_N(const LaurentPoly& w, unsigned k, std::int64_t modulus) {
  return moments_N(w, k, modulus).values.back();
}

namespace {

BigInt ipow(unsigned base, unsigned e) {
  BigInt r = 1;
  for (unsigned i = 0; i < e; ++i) r *= base;
  return r;
}

}  // namespace

bool check_congruence(const MomentSequence& m, unsigned p, unsigned k, unsigned alpha) {
  const BigInt low_index = BigInt(k) * ipow(p, alpha);
  const BigInt high_index = low_index * p;
  if (high_index > m.max_k()) throw InvalidInput("moment sequence too short for congruence check");
  const BigInt modulus = ipow(p, alpha + 1);
  const BigInt diff = m[static_cast<std::size_t>(high_index)] - m[static_cast<std::size_t>(low_index)];
  return diff % modulus == 0;
}

bool check_congruence(const LaurentPoly& w, unsigned p, unsigned k, unsigned alpha) {
  const BigInt high = BigInt(k) * ipow(p, alpha + 1);
  return check_congruence(moments(w, static_cast<unsigned>(high)), p, k, alpha);
}

// n A_n = sum_{k=1}^{n} m_k A_{n-k}
std::vector<BigInt> series_A(const MomentSequence& m) {
  const std::size_t K = m.max_k();
  std::vector<BigInt> a(K + 1);
  a[0] = 1;
  for (std::size_t n = 1; n <= K; ++n) {
    BigInt acc = 0;
    for (std::size_t k = 1; k <= n; ++k) acc += m[k] * a[n - k];
    if (acc % n != 0)
      throw IntegralityViolation("A_" + std::to_string(n) + " is not an integer");
    a[n] = acc / n;
  }
  return a;
}

// Taking logarithms, m_n = sum_{d | n} d b_d.
std::vector<BigInt> product_b(const MomentSequence& m) {
  const std::size_t K = m.max_k();
  std::vector<BigInt> b(K + 1);
  for (std::size_t n = 1; n <= K; ++n) {
    BigInt acc = m[n];
    for (std::size_t d = 1; d < n; ++d)
      if (n % d == 0) acc -= BigInt(d) * b[d];
    if (acc % n != 0)
      throw IntegralityViolation("b_" + std::to_string(n) + " is not an integer");
    b[n] = acc / n;
  }
  return b;
}

LinearRecurrence LinearRecurrence::honeycomb() {
  LinearRecurrence rec;
  rec.terms.push_back({1, {BigInt(1), BigInt(2), BigInt(1)}});
  rec.terms.push_back({0, {BigInt(-3), BigInt(-10), BigInt(-10)}});
  rec.terms.push_back({-1, {BigInt(0), BigInt(0), BigInt(9)}});
  return rec;
}

bool verify_recurrence(const MomentSequence& m, const LinearRecurrence& rec) {
  const long K = static_cast<long>(m.max_k());
  bool checked_any = false;
  for (long k = 0; k <= K; ++k) {
    BigInt acc = 0;
    bool admissible = true;
    for (const auto& term : rec.terms) {
      BigInt coeff = 0;
      for (std::size_t i = term.polynomial.size(); i-- > 0;) coeff = coeff * k + term.polynomial[i];
      const long idx = k + term.shift;
      if (idx < 0 || idx > K) {
        if (coeff != 0) admissible = false;
        continue;
      }
      acc += coeff * m[static_cast<std::size_t>(idx)];
    }
    if (!admissible) continue;
    checked_any = true;
    if (acc != 0) return false;
  }
  return checked_any;
}

bool chebyshev_generating_check(const BigInt& z, unsigned max_n) {
  const WeightedPointSet ps = chebyshev_points();
  const LaurentPoly w = build_W(ps, difference_lattice(ps));
  // (z - 4) T / (1 - T)^2 = (z - 4) sum_n n T^n
  PowerSeries inner(max_n + 1);
  inner[0] = 1;
  for (unsigned n = 1; n <= max_n; ++n) inner[n] = -BigRational(z - 4) * static_cast<long>(n);
  const PowerSeries rhs = BigRational(-1) * log(inner);
  for (unsigned n = 1; n <= max_n; ++n) {
    const BigInt value = evaluate_at_integer(bn_polynomial(w, n), z);
    if (BigRational(value, BigInt(n)) != rhs[n]) return false;
  }
  return true;
}

namespace {

PowerSeries reversed_series(const IntPolynomial& b, unsigned order) {
  if (!b.is_monic()) throw InvalidInput("expansion needs a monic polynomial");
  const auto& c = b.coefficients();
  const std::size_t deg = c.size() - 1;
  PowerSeries s(order + 1);
  for (std::size_t j = 0; j <= order && j <= deg; ++j) s[j] = BigRational(c[deg - j]);
  return s;
}

}  // namespace

std::vector<BigRational> log_bn_expansion(const IntPolynomial& b, unsigned order) {
  return log(reversed_series(b, order)).coefficients();
}

std::vector<BigRational> inverse_root_expansion(const IntPolynomial& b, unsigned order) {
  const BigRational alpha(BigInt(-1), BigInt(b.degree()));
  return pow(reversed_series(b, order), alpha).coefficients();
}

}  // namespace speclat
