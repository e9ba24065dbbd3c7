#include "speclat/laurent.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "speclat/errors.hpp"

namespace speclat {

namespace {

void check_same_dimension(const LaurentPoly& f, const LaurentPoly& g) {
  if (f.dimension() != g.dimension()) throw InvalidInput("Laurent polynomial dimension mismatch");
}

Exponent add_exponents(const Exponent& a, const Exponent& b) {
  Exponent out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

}  // namespace

LaurentPoly LaurentPoly::constant(int dimension, const BigInt& c) {
  LaurentPoly f(dimension);
  f.add_term(Exponent(dimension, 0), c);
  return f;
}

LaurentPoly LaurentPoly::monomial(const Exponent& e, const BigInt& c) {
  LaurentPoly f(static_cast<int>(e.size()));
  f.add_term(e, c);
  return f;
}

BigInt LaurentPoly::coefficient(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? BigInt(0) : it->second;
}

void LaurentPoly::add_term(const Exponent& e, const BigInt& c) {
  if (static_cast<int>(e.size()) != dimension_) throw InvalidInput("exponent dimension mismatch");
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

BigInt LaurentPoly::coefficient_sum() const {
  BigInt s = 0;
  for (const auto& [e, c] : terms_) s += c;
  return s;
}

bool LaurentPoly::is_palindromic() const {
  for (const auto& [e, c] : terms_) {
    Exponent neg(e.size());
    std::transform(e.begin(), e.end(), neg.begin(), [](std::int64_t x) { return -x; });
    if (coefficient(neg) != c) return false;
  }
  return true;
}

std::int64_t LaurentPoly::max_abs_exponent() const {
  std::int64_t m = 0;
  for (const auto& [e, c] : terms_)
    for (auto x : e) m = std::max(m, x < 0 ? -x : x);
  return m;
}

LaurentPoly operator+(const LaurentPoly& f, const LaurentPoly& g) {
  check_same_dimension(f, g);
  LaurentPoly out = f;
  for (const auto& [e, c] : g.terms()) out.add_term(e, c);
  return out;
}

LaurentPoly build_W(const WeightedPointSet& ps, const LatticeBasis& basis) {
  if (basis.dimension() != ps.dimension()) throw InvalidInput("basis dimension mismatch");
  LaurentPoly w(ps.dimension());
  for (const auto& p : ps.points()) {
    for (const auto& q : ps.points()) {
      const IntVector coords = to_lattice_coords(p.a - q.a, basis);
      Exponent e(coords.size());
      for (Eigen::Index i = 0; i < coords.size(); ++i) e[i] = to_int64(coords(i));
      w.add_term(e, BigInt(p.c) * q.c);
    }
  }
  return w;
}

LaurentPoly multiply(const LaurentPoly& f, const LaurentPoly& g) {
  check_same_dimension(f, g);
  LaurentPoly out(f.dimension());
  for (const auto& [ef, cf] : f.terms())
    for (const auto& [eg, cg] : g.terms()) out.add_term(add_exponents(ef, eg), cf * cg);
  return out;
}

LaurentPoly operator*(const LaurentPoly& f, const LaurentPoly& g) { return multiply(f, g); }

LaurentPoly power(const LaurentPoly& f, unsigned k, std::optional<std::int64_t> modulus) {
  auto reduce = [&](const LaurentPoly& p) { return modulus ? fold_mod_N(p, *modulus) : p; };
  LaurentPoly result = reduce(LaurentPoly::constant(f.dimension(), 1));
  LaurentPoly base = reduce(f);
  while (k > 0) {
    if (k & 1u) result = reduce(result * base);
    k >>= 1u;
    if (k > 0) base = reduce(base * base);
  }
  return result;
}

BigInt constant_term(const LaurentPoly& f) {
  return f.coefficient(Exponent(f.dimension(), 0));
}

LaurentPoly fold_mod_N(const LaurentPoly& f, std::int64_t modulus) {
  if (modulus < 1) throw InvalidInput("modulus N must be positive");
  LaurentPoly out(f.dimension());
  for (const auto& [e, c] : f.terms()) {
    Exponent r(e.size());
    std::transform(e.begin(), e.end(), r.begin(),
                   [&](std::int64_t x) { return floor_mod(x, modulus); });
    out.add_term(r, c);
  }
  return out;
}

std::vector<std::complex<double>> evaluate_on_characters(const LaurentPoly& f,
                                                         std::int64_t modulus) {
  const ResidueIndex index(f.dimension(), modulus);
  std::vector<std::complex<double>> unity(static_cast<std::size_t>(modulus));
  for (std::int64_t j = 0; j < modulus; ++j) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(modulus);
    unity[j] = {std::cos(angle), std::sin(angle)};
  }
  struct Term {
    Exponent e;
    double c;
  };
  std::vector<Term> terms;
  for (const auto& [e, c] : f.terms()) {
    Exponent r(e.size());
    std::transform(e.begin(), e.end(), r.begin(),
                   [&](std::int64_t x) { return floor_mod(x, modulus); });
    terms.push_back({r, static_cast<double>(c)});
  }
  std::vector<std::complex<double>> values(index.size());
  for (std::size_t i = 0; i < index.size(); ++i) {
    const Residue r = index.residue(i);
    std::complex<double> acc = 0.0;
    for (const auto& t : terms) {
      std::int64_t phase = 0;
      for (std::size_t j = 0; j < r.size(); ++j) phase = (phase + r[j] * t.e[j]) % modulus;
      acc += t.c * unity[static_cast<std::size_t>(phase)];
    }
    values[i] = acc;
  }
  return values;
}

std::vector<double> real_values_on_characters(const LaurentPoly& f, std::int64_t modulus) {
  const auto complex_values = evaluate_on_characters(f, modulus);
  std::vector<double> out(complex_values.size());
  std::transform(complex_values.begin(), complex_values.end(), out.begin(),
                 [](const std::complex<double>& v) { return v.real(); });
  return out;
}

double evaluate_on_torus(const LaurentPoly& f, const std::vector<double>& t) {
  double acc = 0.0;
  for (const auto& [e, c] : f.terms()) {
    double dot = 0.0;
    for (std::size_t j = 0; j < e.size(); ++j) dot += t[j] * static_cast<double>(e[j]);
    acc += static_cast<double>(c) * std::cos(2.0 * std::numbers::pi * dot);
  }
  return acc;
}

std::string to_string(const LaurentPoly& f) {
  if (f.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : f.terms()) {
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    first = false;
    const BigInt mag = abs(c);
    const bool is_const = std::all_of(e.begin(), e.end(), [](std::int64_t x) { return x == 0; });
    if (mag != 1 || is_const) os << mag;
    bool need_sep = mag != 1;
    for (std::size_t j = 0; j < e.size(); ++j) {
      if (e[j] == 0) continue;
      if (need_sep) os << "*";
      os << "u" << (j + 1);
      if (e[j] != 1) os << "^" << e[j];
      need_sep = true;
    }
  }
  return os.str();
}

}  // namespace speclat
