#include "speclat/series.hpp"

#include <algorithm>

#include "speclat/errors.hpp"

namespace speclat {

PowerSeries operator+(const PowerSeries& f, const PowerSeries& g) {
  PowerSeries out(std::min(f.order(), g.order()));
  for (std::size_t i = 0; i < out.order(); ++i) out[i] = f[i] + g[i];
  return out;
}

PowerSeries operator-(const PowerSeries& f, const PowerSeries& g) {
  PowerSeries out(std::min(f.order(), g.order()));
  for (std::size_t i = 0; i < out.order(); ++i) out[i] = f[i] - g[i];
  return out;
}

PowerSeries operator*(const PowerSeries& f, const PowerSeries& g) {
  PowerSeries out(std::min(f.order(), g.order()));
  for (std::size_t i = 0; i < out.order(); ++i) {
    if (f[i] == 0) continue;
    for (std::size_t j = 0; i + j < out.order(); ++j) out[i + j] += f[i] * g[j];
  }
  return out;
}

PowerSeries operator*(const BigRational& s, const PowerSeries& f) {
  PowerSeries out(f.order());
  for (std::size_t i = 0; i < f.order(); ++i) out[i] = s * f[i];
  return out;
}

PowerSeries inverse(const PowerSeries& f) {
  if (f.order() == 0) return f;
  if (f[0] == 0) throw InvalidInput("series inverse needs a nonzero constant term");
  PowerSeries out(f.order());
  const BigRational inv0 = 1 / f[0];
  out[0] = inv0;
  for (std::size_t n = 1; n < f.order(); ++n) {
    BigRational acc = 0;
    for (std::size_t k = 1; k <= n; ++k) acc += f[k] * out[n - k];
    out[n] = -acc * inv0;
  }
  return out;
}

// With F = exp(G): F' = G' F, hence n F_n = sum_{k=1}^{n} k G_k F_{n-k}.
PowerSeries exp(const PowerSeries& f) {
  if (f.order() == 0) return f;
  if (f[0] != 0) throw InvalidInput("series exp needs a zero constant term");
  PowerSeries out(f.order());
  out[0] = 1;
  for (std::size_t n = 1; n < f.order(); ++n) {
    BigRational acc = 0;
    for (std::size_t k = 1; k <= n; ++k)
      if (f[k] != 0) acc += BigRational(static_cast<long>(k)) * f[k] * out[n - k];
    out[n] = acc / static_cast<long>(n);
  }
  return out;
}

// With G = log F and F_0 = 1: n F_n = sum_{k=1}^{n} k G_k F_{n-k}, solved for G_n.
PowerSeries log(const PowerSeries& f) {
  if (f.order() == 0) return f;
  if (f[0] != 1) throw InvalidInput("series log needs constant term 1");
  PowerSeries out(f.order());
  for (std::size_t n = 1; n < f.order(); ++n) {
    BigRational acc = BigRational(static_cast<long>(n)) * f[n];
    for (std::size_t k = 1; k < n; ++k)
      if (out[k] != 0) acc -= BigRational(static_cast<long>(k)) * out[k] * f[n - k];
    out[n] = acc / static_cast<long>(n);
  }
  return out;
}

PowerSeries pow(const PowerSeries& f, const BigRational& alpha) { return exp(alpha * log(f)); }

BigRational evaluate(const PowerSeries& f, const BigRational& x) {
  BigRational acc = 0;
  for (std::size_t i = f.order(); i-- > 0;) acc = acc * x + f[i];
  return acc;
}

}  // namespace speclat
