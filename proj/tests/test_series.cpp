#include <doctest.h>

#include "oracles.hpp"
#include "speclat/series.hpp"

using namespace speclat;

namespace {

PowerSeries series(std::initializer_list<long> cs) {
  std::vector<BigRational> v;
  for (long c : cs) v.emplace_back(c);
  return PowerSeries(v);
}

BigRational factorial(unsigned n) {
  BigRational r = 1;
  for (unsigned i = 2; i <= n; ++i) r *= i;
  return r;
}

}  // namespace

TEST_CASE("exp of t gives the exponential series") {
  const PowerSeries e = exp(series({0, 1, 0, 0, 0, 0, 0, 0}));
  for (unsigned i = 0; i < e.order(); ++i) CHECK(e[i] == 1 / factorial(i));
}

TEST_CASE("log of 1 - t") {
  const PowerSeries l = log(series({1, -1, 0, 0, 0, 0, 0}));
  CHECK(l[0] == 0);
  for (unsigned i = 1; i < l.order(); ++i) CHECK(l[i] == BigRational(-1) / i);
}

TEST_CASE("exp and log are inverse") {
  const PowerSeries f = series({0, 3, -2, 5, 7, 0, 1, 4, -9, 2});
  CHECK(log(exp(f)) == f);
  const PowerSeries g = series({1, 2, 0, -1, 3, 8, 1, 1, 0, 5});
  CHECK(exp(log(g)) == g);
}

TEST_CASE("inverse and products") {
  const PowerSeries g = series({2, 1, -3, 4, 0, 1});
  const PowerSeries one = g * inverse(g);
  CHECK(one[0] == 1);
  for (unsigned i = 1; i < one.order(); ++i) CHECK(one[i] == 0);
  CHECK(g + g == BigRational(2) * g);
  CHECK(g - g == PowerSeries(g.order()));
}

TEST_CASE("fractional powers") {
  // (1 - 4t)^{-1/2} = sum binom(2k, k) t^k
  PowerSeries f(12);
  f[0] = 1;
  f[1] = -4;
  const PowerSeries r = pow(f, BigRational(-1, 2));
  for (unsigned k = 0; k < r.order(); ++k) CHECK(r[k] == BigRational(oracle::binomial(2 * k, k)));
  const PowerSeries sq = pow(series({1, 1, 1, 0, 0, 0}), BigRational(1, 2));
  CHECK(sq * sq == series({1, 1, 1, 0, 0, 0}));
}

TEST_CASE("exact evaluation") {
  CHECK(evaluate(series({1, 2, 3}), BigRational(1, 2)) == BigRational(11, 4));
}
