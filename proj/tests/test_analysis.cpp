#include <doctest.h>

#include <cmath>
#include <numbers>

#include "speclat/analysis.hpp"
#include "speclat/errors.hpp"
#include "speclat/examples.hpp"

using namespace speclat;

namespace {

const WeightedPointSet honey = honeycomb_points();
const WeightedPointSet cheb = chebyshev_points();

double chebyshev_q(double z) { return 0.5 * (z - 2.0 - std::sqrt(z * (z - 4.0))); }

}  // namespace

TEST_CASE("diffraction field") {
  const Grid g = diffraction_field(honey, 6);
  CHECK(g.size() == 36);
  CHECK(g.max() == doctest::Approx(9.0));
  CHECK(g.cell(g.argmax()) == std::vector<int>{0, 0});
  CHECK(g.min() == doctest::Approx(0.0).epsilon(1e-12));
  const Grid c = diffraction_field(cheb, 8);
  CHECK(c.values[0] == doctest::Approx(4.0));
  CHECK_THROWS_AS(diffraction_field(cheb, 1), InvalidInput);
}

TEST_CASE("spectrum levels") {
  const SpectrumHistogram h = spectrum(honey, 6);
  CHECK_FALSE(h.ambiguous);
  std::vector<std::pair<std::int64_t, std::size_t>> levels;
  std::size_t total = 0;
  for (const auto& l : h.levels) {
    REQUIRE(l.integer_level.has_value());
    levels.emplace_back(*l.integer_level, l.multiplicity);
    total += l.multiplicity;
  }
  CHECK(levels == std::vector<std::pair<std::int64_t, std::size_t>>{{0, 2}, {1, 15}, {3, 6}, {4, 6}, {7, 6}, {9, 1}});
  CHECK(total == 36);
  CHECK(h.multiplicity_at(1.0) == 15);
  CHECK(h.multiplicity_at(2.0) == 0);
  CHECK(h.min_gap == doctest::Approx(1.0));
  CHECK(h.support_max == doctest::Approx(9.0));

  for (std::int64_t n = 2; n <= 8; n += 2) CHECK(spectrum(honey, n).multiplicity_at(1.0) % 6 == 3);
  const SpectrumHistogram one = spectrum(honey, 1);
  REQUIRE(one.levels.size() == 1);
  CHECK(one.levels[0].value == doctest::Approx(9.0));
  CHECK(std::isinf(one.min_gap));
}

TEST_CASE("spectrum invariants") {
  for (const auto& ps : {honey, cheb}) {
    for (std::int64_t n = 1; n <= 9; ++n) {
      const SpectrumHistogram h = spectrum(ps, n);
      const double c2 = h.c_squared;
      std::size_t total = 0;
      for (const auto& l : h.levels) total += l.multiplicity;
      CHECK(total == h.values.size());
      CHECK(h.values.front() >= -1e-9 * c2);
      CHECK(h.values.back() <= c2 * (1 + 1e-9));
      CHECK(h.levels.back().multiplicity == 1);
    }
  }
  SpectrumOptions tiny;
  tiny.enumeration_cap = 10;
  CHECK_THROWS_AS(spectrum(honey, 4, tiny), SizeLimit);
}

TEST_CASE("empirical distribution") {
  const SpectrumHistogram h = spectrum(honey, 6);
  CHECK(empirical_cdf(h, 9.0) == 1);
  CHECK(empirical_cdf(h, 100.0) == 1);
  CHECK(empirical_cdf(h, -0.5) == 0);
  CHECK(empirical_cdf(h, 2.0) == BigRational(17, 36));
  CHECK(empirical_cdf(h, 1.0) == BigRational(17, 36));
  // Refinement along 2 | 4 | 8 at a generic level.
  const double r = 2.5;
  const double v2 = static_cast<double>(empirical_cdf(spectrum(honey, 2), r));
  const double v8 = static_cast<double>(empirical_cdf(spectrum(honey, 8), r));
  const double v64 = static_cast<double>(empirical_cdf(spectrum(honey, 64), r));
  CHECK(std::abs(v8 - v64) <= std::abs(v2 - v64));
}

TEST_CASE("Hilbert transform") {
  const ComplexEstimate h = hilbert_H(cheb, {6.0, 0.0}, HilbertMethod::MomentSeries);
  CHECK(std::abs(h.value - 1.0 / std::sqrt(12.0)) < 1e-10);
  CHECK(h.error < 1e-9);
  const ComplexEstimate a = hilbert_H(cheb, {6.0, 0.0}, HilbertMethod::SpectrumAverage);
  CHECK(std::abs(a.value - 1.0 / std::sqrt(12.0)) < 1e-8);
  for (double z : {1e3, 1e5}) CHECK(std::abs(z * hilbert_H(honey, {z, 0.0}, HilbertMethod::MomentSeries).value - 1.0) < 10.0 / z);
  const std::complex<double> zc(-3.0, 4.0);
  const auto s = hilbert_H(honey, zc, HilbertMethod::SpectrumAverage);
  CHECK(s.value.imag() < 0);
  CHECK_THROWS_AS(hilbert_H(honey, {5.0, 0.0}, HilbertMethod::MomentSeries), InvalidInput);
}

TEST_CASE("Mahler measure, three routes") {
  const double target = chebyshev_q(6.0);
  CHECK(target == doctest::Approx(2.0 - std::sqrt(3.0)));
  for (MahlerMethod m : {MahlerMethod::Limit, MahlerMethod::MomentSeries, MahlerMethod::TorusQuadrature})
    CHECK(std::abs(mahler_Q(cheb, {6.0, 0.0}, m).value - target) < 1e-8);
  CHECK(std::abs(mahler_Q(cheb, {-3.0, 0.0}, MahlerMethod::Limit).value - 0.5 * (5.0 - std::sqrt(21.0))) < 1e-8);

  const double lim = mahler_Q(honey, {10.0, 0.0}, MahlerMethod::Limit).value;
  const double ser = mahler_Q(honey, {10.0, 0.0}, MahlerMethod::MomentSeries).value;
  const double quad = mahler_Q(honey, {10.0, 0.0}, MahlerMethod::TorusQuadrature).value;
  CHECK(std::abs(lim - ser) < 1e-4);
  CHECK(std::abs(quad - ser) < 1e-4);
  const std::complex<double> zc(4.0, 2.0);
  CHECK(std::abs(mahler_Q(honey, zc, MahlerMethod::Limit).value - mahler_Q(honey, zc, MahlerMethod::TorusQuadrature).value) < 1e-4);
  CHECK_THROWS_AS(mahler_Q(honey, {4.5, 0.0}, MahlerMethod::Limit), SpectrumProximity);
  CHECK_THROWS_AS(mahler_Q(honey, {4.5, 0.0}, MahlerMethod::MomentSeries), InvalidInput);
  CHECK(to_string(MahlerMethod::Limit) == "limit");
  CHECK(to_string(HilbertMethod::SpectrumAverage) == "spectrum-average");
}
