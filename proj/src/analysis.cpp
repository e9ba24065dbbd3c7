#include "speclat/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "speclat/errors.hpp"
#include "speclat/moments.hpp"
#include "speclat/specpoly.hpp"

namespace speclat {

std::vector<int> Grid::cell(std::size_t index) const {
  std::vector<int> c(static_cast<std::size_t>(dimension));
  for (int i = dimension - 1; i >= 0; --i) {
    c[i] = static_cast<int>(index % static_cast<std::size_t>(resolution));
    index /= static_cast<std::size_t>(resolution);
  }
  return c;
}

double Grid::min() const { return *std::min_element(values.begin(), values.end()); }
double Grid::max() const { return *std::max_element(values.begin(), values.end()); }
std::size_t Grid::argmin() const {
  return static_cast<std::size_t>(std::min_element(values.begin(), values.end()) - values.begin());
}
std::size_t Grid::argmax() const {
  return static_cast<std::size_t>(std::max_element(values.begin(), values.end()) - values.begin());
}

Grid diffraction_field(const LaurentPoly& w, int resolution) {
  if (resolution < 2) throw InvalidInput("grid resolution must be at least 2");
  // The grid points t = r / m are exactly the characters of order m.
  return {w.dimension(), resolution, real_values_on_characters(w, resolution)};
}

Grid diffraction_field(const WeightedPointSet& ps, int resolution) {
  return diffraction_field(build_W(ps, difference_lattice(ps)), resolution);
}

std::size_t SpectrumHistogram::multiplicity_at(double r) const {
  for (const auto& level : levels)
    if (std::abs(level.value - r) <= tolerance) return level.multiplicity;
  return 0;
}

SpectrumHistogram spectrum(const LaurentPoly& w, std::int64_t modulus, const SpectrumOptions& options) {
  const ResidueIndex index(w.dimension(), modulus);
  if (index.size() > options.enumeration_cap)
    throw SizeLimit("N^n = " + std::to_string(index.size()) + " exceeds the spectrum cap");
  SpectrumHistogram h;
  h.modulus = modulus;
  h.dimension = w.dimension();
  h.c_squared = static_cast<double>(w.coefficient_sum());
  h.tolerance = options.relative_tolerance * h.c_squared;
  h.values = real_values_on_characters(w, modulus);
  std::sort(h.values.begin(), h.values.end());
  h.support_min = h.values.front();
  h.support_max = h.values.back();

  std::size_t begin = 0;
  auto close_cluster = [&](std::size_t end) {
    SpectrumLevel level;
    double sum = 0.0;
    for (std::size_t i = begin; i < end; ++i) sum += h.values[i];
    level.multiplicity = end - begin;
    level.value = sum / static_cast<double>(level.multiplicity);
    level.spread = h.values[end - 1] - h.values[begin];
    const double nearest = std::round(level.value);
    if (std::abs(level.value - nearest) <= h.tolerance) level.integer_level = static_cast<std::int64_t>(nearest);
    if (level.spread > h.tolerance) h.ambiguous = true;
    h.levels.push_back(level);
  };
  for (std::size_t i = 1; i < h.values.size(); ++i) {
    if (h.values[i] - h.values[i - 1] > h.tolerance) {
      close_cluster(i);
      begin = i;
    }
  }
  close_cluster(h.values.size());

  h.min_gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < h.levels.size(); ++i)
    h.min_gap = std::min(h.min_gap, h.levels[i].value - h.levels[i - 1].value);
  return h;
}

SpectrumHistogram spectrum(const WeightedPointSet& ps, std::int64_t modulus, const SpectrumOptions& options) {
  return spectrum(build_W(ps, difference_lattice(ps)), modulus, options);
}

BigRational empirical_cdf(const SpectrumHistogram& h, double r) {
  std::size_t count = 0;
  for (const auto& level : h.levels)
    if (level.value <= r + h.tolerance) count += level.multiplicity;
  return BigRational(BigInt(count), BigInt(h.values.size()));
}

std::string to_string(HilbertMethod m) {
  return m == HilbertMethod::MomentSeries ? "moment-series" : "spectrum-average";
}

std::string to_string(MahlerMethod m) {
  switch (m) {
    case MahlerMethod::Limit:
      return "limit";
    case MahlerMethod::MomentSeries:
      return "moment-series";
    case MahlerMethod::TorusQuadrature:
      return "torus-quadrature";
  }
  return "?";
}

namespace {

// log(m) for a positive big integer without overflow.
double log_big(const BigInt& m) {
  long exponent = 0;
  const double mantissa = mpz_get_d_2exp(&exponent, m.backend().data());
  return std::log(mantissa) + static_cast<double>(exponent) * std::numbers::ln2;
}

// Sum over k of weight(k) m_k z^{-k-shift}, with the rigorous tail bound
// based on m_{k+j} <= C^{2j} m_k. Doubles K until the bound is below tol.
struct SeriesSum {
  std::complex<double> value;
  double tail = 0.0;
  std::size_t terms = 0;
};

template <typename Weight>
SeriesSum moment_series(const LaurentPoly& w, std::complex<double> z, unsigned first_k, int shift,
                        Weight weight, double tail_weight_scale, const AnalysisOptions& options) {
  const double c2 = static_cast<double>(w.coefficient_sum());
  const double absz = std::abs(z);
  if (absz <= c2) throw InvalidInput("the moment series needs |z| > C^2");
  const double q = c2 / absz;
  const double log_absz = std::log(absz);
  const double argz = std::arg(z);

  SeriesSum best;
  for (unsigned K = 16;; K *= 2) {
    K = std::min(K, options.max_series_terms);
    const MomentSequence m = moments(w, K);
    std::complex<double> acc = 0.0;
    for (unsigned k = first_k; k <= K; ++k) {
      if (m[k] == 0) continue;
      const double power = static_cast<double>(static_cast<int>(k) + shift);
      const double log_mag = log_big(m[k]) - power * log_absz;
      acc += weight(k) * std::polar(std::exp(log_mag), -power * argz);
    }
    const double last = m[K] == 0 ? -std::numeric_limits<double>::infinity()
                                   : log_big(m[K]) - (static_cast<double>(K) + shift) * log_absz;
    best.value = acc;
    best.tail = std::exp(last) * tail_weight_scale * weight(K + 1) * q / (1.0 - q);
    best.terms = K + 1;
    if (best.tail < options.tolerance || K >= options.max_series_terms) return best;
  }
}

void check_outside_support(const LaurentPoly& w, std::complex<double> z, const AnalysisOptions& options) {
  const SpectrumHistogram h = spectrum(w, options.start_modulus, options.spectrum);
  if (std::abs(z.imag()) <= h.tolerance && z.real() >= h.support_min - h.tolerance &&
      z.real() <= h.support_max + h.tolerance)
    throw SpectrumProximity("z lies within tolerance of the sampled spectrum support [" +
                            std::to_string(h.support_min) + ", " + std::to_string(h.support_max) + "]");
}

// Doubles N (or the grid resolution) until successive values differ by less
// than the tolerance or the evaluation budget is exhausted.
template <typename Evaluate>
RealEstimate stabilize(int dimension, const AnalysisOptions& options, Evaluate evaluate) {
  RealEstimate est;
  double previous = std::numeric_limits<double>::quiet_NaN();
  for (std::int64_t N = options.start_modulus;; N *= 2) {
    if (std::pow(static_cast<double>(N), dimension) > static_cast<double>(options.max_evaluations)) break;
    const double value = evaluate(N);
    est.work = static_cast<std::size_t>(N);
    if (!std::isnan(previous)) {
      est.error = std::abs(value - previous);
      est.value = value;
      if (est.error < options.tolerance) return est;
    } else {
      est.value = value;
      est.error = std::numeric_limits<double>::infinity();
    }
    previous = value;
  }
  if (!(est.error < options.stabilization))
    throw Error("limit did not stabilize within the evaluation budget (last difference " +
                std::to_string(est.error) + ")");
  return est;
}

}  // namespace

ComplexEstimate hilbert_H(const WeightedPointSet& ps, std::complex<double> z, HilbertMethod method,
                          const AnalysisOptions& options) {
  const LaurentPoly w = build_W(ps, difference_lattice(ps));
  if (method == HilbertMethod::MomentSeries) {
    const SeriesSum s = moment_series(w, z, 0, 1, [](unsigned) { return 1.0; }, 1.0, options);
    return {s.value, s.tail, s.terms};
  }
  check_outside_support(w, z, options);
  ComplexEstimate est;
  std::complex<double> previous{std::numeric_limits<double>::quiet_NaN(), 0.0};
  for (std::int64_t N = options.start_modulus;; N *= 2) {
    if (std::pow(static_cast<double>(N), w.dimension()) > static_cast<double>(options.max_evaluations)) break;
    const auto values = real_values_on_characters(w, N);
    std::complex<double> acc = 0.0;
    for (double v : values) acc += 1.0 / (z - v);
    acc /= static_cast<double>(values.size());
    est.work = static_cast<std::size_t>(N);
    est.value = acc;
    est.error = std::isnan(previous.real()) ? std::numeric_limits<double>::infinity() : std::abs(acc - previous);
    if (est.error < options.tolerance) return est;
    previous = acc;
  }
  if (!(est.error < options.stabilization))
    throw Error("spectrum average did not stabilize within the evaluation budget");
  return est;
}

RealEstimate mahler_Q(const WeightedPointSet& ps, std::complex<double> z, MahlerMethod method,
                      const AnalysisOptions& options) {
  const LaurentPoly w = build_W(ps, difference_lattice(ps));
  switch (method) {
    case MahlerMethod::MomentSeries: {
      const SeriesSum s = moment_series(
          w, z, 1, 0, [](unsigned k) { return 1.0 / static_cast<double>(k); }, 1.0, options);
      const double log_q = -std::log(std::abs(z)) + s.value.real();
      const double q = std::exp(log_q);
      return {q, q * std::expm1(s.tail), s.terms};
    }
    case MahlerMethod::Limit: {
      check_outside_support(w, z, options);
      return stabilize(w.dimension(), options, [&](std::int64_t N) {
        const LogValue lv = bn_value_float(w, N, z);
        return std::exp(-lv.log_magnitude / std::pow(static_cast<double>(N), w.dimension()));
      });
    }
    case MahlerMethod::TorusQuadrature: {
      check_outside_support(w, z, options);
      const int n = w.dimension();
      return stabilize(n, options, [&](std::int64_t m) {
        // Midpoint rule: t_j = (i_j + 1/2) / m.
        const ResidueIndex index(n, m);
        std::vector<double> t(static_cast<std::size_t>(n));
        double acc = 0.0;
        for (std::size_t i = 0; i < index.size(); ++i) {
          const Residue r = index.residue(i);
          for (int j = 0; j < n; ++j) t[j] = (static_cast<double>(r[j]) + 0.5) / static_cast<double>(m);
          acc += std::log(std::abs(z - evaluate_on_torus(w, t)));
        }
        return std::exp(-acc / static_cast<double>(index.size()));
      });
    }
  }
  throw InvalidInput("unknown Mahler method");
}

}  // namespace speclat
