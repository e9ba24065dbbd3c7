#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "speclat/laurent.hpp"
#include "speclat/lattice.hpp"
#include "speclat/types.hpp"

namespace speclat {

/// Values of |D(t)|^2 = W(exp(2 pi i t)) on the uniform grid t = i / m of
/// the unit cube in lattice coordinates, row-major (last axis fastest).
struct Grid {
  int dimension = 0;
  int resolution = 0;
  std::vector<double> values;

  std::size_t size() const { return values.size(); }
  std::vector<int> cell(std::size_t index) const;
  double min() const;
  double max() const;
  std::size_t argmin() const;
  std::size_t argmax() const;
};

Grid diffraction_field(const LaurentPoly& w, int resolution);
Grid diffraction_field(const WeightedPointSet& ps, int resolution);

struct SpectrumLevel {
  double value = 0.0;  ///< mean of the clustered values
  std::size_t multiplicity = 0;
  double spread = 0.0;  ///< max - min inside the cluster
  /// Nearest integer when within the clustering tolerance.
  std::optional<std::int64_t> integer_level;
};

struct SpectrumOptions {
  /// Clustering tolerance relative to C^2.
  double relative_tolerance = 1e-6;
  std::size_t enumeration_cap = 10'000'000;
};

/// The multiset {W(x) : x in mu_N^Lambda} with single-linkage clusters.
struct SpectrumHistogram {
  std::int64_t modulus = 0;
  int dimension = 0;
  double c_squared = 0.0;
  double tolerance = 0.0;
  std::vector<double> values;  ///< sorted ascending
  std::vector<SpectrumLevel> levels;
  /// Smallest distance between neighbouring clusters (infinity for one level).
  double min_gap = 0.0;
  /// Set when some cluster is wider than the tolerance, i.e. chaining merged
  /// values that may belong to distinct levels.
  bool ambiguous = false;
  double support_min = 0.0;
  double support_max = 0.0;

  /// Multiplicity of the cluster within tolerance of r, or 0.
  std::size_t multiplicity_at(double r) const;
};

SpectrumHistogram spectrum(const LaurentPoly& w, std::int64_t modulus, const SpectrumOptions& options = {});
SpectrumHistogram spectrum(const WeightedPointSet& ps, std::int64_t modulus,
                           const SpectrumOptions& options = {});

/// V_N(r) = #{x : W(x) <= r} / N^n, counted over clusters so that values
/// within tolerance of r are included.
BigRational empirical_cdf(const SpectrumHistogram& h, double r);

struct ComplexEstimate {
  std::complex<double> value;
  double error = 0.0;  ///< estimated absolute error
  std::size_t work = 0;  ///< terms (series) or N (spectral methods) used
};

struct RealEstimate {
  double value = 0.0;
  double error = 0.0;
  std::size_t work = 0;
};

enum class HilbertMethod { MomentSeries, SpectrumAverage };
enum class MahlerMethod { Limit, MomentSeries, TorusQuadrature };

std::string to_string(HilbertMethod m);
std::string to_string(MahlerMethod m);

struct AnalysisOptions {
  /// Target accuracy for the series tail bound and spectral stabilization.
  double tolerance = 1e-10;
  /// Successive estimates must differ by less than this before a limit is
  /// accepted.
  double stabilization = 1e-3;
  std::int64_t start_modulus = 8;
  /// Largest N^n evaluated by the spectral methods.
  std::size_t max_evaluations = 4'000'000;
  unsigned max_series_terms = 1024;
  SpectrumOptions spectrum;
};

/// H(z) = integral dV(r) / (z - r).
/// MomentSeries: sum m_k z^{-k-1} with exact moments, for |z| > C^2, with the
/// rigorous tail bound m_{k+j} <= C^{2j} m_k. SpectrumAverage: N^{-n} sum
/// 1/(z - W(x)), doubling N until stable.
ComplexEstimate hilbert_H(const WeightedPointSet& ps, std::complex<double> z, HilbertMethod method,
                          const AnalysisOptions& options = {});

/// Q(z) = exp(-integral log|z - r| dV(r)).
/// Limit: |B_N(z)|^{-N^{-n}} along doubling N. MomentSeries: z^{-1}
/// exp(sum m_k z^{-k} / k), |z| > C^2. TorusQuadrature: uniform grid average
/// of log|z - W| at doubling resolution. Throws SpectrumProximity when z is
/// within tolerance of the sampled spectrum support.
RealEstimate mahler_Q(const WeightedPointSet& ps, std::complex<double> z, MahlerMethod method,
                      const AnalysisOptions& options = {});

}  // namespace speclat
