#include "speclat/verify.hpp"

#include <chrono>
#include <cmath>
#include <exception>
#include <functional>
#include <iomanip>
#include <numbers>
#include <sstream>

#include "speclat/analysis.hpp"
#include "speclat/arith.hpp"
#include "speclat/errors.hpp"
#include "speclat/examples.hpp"
#include "speclat/graph.hpp"
#include "speclat/moments.hpp"
#include "speclat/specpoly.hpp"

namespace speclat {

namespace {

struct Outcome {
  bool passed = true;
  std::ostringstream detail;

  void require(bool condition, const std::string& what) {
    if (!condition) {
      if (!passed) detail << "; ";
      else detail.str("");
      passed = false;
      detail << what;
    }
  }
};

struct Example {
  std::string id;
  WeightedPointSet points;
  LaurentPoly w;
};

Example load(const std::string& id) {
  WeightedPointSet ps = builtin_example(id);
  LaurentPoly w = build_W(ps, difference_lattice(ps));
  return {id, std::move(ps), std::move(w)};
}

BigInt binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  BigInt r = 1;
  for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::string str(const BigInt& x) { return x.str(); }

// Level 1 ------------------------------------------------------------------

void honeycomb_b6(const Example& h, Outcome& out) {
  const auto t0 = std::chrono::steady_clock::now();
  const IntPolynomial b = bn_polynomial(h.w, 6);
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const IntPolynomial expected =
      IntPolynomial::from_roots({{0, 2}, {1, 15}, {3, 6}, {4, 6}, {7, 6}, {9, 1}});
  out.require(b == expected, "B_6 differs from z^2(z-1)^15(z-3)^6(z-4)^6(z-7)^6(z-9)");
  out.require(b.degree() == 36, "degree " + std::to_string(b.degree()));
  out.require(elapsed < 1.0, "took " + std::to_string(elapsed) + " s");
  if (out.passed) out.detail << "degree 36, " << std::fixed << std::setprecision(3) << elapsed << " s";
}

void chebyshev_table(const Example& c, Outcome& out) {
  static const long long expected[] = {2,        12,        50,         192,        722,      2700,
                                       10082,    37632,     140450,     524172,     1956242,  7300800,
                                       27246962, 101687052, 379501250,  1416317952, 5285770562};
  const auto t0 = std::chrono::steady_clock::now();
  for (unsigned n = 1; n <= 17; ++n) {
    const BigInt v = evaluate_at_integer(bn_polynomial(c.w, n), 6);
    out.require(v == expected[n - 1], "B_" + std::to_string(n) + "(6) = " + str(v));
  }
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  out.require(elapsed < 5.0, "took " + std::to_string(elapsed) + " s");
  if (out.passed) out.detail << "17 values exact";
}

void chebyshev_recurrence(const Example& c, Outcome& out) {
  std::vector<BigInt> s(41);
  s[0] = 2;
  for (unsigned n = 1; n <= 40; ++n) s[n] = evaluate_at_integer(bn_polynomial(c.w, n), 6) + 2;
  for (unsigned n = 1; n < 40; ++n)
    out.require(s[n + 1] == 4 * s[n] - s[n - 1], "recurrence fails at N = " + std::to_string(n + 1));
  if (out.passed) out.detail << "s_40 = " << str(s[40]);
}

void chebyshev_series(const Example&, Outcome& out) {
  out.require(chebyshev_generating_check(6, 17), "series coefficients differ below T^18");
  if (out.passed) out.detail << "agrees through T^17";
}

void honeycomb_moments(const Example& h, Outcome& out) {
  const MomentSequence m = moments(h.w, 41);
  for (unsigned k = 0; k <= 41; ++k) {
    BigInt sum = 0;
    for (unsigned j = 0; j <= k; ++j) {
      const BigInt b = binomial(k, j);
      sum += b * b * binomial(2 * j, j);
    }
    out.require(m[k] == sum, "m_" + std::to_string(k) + " = " + str(m[k]) + " vs " + str(sum));
  }
  for (unsigned k = 1; k <= 40; ++k) {
    const BigInt kk = k;
    const BigInt lhs = (kk + 1) * (kk + 1) * m[k + 1];
    const BigInt rhs = (10 * kk * kk + 10 * kk + 3) * m[k] - 9 * kk * kk * m[k - 1];
    out.require(lhs == rhs, "recurrence fails at k = " + std::to_string(k));
  }
  out.require(verify_recurrence(m, LinearRecurrence::honeycomb()), "verify_recurrence rejected");
  if (out.passed) out.detail << "m_40 = " << str(m[40]);
}

void moment_stability(const Example& h, Outcome& out) {
  const MomentSequence exact = moments(h.w, 8);
  for (std::int64_t n = 1; n <= 8; ++n) {
    const MomentSequence folded = moments_N(h.w, 8, n);
    for (unsigned k = 0; k <= 8; ++k) {
      const std::string at = "k = " + std::to_string(k) + ", N = " + std::to_string(n);
      out.require(folded[k] >= exact[k], "m_k^(N) < m_k at " + at);
      if (n > static_cast<std::int64_t>(k)) out.require(folded[k] == exact[k], "m_k^(N) != m_k at " + at);
    }
  }
  if (out.passed) out.detail << "81 pairs";
}

void congruences(const std::vector<Example>& ex, Outcome& out) {
  std::size_t checked = 0;
  for (const auto& e : ex) {
    const MomentSequence m = moments(e.w, 100);
    for (unsigned p : {2u, 3u, 5u})
      for (unsigned k = 1; k <= 4; ++k)
        for (unsigned alpha = 0; alpha <= 1; ++alpha) {
          out.require(check_congruence(m, p, k, alpha),
                      e.id + ": p = " + std::to_string(p) + ", k = " + std::to_string(k) +
                          ", alpha = " + std::to_string(alpha));
          ++checked;
        }
  }
  if (out.passed) out.detail << checked << " congruences";
}

void divisibility(const std::vector<Example>& ex, Outcome& out) {
  std::size_t checked = 0;
  for (const auto& e : ex) {
    std::vector<IntPolynomial> b(9);
    for (std::int64_t n = 1; n <= 8; ++n) b[n] = bn_polynomial(e.w, n);
    for (std::int64_t n = 1; n <= 8; ++n)
      for (std::int64_t d = 1; d <= n; ++d)
        if (n % d == 0) {
          out.require(divides(b[d], b[n]),
                      e.id + ": B_" + std::to_string(d) + " does not divide B_" + std::to_string(n));
          ++checked;
        }
  }
  if (out.passed) out.detail << checked << " pairs";
}

void walk_bridge(const std::vector<Example>& ex, Outcome& out) {
  std::size_t checked = 0;
  for (const auto& e : ex) {
    const bool honey = e.id == "honeycomb";
    const std::int64_t max_n = honey ? 3 : 4;
    const unsigned max_k = honey ? 5 : 6;
    const LatticeBasis basis = difference_lattice(e.points);
    for (std::int64_t n = 1; n <= max_n; ++n) {
      const TorusBipartiteGraph g = build_graph(e.points, basis, n);
      const ConvolutionMatrix c = convolution_matrix(e.w, n);
      const Matrix<BigInt> m = c.entries().cast<BigInt>();
      const MomentSequence folded = moments_N(e.w, max_k, n);
      BigInt volume = 1;
      for (int i = 0; i < e.w.dimension(); ++i) volume *= n;
      Matrix<BigInt> power = Matrix<BigInt>::Identity(m.rows(), m.cols());
      for (unsigned k = 1; k <= max_k; ++k) {
        power = power * m;
        const BigInt trace = power.trace();
        const BigInt walks = based_walk_weight_sum(g, k);
        const std::string at = e.id + " N = " + std::to_string(n) + ", k = " + std::to_string(k);
        out.require(walks == trace, "walks " + str(walks) + " != trace " + str(trace) + " at " + at);
        out.require(trace == volume * folded[k], "trace != N^n m_k^(N) at " + at);
        ++checked;
      }
    }
  }
  if (out.passed) out.detail << checked << " (N, k) pairs";
}

void padic_honeycomb(const Example& h, Outcome& out) {
  const IntPolynomial b6 = bn_polynomial(h.w, 6);
  const std::uint64_t expected[] = {8, 15, 1, 6, 6, 0, 0};
  std::ostringstream row;
  for (unsigned z = 0; z <= 6; ++z) {
    const ValuationCheck v = valuation_inequality_check(b6, h.w, z, 7, 1);
    out.require(v.holds, "inequality fails at z = " + std::to_string(z));
    out.require(v.rhs == expected[z], "count at z = " + std::to_string(z) + " is " + std::to_string(v.rhs));
    row << (z ? "," : "") << v.rhs;
  }
  const ValuationCheck w = valuation_inequality_check(b6, h.w, 53, 7, 1);
  out.require(!w.lhs.infinite && w.lhs.value == 12, "v_7(B_6(53)) is not 12");
  out.require(w.rhs == 6, "count at 53 is " + std::to_string(w.rhs));
  if (out.passed) out.detail << "counts [" << row.str() << "], v_7(B_6(53)) = 12 > 6";
}

void padic_chebyshev(const Example& c, Outcome& out) {
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17}) {
    const BigInt v = evaluate_at_integer(bn_polynomial(c.w, static_cast<std::int64_t>(p - 1)), 6);
    const Valuation val = vp(v, p);
    const std::uint64_t e = val.infinite ? 1000 : val.value;
    const std::uint64_t r = p % 12;
    const std::string at = "p = " + std::to_string(p) + " (v = " + std::to_string(e) + ")";
    if (p == 2 || p == 3) {
      out.require(e == 1, "valuation not 1 at " + at);
      continue;
    }
    const bool plus_minus_one = r == 1 || r == 11;
    const bool plus_minus_five = r == 5 || r == 7;
    out.require((e >= 2) == plus_minus_one, "p^2 | B_{p-1}(6) pattern fails at " + at);
    out.require((e == 0) == plus_minus_five, "p does not divide B_{p-1}(6) pattern fails at " + at);
  }
  const Valuation v24 = vp(evaluate_at_integer(bn_polynomial(c.w, 24), 6), 5);
  const Valuation v48 = vp(evaluate_at_integer(bn_polynomial(c.w, 48), 6), 7);
  out.require(v24.infinite || v24.value >= 2, "25 does not divide B_24(6)");
  out.require(v48.infinite || v48.value >= 2, "49 does not divide B_48(6)");
  if (out.passed) out.detail << "p <= 17 pattern, v_5(B_24(6)) = " << v24 << ", v_7(B_48(6)) = " << v48;
}

void mahler_limit(const std::vector<Example>& ex, Outcome& out) {
  const auto t0 = std::chrono::steady_clock::now();
  for (const auto& e : ex) {
    if (e.id == "chebyshev") {
      const double target = 2.0 - std::sqrt(3.0);
      double worst = 0.0;
      for (std::int64_t n : {20, 24, 30, 40, 60, 100, 200, 500}) {
        const LogValue lv = bn_value_float(e.w, n, {6.0, 0.0});
        const double q = std::exp(-lv.log_magnitude / static_cast<double>(n));
        worst = std::max(worst, std::abs(q - target));
      }
      out.require(worst < 1e-3, "chebyshev deviation " + std::to_string(worst));
      if (out.passed) out.detail << "chebyshev max deviation " << std::scientific << std::setprecision(2) << worst;
    } else {
      const RealEstimate lim = mahler_Q(e.points, {10.0, 0.0}, MahlerMethod::Limit);
      const RealEstimate ser = mahler_Q(e.points, {10.0, 0.0}, MahlerMethod::MomentSeries);
      const double delta = std::abs(lim.value - ser.value);
      out.require(delta < 1e-4, "honeycomb limit vs series differ by " + std::to_string(delta));
      if (out.passed) {
        if (out.detail.tellp() > 0) out.detail << "; ";
        out.detail << "honeycomb Q(10) = " << std::setprecision(10) << std::fixed << ser.value << ", delta "
                   << std::scientific << std::setprecision(2) << delta;
      }
    }
  }
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  out.require(elapsed < 30.0, "took " + std::to_string(elapsed) + " s");
}

void hilbert(const Example& c, Outcome& out) {
  const ComplexEstimate h = hilbert_H(c.points, {6.0, 0.0}, HilbertMethod::MomentSeries);
  const double target = 1.0 / std::sqrt(12.0);
  const double delta = std::abs(h.value - target);
  out.require(delta < 1e-8, "delta " + std::to_string(delta));
  if (out.passed) out.detail << "|H(6) - 1/sqrt(12)| = " << std::scientific << std::setprecision(2) << delta;
}

void integrality(const std::vector<Example>& ex, Outcome& out) {
  for (const auto& e : ex) {
    const MomentSequence m = moments(e.w, 30);
    try {
      const auto a = series_A(m);
      const auto b = product_b(m);
      out.require(a.size() == 31 && b.size() == 31, e.id + ": wrong series length");
      if (out.passed) {
        if (out.detail.tellp() > 0) out.detail << "; ";
        out.detail << e.id << " A_30 = " << str(a[30]);
      }
    } catch (const IntegralityViolation& err) {
      out.require(false, e.id + ": " + err.what());
    }
  }
}

void multiplicities(const Example& h, Outcome& out) {
  for (std::int64_t n = 1; n <= 8; ++n) {
    const IntPolynomial b = bn_polynomial(h.w, n);
    const SpectrumHistogram s = spectrum(h.w, n);
    const std::string at = " at N = " + std::to_string(n);
    out.require(!s.ambiguous, "ambiguous clustering" + at);
    out.require(integer_root_multiplicity(b, 9) == 1, "mult(9) != 1" + at);
    if (n % 3 == 0) out.require(integer_root_multiplicity(b, 0) == 2, "mult(0) != 2" + at);
    if (n % 2 == 0) out.require(integer_root_multiplicity(b, 1) % 6 == 3, "mult(1) not 3 mod 6" + at);
    for (const auto& level : s.levels) {
      std::size_t mult = level.multiplicity;
      if (level.integer_level) {
        const std::int64_t r = *level.integer_level;
        if (r == 9 || (r == 0 && n % 3 == 0) || (r == 1 && n % 2 == 0)) continue;
        if (r == 0 || r == 1) continue;
        mult = integer_root_multiplicity(b, r);
      }
      out.require(mult % 6 == 0, "level " + std::to_string(level.value) + " has multiplicity " +
                                     std::to_string(mult) + at);
    }
  }
  if (out.passed) out.detail << "N = 1..8";
}

void cross_validation(const Example& h, Outcome& out) {
  const IntPolynomial b = bn_polynomial(h.w, 6);
  const SpectrumHistogram s = spectrum(h.w, 6);
  out.require(!s.ambiguous, "ambiguous clustering");
  std::size_t total = 0;
  std::ostringstream levels;
  for (const auto& level : s.levels) {
    if (!level.integer_level) {
      out.require(false, "non-integer level " + std::to_string(level.value));
      continue;
    }
    const std::int64_t r = *level.integer_level;
    const unsigned exact = integer_root_multiplicity(b, r);
    out.require(exact == level.multiplicity, "level " + std::to_string(r) + ": float " +
                                                 std::to_string(level.multiplicity) + " vs exact " +
                                                 std::to_string(exact));
    total += exact;
    levels << (total == exact ? "" : " ") << r << "^" << exact;
  }
  out.require(total == 36, "exact multiplicities at the levels sum to " + std::to_string(total));
  if (out.passed) out.detail << levels.str();
}

struct Criterion {
  int id;
  const char* title;
  // Examples the criterion involves.
  bool chebyshev;
  bool honeycomb;
  std::function<void(const std::vector<Example>&, Outcome&)> run;
};

template <class F>
std::function<void(const std::vector<Example>&, Outcome&)> single(F f) {
  return [f](const std::vector<Example>& ex, Outcome& out) { f(ex.front(), out); };
}

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> list = {
      {1, "honeycomb B_6 factorization", false, true, single(honeycomb_b6)},
      {2, "chebyshev B_N(6) table", true, false, single(chebyshev_table)},
      {3, "chebyshev shifted recurrence", true, false, single(chebyshev_recurrence)},
      {4, "chebyshev generating series", true, false, single(chebyshev_series)},
      {5, "honeycomb moments and recurrence", false, true, single(honeycomb_moments)},
      {6, "moment stability", false, true, single(moment_stability)},
      {7, "moment congruences", true, true, congruences},
      {8, "B_N divisibility", true, true, divisibility},
      {9, "walk sums, traces and folded moments", true, true, walk_bridge},
      {10, "honeycomb valuation table", false, true, single(padic_honeycomb)},
      {11, "chebyshev valuation pattern", true, false, single(padic_chebyshev)},
      {12, "Mahler measure limit", true, true, mahler_limit},
      {13, "chebyshev Hilbert transform", true, false, single(hilbert)},
      {14, "A_k and b_k integrality", true, true, integrality},
      {15, "honeycomb multiplicity symmetry", false, true, single(multiplicities)},
      {16, "honeycomb float and exact multiplicities", false, true, single(cross_validation)},
  };
  return list;
}

}  // namespace

std::vector<CriterionResult> run_acceptance(std::string_view scope) {
  const bool want_c = scope == "chebyshev" || scope == "all";
  const bool want_h = scope == "honeycomb" || scope == "all";
  if (!want_c && !want_h)
    throw InvalidInput("unknown example id '" + std::string(scope) + "' (expected chebyshev, honeycomb or all)");

  std::vector<Example> cheb, honey;
  if (want_c) cheb.push_back(load("chebyshev"));
  if (want_h) honey.push_back(load("honeycomb"));

  std::vector<CriterionResult> results;
  for (const auto& c : criteria()) {
    std::vector<Example> ex;
    if (c.chebyshev && want_c) ex.push_back(cheb.front());
    if (c.honeycomb && want_h) ex.push_back(honey.front());
    if (ex.empty()) continue;
    // Single-example criteria take the example they are about.
    if (c.chebyshev != c.honeycomb && ex.size() != 1) continue;

    CriterionResult r;
    r.id = c.id;
    r.title = c.title;
    Outcome out;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(ex, out);
    } catch (const std::exception& e) {
      out.require(false, std::string("exception: ") + e.what());
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    r.passed = out.passed;
    r.detail = out.detail.str();
    results.push_back(std::move(r));
  }
  return results;
}

void print_results(const std::vector<CriterionResult>& results, std::ostream& os) {
  for (const auto& r : results) {
    os << (r.passed ? "[PASS] " : "[FAIL] ") << "#" << r.id << " " << r.title << " (" << std::fixed
       << std::setprecision(2) << r.seconds << " s)";
    if (!r.detail.empty()) os << ": " << r.detail;
    os << '\n';
  }
  std::size_t passed = 0;
  for (const auto& r : results) passed += r.passed;
  os << passed << "/" << results.size() << " criteria passed\n";
}

bool all_passed(const std::vector<CriterionResult>& results) {
  for (const auto& r : results)
    if (!r.passed) return false;
  return !results.empty();
}

}  // namespace speclat
