#include "speclat/graph.hpp"

#include <cmath>
#include <future>

#include "speclat/errors.hpp"
#include "speclat/laurent.hpp"
#include "speclat/moments.hpp"
#include "speclat/specpoly.hpp"

namespace speclat {

TorusBipartiteGraph::TorusBipartiteGraph(std::int64_t modulus, int dimension,
                                         std::vector<std::int64_t> weights,
                                         std::vector<Residue> type_offsets)
    : modulus_(modulus), index_(dimension, modulus), weights_(std::move(weights)) {
  if (weights_.size() != type_offsets.size()) throw InvalidInput("one offset per edge type");
  out_.resize(index_.size());
  in_.resize(index_.size());
  for (std::size_t v = 0; v < index_.size(); ++v) {
    const Residue base = index_.residue(v);
    for (std::size_t t = 0; t < type_offsets.size(); ++t) {
      Exponent target(base.size());
      for (std::size_t d = 0; d < base.size(); ++d) target[d] = base[d] + type_offsets[t][d];
      const std::size_t white = index_.index_of_exponent(target);
      out_[v].push_back(edges_.size());
      in_[white].push_back(edges_.size());
      edges_.push_back({v, white, t, weights_[t]});
    }
  }
}

TorusBipartiteGraph build_graph(const WeightedPointSet& ps, const LatticeBasis& basis,
                                std::int64_t modulus) {
  if (!disjointness_check(ps, basis))
    throw CosetViolation("the point set meets the difference lattice; the bipartite graph is undefined");
  std::vector<std::int64_t> weights;
  std::vector<Residue> offsets;
  const IntVector& anchor = ps[0].a;
  for (const auto& p : ps.points()) {
    weights.push_back(p.c);
    const IntVector coords = to_lattice_coords(p.a - anchor, basis);
    Residue r(coords.size());
    for (Eigen::Index i = 0; i < coords.size(); ++i) r[i] = to_int64(coords(i));
    offsets.push_back(std::move(r));
  }
  return TorusBipartiteGraph(modulus, ps.dimension(), std::move(weights), std::move(offsets));
}

namespace {

// Sum of weights of all completions of a walk currently at black vertex
// `black`, with `pairs` black -> white -> black steps still to take.
void accumulate_walks(const TorusBipartiteGraph& g, std::size_t start, std::size_t black,
                      unsigned pairs, const BigInt& weight, BigInt& total) {
  if (pairs == 0) {
    if (black == start) total += weight;
    return;
  }
  for (std::size_t out_id : g.out_edges(black)) {
    const GraphEdge& out = g.edges()[out_id];
    const BigInt after_out = weight * out.weight;
    for (std::size_t in_id : g.in_edges(out.white)) {
      const GraphEdge& back = g.edges()[in_id];
      accumulate_walks(g, start, back.black, pairs - 1, after_out * back.weight, total);
    }
  }
}

}  // namespace

BigInt based_walk_weight_sum(const TorusBipartiteGraph& g, unsigned k, const WalkOptions& options) {
  if (k < 1) throw InvalidInput("walk length 2k needs k >= 1");
  const double sequences = std::pow(static_cast<double>(g.type_count()), 2.0 * k);
  if (sequences > options.enumeration_cap)
    throw ExplosionGuard("|A|^{2k} = " + std::to_string(sequences) + " exceeds the enumeration cap");

  const std::size_t start = 0;
  // Partition by the first edge; each partition is independent.
  std::vector<std::future<BigInt>> parts;
  for (std::size_t out_id : g.out_edges(start)) {
    parts.push_back(std::async(std::launch::async, [&g, out_id, k, start] {
      const GraphEdge& out = g.edges()[out_id];
      BigInt total = 0;
      for (std::size_t in_id : g.in_edges(out.white)) {
        const GraphEdge& back = g.edges()[in_id];
        accumulate_walks(g, start, back.black, k - 1, BigInt(out.weight) * back.weight, total);
      }
      return total;
    }));
  }
  BigInt per_start = 0;
  for (auto& part : parts) per_start += part.get();
  return per_start * BigInt(g.black_count());
}

WalkSum walk_sum(const TorusBipartiteGraph& g, unsigned k, const WalkOptions& options) {
  WalkSum s;
  s.k = k;
  s.based_total = based_walk_weight_sum(g, k, options);
  s.cycle_total = BigRational(s.based_total, BigInt(k));
  return s;
}

bool walk_series_check(const WeightedPointSet& ps, std::int64_t modulus, const BigInt& z,
                       unsigned max_k, const WalkOptions& options) {
  const BigInt c2 = ps.total_weight() * ps.total_weight();
  if (z <= c2) throw InvalidInput("the series check needs z > C^2");
  const LatticeBasis basis = difference_lattice(ps);
  const LaurentPoly w = build_W(ps, basis);
  const TorusBipartiteGraph g = build_graph(ps, basis, modulus);

  const auto log_coeffs = log_bn_expansion(bn_polynomial(w, modulus), max_k);
  const BigRational t(BigInt(1), z);
  BigRational lhs = 0;
  BigRational rhs = 0;
  BigRational t_pow = 1;
  for (unsigned k = 1; k <= max_k; ++k) {
    t_pow *= t;
    const BigRational walk_term = -walk_sum(g, k, options).cycle_total;
    if (log_coeffs[k] != walk_term) return false;
    lhs += log_coeffs[k] * t_pow;
    rhs += walk_term * t_pow;
  }
  return lhs == rhs;
}

}  // namespace speclat
