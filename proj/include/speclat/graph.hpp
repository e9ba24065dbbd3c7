#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "speclat/lattice.hpp"
#include "speclat/types.hpp"

namespace speclat {

struct GraphEdge {
  std::size_t black;  ///< source black vertex
  std::size_t white;  ///< target white vertex
  std::size_t type;   ///< index of the point a in the point set
  std::int64_t weight;
};

/// Gamma_N: the periodic bipartite graph of the point set modulo N Lambda.
///
/// Black vertices are the residues of Lambda / N Lambda. White vertices are
/// the residues of (A + Lambda) / N Lambda, labelled by the lattice
/// coordinates of (v + a) - a0 for the anchor a0 = first point of the set.
/// For every black v and every a there is one edge of type a and weight
/// c_a from v to v + a.
class TorusBipartiteGraph {
 public:
  TorusBipartiteGraph(std::int64_t modulus, int dimension, std::vector<std::int64_t> weights,
                      std::vector<Residue> type_offsets);

  std::int64_t modulus() const { return modulus_; }
  int dimension() const { return index_.dimension(); }
  std::size_t black_count() const { return index_.size(); }
  std::size_t white_count() const { return index_.size(); }
  std::size_t type_count() const { return weights_.size(); }
  const std::vector<GraphEdge>& edges() const { return edges_; }

  /// Edge ids leaving a black vertex, ordered by type.
  const std::vector<std::size_t>& out_edges(std::size_t black) const { return out_[black]; }
  /// Edge ids entering a white vertex, ordered by type.
  const std::vector<std::size_t>& in_edges(std::size_t white) const { return in_[white]; }

  Residue black_label(std::size_t v) const { return index_.residue(v); }
  Residue white_label(std::size_t v) const { return index_.residue(v); }

 private:
  std::int64_t modulus_;
  ResidueIndex index_;
  std::vector<std::int64_t> weights_;
  std::vector<GraphEdge> edges_;
  std::vector<std::vector<std::size_t>> out_;
  std::vector<std::vector<std::size_t>> in_;
};

/// Throws CosetViolation if some point of the set lies in the lattice.
TorusBipartiteGraph build_graph(const WeightedPointSet& ps, const LatticeBasis& basis,
                                std::int64_t modulus);

struct WalkOptions {
  /// Upper bound on |A|^{2k}, the number of edge-type sequences enumerated.
  double enumeration_cap = 1e8;
};

/// Total weight of closed walks of length 2k (black -> white -> black ...)
/// in Gamma_N, summed over all N^n black start vertices. Enumerates walks
/// from one start vertex through the graph and multiplies by N^n, which is
/// exact by translation invariance. Throws ExplosionGuard.
BigInt based_walk_weight_sum(const TorusBipartiteGraph& g, unsigned k, const WalkOptions& options = {});

struct WalkSum {
  unsigned k = 0;
  BigInt based_total;
  /// based_total / k, the weight sum over Gamma_N(2k).
  BigRational cycle_total;
};

WalkSum walk_sum(const TorusBipartiteGraph& g, unsigned k, const WalkOptions& options = {});

/// Compares, coefficient by coefficient through t^K (t = 1/z), the exact
/// expansion of log(B_N(z) z^{-N^n}) with -sum_k (walk sum_k / k) t^k, and
/// the two truncated sums evaluated at the given z.
bool walk_series_check(const WeightedPointSet& ps, std::int64_t modulus, const BigInt& z,
                       unsigned max_k, const WalkOptions& options = {});

}  // namespace speclat
