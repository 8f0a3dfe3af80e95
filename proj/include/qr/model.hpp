// Fixed-point data of a prequantized Hamiltonian torus space: isolated fixed
// points with their line-bundle weights and isotropy data, plus an optional
// GKM one-skeleton. Tangent weights are stored in the emanating-edge
// convention, i.e. at each fixed point they point along the moment-image
// edges leaving that vertex.
#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "qr/errors.hpp"
#include "qr/weights.hpp"

namespace qr {

struct FixedPoint {
  Weight mu;                            // mu_L(p): integral
  std::vector<Weight> tangent_weights;  // multiset, size = dim M / 2, nonzero
};

struct GkmEdge {
  int a = 0, b = 0;  // endpoint indices into points
  Weight weight;     // isotropy weight of the connecting sphere, up to sign
};

struct FixedPointModel {
  WeightLattice lattice;
  std::vector<FixedPoint> points;
  std::vector<GkmEdge> edges;  // may be empty (no one-skeleton given)

  size_t half_dim() const { return points.empty() ? 0 : points[0].tangent_weights.size(); }

  void validate() const {
    lattice.validate();
    if (points.empty()) throw InputError("model has no fixed points");
    size_t n = lattice.rank;
    size_t hd = points[0].tangent_weights.size();
    for (const auto& p : points) {
      if (p.mu.size() != n) throw InputError("fixed point mu has wrong dimension");
      if (!is_integral_weight(p.mu))
        throw InputError("mu_L must be integral at every fixed point");
      if (p.tangent_weights.empty())
        throw InputError("fixed point with no tangent weights");
      if (p.tangent_weights.size() != hd)
        throw InconsistentGKM("fixed points disagree on tangent dimension");
      for (const auto& w : p.tangent_weights) {
        if (w.size() != n) throw InputError("tangent weight has wrong dimension");
        if (!is_integral_weight(w)) throw InputError("tangent weights must be integral");
        if (is_zero_vec(w)) throw InputError("zero tangent weight");
      }
    }
    validate_edges();
  }

  // GKM consistency: edge weights match endpoint tangent weights up to sign,
  // every tangent weight is matched by exactly one incident edge, and moment
  // differences along edges are rational multiples of the edge weight.
  void validate_edges() const {
    if (edges.empty()) return;
    std::vector<std::vector<Weight>> unmatched;
    for (const auto& p : points) unmatched.push_back(p.tangent_weights);
    for (const auto& e : edges) {
      if (e.a < 0 || e.b < 0 || size_t(e.a) >= points.size() || size_t(e.b) >= points.size() ||
          e.a == e.b)
        throw InconsistentGKM("edge endpoints out of range");
      if (is_zero_vec(e.weight)) throw InconsistentGKM("edge with zero weight");
      // mu(b) - mu(a) parallel to the edge weight
      Weight d = vec_sub(points[e.b].mu, points[e.a].mu);
      size_t piv = 0;
      while (piv < e.weight.size() && e.weight[piv] == 0) ++piv;
      Rat c = d[piv] / e.weight[piv];
      if (!is_zero_vec(vec_sub(d, vec_scale(c, e.weight))))
        throw InconsistentGKM("moment difference not a multiple of the edge weight");
      for (int end : {e.a, e.b}) {
        auto& pool = unmatched[end];
        auto match = std::find_if(pool.begin(), pool.end(), [&](const Weight& w) {
          return w == e.weight || w == vec_neg(e.weight);
        });
        if (match == pool.end())
          throw InconsistentGKM("edge weight not among endpoint tangent weights");
        pool.erase(match);
      }
    }
    for (const auto& pool : unmatched)
      if (!pool.empty())
        throw InconsistentGKM("tangent weight without a matching edge");
  }
};

// Weights of the isotropy action on the tangent space in the analytic
// convention used by the index formula; the stored emanating-edge weights are
// their negatives.
inline std::vector<Weight> isotropy_weights(const FixedPoint& p) {
  std::vector<Weight> ws;
  ws.reserve(p.tangent_weights.size());
  for (const auto& w : p.tangent_weights) ws.push_back(vec_neg(w));
  return ws;
}

}  // namespace qr
