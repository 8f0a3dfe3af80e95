// Polyhedral geometry of the moment image: the moment polytope and its
// affine hull, the fixed-locus components of subtori read off the GKM graph,
// the small generic shift gamma with its decidable certificates, the
// supporting half-spaces attached to components, and the polytope p whose
// cone is the region where multiplicities are quasi-polynomial.
#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "qr/errors.hpp"
#include "qr/lattice.hpp"
#include "qr/model.hpp"
#include "qr/polytope.hpp"
#include "qr/root_system.hpp"

namespace qr {

// Moment polytope: convex hull of the fixed-point images cut to the dominant
// chamber.
inline RationalPolytope moment_polytope(const FixedPointModel& model, const RootSystem& rs) {
  std::vector<VecQ> mus;
  for (const auto& p : model.points) mus.push_back(p.mu);
  RationalPolytope hull = RationalPolytope::from_points(mus);
  if (rs.is_torus()) return hull;
  std::vector<HalfSpace> constraints = hull.halfspaces();
  for (const auto& alpha : rs.positive_roots) {
    HalfSpace h;
    h.normal = vec_neg(mat_vec(model.lattice.gram, alpha));  // <xi, alpha> >= 0
    h.offset = Rat(0);
    constraints.push_back(std::move(h));
  }
  return RationalPolytope::intersect(hull.hull(), constraints);
}

// One connected fixed-locus component of a subtorus, read off the GKM graph.
struct ComponentDatum {
  std::vector<int> vertex_set;          // sorted fixed-point indices
  MatZ subtorus_basis;                  // rows span the fixing subtorus t_C
  AffineSubspace moment_hull;           // A_C, affine hull of the mu values
  std::vector<Weight> normal_weights;   // isotropy weights normal to C at the anchor vertex

  // filled in by component_halfspaces
  VecQ gamma_c;                         // projection of gamma onto A_C
  VecQ tau_c;                           // gamma_c - gamma
  Weight sigma_c;                       // support weight sum
  std::optional<HalfSpace> halfspace;   // {xi : <tau_c, xi> <= <tau_c, gamma_c>}, plain form
  bool distinguished = false;           // A_C equals the principal hull I
  bool contributing = false;            // gamma_c lies in the mu-hull of the component
};

namespace detail {

// primitive representative of the line through w, first nonzero entry positive
inline VecZ direction_key(const Weight& w) {
  VecZ v = weight_to_int(w);
  Int g = 0;
  for (const auto& x : v) g = boost::multiprecision::gcd(g, x < 0 ? Int(-x) : x);
  for (auto& x : v) x /= g;
  for (const auto& x : v) {
    if (x == 0) continue;
    if (x < 0)
      for (auto& y : v) y = -y;
    break;
  }
  return v;
}

inline bool vanishes_on(const Weight& w, const MatZ& basis) {
  for (const auto& b : basis) {
    Rat s(0);
    for (size_t i = 0; i < w.size(); ++i) s += w[i] * Rat(b[i]);
    if (s != 0) return false;
  }
  return true;
}

// weight restricted to the subtorus spanned by the basis rows
inline VecQ restrict_weight(const Weight& w, const MatZ& basis) {
  VecQ r;
  for (const auto& b : basis) {
    Rat s(0);
    for (size_t i = 0; i < w.size(); ++i) s += w[i] * Rat(b[i]);
    r.push_back(s);
  }
  return r;
}

}  // namespace detail

// Connected components of subtorus fixed loci. For every subset of the
// occurring edge-weight directions, take the subgraph of edges whose weights
// vanish on the kernel subtorus and collect its connected components;
// components are deduplicated by vertex set, and each carries the subtorus
// cut out by its own internal edges, the affine hull of its moment values,
// and the normal isotropy weights at an anchor vertex (validated to restrict
// consistently across all its vertices).
inline std::vector<ComponentDatum> enumerate_components(const FixedPointModel& model) {
  model.validate();
  model.validate_edges();
  const size_t n = model.points.size();

  std::vector<VecZ> directions;
  {
    std::set<VecZ> seen;
    for (const auto& e : model.edges)
      if (seen.insert(detail::direction_key(e.weight)).second)
        directions.push_back(*seen.find(detail::direction_key(e.weight)));
  }
  if (directions.size() > 20)
    throw InputError("too many distinct edge-weight directions to enumerate subtori");

  std::map<std::vector<int>, ComponentDatum> by_vertex_set;
  for (size_t mask = 0; mask < (size_t(1) << directions.size()); ++mask) {
    MatZ rows;
    for (size_t i = 0; i < directions.size(); ++i)
      if (mask & (size_t(1) << i)) rows.push_back(directions[i]);
    MatZ kernel = rows.empty() ? matz_identity(model.lattice.rank)
                               : integer_kernel(rows);

    // connected components of the subgraph of edges vanishing on the kernel
    std::vector<int> comp(n, -1);
    std::vector<std::vector<int>> adj(n);
    for (const auto& e : model.edges)
      if (detail::vanishes_on(e.weight, kernel)) {
        adj[e.a].push_back(e.b);
        adj[e.b].push_back(e.a);
      }
    int ncomp = 0;
    for (size_t s = 0; s < n; ++s) {
      if (comp[s] >= 0) continue;
      std::vector<size_t> stack{s};
      comp[s] = ncomp;
      while (!stack.empty()) {
        size_t v = stack.back();
        stack.pop_back();
        for (int w : adj[v])
          if (comp[w] < 0) {
            comp[w] = ncomp;
            stack.push_back(size_t(w));
          }
      }
      ++ncomp;
    }
    std::vector<std::vector<int>> groups(ncomp);
    for (size_t v = 0; v < n; ++v) groups[comp[v]].push_back(int(v));

    for (auto& vs : groups) {
      std::sort(vs.begin(), vs.end());
      if (by_vertex_set.count(vs)) continue;
      ComponentDatum c;
      c.vertex_set = vs;

      // subtorus cut out by the component's own internal edges
      std::set<int> in_set(vs.begin(), vs.end());
      MatZ internal;
      for (const auto& e : model.edges)
        if (in_set.count(e.a) && in_set.count(e.b))
          internal.push_back(weight_to_int(e.weight));
      c.subtorus_basis = internal.empty() ? matz_identity(model.lattice.rank)
                                          : integer_kernel(internal);

      std::vector<VecQ> mus;
      for (int v : vs) mus.push_back(model.points[v].mu);
      c.moment_hull = affine_hull(mus);

      // normal weights: isotropy weights at each vertex not vanishing on t_C;
      // their restrictions to t_C must agree across vertices
      std::optional<std::vector<VecQ>> restricted_ref;
      for (int v : vs) {
        std::vector<Weight> normals;
        std::vector<VecQ> restricted;
        for (const auto& w : isotropy_weights(model.points[v]))
          if (!detail::vanishes_on(w, c.subtorus_basis)) {
            normals.push_back(w);
            restricted.push_back(detail::restrict_weight(w, c.subtorus_basis));
          }
        std::sort(restricted.begin(), restricted.end());
        if (!restricted_ref) {
          restricted_ref = restricted;
          c.normal_weights = std::move(normals);
        } else if (restricted != *restricted_ref) {
          throw InconsistentGKM("component normal weights differ between vertices");
        }
      }
      by_vertex_set.emplace(vs, std::move(c));
    }
  }

  std::vector<ComponentDatum> out;
  for (auto& [vs, c] : by_vertex_set) out.push_back(std::move(c));
  return out;
}

// Consistency checks tying components to the principal hull: moment values
// lie on A_C and codimensions match the subtorus drop.
inline void validate_components(const FixedPointModel& model,
                                const std::vector<ComponentDatum>& components,
                                const AffineSubspace& principal_hull) {
  MatZ all;
  for (const auto& e : model.edges) all.push_back(weight_to_int(e.weight));
  size_t t_i_dim = all.empty() ? size_t(model.lattice.rank) : integer_kernel(all).size();
  for (const auto& c : components) {
    for (int v : c.vertex_set)
      if (!c.moment_hull.contains(model.points[v].mu))
        throw InconsistentGKM("component moment value off its affine hull");
    size_t drop = c.subtorus_basis.size() - t_i_dim;
    if (c.moment_hull.dim() + drop != principal_hull.dim())
      throw InconsistentGKM("component affine hull has unexpected dimension");
  }
}

// Decidable certificate that the open segment (0, gamma_i] stays inside the
// relative interior of delta and off every wall A_C cut by a proper
// component: then gamma_i sits in a weakly regular chamber whose closure
// contains 0.
inline bool segment_weakly_regular(const RationalPolytope& delta,
                                   const std::vector<ComponentDatum>& components,
                                   const AffineSubspace& principal_hull, const VecQ& gamma_i) {
  if (is_zero_vec(gamma_i)) return delta.dim() == 0 && delta.contains(gamma_i);
  // facets: f(t) = t<n,gamma_i> - c must be negative on (0,1]
  for (const auto& h : delta.halfspaces()) {
    Rat slope = dot(h.normal, gamma_i);
    if (h.offset > 0) {
      if (slope - h.offset >= 0) return false;
    } else {  // 0 on this facet
      if (slope >= 0) return false;
    }
  }
  // walls: t*gamma_i must not meet A_C for any t in (0,1]
  for (const auto& c : components) {
    if (affine_subspaces_equal(c.moment_hull, principal_hull)) continue;
    const AffineSubspace& a = c.moment_hull;
    // unknowns (t, s): t*gamma_i - sum s_j d_j = base
    size_t n = gamma_i.size(), m = a.dim();
    MatQ sys(n, VecQ(1 + m));
    for (size_t i = 0; i < n; ++i) {
      sys[i][0] = gamma_i[i];
      for (size_t j = 0; j < m; ++j) sys[i][1 + j] = -a.direction_basis[j][i];
    }
    auto sol = solve_linear(sys, a.base_point);
    if (!sol.consistent) continue;
    bool t_free = false;
    for (const auto& dir : nullspace(sys))
      if (dir[0] != 0) t_free = true;
    if (t_free) return false;  // a whole line of t values meets the wall
    Rat t0 = sol.particular[0];
    if (t0 > 0 && t0 <= 1) return false;
  }
  return true;
}

// A weakly regular value: in the relative interior of delta and off all
// proper component walls.
inline bool weakly_regular(const VecQ& xi, const RationalPolytope& delta,
                           const std::vector<ComponentDatum>& components) {
  if (!delta.relative_interior_contains(xi)) return false;
  const AffineSubspace& principal = delta.hull();
  for (const auto& c : components) {
    if (affine_subspaces_equal(c.moment_hull, principal)) continue;
    if (c.moment_hull.contains(xi)) return false;
  }
  return true;
}

struct GammaChoice {
  VecQ gamma;
  VecQ gamma_i;  // projection onto the principal hull
  int candidates_tried = 0;
};

// The three decidable conditions a shift gamma must satisfy.
inline bool gamma_conditions_hold(const VecQ& gamma, const FixedPointModel& model,
                                  const RootSystem& rs, const RationalPolytope& delta,
                                  const std::vector<ComponentDatum>& components) {
  const WeightLattice& lat = model.lattice;
  for (const auto& alpha : rs.simple_roots)
    if (lat.pair(gamma, alpha) <= 0) return false;  // open dominant side
  VecQ origin = zero_vec(size_t(lat.rank));
  for (const auto& c : components) {
    if (c.moment_hull.contains(origin)) continue;
    VecQ a_c = nearest_point_to_origin(lat, c.moment_hull);
    if (lat.norm2(gamma) >= lat.norm2(a_c)) return false;  // (1) smaller than every gap
  }
  const AffineSubspace& principal = delta.hull();
  VecQ gamma_i = gram_project(lat, principal, gamma);
  if (!segment_weakly_regular(delta, components, principal, gamma_i)) return false;  // (2)
  for (const auto& c : components) {
    if (affine_subspaces_equal(c.moment_hull, principal)) continue;
    if (gram_project(lat, c.moment_hull, gamma) == gamma_i) return false;  // (3) genericity
  }
  return true;
}

// Deterministic sweep for gamma: shrinking multiples of a fixed direction
// list, first candidate that passes all three conditions wins.
inline GammaChoice choose_gamma(const FixedPointModel& model, const RootSystem& rs,
                                const RationalPolytope& delta,
                                const std::vector<ComponentDatum>& components) {
  VecQ origin = zero_vec(size_t(model.lattice.rank));
  if (!delta.contains(origin))
    throw ZeroNotInDelta("0 is not in the moment polytope");

  size_t r = size_t(model.lattice.rank);
  std::vector<VecQ> dirs;
  dirs.push_back(VecQ(r, Rat(1)));
  for (size_t i = 0; i < r && r > 1; ++i) {
    VecQ e(r, Rat(0));
    e[i] = 1;
    dirs.push_back(e);
    VecQ bump(r, Rat(1));
    bump[i] = 2;
    dirs.push_back(bump);
  }
  {
    VecQ ramp(r), pow2(r);
    Rat p(1);
    for (size_t i = 0; i < r; ++i, p *= 2) {
      ramp[i] = Rat(int(i) + 1);
      pow2[i] = p;
    }
    dirs.push_back(ramp);
    dirs.push_back(pow2);
  }

  GammaChoice choice;
  Rat eps(1, 4);
  for (int halvings = 0; halvings < 40; ++halvings, eps /= 2) {
    for (const auto& u : dirs) {
      VecQ gamma = vec_scale(eps, u);
      ++choice.candidates_tried;
      if (gamma_conditions_hold(gamma, model, rs, delta, components)) {
        choice.gamma = gamma;
        choice.gamma_i = gram_project(model.lattice, delta.hull(), gamma);
        return choice;
      }
    }
  }
  throw GammaSearchExhausted("no gamma candidate satisfied all conditions; pass one explicitly");
}

// Fill per-component gamma_c, tau_c, sigma_c and the supporting half-space.
inline std::vector<ComponentDatum> component_halfspaces(std::vector<ComponentDatum> components,
                                                        const VecQ& gamma,
                                                        const FixedPointModel& model,
                                                        const RootSystem& rs,
                                                        const AffineSubspace& principal_hull) {
  const WeightLattice& lat = model.lattice;
  for (auto& c : components) {
    c.gamma_c = gram_project(lat, c.moment_hull, gamma);
    c.tau_c = vec_sub(c.gamma_c, gamma);
    c.distinguished = affine_subspaces_equal(c.moment_hull, principal_hull);

    c.sigma_c = zero_vec(size_t(lat.rank));
    for (const auto& delta_w : c.normal_weights)
      if (lat.pair(c.tau_c, delta_w) > 0) c.sigma_c = vec_add(c.sigma_c, delta_w);
    for (const auto& alpha : rs.positive_roots)
      if (lat.pair(c.tau_c, alpha) > 0) c.sigma_c = vec_sub(c.sigma_c, alpha);

    std::vector<VecQ> mus;
    for (int v : c.vertex_set) mus.push_back(model.points[v].mu);
    c.contributing = RationalPolytope::from_points(mus).contains(c.gamma_c);

    if (!c.distinguished && !is_zero_vec(c.tau_c)) {
      HalfSpace h;
      h.normal = mat_vec(lat.gram, c.tau_c);  // plain form of <tau_c, xi>
      h.offset = lat.pair(c.tau_c, c.gamma_c);
      c.halfspace = std::move(h);
    }
  }
  return components;
}

// The region of quasi-polynomial behavior: the cone over p at height one.
struct ConeRegion {
  RationalPolytope base;  // p, inside the principal hull

  bool contains(const Rat& k, const VecQ& xi) const {
    return k > 0 && base.contains(vec_scale(Rat(1) / k, xi));
  }
  bool contains_weight(const Int& k, const Weight& lambda) const {
    return k > 0 && contains(Rat(k), lambda);
  }
};

struct PolytopeP {
  RationalPolytope p;
  ConeRegion cone;
  std::vector<size_t> certificate_indices;  // components whose half-space cut p
};

// p = I intersected with the half-spaces of contributing proper components.
inline PolytopeP polytope_p(const AffineSubspace& principal_hull,
                            const std::vector<ComponentDatum>& components,
                            const RationalPolytope& delta) {
  VecQ origin = zero_vec(principal_hull.ambient_dim());
  if (!delta.contains(origin))
    throw ZeroNotInDelta("0 is not in the moment polytope");

  PolytopeP out;
  std::vector<HalfSpace> cuts;
  for (size_t i = 0; i < components.size(); ++i) {
    const auto& c = components[i];
    if (!c.halfspace || !c.contributing) continue;
    cuts.push_back(*c.halfspace);
    out.certificate_indices.push_back(i);
  }
  if (principal_hull.dim() == 0) {
    out.p = RationalPolytope::from_points({principal_hull.base_point});
  } else {
    out.p = RationalPolytope::intersect(principal_hull, cuts);
  }
  if (!out.p.contains(origin))
    throw EmptyP("constructed polytope does not contain 0; retry with another gamma");
  if (out.p.dim() != delta.dim())
    throw EmptyP("constructed polytope has wrong dimension; retry with another gamma");
  out.cone.base = out.p;
  return out;
}

// Everything the fitting and reduction stages need, bundled.
struct MomentGeometry {
  RationalPolytope delta;
  AffineSubspace principal_hull;
  std::vector<ComponentDatum> components;
  GammaChoice gamma;
  PolytopeP region;
};

inline MomentGeometry analyze_moment_geometry(const FixedPointModel& model, const RootSystem& rs,
                                              std::optional<VecQ> gamma_override = std::nullopt) {
  MomentGeometry g;
  g.delta = moment_polytope(model, rs);
  g.principal_hull = g.delta.hull();
  g.components = enumerate_components(model);
  validate_components(model, g.components, g.principal_hull);
  if (gamma_override) {
    if (!g.delta.contains(zero_vec(size_t(model.lattice.rank))))
      throw ZeroNotInDelta("0 is not in the moment polytope");
    if (!gamma_conditions_hold(*gamma_override, model, rs, g.delta, g.components))
      throw InputError("supplied gamma fails the shift conditions");
    g.gamma.gamma = *gamma_override;
    g.gamma.gamma_i = gram_project(model.lattice, g.principal_hull, *gamma_override);
  } else {
    g.gamma = choose_gamma(model, rs, g.delta, g.components);
  }
  g.components = component_halfspaces(std::move(g.components), g.gamma.gamma, model, rs,
                                      g.principal_hull);
  g.region = polytope_p(g.principal_hull, g.components, g.delta);
  return g;
}

}  // namespace qr
