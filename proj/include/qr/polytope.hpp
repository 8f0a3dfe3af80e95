// Exact rational convex polytopes in small dimension, kept simultaneously as
// vertex and half-space descriptions that are cross-validated against each
// other on construction. Half-space normals use the plain dual pairing;
// metric constructions (projections, nearest points) take the gram matrix
// explicitly.
#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <vector>

#include "qr/errors.hpp"
#include "qr/linalg.hpp"
#include "qr/weights.hpp"

namespace qr {

struct AffineSubspace {
  VecQ base_point;
  MatQ direction_basis;  // rows; empty for a single point

  size_t ambient_dim() const { return base_point.size(); }
  size_t dim() const { return direction_basis.size(); }

  bool contains(const VecQ& x) const { return coords_of(x).has_value(); }

  // coordinates s with x = base + sum s_i * direction_i, if x lies on the
  // subspace
  std::optional<VecQ> coords_of(const VecQ& x) const {
    VecQ d = vec_sub(x, base_point);
    if (direction_basis.empty()) return is_zero_vec(d) ? std::make_optional(VecQ{}) : std::nullopt;
    MatQ cols(ambient_dim(), VecQ(dim()));
    for (size_t j = 0; j < dim(); ++j)
      for (size_t i = 0; i < ambient_dim(); ++i) cols[i][j] = direction_basis[j][i];
    auto sol = solve_linear(cols, d);
    if (!sol.consistent) return std::nullopt;
    return sol.particular;
  }

  VecQ point_at(const VecQ& s) const {
    VecQ x = base_point;
    for (size_t j = 0; j < dim(); ++j) x = vec_add(x, vec_scale(s[j], direction_basis[j]));
    return x;
  }
};

inline AffineSubspace affine_hull(const std::vector<VecQ>& points) {
  AffineSubspace a;
  a.base_point = points.at(0);
  MatQ diffs;
  for (size_t i = 1; i < points.size(); ++i) diffs.push_back(vec_sub(points[i], a.base_point));
  if (!diffs.empty()) {
    auto pivots = rref(diffs);
    diffs.resize(pivots.size());
    a.direction_basis = std::move(diffs);  // canonical: reduced echelon rows
  }
  return a;
}

inline bool affine_subspaces_equal(const AffineSubspace& a, const AffineSubspace& b) {
  if (a.dim() != b.dim()) return false;
  if (!a.contains(b.base_point)) return false;
  for (const auto& d : b.direction_basis)
    if (!a.contains(vec_add(a.base_point, d))) return false;
  return true;
}

// <normal, x> <= offset under the plain dual pairing
struct HalfSpace {
  VecQ normal;
  Rat offset;
};

class RationalPolytope {
 public:
  RationalPolytope() = default;

  static RationalPolytope from_points(std::vector<VecQ> points) {
    RationalPolytope p;
    if (points.empty()) return p;
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    p.empty_ = false;
    p.hull_ = affine_hull(points);
    p.build_from_local(p.to_local(points));
    return p;
  }

  // Intersection of half-spaces within an affine subspace. Throws EmptyP when
  // the result is empty or unbounded (a cone construction failure either way).
  static RationalPolytope intersect(const AffineSubspace& within,
                                    const std::vector<HalfSpace>& halfspaces) {
    size_t m = within.dim();
    // local form of each constraint: <n, base + B^T s> <= c
    MatQ normals;  // rows
    VecQ offsets;
    for (const auto& h : halfspaces) {
      VecQ loc(m);
      for (size_t j = 0; j < m; ++j) loc[j] = dot(h.normal, within.direction_basis[j]);
      normals.push_back(std::move(loc));
      offsets.push_back(h.offset - dot(h.normal, within.base_point));
    }
    auto feasible = [&](const VecQ& s) {
      for (size_t i = 0; i < normals.size(); ++i)
        if (dot(normals[i], s) > offsets[i]) return false;
      return true;
    };

    if (m == 0) {
      RationalPolytope p;
      if (feasible(VecQ{})) {
        p.empty_ = false;
        p.hull_ = within;
        p.vertices_ = {within.base_point};
      }
      return p;
    }

    // bounded iff no nonzero recession direction d with all <n_i, d> <= 0
    auto recession_free = [&]() {
      if (mat_rank(normals) < m) return false;  // recession cone contains a line
      // pointed cone: any nonzero element implies an extreme ray lying on
      // an (m-1)-subset of constraints with one-dimensional kernel
      auto is_recession = [&](const VecQ& d) {
        for (const auto& n : normals)
          if (dot(n, d) > 0) return false;
        return true;
      };
      if (m == 1) return !is_recession(VecQ{Rat(1)}) && !is_recession(VecQ{Rat(-1)});
      std::vector<size_t> subset(m - 1);
      bool found = false;
      auto rec = [&](auto&& self, size_t start, size_t depth) -> void {
        if (found) return;
        if (depth == m - 1) {
          MatQ sys;
          for (size_t i = 0; i < m - 1; ++i) sys.push_back(normals[subset[i]]);
          MatQ ker = nullspace(sys);
          if (ker.size() == 1 && (is_recession(ker[0]) || is_recession(vec_neg(ker[0]))))
            found = true;
          return;
        }
        for (size_t i = start; i < normals.size() && !found; ++i) {
          subset[depth] = i;
          self(self, i + 1, depth + 1);
        }
      };
      rec(rec, 0, 0);
      return !found;
    };
    if (!recession_free())
      throw EmptyP("half-space intersection is unbounded");

    // vertices: feasible solutions of m-subsets of tight constraints
    std::vector<VecQ> verts;
    std::vector<size_t> subset(m);
    auto enumerate = [&](auto&& self, size_t start, size_t depth) -> void {
      if (depth == m) {
        MatQ sys;
        VecQ rhs;
        for (size_t i = 0; i < m; ++i) {
          sys.push_back(normals[subset[i]]);
          rhs.push_back(offsets[subset[i]]);
        }
        if (mat_rank(sys) != m) return;
        auto sol = solve_linear(sys, rhs);
        if (sol.consistent && feasible(sol.particular))
          verts.push_back(within.point_at(sol.particular));
        return;
      }
      for (size_t i = start; i < normals.size(); ++i) {
        subset[depth] = i;
        self(self, i + 1, depth + 1);
      }
    };
    if (normals.size() >= m) enumerate(enumerate, 0, 0);
    if (verts.empty()) throw EmptyP("half-space intersection is empty");
    return from_points(std::move(verts));
  }

  bool empty() const { return empty_; }
  int dim() const { return empty_ ? -1 : int(hull_.dim()); }
  const std::vector<VecQ>& vertices() const { return vertices_; }
  const std::vector<HalfSpace>& halfspaces() const { return halfspaces_; }
  const AffineSubspace& hull() const { return hull_; }

  bool contains(const VecQ& x) const {
    if (empty_ || !hull_.contains(x)) return false;
    for (const auto& h : halfspaces_)
      if (dot(h.normal, x) > h.offset) return false;
    return true;
  }

  // membership in the relative interior (facet inequalities strict)
  bool relative_interior_contains(const VecQ& x) const {
    if (empty_ || !hull_.contains(x)) return false;
    for (const auto& h : halfspaces_)
      if (dot(h.normal, x) >= h.offset) return false;
    return true;
  }

 private:
  std::vector<VecQ> to_local(const std::vector<VecQ>& points) const {
    std::vector<VecQ> local;
    for (const auto& p : points) local.push_back(*hull_.coords_of(p));
    return local;
  }

  void build_from_local(const std::vector<VecQ>& local) {
    size_t m = hull_.dim();
    std::vector<VecQ> local_normals;
    VecQ local_offsets;

    if (m == 0) {
      vertices_ = {hull_.base_point};
      cross_validate(local, local_normals, local_offsets);
      return;
    }
    if (m == 1) {
      Rat lo = local[0][0], hi = local[0][0];
      for (const auto& p : local) {
        lo = std::min(lo, p[0]);
        hi = std::max(hi, p[0]);
      }
      local_normals = {VecQ{Rat(-1)}, VecQ{Rat(1)}};
      local_offsets = {-lo, hi};
    } else {
      // every m-subset of points spanning a hyperplane with all points on one
      // side contributes a facet
      std::set<std::pair<VecQ, Rat>> seen;
      std::vector<size_t> subset(m);
      auto consider = [&](VecQ n, Rat c) {
        // canonical positive scaling
        Rat scale;
        for (const auto& v : n)
          if (v != 0) {
            scale = v < 0 ? -v : v;
            break;
          }
        n = vec_scale(Rat(1) / scale, n);
        c /= scale;
        if (seen.emplace(n, c).second) {
          local_normals.push_back(n);
          local_offsets.push_back(c);
        }
      };
      auto rec = [&](auto&& self, size_t start, size_t depth) -> void {
        if (depth == m) {
          MatQ diffs;
          for (size_t i = 1; i < m; ++i)
            diffs.push_back(vec_sub(local[subset[i]], local[subset[0]]));
          if (mat_rank(diffs) != m - 1) return;
          MatQ ns = nullspace(diffs);
          if (ns.size() != 1) return;
          VecQ n = ns[0];
          Rat c = dot(n, local[subset[0]]);
          bool all_le = true, all_ge = true;
          for (const auto& p : local) {
            Rat v = dot(n, p);
            all_le = all_le && v <= c;
            all_ge = all_ge && v >= c;
          }
          if (all_le) consider(n, c);
          if (all_ge && !all_le) consider(vec_neg(n), -c);
          return;
        }
        for (size_t i = start; i < local.size(); ++i) {
          subset[depth] = i;
          self(self, i + 1, depth + 1);
        }
      };
      rec(rec, 0, 0);
    }

    // vertices: points whose active facet normals span the local space
    vertices_.clear();
    for (size_t i = 0; i < local.size(); ++i) {
      MatQ active;
      for (size_t h = 0; h < local_normals.size(); ++h)
        if (dot(local_normals[h], local[i]) == local_offsets[h]) active.push_back(local_normals[h]);
      if (mat_rank(active) == m) vertices_.push_back(hull_.point_at(local[i]));
    }
    std::sort(vertices_.begin(), vertices_.end());

    cross_validate(local, local_normals, local_offsets);

    // lift half-spaces to ambient coordinates: s = S (x - base) with
    // S = (B B^T)^{-1} B, so the ambient normal is S^T n
    const MatQ& b = hull_.direction_basis;
    MatQ bbt = mat_mul(b, mat_transpose(b));
    MatQ s_mat = mat_mul(*mat_inverse(bbt), b);
    halfspaces_.clear();
    for (size_t h = 0; h < local_normals.size(); ++h) {
      HalfSpace hs;
      hs.normal = mat_vec(mat_transpose(s_mat), local_normals[h]);
      hs.offset = local_offsets[h] + dot(hs.normal, hull_.base_point);
      halfspaces_.push_back(std::move(hs));
    }
  }

  // The V- and H-representations must describe the same set: every input
  // point satisfies every facet, and re-enumerating vertices from the facets
  // reproduces the vertex set exactly.
  void cross_validate(const std::vector<VecQ>& local, const MatQ& normals,
                      const VecQ& offsets) const {
    for (const auto& p : local)
      for (size_t h = 0; h < normals.size(); ++h)
        if (dot(normals[h], p) > offsets[h])
          throw Error("polytope internal error: point violates computed facet");
    size_t m = hull_.dim();
    if (m == 0) return;
    std::vector<VecQ> re;
    std::vector<size_t> subset(m);
    auto rec = [&](auto&& self, size_t start, size_t depth) -> void {
      if (depth == m) {
        MatQ sys;
        VecQ rhs;
        for (size_t i = 0; i < m; ++i) {
          sys.push_back(normals[subset[i]]);
          rhs.push_back(offsets[subset[i]]);
        }
        if (mat_rank(sys) != m) return;
        auto sol = solve_linear(sys, rhs);
        if (!sol.consistent) return;
        bool ok = true;
        for (size_t h = 0; h < normals.size() && ok; ++h)
          ok = dot(normals[h], sol.particular) <= offsets[h];
        if (ok) re.push_back(hull_.point_at(sol.particular));
        return;
      }
      for (size_t i = start; i < normals.size(); ++i) {
        subset[depth] = i;
        self(self, i + 1, depth + 1);
      }
    };
    rec(rec, 0, 0);
    std::sort(re.begin(), re.end());
    re.erase(std::unique(re.begin(), re.end()), re.end());
    if (re != vertices_)
      throw Error("polytope internal error: V/H cross-validation failed");
  }

  bool empty_ = true;
  AffineSubspace hull_;
  std::vector<VecQ> vertices_;
  std::vector<HalfSpace> halfspaces_;
};

// Gram-orthogonal projection of x onto an affine subspace.
inline VecQ gram_project(const WeightLattice& lat, const AffineSubspace& a, const VecQ& x) {
  if (a.dim() == 0) return a.base_point;
  const MatQ& b = a.direction_basis;
  size_t m = a.dim();
  MatQ sys(m, VecQ(m));
  VecQ rhs(m);
  VecQ d = vec_sub(x, a.base_point);
  for (size_t i = 0; i < m; ++i) {
    for (size_t j = 0; j < m; ++j) sys[i][j] = lat.pair(b[i], b[j]);
    rhs[i] = lat.pair(b[i], d);
  }
  auto sol = solve_linear(sys, rhs);
  return a.point_at(sol.particular);  // gram PD => always solvable
}

// Nearest point of an affine subspace to the origin in the gram metric.
inline VecQ nearest_point_to_origin(const WeightLattice& lat, const AffineSubspace& a) {
  return gram_project(lat, a, zero_vec(a.ambient_dim()));
}

}  // namespace qr
