// Quasi-polynomials on Z x Lambda: exact per-coset polynomial fits over a
// cone region, validated on held-out lattice points, refined to the true
// period lattice by coset merging, plus ray restriction and an exact
// equality test on a determining grid.
#pragma once

#include <functional>
#include <map>
#include <vector>

#include "qr/errors.hpp"
#include "qr/lattice.hpp"
#include "qr/moment_geometry.hpp"

namespace qr {

// Multivariate polynomial with rational coefficients, keyed by exponent
// vectors in the variables (k, lambda_1, ..., lambda_r).
struct Polynomial {
  std::map<std::vector<int>, Rat> terms;

  Rat evaluate(const VecQ& x) const {
    Rat total(0);
    for (const auto& [expo, coeff] : terms) {
      Rat m = coeff;
      for (size_t i = 0; i < expo.size(); ++i)
        for (int e = 0; e < expo[i]; ++e) m *= x[i];
      total += m;
    }
    return total;
  }

  bool operator==(const Polynomial& other) const { return terms == other.terms; }
};

inline std::vector<std::vector<int>> monomials_up_to_degree(size_t nvars, int degree) {
  std::vector<std::vector<int>> out;
  std::vector<int> e(nvars, 0);
  auto rec = [&](auto&& self, size_t i, int left) -> void {
    if (i == nvars) {
      out.push_back(e);
      return;
    }
    for (int d = 0; d <= left; ++d) {
      e[i] = d;
      self(self, i + 1, left - d);
    }
    e[i] = 0;
  };
  rec(rec, 0, degree);
  return out;
}

struct QuasiPolynomial {
  size_t nvars = 0;
  MatZ period;                         // HNF rows, full-rank sublattice of Z^nvars
  std::map<VecZ, Polynomial> cosets;   // canonical representative -> polynomial
  int degree_bound = 0;
  int scalar_period = 0;               // the N that validated before refinement

  Rat evaluate(const VecZ& x) const {
    VecZ rep = reduce_mod_lattice(x, period);
    auto it = cosets.find(rep);
    if (it == cosets.end()) return Rat(0);
    VecQ xq;
    for (const auto& v : x) xq.push_back(Rat(v));
    return it->second.evaluate(xq);
  }
  Rat evaluate(const Int& k, const VecZ& lambda) const {
    VecZ x{k};
    x.insert(x.end(), lambda.begin(), lambda.end());
    return evaluate(x);
  }
};

// All coset representatives of a full-rank HNF lattice, canonicalized.
inline std::vector<VecZ> coset_representatives(const MatZ& hnf) {
  size_t n = hnf.size();
  std::vector<VecZ> reps;
  VecZ z(n, 0);
  auto rec = [&](auto&& self, size_t i) -> void {
    if (i == n) {
      reps.push_back(reduce_mod_lattice(z, hnf));
      return;
    }
    for (Int v = 0; v < hnf[i][i]; ++v) {
      z[i] = v;
      self(self, i + 1);
    }
  };
  rec(rec, 0);
  std::sort(reps.begin(), reps.end());
  reps.erase(std::unique(reps.begin(), reps.end()), reps.end());
  return reps;
}

// Lattice points (k, lambda) of the cone with k in [k_min, k_max].
inline std::vector<VecZ> cone_lattice_points(const ConeRegion& region, const Int& k_min,
                                             const Int& k_max) {
  std::vector<VecZ> out;
  size_t r = region.base.empty() ? 0 : region.base.vertices()[0].size();
  for (Int k = k_min; k <= k_max; ++k) {
    if (k <= 0) continue;
    VecZ lo(r), hi(r);
    for (size_t i = 0; i < r; ++i) {
      Rat mn = region.base.vertices()[0][i], mx = mn;
      for (const auto& v : region.base.vertices()) {
        mn = std::min(mn, v[i]);
        mx = std::max(mx, v[i]);
      }
      lo[i] = ceil_rat(Rat(k) * mn);
      hi[i] = floor_rat(Rat(k) * mx);
    }
    VecZ lambda = lo;
    if (box_empty({lo, hi})) continue;
    for (;;) {
      VecQ xq;
      for (const auto& v : lambda) xq.push_back(Rat(v));
      if (region.contains(Rat(k), xq)) {
        VecZ x{k};
        x.insert(x.end(), lambda.begin(), lambda.end());
        out.push_back(std::move(x));
      }
      size_t i = 0;
      while (i < r && lambda[i] == hi[i]) {
        lambda[i] = lo[i];
        ++i;
      }
      if (i == r) break;
      ++lambda[i];
    }
  }
  return out;
}

namespace detail {

// Exact per-coset solve at fixed scalar period and degree; empty cosets get
// the zero polynomial and the held-out points decide whether that stands.
inline std::optional<std::map<VecZ, Polynomial>> try_fit(
    const std::function<Int(const VecZ&)>& sampler, const std::vector<VecZ>& training,
    size_t nvars, int period, int degree) {
  MatZ lat = matz_identity(int(nvars));
  for (size_t i = 0; i < nvars; ++i) lat[i][i] = period;
  std::map<VecZ, std::vector<const VecZ*>> by_coset;
  for (const auto& x : training) by_coset[reduce_mod_lattice(x, lat)].push_back(&x);

  auto monos = monomials_up_to_degree(nvars, degree);
  std::map<VecZ, Polynomial> fit;
  for (const auto& [rep, pts] : by_coset) {
    MatQ a(pts.size(), VecQ(monos.size()));
    VecQ b(pts.size());
    for (size_t i = 0; i < pts.size(); ++i) {
      VecQ xq;
      for (const auto& v : *pts[i]) xq.push_back(Rat(v));
      for (size_t j = 0; j < monos.size(); ++j) {
        Rat m(1);
        for (size_t d = 0; d < nvars; ++d)
          for (int e = 0; e < monos[j][d]; ++e) m *= xq[d];
        a[i][j] = m;
      }
      b[i] = Rat(sampler(*pts[i]));
    }
    auto sol = solve_linear(a, b);
    if (!sol.consistent) return std::nullopt;
    Polynomial p;
    for (size_t j = 0; j < monos.size(); ++j)
      if (sol.particular[j] != 0) p.terms[monos[j]] = sol.particular[j];
    fit.emplace(rep, std::move(p));
  }
  return fit;
}

// Refine a scalar-period fit to the true period lattice: every translation
// that maps the coset-to-polynomial assignment to itself joins the lattice.
inline QuasiPolynomial merge_cosets(std::map<VecZ, Polynomial> raw, size_t nvars, int period,
                                    int degree) {
  MatZ scalar_lat = matz_identity(int(nvars));
  for (size_t i = 0; i < nvars; ++i) scalar_lat[i][i] = period;
  auto reps = coset_representatives(scalar_lat);
  auto poly_at = [&](const VecZ& x) -> const Polynomial& {
    static const Polynomial zero{};
    auto it = raw.find(reduce_mod_lattice(x, scalar_lat));
    return it == raw.end() ? zero : it->second;
  };

  MatZ gens = scalar_lat;
  for (const auto& v : reps) {
    if (std::all_of(v.begin(), v.end(), [](const Int& x) { return x == 0; })) continue;
    bool invariant = true;
    for (const auto& c : reps) {
      VecZ shifted(nvars);
      for (size_t i = 0; i < nvars; ++i) shifted[i] = c[i] + v[i];
      if (!(poly_at(c) == poly_at(shifted))) {
        invariant = false;
        break;
      }
    }
    if (invariant) gens.push_back(v);
  }

  QuasiPolynomial qp;
  qp.nvars = nvars;
  qp.period = hnf_rows(gens);
  qp.degree_bound = degree;
  qp.scalar_period = period;
  for (const auto& rep : coset_representatives(qp.period))
    qp.cosets[rep] = poly_at(rep);
  return qp;
}

}  // namespace detail

// Fit a quasi-polynomial to sampled integer data: minimal scalar period
// first, then minimal degree; candidates must reproduce every held-out
// point exactly.
inline QuasiPolynomial fit_quasipolynomial(const std::function<Int(const VecZ&)>& sampler,
                                           const std::vector<VecZ>& training,
                                           const std::vector<VecZ>& holdout, size_t nvars,
                                           int degree_bound, int period_bound) {
  if (training.empty())
    throw NotQuasiPolynomial(period_bound, degree_bound, "no training points in the region");
  for (int period = 1; period <= period_bound; ++period) {
    for (int degree = 0; degree <= degree_bound; ++degree) {
      if (holdout.size() < monomials_up_to_degree(nvars, degree).size())
        continue;  // not enough held-out points to defend this unknown count
      auto fit = detail::try_fit(sampler, training, nvars, period, degree);
      if (!fit) continue;
      QuasiPolynomial qp = detail::merge_cosets(std::move(*fit), nvars, period, degree);
      bool valid = true;
      for (const auto& x : holdout)
        if (qp.evaluate(x) != Rat(sampler(x))) {
          valid = false;
          break;
        }
      if (valid) return qp;
    }
  }
  throw NotQuasiPolynomial(period_bound, degree_bound,
                           "no quasi-polynomial within the period and degree bounds");
}

// Fit over the cone region: train on shallow levels, validate on everything
// up to the horizon.
inline QuasiPolynomial fit_on_cone(const std::function<Int(const VecZ&)>& sampler,
                                   const ConeRegion& region, int degree_bound, int period_bound,
                                   Int k_train = 14, Int k_horizon = 30) {
  auto training = cone_lattice_points(region, 1, k_train);
  auto holdout = cone_lattice_points(region, k_train + 1, k_horizon);
  return fit_quasipolynomial(sampler, training, holdout, training.empty() ? 1 : training[0].size(),
                             degree_bound, period_bound);
}

// Least positive n with n*xi integral.
inline Int ray_denominator(const VecQ& xi) {
  Int n = 1;
  for (const auto& c : xi) n = lcm(n, den(c));
  return n;
}

// One-variable quasi-polynomial f(k) = sampler(k, k*xi) on the ray through
// xi, with domain the positive multiples of the ray denominator.
inline QuasiPolynomial restrict_to_ray(const std::function<Int(const Int&, const VecZ&)>& sampler,
                                       const ConeRegion& region, const VecQ& xi, int degree_bound,
                                       int period_bound) {
  if (!region.base.contains(xi))
    throw NotInRegion("ray direction is not in the base polytope");
  Int n = ray_denominator(xi);

  auto on_ray = [&](const VecZ& j) {
    Int k = n * j[0];
    VecZ lambda(xi.size());
    for (size_t i = 0; i < xi.size(); ++i) lambda[i] = num(Rat(k) * xi[i]);
    return sampler(k, lambda);
  };
  std::vector<VecZ> training, holdout;
  for (Int j = 1; j <= 14; ++j) training.push_back(VecZ{j});
  for (Int j = 15; j <= 30; ++j) holdout.push_back(VecZ{j});
  QuasiPolynomial in_j = fit_quasipolynomial(on_ray, training, holdout, 1, degree_bound,
                                             period_bound);

  // rewrite from the step variable j to k = n*j
  QuasiPolynomial f;
  f.nvars = 1;
  f.period = MatZ{VecZ{in_j.period[0][0] * n}};
  f.degree_bound = in_j.degree_bound;
  f.scalar_period = in_j.scalar_period;
  for (const auto& [rep, poly] : in_j.cosets) {
    Polynomial pk;
    for (const auto& [expo, coeff] : poly.terms) {
      Rat scaled = coeff;
      for (int e = 0; e < expo[0]; ++e) scaled /= Rat(n);
      pk.terms[expo] = scaled;
    }
    VecZ krep = reduce_mod_lattice(VecZ{rep[0] * n}, f.period);
    f.cosets[krep] = std::move(pk);
  }
  for (const auto& rep : coset_representatives(f.period))
    if (!f.cosets.count(rep)) f.cosets[rep] = Polynomial{};  // off the ray domain
  return f;
}

// Exact equality of two quasi-polynomials as functions on the lattice points
// of a full-dimensional cone region: per coset of the common period
// refinement, values are compared on a determining product grid deep inside
// the cone.
inline bool quasipoly_equal(const QuasiPolynomial& a, const QuasiPolynomial& b,
                            const ConeRegion& region) {
  if (a.nvars != b.nvars) return false;
  size_t n = a.nvars;
  if (region.base.dim() + 1 != int(n))
    throw Error("quasi-polynomial comparison needs a full-dimensional cone region");

  MatZ common = lattice_intersection(a.period, b.period);
  int degree = std::max(a.degree_bound, b.degree_bound);

  VecQ centroid = zero_vec(n - 1);
  for (const auto& v : region.base.vertices()) centroid = vec_add(centroid, v);
  centroid = vec_scale(Rat(1, int(region.base.vertices().size())), centroid);

  for (const auto& rep : coset_representatives(common)) {
    // snap T*(1, centroid) into this coset, then walk a (degree+1)^n grid
    // along the lattice basis; grow T until the whole grid sits in the cone
    bool placed = false;
    for (Int t = 4; t < (Int(1) << 62) && !placed; t *= 2) {
      VecQ target{Rat(t)};
      for (const auto& c : centroid) target.push_back(Rat(t) * c);
      VecQ diff = target;
      for (size_t i = 0; i < n; ++i) diff[i] -= Rat(rep[i]);
      MatQ basis_cols(n, VecQ(n));
      for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) basis_cols[i][j] = Rat(common[j][i]);
      auto sol = solve_linear(basis_cols, diff);
      VecZ base = rep;
      for (size_t j = 0; j < n; ++j) {
        Int rounded = floor_rat(sol.particular[j] + Rat(1, 2));
        for (size_t i = 0; i < n; ++i) base[i] += rounded * common[j][i];
      }
      // enumerate the grid and verify containment first
      std::vector<VecZ> grid;
      std::vector<int> step(n, 0);
      bool inside = true;
      for (;;) {
        VecZ x = base;
        for (size_t j = 0; j < n; ++j)
          for (size_t i = 0; i < n; ++i) x[i] += Int(step[j]) * common[j][i];
        VecQ lambda;
        for (size_t i = 1; i < n; ++i) lambda.push_back(Rat(x[i]));
        if (x[0] <= 0 || !region.contains(Rat(x[0]), lambda)) {
          inside = false;
          break;
        }
        grid.push_back(std::move(x));
        size_t j = 0;
        while (j < n && step[j] == degree) step[j++] = 0;
        if (j == n) break;
        ++step[j];
      }
      if (!inside) continue;
      placed = true;
      for (const auto& x : grid)
        if (a.evaluate(x) != b.evaluate(x)) return false;
    }
    if (!placed) throw Error("could not place a determining grid inside the cone");
  }
  return true;
}

}  // namespace qr
