// Reduced-space side of the verification: finite stabilizer data at a weakly
// regular level, the dimension-zero orbifold point sum, and the certificate
// assembly comparing it (or a fitted quasi-polynomial) against localization.
#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qr/errors.hpp"
#include "qr/localization.hpp"
#include "qr/moment_geometry.hpp"
#include "qr/quasipoly.hpp"

namespace qr {

inline Rat frac(const Rat& q) { return q - Rat(floor_rat(q)); }

// One orbifold point of a dimension-zero reduced space: the phase of each
// stabilizer element on the line bundle fiber, aligned with the group list.
struct OrbifoldPoint {
  std::vector<Rat> gl_phase;  // values in [0,1)
};

// Stabilizer data at a weakly regular level: the finite abelian group as
// rational rotation vectors mod 1, its order, and the orbifold points.
struct ReducedLevelData {
  VecQ xi;
  std::vector<VecQ> group;  // canonical: entries in [0,1), sorted, contains 0
  Int d = 0;                // |group|, the generic isotropy size
  std::vector<OrbifoldPoint> points;

  void validate() const {
    if (group.empty()) throw InputError("stabilizer group is empty");
    std::set<VecQ> members(group.begin(), group.end());
    if (Int(group.size()) != d) throw InputError("stabilizer order does not match d");
    if (members.size() != group.size()) throw InputError("duplicate stabilizer elements");
    for (const auto& g : group)
      for (const auto& c : g)
        if (c < 0 || c >= 1) throw InputError("stabilizer element not reduced mod 1");
    if (!members.count(zero_vec(group[0].size())))
      throw InputError("stabilizer group lacks the identity");
    auto index_of = [&](const VecQ& g) {
      auto it = std::find(group.begin(), group.end(), g);
      if (it == group.end()) throw InputError("stabilizer group not closed under addition");
      return size_t(it - group.begin());
    };
    for (size_t i = 0; i < group.size(); ++i)
      for (size_t j = 0; j < group.size(); ++j) {
        VecQ sum = vec_add(group[i], group[j]);
        for (auto& c : sum) c = frac(c);
        size_t k = index_of(sum);
        for (const auto& pt : points) {
          if (pt.gl_phase.size() != group.size())
            throw InputError("orbifold point phase list does not match the group");
          if (frac(pt.gl_phase[i] + pt.gl_phase[j]) != pt.gl_phase[k])
            throw InputError("line bundle phases are not a homomorphism");
        }
      }
  }
};

// Toric test: abelian symmetry, half the dimension equals the rank, and each
// fixed point's tangent weights are independent and span a cone containing
// the directions from its moment image into the moment polytope.
inline bool is_toric_model(const FixedPointModel& model, const RootSystem& rs,
                           const RationalPolytope& delta) {
  if (!rs.is_torus()) return false;
  size_t r = size_t(model.lattice.rank);
  for (const auto& p : model.points) {
    if (p.tangent_weights.size() != r) return false;
    MatQ rows;
    for (const auto& w : p.tangent_weights) rows.push_back(w);
    if (mat_rank(rows) != r) return false;
    for (const auto& v : delta.vertices()) {
      MatQ cols(r, VecQ(r));
      for (size_t j = 0; j < r; ++j)
        for (size_t i = 0; i < r; ++i) cols[i][j] = p.tangent_weights[j][i];
      auto sol = solve_linear(cols, vec_sub(v, p.mu));
      if (!sol.consistent) return false;
      for (const auto& c : sol.particular)
        if (c < 0) return false;
    }
  }
  return true;
}

// Derive the stabilizer data of the dimension-zero reduced space at a weakly
// regular level of a toric model. The group is the dual lattice quotient by
// the sublattice dual to the tangent weights of a vertex, and each element's
// line bundle phase is its pairing with the vertex moment image; both are
// computed at every vertex and must agree, so an inconsistent lift is
// detected rather than masked.
inline ReducedLevelData derive_level_data(const FixedPointModel& model, const RootSystem& rs,
                                          const RationalPolytope& delta,
                                          const std::vector<ComponentDatum>& components,
                                          const VecQ& xi) {
  if (!weakly_regular(xi, delta, components))
    throw NotWeaklyRegular("level is not weakly regular");
  if (!is_toric_model(model, rs, delta))
    throw NotToricModel("model is not toric; supply explicit reduced-level data");

  size_t r = size_t(model.lattice.rank);
  std::optional<std::set<VecQ>> group;
  std::optional<std::vector<Rat>> phases;
  for (const auto& p : model.points) {
    MatQ wt;  // rows are tangent weights: q solves <q, w_j> = z_j
    for (const auto& w : p.tangent_weights) wt.push_back(w);
    MatQ wt_inv = *mat_inverse(wt);
    Rat det = determinant(wt);
    Int d = num(det < 0 ? -det : det);

    std::set<VecQ> here;
    VecZ z(r, 0);
    for (;;) {
      VecQ zq;
      for (const auto& v : z) zq.push_back(Rat(v));
      VecQ q = mat_vec(wt_inv, zq);
      for (auto& c : q) c = frac(c);
      here.insert(q);
      size_t i = 0;
      while (i < r && z[i] == d - 1) {
        z[i] = 0;
        ++i;
      }
      if (i == r) break;
      ++z[i];
    }
    if (Int(here.size()) != d)
      throw InconsistentGKM("stabilizer enumeration does not match the weight determinant");
    if (group && *group != here)
      throw InconsistentGKM("stabilizer group differs between fixed points");
    group = here;

    std::vector<Rat> here_phases;
    for (const auto& q : here) here_phases.push_back(frac(dot(q, p.mu)));
    if (phases && *phases != here_phases)
      throw InconsistentGKM("line bundle phases differ between fixed points");
    phases = here_phases;
  }

  ReducedLevelData data;
  data.xi = xi;
  data.group.assign(group->begin(), group->end());
  data.d = Int(data.group.size());
  OrbifoldPoint pt;
  pt.gl_phase = *phases;
  data.points = {pt};
  data.validate();
  return data;
}

// Dimension-zero point sum: each orbifold point contributes 1 exactly when
// the character g -> k*phase(g) - <q_g, lambda> is trivial mod 1.
inline Int kawasaki_point_sum(const ReducedLevelData& data, const Int& k, const VecZ& lambda) {
  Int total = 0;
  for (const auto& pt : data.points) {
    bool trivial = true;
    for (size_t gi = 0; gi < data.group.size() && trivial; ++gi) {
      Rat phase = Rat(k) * pt.gl_phase[gi];
      for (size_t i = 0; i < lambda.size(); ++i) phase -= Rat(lambda[i]) * data.group[gi][i];
      trivial = is_integer(phase);
    }
    if (trivial) ++total;
  }
  return total;
}

// Certificate that the level sits in the same weakly regular chamber as the
// chosen shift: the straight segment between them stays in the relative
// interior of delta and off every wall.
inline bool same_chamber_certificate(const RationalPolytope& delta,
                                     const std::vector<ComponentDatum>& components,
                                     const VecQ& from, const VecQ& to) {
  if (!delta.relative_interior_contains(from) || !delta.relative_interior_contains(to))
    return false;
  const AffineSubspace& principal = delta.hull();
  VecQ dir = vec_sub(to, from);
  for (const auto& c : components) {
    if (affine_subspaces_equal(c.moment_hull, principal)) continue;
    const AffineSubspace& a = c.moment_hull;
    size_t n = from.size(), m = a.dim();
    MatQ sys(n, VecQ(1 + m));
    for (size_t i = 0; i < n; ++i) {
      sys[i][0] = dir[i];
      for (size_t j = 0; j < m; ++j) sys[i][1 + j] = -a.direction_basis[j][i];
    }
    auto sol = solve_linear(sys, vec_sub(a.base_point, from));
    if (!sol.consistent) continue;
    bool t_free = false;
    for (const auto& ns : nullspace(sys))
      if (ns[0] != 0) t_free = true;
    if (t_free) return false;
    Rat t0 = sol.particular[0];
    if (t0 >= 0 && t0 <= 1) return false;
  }
  return true;
}

enum class QRMode { PointCase, FitCase, Vanishing };

struct QRComparison {
  Int k;
  VecZ lambda;
  Int left;   // localization side
  Rat right;  // reduced side (point sum or fitted value)
};

struct QRCertificate {
  std::string model_id;
  QRMode mode = QRMode::PointCase;
  std::optional<VecQ> xi;
  bool xi_chamber_verified = false;
  std::vector<QRComparison> comparisons;
  std::vector<size_t> mismatches;  // indices into comparisons
  bool pass = false;
  std::optional<ReducedLevelData> level_data;
  std::optional<QuasiPolynomial> fit;
  std::optional<VecQ> gamma;
};

struct QRCheckOptions {
  Int k_max = 20;
  std::optional<VecQ> gamma_override;
  std::optional<ReducedLevelData> explicit_data;
  uint64_t seed = 1;
  int degree_bound_slack = 1;  // fit degree bound is half_dim + this
  int period_bound = 12;
};

// The operational theorem checks. Point case: localization multiplicities
// against the orbifold point sum on every cone lattice point. Fit case: a
// validated quasi-polynomial fit, its value at (1,0) against the reduced
// side, and m(k,0) along the zero ray. Vanishing: m(k,0) = 0 when 0 is
// outside the moment polytope.
inline QRCertificate qr_check(const FixedPointModel& model, const RootSystem& rs,
                              const std::string& model_id, QRMode mode,
                              std::optional<VecQ> xi, const QRCheckOptions& opts = {}) {
  QRCertificate cert;
  cert.model_id = model_id;
  cert.mode = mode;
  cert.xi = xi;

  ModelEvaluator evaluator(model, rs, draw_polarization(model, rs, opts.seed));
  auto as_weight = [](const VecZ& v) { return weight_from_int(v); };
  auto as_ll = [](const Int& k) { return k.convert_to<long long>(); };
  auto record = [&](const Int& k, const VecZ& lambda, const Int& left, const Rat& right) {
    cert.comparisons.push_back({k, lambda, left, right});
    if (Rat(left) != right) cert.mismatches.push_back(cert.comparisons.size() - 1);
  };

  if (mode == QRMode::Vanishing) {
    RationalPolytope delta = moment_polytope(model, rs);
    if (delta.contains(zero_vec(size_t(model.lattice.rank))))
      throw InputError("vanishing mode requires 0 outside the moment polytope");
    VecZ zero(size_t(model.lattice.rank), 0);
    for (Int k = 1; k <= opts.k_max; ++k)
      record(k, zero, evaluator.dominant_multiplicity(as_ll(k), as_weight(zero)), Rat(0));
    cert.pass = cert.mismatches.empty();
    return cert;
  }

  MomentGeometry geom = analyze_moment_geometry(model, rs, opts.gamma_override);
  cert.gamma = geom.gamma.gamma;
  if (!xi) throw InputError("this mode needs a level xi");

  ReducedLevelData data =
      opts.explicit_data
          ? (opts.explicit_data->validate(), *opts.explicit_data)
          : derive_level_data(model, rs, geom.delta, geom.components, *xi);
  if (!weakly_regular(*xi, geom.delta, geom.components))
    throw NotWeaklyRegular("level is not weakly regular");
  cert.level_data = data;
  cert.xi_chamber_verified =
      same_chamber_certificate(geom.delta, geom.components, *xi, geom.gamma.gamma_i);

  if (mode == QRMode::PointCase) {
    for (const auto& x : cone_lattice_points(geom.region.cone, 1, opts.k_max)) {
      Int k = x[0];
      VecZ lambda(x.begin() + 1, x.end());
      record(k, lambda, evaluator.dominant_multiplicity(as_ll(k), as_weight(lambda)),
             Rat(kawasaki_point_sum(data, k, lambda)));
    }
    cert.pass = cert.mismatches.empty();
    return cert;
  }

  // fit case
  auto sampler = [&](const VecZ& x) {
    return evaluator.multiplicity(x[0].convert_to<long long>(),
                                  weight_from_int(VecZ(x.begin() + 1, x.end())));
  };
  int degree_bound = int(model.half_dim()) + opts.degree_bound_slack;
  cert.fit = fit_on_cone(sampler, geom.region.cone, degree_bound, opts.period_bound);

  VecZ zero(size_t(model.lattice.rank), 0);
  record(1, zero, kawasaki_point_sum(data, 1, zero), cert.fit->evaluate(Int(1), zero));
  for (Int k = 1; k <= opts.k_max; ++k)
    record(k, zero, evaluator.dominant_multiplicity(as_ll(k), as_weight(zero)),
           cert.fit->evaluate(k, zero));

  // structural checks: the validated period divides the stabilizer exponent
  Int exponent = 1;
  for (const auto& g : data.group) {
    Int order = 1;
    for (const auto& c : g) order = lcm(order, den(c));
    exponent = lcm(exponent, order);
  }
  bool period_ok = exponent % Int(cert.fit->scalar_period) == 0;
  bool degree_ok = cert.fit->degree_bound <= int(model.half_dim());
  cert.pass = cert.mismatches.empty() && period_ok && degree_ok;
  return cert;
}

// Raise the mismatch list as an error for callers that must not ignore it.
inline void assert_certificate(const QRCertificate& cert) {
  if (cert.pass) return;
  std::string msg = "verification failed for " + cert.model_id + ":";
  for (size_t i : cert.mismatches) {
    const auto& c = cert.comparisons[i];
    msg += " (k=" + c.k.str() + ", lambda=";
    for (size_t j = 0; j < c.lambda.size(); ++j)
      msg += (j ? "," : "") + c.lambda[j].str();
    msg += ") " + c.left.str() + " vs " + rat_to_string(c.right) + ";";
  }
  if (cert.mismatches.empty()) msg += " structural property violated";
  throw CheckFailed(msg);
}

}  // namespace qr
