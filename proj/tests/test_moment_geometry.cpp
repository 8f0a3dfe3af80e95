#include <catch2/catch_amalgamated.hpp>
#include <algorithm>
#include <set>

#include "qr/examples.hpp"
#include "qr/moment_geometry.hpp"

using namespace qr;

namespace {

std::set<VecQ> vertex_set_of(const RationalPolytope& p) {
  return std::set<VecQ>(p.vertices().begin(), p.vertices().end());
}

}  // namespace

TEST_CASE("moment polytopes of the corpus") {
  {
    ExampleModel ex = make_example("cp1");
    auto delta = moment_polytope(ex.model, example_root_system(ex));
    CHECK(vertex_set_of(delta) == std::set<VecQ>{VecQ{Rat(0)}, VecQ{Rat(1)}});
  }
  {
    ExampleModel ex = make_example("cp2");
    auto delta = moment_polytope(ex.model, example_root_system(ex));
    CHECK(delta.dim() == 2);
    CHECK(delta.vertices().size() == 3);
  }
  {
    // the dominant chamber truncates the hull [-2,2] to [0,2]
    ExampleModel ex = make_example("p1xp1-su2-diagonal");
    auto delta = moment_polytope(ex.model, example_root_system(ex));
    CHECK(vertex_set_of(delta) == std::set<VecQ>{VecQ{Rat(0)}, VecQ{Rat(2)}});
  }
}

TEST_CASE("fixed-point components of the projective line") {
  ExampleModel ex = make_example("cp1");
  auto comps = enumerate_components(ex.model);
  CHECK(comps.size() == 3);  // two points and the whole space
  int full = 0, singletons = 0;
  for (const auto& c : comps) {
    if (c.vertex_set.size() == 2) {
      ++full;
      CHECK(c.subtorus_basis.empty());  // only the trivial subtorus fixes all of M
      CHECK(c.moment_hull.dim() == 1);
      CHECK(c.normal_weights.empty());
    } else {
      ++singletons;
      CHECK(c.subtorus_basis.size() == 1);
      CHECK(c.moment_hull.dim() == 0);
      CHECK(c.normal_weights.size() == 1);
    }
  }
  CHECK(full == 1);
  CHECK(singletons == 2);
}

TEST_CASE("fixed-point components of the projective plane") {
  ExampleModel ex = make_example("cp2");
  auto comps = enumerate_components(ex.model);
  CHECK(comps.size() == 7);  // 3 vertices, 3 edge spheres, the whole space
  std::map<size_t, int> by_size;
  for (const auto& c : comps) by_size[c.vertex_set.size()] += 1;
  CHECK(by_size[1] == 3);
  CHECK(by_size[2] == 3);
  CHECK(by_size[3] == 1);
  ExampleModel exr = make_example("cp2");
  validate_components(exr.model, comps, moment_polytope(exr.model, example_root_system(exr)).hull());
}

TEST_CASE("components add over disjoint unions") {
  ExampleModel a = make_example("cp1");
  ExampleModel b = make_example("cp1-shifted");
  FixedPointModel both;
  both.lattice = a.model.lattice;
  both.points = a.model.points;
  both.points.insert(both.points.end(), b.model.points.begin(), b.model.points.end());
  both.edges = a.model.edges;
  for (auto e : b.model.edges) {
    e.a += int(a.model.points.size());
    e.b += int(a.model.points.size());
    both.edges.push_back(e);
  }
  auto comps = enumerate_components(both);
  // four singletons plus the two spheres
  CHECK(comps.size() == 6);
}

TEST_CASE("gamma sweep picks the first shrinking diagonal candidate") {
  for (const auto& name : {"cp1", "cp2", "s2-symmetric", "cp1xcp1", "p1xp1-weight2",
                           "p1xp1-su2-diagonal"}) {
    ExampleModel ex = make_example(name);
    RootSystem rs = example_root_system(ex);
    auto delta = moment_polytope(ex.model, rs);
    auto comps = enumerate_components(ex.model);
    GammaChoice g = choose_gamma(ex.model, rs, delta, comps);
    INFO(name);
    CHECK(g.gamma == VecQ(size_t(ex.model.lattice.rank), Rat(1, 4)));
    CHECK(g.candidates_tried == 1);
  }
}

TEST_CASE("gamma is rejected when 0 lies outside the moment polytope") {
  ExampleModel ex = make_example("cp1-shifted");
  RootSystem rs = example_root_system(ex);
  auto delta = moment_polytope(ex.model, rs);
  auto comps = enumerate_components(ex.model);
  CHECK_THROWS_AS(choose_gamma(ex.model, rs, delta, comps), ZeroNotInDelta);
  CHECK_THROWS_AS(analyze_moment_geometry(ex.model, rs), ZeroNotInDelta);
}

TEST_CASE("weak regularity separates chamber points from walls") {
  ExampleModel ex = make_example("s2-symmetric");
  RootSystem rs = example_root_system(ex);
  auto delta = moment_polytope(ex.model, rs);
  auto comps = enumerate_components(ex.model);
  CHECK(weakly_regular(VecQ{Rat(1, 2)}, delta, comps));
  CHECK(weakly_regular(VecQ{Rat(0)}, delta, comps));  // no wall at the origin here
  CHECK_FALSE(weakly_regular(VecQ{Rat(1)}, delta, comps));   // vertex wall
  CHECK_FALSE(weakly_regular(VecQ{Rat(-1)}, delta, comps));  // vertex wall
  CHECK_FALSE(weakly_regular(VecQ{Rat(2)}, delta, comps));   // outside delta

  // the diagonal model has a wall at the origin from its interior vertices
  ExampleModel diag = make_example("p1xp1-su2-diagonal");
  RootSystem drs = example_root_system(diag);
  auto ddelta = moment_polytope(diag.model, drs);
  auto dcomps = enumerate_components(diag.model);
  CHECK_FALSE(weakly_regular(VecQ{Rat(0)}, ddelta, dcomps));
  CHECK(weakly_regular(VecQ{Rat(1, 2)}, ddelta, dcomps));
}

TEST_CASE("symmetric sphere: the polytope equals the interval with two certificates") {
  ExampleModel ex = make_example("s2-symmetric");
  RootSystem rs = example_root_system(ex);
  MomentGeometry geom = analyze_moment_geometry(ex.model, rs);
  CHECK(vertex_set_of(geom.region.p) == std::set<VecQ>{VecQ{Rat(-1)}, VecQ{Rat(1)}});
  REQUIRE(geom.region.certificate_indices.size() == 2);

  std::set<VecQ> taus;
  for (size_t i : geom.region.certificate_indices) {
    const auto& c = geom.components[i];
    taus.insert(c.tau_c);
    REQUIRE(c.halfspace.has_value());
    // the half-space supports p at the matching endpoint
    CHECK(dot(c.halfspace->normal, c.gamma_c) == c.halfspace->offset);
  }
  CHECK(taus == std::set<VecQ>{VecQ{Rat(3, 4)}, VecQ{Rat(-5, 4)}});
}

TEST_CASE("the constructed polytope matches the moment polytope on the corpus") {
  for (const auto& name : {"cp1", "cp2", "s2-symmetric", "cp1xcp1", "p1xp1-weight2",
                           "p1xp1-su2-diagonal"}) {
    ExampleModel ex = make_example(name);
    RootSystem rs = example_root_system(ex);
    MomentGeometry geom = analyze_moment_geometry(ex.model, rs);
    INFO(name);
    CHECK(geom.region.p.dim() == geom.delta.dim());
    CHECK(geom.region.p.contains(zero_vec(size_t(ex.model.lattice.rank))));
    CHECK(vertex_set_of(geom.region.p) == vertex_set_of(geom.delta));
  }
}

TEST_CASE("support sums pair nonnegatively with their component direction") {
  for (const auto& name : {"s2-symmetric", "p1xp1-su2-diagonal"}) {
    ExampleModel ex = make_example(name);
    RootSystem rs = example_root_system(ex);
    MomentGeometry geom = analyze_moment_geometry(ex.model, rs);
    for (const auto& c : geom.components) {
      if (c.distinguished || !c.contributing) continue;
      INFO(name);
      CHECK(ex.model.lattice.pair(c.tau_c, c.sigma_c) >= 0);
    }
  }
}

TEST_CASE("explicit gamma overrides are validated") {
  ExampleModel ex = make_example("cp1");
  RootSystem rs = example_root_system(ex);
  MomentGeometry geom = analyze_moment_geometry(ex.model, rs, VecQ{Rat(1, 8)});
  CHECK(geom.gamma.gamma == VecQ{Rat(1, 8)});
  // gamma on a wall (the vertex at 1) is refused
  CHECK_THROWS_AS(analyze_moment_geometry(ex.model, rs, VecQ{Rat(1)}), InputError);
  // gamma outside the polytope is refused
  CHECK_THROWS_AS(analyze_moment_geometry(ex.model, rs, VecQ{Rat(7)}), InputError);
}

TEST_CASE("a single-point model degenerates to the origin polytope") {
  FixedPointModel model;
  model.lattice.rank = 1;
  model.lattice.gram = {{Rat(1)}};
  FixedPoint p;
  p.mu = VecQ{Rat(0)};
  p.tangent_weights = {VecQ{Rat(1)}};
  model.points.push_back(p);
  RootSystem rs = build_root_system(model.lattice, {});
  MomentGeometry geom = analyze_moment_geometry(model, rs);
  CHECK(geom.delta.dim() == 0);
  CHECK(geom.region.p.dim() == 0);
  CHECK(geom.region.p.contains(VecQ{Rat(0)}));
}
