#include <catch2/catch_amalgamated.hpp>

#include "qr/examples.hpp"
#include "qr/reduction.hpp"

using namespace qr;

namespace {

struct Geometry {
  ExampleModel ex;
  RootSystem rs;
  RationalPolytope delta;
  std::vector<ComponentDatum> comps;
};

Geometry geometry_for(const std::string& name) {
  Geometry g{make_example(name), {}, {}, {}};
  g.rs = example_root_system(g.ex);
  g.delta = moment_polytope(g.ex.model, g.rs);
  g.comps = enumerate_components(g.ex.model);
  return g;
}

// product of two projective lines, second factor with isotropy weight 2 and
// moment images 0 and 2, so that the moment polytope is [0,1] x [0,2]
ExampleModel weight2_shifted() {
  ExampleModel ex;
  ex.name = "weight2-shifted";
  ex.model.lattice.rank = 2;
  ex.model.lattice.gram = mat_identity(2);
  auto add = [&](long long m1, long long m2, long long w1, long long w2) {
    FixedPoint p;
    p.mu = VecQ{Rat(m1), Rat(m2)};
    p.tangent_weights = {VecQ{Rat(w1), Rat(0)}, VecQ{Rat(0), Rat(w2)}};
    ex.model.points.push_back(p);
  };
  add(0, 0, 1, 2);
  add(0, 2, 1, -2);
  add(1, 0, -1, 2);
  add(1, 2, -1, -2);
  ex.model.edges = {{0, 2, VecQ{Rat(1), Rat(0)}},
                    {1, 3, VecQ{Rat(1), Rat(0)}},
                    {0, 1, VecQ{Rat(0), Rat(2)}},
                    {2, 3, VecQ{Rat(0), Rat(2)}}};
  ex.model.validate();
  return ex;
}

}  // namespace

TEST_CASE("toric recognition") {
  for (const auto& name : {"cp1", "cp2", "cp1xcp1", "p1xp1-weight2", "s2-symmetric"}) {
    Geometry g = geometry_for(name);
    INFO(name);
    CHECK(is_toric_model(g.ex.model, g.rs, g.delta));
  }
  for (const auto& name : {"p1xp1-su2-diagonal", "a1-coadjoint"}) {
    Geometry g = geometry_for(name);
    INFO(name);
    CHECK_FALSE(is_toric_model(g.ex.model, g.rs, g.delta));
  }
}

TEST_CASE("trivial stabilizer on the projective line") {
  Geometry g = geometry_for("cp1");
  ReducedLevelData data = derive_level_data(g.ex.model, g.rs, g.delta, g.comps, VecQ{Rat(1, 2)});
  CHECK(data.d == 1);
  REQUIRE(data.group.size() == 1);
  CHECK(is_zero_vec(data.group[0]));
  REQUIRE(data.points.size() == 1);
  for (long long k : {1LL, 5LL})
    for (long long l : {-3LL, 0LL, 4LL}) CHECK(kawasaki_point_sum(data, k, VecZ{Int(l)}) == 1);

  CHECK_THROWS_AS(derive_level_data(g.ex.model, g.rs, g.delta, g.comps, VecQ{Rat(1)}),
                  NotWeaklyRegular);
  CHECK_THROWS_AS(derive_level_data(g.ex.model, g.rs, g.delta, g.comps, VecQ{Rat(5)}),
                  NotWeaklyRegular);
}

TEST_CASE("order-two stabilizer with trivial line bundle phases") {
  ExampleModel ex = weight2_shifted();
  RootSystem rs = example_root_system(ex);
  auto delta = moment_polytope(ex.model, rs);
  auto comps = enumerate_components(ex.model);
  ReducedLevelData data =
      derive_level_data(ex.model, rs, delta, comps, VecQ{Rat(1, 2), Rat(1)});
  CHECK(data.d == 2);
  REQUIRE(data.group.size() == 2);
  CHECK(data.group[0] == VecQ{Rat(0), Rat(0)});
  CHECK(data.group[1] == VecQ{Rat(0), Rat(1, 2)});
  REQUIRE(data.points.size() == 1);
  CHECK(data.points[0].gl_phase == std::vector<Rat>{Rat(0), Rat(0)});
  // lambda_2 must be even, independent of k
  for (long long k : {1LL, 2LL, 7LL}) {
    CHECK(kawasaki_point_sum(data, k, VecZ{Int(1), Int(4)}) == 1);
    CHECK(kawasaki_point_sum(data, k, VecZ{Int(1), Int(3)}) == 0);
  }
}

TEST_CASE("order-two stabilizer with a nontrivial phase locks parity") {
  Geometry g = geometry_for("p1xp1-weight2");
  ReducedLevelData data =
      derive_level_data(g.ex.model, g.rs, g.delta, g.comps, VecQ{Rat(1, 2), Rat(1, 2)});
  CHECK(data.d == 2);
  REQUIRE(data.points.size() == 1);
  CHECK(data.group[1] == VecQ{Rat(0), Rat(1, 2)});
  CHECK(data.points[0].gl_phase == std::vector<Rat>{Rat(0), Rat(1, 2)});
  for (long long k : {1LL, 2LL, 3LL, 8LL})
    for (long long l2 : {-2LL, -1LL, 0LL, 1LL, 2LL}) {
      Int expect = ((k - l2) % 2 == 0) ? 1 : 0;
      CHECK(kawasaki_point_sum(data, k, VecZ{Int(0), Int(l2)}) == expect);
    }
  // periodicity with the exponent of the group
  CHECK(kawasaki_point_sum(data, 3, VecZ{Int(1), Int(1)}) ==
        kawasaki_point_sum(data, 5, VecZ{Int(7), Int(-3)}));
}

TEST_CASE("nonabelian and non-toric models refuse derivation") {
  for (const auto& name : {"p1xp1-su2-diagonal", "a1-coadjoint"}) {
    Geometry g = geometry_for(name);
    INFO(name);
    CHECK_THROWS_AS(
        derive_level_data(g.ex.model, g.rs, g.delta, g.comps, VecQ{Rat(1, 2)}),
        NotToricModel);
  }
}

TEST_CASE("hand-built stabilizer data: three-torsion character condition") {
  ReducedLevelData data;
  data.xi = VecQ{Rat(1, 3)};
  data.group = {VecQ{Rat(0)}, VecQ{Rat(1, 3)}, VecQ{Rat(2, 3)}};
  data.d = 3;
  data.points = {OrbifoldPoint{{Rat(0), Rat(0), Rat(0)}}};
  data.validate();
  for (long long k : {1LL, 2LL, 9LL}) {
    CHECK(kawasaki_point_sum(data, k, VecZ{Int(6)}) == 1);
    CHECK(kawasaki_point_sum(data, k, VecZ{Int(7)}) == 0);
    CHECK(kawasaki_point_sum(data, k, VecZ{Int(-3)}) == 1);
  }

  // two points double the count when both characters are trivial
  data.points.push_back(OrbifoldPoint{{Rat(0), Rat(0), Rat(0)}});
  data.validate();
  CHECK(kawasaki_point_sum(data, 1, VecZ{Int(3)}) == 2);
}

TEST_CASE("stabilizer validation rejects malformed data") {
  ReducedLevelData bad;
  bad.xi = VecQ{Rat(1, 2)};
  bad.group = {VecQ{Rat(0)}, VecQ{Rat(1, 2)}};
  bad.d = 3;  // wrong order
  bad.points = {OrbifoldPoint{{Rat(0), Rat(0)}}};
  CHECK_THROWS_AS(bad.validate(), InputError);
  bad.d = 2;
  bad.validate();

  ReducedLevelData no_identity = bad;
  no_identity.group = {VecQ{Rat(1, 4)}, VecQ{Rat(1, 2)}};
  CHECK_THROWS_AS(no_identity.validate(), InputError);

  ReducedLevelData not_closed = bad;
  not_closed.group = {VecQ{Rat(0)}, VecQ{Rat(1, 3)}};
  CHECK_THROWS_AS(not_closed.validate(), InputError);

  ReducedLevelData unreduced = bad;
  unreduced.group = {VecQ{Rat(0)}, VecQ{Rat(3, 2)}};
  CHECK_THROWS_AS(unreduced.validate(), InputError);

  ReducedLevelData bad_phase = bad;
  bad_phase.points = {OrbifoldPoint{{Rat(0), Rat(1, 3)}}};  // not a homomorphism to Q/Z
  CHECK_THROWS_AS(bad_phase.validate(), InputError);
}

TEST_CASE("same chamber certificates") {
  Geometry g = geometry_for("p1xp1-weight2");
  CHECK(same_chamber_certificate(g.delta, g.comps, VecQ{Rat(1, 2), Rat(1, 2)},
                                 VecQ{Rat(1, 4), Rat(-1, 2)}));
  // endpoint on a facet fails
  CHECK_FALSE(same_chamber_certificate(g.delta, g.comps, VecQ{Rat(1, 2), Rat(1, 2)},
                                       VecQ{Rat(1, 2), Rat(1)}));

  // a disjoint union has an interior wall where its pieces meet
  ExampleModel a = make_example("cp1");
  ExampleModel b = make_example("cp1-shifted");
  FixedPointModel both;
  both.lattice = a.model.lattice;
  both.points = a.model.points;
  both.points.insert(both.points.end(), b.model.points.begin(), b.model.points.end());
  both.edges = a.model.edges;
  for (auto e : b.model.edges) {
    e.a += 2;
    e.b += 2;
    both.edges.push_back(e);
  }
  RootSystem rs = build_root_system(both.lattice, {});
  auto delta = moment_polytope(both, rs);
  auto comps = enumerate_components(both);
  CHECK(same_chamber_certificate(delta, comps, VecQ{Rat(1, 2)}, VecQ{Rat(3, 4)}));
  CHECK_FALSE(same_chamber_certificate(delta, comps, VecQ{Rat(1, 2)}, VecQ{Rat(3, 2)}));
}

TEST_CASE("qr_check assembles passing certificates") {
  // point case on the parity model
  {
    Geometry g = geometry_for("p1xp1-weight2");
    QRCheckOptions opts;
    opts.k_max = 6;
    QRCertificate cert = qr_check(g.ex.model, g.rs, g.ex.name, QRMode::PointCase,
                                  VecQ{Rat(1, 2), Rat(1, 2)}, opts);
    CHECK(cert.pass);
    CHECK(cert.xi_chamber_verified);
    CHECK(cert.mismatches.empty());
    CHECK(cert.comparisons.size() > 10);
    assert_certificate(cert);
  }
  // vanishing case
  {
    Geometry g = geometry_for("cp1-shifted");
    QRCheckOptions opts;
    opts.k_max = 12;
    QRCertificate cert =
        qr_check(g.ex.model, g.rs, g.ex.name, QRMode::Vanishing, std::nullopt, opts);
    CHECK(cert.pass);
    CHECK(cert.comparisons.size() == 12);
    for (const auto& c : cert.comparisons) {
      CHECK(c.left == 0);
      CHECK(c.right == 0);
    }
  }
  // fit case with bundled explicit data on the nonabelian model
  {
    Geometry g = geometry_for("p1xp1-su2-diagonal");
    QRCheckOptions opts;
    opts.k_max = 8;
    opts.explicit_data = g.ex.reduced_data;
    QRCertificate cert = qr_check(g.ex.model, g.rs, g.ex.name, QRMode::FitCase,
                                  g.ex.suggested_xi, opts);
    CHECK(cert.pass);
    REQUIRE(!cert.comparisons.empty());
    CHECK(cert.comparisons[0].left == 1);  // reduced side at (1, 0)
    CHECK(cert.comparisons[0].right == Rat(1));
    CHECK(cert.fit.has_value());
  }
  // vanishing mode on a model with 0 inside the polytope is an input error
  {
    Geometry g = geometry_for("cp1");
    CHECK_THROWS_AS(qr_check(g.ex.model, g.rs, g.ex.name, QRMode::Vanishing, std::nullopt, {}),
                    InputError);
  }
}
