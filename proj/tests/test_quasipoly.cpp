#include <catch2/catch_amalgamated.hpp>

#include "qr/examples.hpp"
#include "qr/localization.hpp"
#include "qr/moment_geometry.hpp"
#include "qr/quasipoly.hpp"

using namespace qr;

namespace {

std::vector<VecZ> integer_points(long long lo, long long hi) {
  std::vector<VecZ> out;
  for (long long v = lo; v <= hi; ++v) out.push_back(VecZ{Int(v)});
  return out;
}

ConeRegion interval_region(long long lo, long long hi) {
  ConeRegion r;
  r.base = RationalPolytope::from_points({VecQ{Rat(lo)}, VecQ{Rat(hi)}});
  return r;
}

}  // namespace

TEST_CASE("fitting recovers floor(k/2) + 1 with period two") {
  auto sampler = [](const VecZ& x) { return floor_div(x[0], Int(2)) + 1; };
  QuasiPolynomial qp =
      fit_quasipolynomial(sampler, integer_points(1, 14), integer_points(15, 30), 1, 2, 4);
  CHECK(qp.scalar_period == 2);
  CHECK(qp.degree_bound == 1);
  CHECK(qp.cosets.size() == 2);
  CHECK(qp.evaluate(VecZ{Int(40)}) == Rat(21));
  CHECK(qp.evaluate(VecZ{Int(41)}) == Rat(21));
  CHECK(qp.evaluate(VecZ{Int(1001)}) == Rat(501));
}

TEST_CASE("non-quasi-polynomial data is refused") {
  auto sampler = [](const VecZ& x) {
    Int v = 1;
    for (Int i = 0; i < x[0]; ++i) v *= 2;
    return v;
  };
  CHECK_THROWS_AS(
      fit_quasipolynomial(sampler, integer_points(1, 14), integer_points(15, 30), 1, 3, 3),
      NotQuasiPolynomial);
}

TEST_CASE("cone lattice points enumerate dilations of the base") {
  ConeRegion region = interval_region(0, 1);
  auto pts = cone_lattice_points(region, 1, 3);
  // (k, lambda) with 0 <= lambda <= k: 2 + 3 + 4
  CHECK(pts.size() == 9);
  for (const auto& p : pts) {
    REQUIRE(p.size() == 2);
    CHECK(p[1] >= 0);
    CHECK(p[1] <= p[0]);
  }
}

TEST_CASE("constant multiplicity fits as the constant quasi-polynomial") {
  ExampleModel ex = make_example("cp1");
  RootSystem rs = example_root_system(ex);
  ModelEvaluator ev(ex.model, rs, draw_polarization(ex.model, rs, 1));
  auto sampler = [&](const VecZ& x) {
    return ev.multiplicity(x[0].convert_to<long long>(), VecQ{Rat(x[1])});
  };
  MomentGeometry geom = analyze_moment_geometry(ex.model, rs);
  QuasiPolynomial qp = fit_on_cone(sampler, geom.region.cone, 2, 12);
  CHECK(qp.scalar_period == 1);
  CHECK(qp.evaluate(Int(50), VecZ{Int(17)}) == Rat(1));
  CHECK(qp.cosets.size() == 1);
  CHECK(qp.cosets.begin()->second.terms.size() == 1);  // just the constant term
}

TEST_CASE("parity-locked fit on the weighted product model") {
  ExampleModel ex = make_example("p1xp1-weight2");
  RootSystem rs = example_root_system(ex);
  ModelEvaluator ev(ex.model, rs, draw_polarization(ex.model, rs, 1));
  auto sampler = [&](const VecZ& x) {
    return ev.multiplicity(x[0].convert_to<long long>(),
                           weight_from_int(VecZ(x.begin() + 1, x.end())));
  };
  MomentGeometry geom = analyze_moment_geometry(ex.model, rs);
  QuasiPolynomial qp = fit_on_cone(sampler, geom.region.cone, 3, 12);
  CHECK(qp.scalar_period == 2);
  // m is the indicator of lambda_2 = k mod 2 on the cone
  CHECK(qp.evaluate(Int(7), VecZ{Int(3), Int(5)}) == Rat(1));
  CHECK(qp.evaluate(Int(7), VecZ{Int(3), Int(4)}) == Rat(0));
  CHECK(qp.evaluate(Int(8), VecZ{Int(3), Int(4)}) == Rat(1));
  // the merged period lattice identifies every coset with k = lambda_2 mod 2:
  // index 2 in Z^3 rather than the 8 cosets of 2Z^3
  CHECK(lattice_index(qp.period) == 2);
}

TEST_CASE("ray restriction rewrites the fit in the ray parameter") {
  ExampleModel ex = make_example("cp1");
  RootSystem rs = example_root_system(ex);
  ModelEvaluator ev(ex.model, rs, draw_polarization(ex.model, rs, 1));
  auto sampler = [&](const Int& k, const VecZ& lambda) {
    return ev.multiplicity(k.convert_to<long long>(), weight_from_int(lambda));
  };
  MomentGeometry geom = analyze_moment_geometry(ex.model, rs);

  CHECK(ray_denominator(VecQ{Rat(1, 2)}) == 2);
  QuasiPolynomial along = restrict_to_ray(sampler, geom.region.cone, VecQ{Rat(1, 2)}, 2, 12);
  CHECK(along.nvars == 1);
  // lambda = k/2 is integral for even k, and the multiplicity there is 1
  CHECK(along.evaluate(VecZ{Int(10)}) == Rat(1));
  CHECK(along.evaluate(VecZ{Int(20)}) == Rat(1));

  QuasiPolynomial at_zero = restrict_to_ray(sampler, geom.region.cone, VecQ{Rat(0)}, 2, 12);
  CHECK(at_zero.evaluate(VecZ{Int(7)}) == Rat(1));

  CHECK_THROWS_AS(restrict_to_ray(sampler, geom.region.cone, VecQ{Rat(3)}, 2, 12), NotInRegion);
}

TEST_CASE("quasi-polynomial equality over a cone region") {
  auto sampler = [](const VecZ& x) { return floor_div(x[0] + x[1], Int(2)); };
  ConeRegion region = interval_region(0, 1);
  auto train = cone_lattice_points(region, 1, 14);
  auto hold = cone_lattice_points(region, 15, 30);
  QuasiPolynomial a = fit_quasipolynomial(sampler, train, hold, 2, 2, 4);
  QuasiPolynomial b = fit_quasipolynomial(sampler, train, hold, 2, 2, 8);
  CHECK(quasipoly_equal(a, b, region));

  // perturbing one coset constant breaks equality
  QuasiPolynomial c = a;
  c.cosets.begin()->second.terms[std::vector<int>(2, 0)] += 1;
  CHECK_FALSE(quasipoly_equal(a, c, region));
}
