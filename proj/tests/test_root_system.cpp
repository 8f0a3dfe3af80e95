#include <catch2/catch_amalgamated.hpp>

#include "qr/root_system.hpp"

using namespace qr;

namespace {

WeightLattice a1_lattice() {
  WeightLattice lat;
  lat.rank = 1;
  lat.gram = {{Rat(1, 2)}};
  return lat;
}

WeightLattice a2_lattice() {
  // Gram matrix pairing fundamental-weight coordinates so that the simple
  // roots (2,-1) and (-1,2) have squared length 2 and pairing -1.
  WeightLattice lat;
  lat.rank = 2;
  lat.gram = {{Rat(1, 3), Rat(1, 6)}, {Rat(1, 6), Rat(1, 3)}};
  return lat;
}

}  // namespace

TEST_CASE("torus root system is trivial") {
  WeightLattice lat;
  lat.rank = 2;
  lat.gram = mat_identity(2);
  RootSystem rs = build_root_system(lat, {});
  CHECK(rs.is_torus());
  CHECK(rs.positive_roots.empty());
  REQUIRE(rs.elements.size() == 1);
  CHECK(rs.elements[0].sign() == 1);
  CHECK(rs.is_dominant(VecQ{Rat(-3), Rat(5)}));
}

TEST_CASE("A1 root system") {
  RootSystem rs = build_root_system(a1_lattice(), {VecQ{Rat(2)}});
  REQUIRE(rs.positive_roots.size() == 1);
  CHECK(rs.positive_roots[0] == VecQ{Rat(2)});
  CHECK(rs.rho == VecQ{Rat(1)});
  REQUIRE(rs.elements.size() == 2);
  CHECK(rs.is_dominant(VecQ{Rat(0)}));
  CHECK(rs.is_dominant(VecQ{Rat(3)}));
  CHECK_FALSE(rs.is_dominant(VecQ{Rat(-1)}));

  // the reflection acts as negation; the shifted action sends 0 to -2
  const WeylElement* s = nullptr;
  for (const auto& w : rs.elements)
    if (w.length == 1) s = &w;
  REQUIRE(s != nullptr);
  CHECK(s->apply(VecQ{Rat(3)}) == VecQ{Rat(-3)});
  CHECK(shifted_action(rs, *s, VecQ{Rat(0)}) == VecQ{Rat(-2)});
  CHECK(shifted_action(rs, *s, VecQ{Rat(5)}) == VecQ{Rat(-7)});
}

TEST_CASE("A2 root system closes with six roots and six Weyl elements") {
  RootSystem rs = build_root_system(a2_lattice(), {VecQ{Rat(2), Rat(-1)}, VecQ{Rat(-1), Rat(2)}});
  CHECK(rs.positive_roots.size() == 3);
  CHECK(rs.elements.size() == 6);
  CHECK(rs.rho == VecQ{Rat(1), Rat(1)});
  int sign_sum = 0;
  for (const auto& w : rs.elements) sign_sum += w.sign();
  CHECK(sign_sum == 0);
  CHECK(rs.is_dominant(VecQ{Rat(2), Rat(0)}));
  CHECK_FALSE(rs.is_dominant(VecQ{Rat(-1), Rat(3)}));
}

TEST_CASE("closure bound and lattice preservation are enforced") {
  // closure larger than the element bound reports NonFiniteSystem
  CHECK_THROWS_AS(
      build_root_system(a2_lattice(), {VecQ{Rat(2), Rat(-1)}, VecQ{Rat(-1), Rat(2)}}, 3),
      NonFiniteSystem);

  // a reflection that moves lattice points off the lattice is invalid input
  WeightLattice lat;
  lat.rank = 2;
  lat.gram = mat_identity(2);
  CHECK_THROWS_AS(build_root_system(lat, {VecQ{Rat(2), Rat(1)}}), InputError);
}

TEST_CASE("weyl numerator of the trivial weight") {
  RootSystem rs = build_root_system(a1_lattice(), {VecQ{Rat(2)}});
  FormalCharacter num = weyl_numerator(rs, VecQ{Rat(0)});
  CHECK(num.coeff(VecZ{Int(0)}) == 1);
  CHECK(num.coeff(VecZ{Int(-2)}) == -1);
  CHECK(num.support_size() == 2);
  CHECK_THROWS_AS(weyl_numerator(rs, VecQ{Rat(-1)}), NotDominant);
}
