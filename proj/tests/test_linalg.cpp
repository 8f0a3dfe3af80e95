#include <catch2/catch_amalgamated.hpp>

#include "qr/lattice.hpp"
#include "qr/linalg.hpp"
#include "qr/rational.hpp"

using namespace qr;

TEST_CASE("rational helpers stay exact") {
  Rat a(1, 3), b(1, 6);
  CHECK(a + b == Rat(1, 2));
  CHECK(rat_to_string(Rat(-7, 2)) == "-7/2");
  CHECK(rat_to_string(Rat(4)) == "4");
  CHECK(rat_from_string("-7/2") == Rat(-7, 2));
  CHECK(rat_from_string("5") == Rat(5));
  CHECK(floor_rat(Rat(-1, 2)) == -1);
  CHECK(ceil_rat(Rat(-1, 2)) == 0);
  CHECK(floor_rat(Rat(3)) == 3);
  CHECK(is_integer(Rat(6, 3)));
  CHECK_FALSE(is_integer(Rat(1, 2)));
}

TEST_CASE("vector and matrix arithmetic") {
  VecQ u{Rat(1), Rat(2)}, v{Rat(3), Rat(-1)};
  CHECK(vec_add(u, v) == VecQ{Rat(4), Rat(1)});
  CHECK(vec_sub(u, v) == VecQ{Rat(-2), Rat(3)});
  CHECK(vec_scale(Rat(1, 2), u) == VecQ{Rat(1, 2), Rat(1)});
  CHECK(dot(u, v) == Rat(1));
  CHECK(is_zero_vec(zero_vec(3)));

  MatQ m{{Rat(2), Rat(1)}, {Rat(1), Rat(1)}};
  CHECK(mat_vec(m, u) == VecQ{Rat(4), Rat(3)});
  CHECK(mat_mul(m, mat_identity(2)) == m);
  CHECK(mat_transpose(m)[0][1] == Rat(1));
}

TEST_CASE("rank, inverse, determinant") {
  MatQ m{{Rat(2), Rat(1)}, {Rat(1), Rat(1)}};
  CHECK(mat_rank(m) == 2);
  CHECK(determinant(m) == Rat(1));
  auto inv = mat_inverse(m);
  REQUIRE(inv.has_value());
  CHECK(mat_mul(*inv, m) == mat_identity(2));

  MatQ sing{{Rat(1), Rat(2)}, {Rat(2), Rat(4)}};
  CHECK(mat_rank(sing) == 1);
  CHECK(determinant(sing) == Rat(0));
  CHECK_FALSE(mat_inverse(sing).has_value());
}

TEST_CASE("solve_linear fixes free variables at zero") {
  // x + y = 3 has the canonical solution (3, 0)
  MatQ a{{Rat(1), Rat(1)}};
  auto sol = solve_linear(a, VecQ{Rat(3)});
  REQUIRE(sol.consistent);
  CHECK(sol.particular == VecQ{Rat(3), Rat(0)});
  REQUIRE(sol.nullspace.size() == 1);
  CHECK(dot(a[0], sol.nullspace[0]) == Rat(0));

  // inconsistent system
  MatQ bad{{Rat(1), Rat(0)}, {Rat(1), Rat(0)}};
  auto none = solve_linear(bad, VecQ{Rat(0), Rat(1)});
  CHECK_FALSE(none.consistent);
}

TEST_CASE("hermite normal form of rows") {
  MatZ m{{Int(2), Int(4)}, {Int(1), Int(1)}};
  MatZ h = hnf_rows(m);
  REQUIRE(h.size() == 2);
  // pivots positive, entries above each pivot reduced
  CHECK(h[0][0] > 0);
  CHECK(h[1][1] > 0);
  CHECK(lattice_index(h) == 2);  // |det| of the row lattice
}

TEST_CASE("smith form and integer kernels are saturated") {
  // kernel of (2 4) over Z is generated by the primitive (2, -1), not (4, -2)
  MatZ a{{Int(2), Int(4)}};
  MatZ k = integer_kernel(a);
  REQUIRE(k.size() == 1);
  Int g = gcd(k[0][0], k[0][1]);
  CHECK((g == 1 || g == -1));
  CHECK(k[0][0] * 2 + k[0][1] * 4 == 0);

  SmithForm sf = smith_form(MatZ{{Int(2), Int(0)}, {Int(0), Int(6)}});
  REQUIRE(sf.d.size() == 2);
  CHECK(sf.d[0][0] == 2);
  CHECK(sf.d[1][1] == 6);
  CHECK(sf.d[1][1] % sf.d[0][0] == 0);
}

TEST_CASE("lattice intersection and reduction mod lattice") {
  // 2Z^2 intersect {(x,y): x = y} embedded as rows
  MatZ two{{Int(2), Int(0)}, {Int(0), Int(2)}};
  MatZ diag{{Int(1), Int(1)}};
  MatZ both = lattice_intersection(two, diag);
  REQUIRE(both.size() == 1);
  CHECK(both[0][0] == both[0][1]);
  CHECK(abs(both[0][0]) == 2);

  MatZ h = hnf_rows(MatZ{{Int(2), Int(0)}, {Int(0), Int(3)}});
  VecZ r = reduce_mod_lattice(VecZ{Int(5), Int(-4)}, h);
  CHECK(r == VecZ{Int(1), Int(2)});
}
