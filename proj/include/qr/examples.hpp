// Built-in example corpus: small fixed-point models with hand-checkable
// multiplicities, used by the test suite and reproducible from the CLI.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qr/errors.hpp"
#include "qr/model.hpp"
#include "qr/reduction.hpp"
#include "qr/root_system.hpp"

namespace qr {

struct ExampleModel {
  std::string name;
  std::string description;
  FixedPointModel model;
  std::vector<Weight> simple_roots;              // empty for a torus action
  bool delta_is_kirwan = true;                   // false when the hull overshoots
  std::optional<VecQ> suggested_xi;              // a weakly regular level
  std::optional<ReducedLevelData> reduced_data;  // bundled when not derivable
};

namespace detail {

inline FixedPoint fp(Weight mu, std::vector<Weight> weights) {
  FixedPoint p;
  p.mu = std::move(mu);
  p.tangent_weights = std::move(weights);
  return p;
}

inline WeightLattice lat(int rank, MatQ gram) {
  WeightLattice l;
  l.rank = rank;
  l.gram = std::move(gram);
  l.validate();
  return l;
}

}  // namespace detail

inline std::vector<std::string> example_names() {
  return {"cp1",    "cp1-shifted", "cp2",           "s2-symmetric",
          "cp1xcp1", "p1xp1-weight2", "p1xp1-su2-diagonal", "a1-coadjoint"};
}

inline ExampleModel make_example(const std::string& name) {
  using detail::fp;
  ExampleModel ex;
  ex.name = name;

  if (name == "cp1") {
    ex.description = "projective line, sections of O(k); moment image [0,1]";
    ex.model.lattice = detail::lat(1, {{1}});
    ex.model.points = {fp({0}, {{1}}), fp({1}, {{-1}})};
    ex.model.edges = {{0, 1, {1}}};
    ex.suggested_xi = VecQ{Rat(1, 2)};
  } else if (name == "cp1-shifted") {
    ex.description = "projective line with shifted prequantum data; moment image [1,2]";
    ex.model.lattice = detail::lat(1, {{1}});
    ex.model.points = {fp({1}, {{1}}), fp({2}, {{-1}})};
    ex.model.edges = {{0, 1, {1}}};
  } else if (name == "cp2") {
    ex.description = "projective plane, sections of O(k); moment image the unit simplex";
    ex.model.lattice = detail::lat(2, {{1, 0}, {0, 1}});
    ex.model.points = {fp({0, 0}, {{1, 0}, {0, 1}}),
                       fp({1, 0}, {{-1, 0}, {-1, 1}}),
                       fp({0, 1}, {{0, -1}, {1, -1}})};
    ex.model.edges = {{0, 1, {1, 0}}, {0, 2, {0, 1}}, {1, 2, {1, -1}}};
    ex.suggested_xi = VecQ{Rat(1, 3), Rat(1, 3)};
  } else if (name == "s2-symmetric") {
    ex.description = "sphere with symmetric moment image [-1,1]";
    ex.model.lattice = detail::lat(1, {{1}});
    ex.model.points = {fp({-1}, {{1}}), fp({1}, {{-1}})};
    ex.model.edges = {{0, 1, {1}}};
    ex.suggested_xi = VecQ{Rat(1, 2)};
  } else if (name == "cp1xcp1") {
    ex.description = "product of two projective lines; moment image the unit square";
    ex.model.lattice = detail::lat(2, {{1, 0}, {0, 1}});
    ex.model.points = {fp({0, 0}, {{1, 0}, {0, 1}}),
                       fp({1, 0}, {{-1, 0}, {0, 1}}),
                       fp({0, 1}, {{1, 0}, {0, -1}}),
                       fp({1, 1}, {{-1, 0}, {0, -1}})};
    ex.model.edges = {{0, 1, {1, 0}}, {2, 3, {1, 0}}, {0, 2, {0, 1}}, {1, 3, {0, 1}}};
    ex.suggested_xi = VecQ{Rat(1, 2), Rat(1, 2)};
  } else if (name == "p1xp1-weight2") {
    ex.description = "product of lines, second factor rotated with weight 2; "
                     "finite stabilizer of order 2 at every regular level";
    ex.model.lattice = detail::lat(2, {{1, 0}, {0, 1}});
    ex.model.points = {fp({0, -1}, {{1, 0}, {0, 2}}),
                       fp({0, 1}, {{1, 0}, {0, -2}}),
                       fp({1, -1}, {{-1, 0}, {0, 2}}),
                       fp({1, 1}, {{-1, 0}, {0, -2}})};
    ex.model.edges = {{0, 2, {1, 0}}, {1, 3, {1, 0}}, {0, 1, {0, 2}}, {2, 3, {0, 2}}};
    ex.suggested_xi = VecQ{Rat(1, 2), Rat(1, 2)};
  } else if (name == "p1xp1-su2-diagonal") {
    ex.description = "product of lines under the diagonal rank-one action; "
                     "reduced spaces are order-2 orbifold points";
    ex.model.lattice = detail::lat(1, {{Rat(1, 2)}});
    ex.simple_roots = {{2}};
    ex.model.points = {fp({2}, {{-2}, {-2}}),
                       fp({0}, {{2}, {-2}}),
                       fp({0}, {{-2}, {2}}),
                       fp({-2}, {{2}, {2}})};
    ex.model.edges = {{0, 1, {2}}, {0, 2, {2}}, {1, 3, {2}}, {2, 3, {2}}};
    ex.suggested_xi = VecQ{Rat(1, 2)};
    ReducedLevelData data;
    data.xi = *ex.suggested_xi;
    data.group = {VecQ{Rat(0)}, VecQ{Rat(1, 2)}};
    data.d = 2;
    OrbifoldPoint pt;
    pt.gl_phase = {Rat(0), Rat(0)};
    data.points = {pt};
    ex.reduced_data = std::move(data);
  } else if (name == "a1-coadjoint") {
    ex.description = "rank-one coadjoint orbit; irreducible character per level";
    ex.model.lattice = detail::lat(1, {{Rat(1, 2)}});
    ex.simple_roots = {{2}};
    ex.model.points = {fp({1}, {{-2}}), fp({-1}, {{2}})};
    ex.model.edges = {{0, 1, {2}}};
    // the dominant hull [0,1] of the moment images overshoots the true
    // image {1}, so the polytope stages do not apply to this model
    ex.delta_is_kirwan = false;
  } else {
    throw InputError("unknown example '" + name + "'");
  }

  ex.model.validate();
  ex.model.validate_edges();
  return ex;
}

inline RootSystem example_root_system(const ExampleModel& ex) {
  return build_root_system(ex.model.lattice, ex.simple_roots);
}

}  // namespace qr
