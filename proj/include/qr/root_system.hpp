// Finite crystallographic root systems generated from simple roots by
// reflection closure, the Weyl group as integer matrices, and the shifted
// (rho-twisted) action used for antisymmetrized multiplicities.
#pragma once

#include <algorithm>
#include <map>
#include <vector>

#include "qr/errors.hpp"
#include "qr/formal_character.hpp"
#include "qr/weights.hpp"

namespace qr {

struct WeylElement {
  MatZ matrix;  // acts on weight coordinates, lattice-preserving
  int length = 0;

  Weight apply(const Weight& w) const {
    Weight r(matrix.size(), Rat(0));
    for (size_t i = 0; i < matrix.size(); ++i)
      for (size_t j = 0; j < matrix.size(); ++j) r[i] += Rat(matrix[i][j]) * w[j];
    return r;
  }

  int sign() const { return length % 2 == 0 ? 1 : -1; }
};

struct RootSystem {
  WeightLattice lattice;
  std::vector<Weight> simple_roots;
  std::vector<Weight> positive_roots;
  std::vector<WeylElement> elements;  // sorted by length, then matrix
  Weight rho;                         // half sum of positive roots

  bool is_torus() const { return simple_roots.empty(); }

  bool is_dominant(const Weight& w) const {
    for (const auto& a : simple_roots)
      if (lattice.pair(w, a) < 0) return false;
    return true;
  }

  bool is_strictly_dominant(const Weight& w) const {
    for (const auto& a : simple_roots)
      if (lattice.pair(w, a) <= 0) return false;
    return true;
  }
};

namespace detail {

// matrix of x |-> x - (2<x,b>/<b,b>) b; entries must land in Z for
// lattice-preserving crystallographic data
inline MatZ reflection_matrix(const WeightLattice& lat, const Weight& b) {
  Rat b2 = lat.norm2(b);
  size_t n = lat.rank;
  MatZ m(n, VecZ(n));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) {
      // column j: image of e_j
      Rat gb = 0;  // <e_j, b>
      for (size_t k = 0; k < n; ++k) gb += lat.gram[j][k] * b[k];
      Rat entry = Rat(i == j ? 1 : 0) - Rat(2) * gb / b2 * b[i];
      if (!is_integer(entry))
        throw InputError("simple root reflection does not preserve the lattice");
      m[i][j] = num(entry);
    }
  }
  return m;
}

inline MatZ matz_mul(const MatZ& a, const MatZ& b) {
  size_t n = a.size();
  MatZ r(n, VecZ(n, 0));
  for (size_t i = 0; i < n; ++i)
    for (size_t k = 0; k < n; ++k)
      for (size_t j = 0; j < n; ++j) r[i][j] += a[i][k] * b[k][j];
  return r;
}

}  // namespace detail

// Reflection closure of the given simple roots. The bound caps the number of
// group elements explored; exceeding it means the input does not generate a
// finite (crystallographic) group.
inline RootSystem build_root_system(const WeightLattice& lattice,
                                    const std::vector<Weight>& simple_roots,
                                    size_t bound = 10000) {
  lattice.validate();
  RootSystem rs;
  rs.lattice = lattice;
  rs.simple_roots = simple_roots;
  size_t n = lattice.rank;

  for (const auto& a : simple_roots) {
    if (a.size() != n) throw InputError("simple root has wrong dimension");
    if (!is_integral_weight(a)) throw InputError("simple roots must be integral weights");
    if (is_zero_vec(a)) throw InputError("simple roots must be nonzero");
  }
  {
    MatQ m(simple_roots.begin(), simple_roots.end());
    if (mat_rank(m) != simple_roots.size())
      throw InputError("simple roots must be linearly independent");
  }

  std::vector<MatZ> gens;
  for (const auto& a : simple_roots) gens.push_back(detail::reflection_matrix(lattice, a));

  // breadth-first closure gives each element its minimal word length
  MatZ id(n, VecZ(n, 0));
  for (size_t i = 0; i < n; ++i) id[i][i] = 1;
  std::map<MatZ, int> length;
  length[id] = 0;
  std::vector<MatZ> frontier = {id};
  while (!frontier.empty()) {
    std::vector<MatZ> next;
    for (const auto& w : frontier) {
      for (const auto& g : gens) {
        MatZ wg = detail::matz_mul(w, g);
        auto [it, inserted] = length.emplace(wg, length[w] + 1);
        if (inserted) {
          if (length.size() > bound)
            throw NonFiniteSystem("reflection closure exceeded element bound");
          next.push_back(std::move(wg));
        }
      }
    }
    frontier = std::move(next);
  }
  for (const auto& [m, len] : length) rs.elements.push_back({m, len});
  std::sort(rs.elements.begin(), rs.elements.end(), [](const WeylElement& a, const WeylElement& b) {
    return a.length != b.length ? a.length < b.length : a.matrix < b.matrix;
  });

  // all roots = W . simple; positive = nonnegative combinations of simple
  std::vector<Weight> roots;
  {
    std::map<VecZ, bool> seen;
    for (const auto& w : rs.elements)
      for (const auto& a : simple_roots) {
        Weight r = w.apply(a);
        if (seen.emplace(weight_to_int(r), true).second) roots.push_back(r);
      }
  }
  MatQ basis_cols(n, VecQ(simple_roots.size()));
  for (size_t j = 0; j < simple_roots.size(); ++j)
    for (size_t i = 0; i < n; ++i) basis_cols[i][j] = simple_roots[j][i];
  for (const auto& r : roots) {
    auto sol = solve_linear(basis_cols, r);
    if (!sol.consistent)
      throw InputError("root escaped the span of the simple roots");
    bool nonneg = true;
    for (const auto& c : sol.particular) nonneg = nonneg && c >= 0;
    if (nonneg) rs.positive_roots.push_back(r);
  }
  std::sort(rs.positive_roots.begin(), rs.positive_roots.end());

  rs.rho = zero_vec(n);
  for (const auto& r : rs.positive_roots) rs.rho = vec_add(rs.rho, vec_scale(Rat(1, 2), r));
  return rs;
}

// w(mu + rho) - rho; preserves the weight lattice even when rho itself is
// not a lattice point
inline Weight shifted_action(const RootSystem& rs, const WeylElement& w, const Weight& mu) {
  return vec_sub(w.apply(vec_add(mu, rs.rho)), rs.rho);
}

// Weyl numerator of a dominant integral weight: the alternating sum of spikes
// at w(lambda + rho) - rho. For the torus this is a single spike at lambda.
inline FormalCharacter weyl_numerator(const RootSystem& rs, const Weight& lambda) {
  if (!rs.is_dominant(lambda))
    throw NotDominant("weyl_numerator needs a dominant weight, got " + weight_to_string(lambda));
  FormalCharacter out;
  for (const auto& w : rs.elements)
    out.add(weight_to_int(shifted_action(rs, w, lambda)), Int(w.sign()));
  return out;
}

}  // namespace qr
