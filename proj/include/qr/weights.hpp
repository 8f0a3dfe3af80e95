// Weight lattice with an invariant inner product, and weight helpers.
// Weights are coordinate vectors in a fixed basis of the lattice; the gram
// matrix defines the pairing used for norms, projections and dominance.
#pragma once

#include <string>
#include <vector>

#include "qr/errors.hpp"
#include "qr/lattice.hpp"
#include "qr/linalg.hpp"
#include "qr/rational.hpp"

namespace qr {

using Weight = VecQ;

struct WeightLattice {
  int rank = 0;
  MatQ gram;  // symmetric positive definite, rank x rank

  void validate() const {
    if (rank < 0 || gram.size() != size_t(rank))
      throw InputError("weight lattice: gram size does not match rank");
    for (int i = 0; i < rank; ++i) {
      if (gram[i].size() != size_t(rank))
        throw InputError("weight lattice: gram is not square");
      for (int j = 0; j < rank; ++j)
        if (gram[i][j] != gram[j][i])
          throw InputError("weight lattice: gram is not symmetric");
    }
    // positive definiteness via leading principal minors
    for (int k = 1; k <= rank; ++k) {
      MatQ minor(k, VecQ(k));
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) minor[i][j] = gram[i][j];
      if (determinant(minor) <= 0)
        throw InputError("weight lattice: gram is not positive definite");
    }
  }

  // invariant inner product on t* (and, via the identification, on t)
  Rat pair(const Weight& a, const Weight& b) const {
    Rat s = 0;
    for (int i = 0; i < rank; ++i)
      for (int j = 0; j < rank; ++j) s += a[i] * gram[i][j] * b[j];
    return s;
  }

  Rat norm2(const Weight& a) const { return pair(a, a); }
};

inline bool is_integral_weight(const Weight& w) {
  for (const auto& c : w)
    if (!is_integer(c)) return false;
  return true;
}

inline VecZ weight_to_int(const Weight& w) {
  VecZ v(w.size());
  for (size_t i = 0; i < w.size(); ++i) {
    if (!is_integer(w[i])) throw InputError("expected an integral weight");
    v[i] = num(w[i]);
  }
  return v;
}

inline Weight weight_from_int(const VecZ& v) { return Weight(v.begin(), v.end()); }

inline std::string weight_to_string(const Weight& w) {
  std::string s = "(";
  for (size_t i = 0; i < w.size(); ++i) {
    if (i) s += ",";
    s += rat_to_string(w[i]);
  }
  return s + ")";
}

}  // namespace qr
