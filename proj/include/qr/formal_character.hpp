// Finitely supported integer combinations of lattice weights, i.e. Laurent
// polynomial characters indexed by exponent vectors. Zero coefficients are
// never stored, so support() and equality are canonical.
#pragma once

#include <map>
#include <vector>

#include "qr/rational.hpp"
#include "qr/weights.hpp"

namespace qr {

class FormalCharacter {
 public:
  using Map = std::map<VecZ, Int>;  // ordered: deterministic iteration

  void add(const VecZ& w, const Int& c) {
    if (c == 0) return;
    auto it = terms_.find(w);
    if (it == terms_.end()) {
      terms_.emplace(w, c);
    } else {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  Int coeff(const VecZ& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? Int(0) : it->second;
  }

  void add_all(const FormalCharacter& other, const Int& scale = Int(1)) {
    for (const auto& [w, c] : other.terms_) add(w, scale * c);
  }

  // product of two characters as Laurent polynomials
  FormalCharacter convolve(const FormalCharacter& other) const {
    FormalCharacter out;
    for (const auto& [w1, c1] : terms_)
      for (const auto& [w2, c2] : other.terms_) {
        VecZ w(w1.size());
        for (size_t i = 0; i < w.size(); ++i) w[i] = w1[i] + w2[i];
        out.add(w, c1 * c2);
      }
    return out;
  }

  // keep only exponents with lo <= w <= hi coordinatewise
  FormalCharacter restrict_box(const VecZ& lo, const VecZ& hi) const {
    FormalCharacter out;
    for (const auto& [w, c] : terms_) {
      bool in = true;
      for (size_t i = 0; i < w.size() && in; ++i) in = lo[i] <= w[i] && w[i] <= hi[i];
      if (in) out.add(w, c);
    }
    return out;
  }

  bool operator==(const FormalCharacter& other) const { return terms_ == other.terms_; }

  const Map& terms() const { return terms_; }
  size_t support_size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }

  Int total() const {
    Int s = 0;
    for (const auto& [w, c] : terms_) s += c;
    return s;
  }

 private:
  Map terms_;
};

}  // namespace qr
