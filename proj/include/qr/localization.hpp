// Fixed-point localization of equivariant indices: polarized geometric-series
// expansion per fixed point, Kostant partition counting, index characters,
// and the Weyl-denominator convolution that turns an index character into
// antisymmetrized multiplicities.
#pragma once

#include <map>
#include <memory>
#include <random>
#include <utility>
#include <vector>

#include "qr/errors.hpp"
#include "qr/formal_character.hpp"
#include "qr/model.hpp"
#include "qr/root_system.hpp"

namespace qr {

struct Polarization {
  VecQ v;              // dual vector; dual pairing <v, w> = sum v_i w_i
  uint64_t seed = 0;   // provenance when drawn randomly
  int retries = 0;     // redraws needed before a valid vector came up
};

// <v, w> != 0 for every tangent weight of every point and every positive root
inline bool polarization_valid(const VecQ& v, const FixedPointModel& model,
                               const RootSystem& rs) {
  for (const auto& p : model.points)
    for (const auto& w : p.tangent_weights)
      if (dot(v, w) == 0) return false;
  for (const auto& a : rs.positive_roots)
    if (dot(v, a) == 0) return false;
  return true;
}

// Small random rational vector, redrawn until valid; deterministic per seed.
inline Polarization draw_polarization(const FixedPointModel& model, const RootSystem& rs,
                                      uint64_t seed = 1) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dist(-5000, 5000);
  Polarization pol;
  pol.seed = seed;
  for (int attempt = 0; attempt < 200; ++attempt) {
    VecQ v(model.lattice.rank);
    for (auto& c : v) c = Rat(dist(rng), 97);
    if (polarization_valid(v, model, rs)) {
      pol.v = std::move(v);
      pol.retries = attempt;
      return pol;
    }
  }
  throw DegeneratePolarization("no valid polarization after 200 draws");
}

struct PolarizedFactors {
  int sign = 1;                     // (-1)^{number of flipped factors}
  Weight shift;                     // sum of the flipped factor weights
  std::vector<Weight> generators;   // v-positive series directions
};

// Expansion data for prod_w 1/(1 - t^{-w}) over the given factor weights:
// a factor with <v,w> < 0 expands directly as sum_{m>=0} t^{-mw} with
// generator -w; a factor with <v,w> > 0 flips to -t^{w} sum_{m>=0} t^{mw},
// contributing sign -1, shift w, generator w.
inline PolarizedFactors polarize_factors(const std::vector<Weight>& ws, const Polarization& pol) {
  PolarizedFactors out;
  out.shift = zero_vec(pol.v.size());
  for (const auto& w : ws) {
    Rat p = dot(pol.v, w);
    if (p == 0)
      throw DegeneratePolarization("polarization pairs to zero with weight " + weight_to_string(w));
    if (p > 0) {
      out.sign = -out.sign;
      out.shift = vec_add(out.shift, w);
      out.generators.push_back(w);
    } else {
      out.generators.push_back(vec_neg(w));
    }
  }
  return out;
}

// Polarized expansion of a fixed point's index denominator. The factor
// weights of 1/det(1 - t^{-1}) on the tangent space are the isotropy weights,
// i.e. the negated stored tangent data.
inline PolarizedFactors polarize(const FixedPoint& p, const Polarization& pol) {
  return polarize_factors(isotropy_weights(p), pol);
}

// Counts N(target) = #{(m_i) in Z_{>=0}^n : sum m_i g_i = target} for a fixed
// generator list, all of which pair strictly positively with v. Memoized
// two-branch recursion shared across targets.
class KostantCounter {
 public:
  KostantCounter(std::vector<VecZ> gens, VecQ v) : gens_(std::move(gens)), v_(std::move(v)) {
    for (const auto& g : gens_)
      if (dot_v(g) <= 0)
        throw DegeneratePolarization("partition generator not v-positive");
  }

  Int count(const VecZ& target) { return rec(0, target); }

 private:
  Rat dot_v(const VecZ& g) const {
    Rat s = 0;
    for (size_t i = 0; i < g.size(); ++i) s += v_[i] * Rat(g[i]);
    return s;
  }

  Int rec(size_t i, const VecZ& t) {
    bool zero = true;
    for (const auto& c : t) zero = zero && c == 0;
    if (zero) return 1;
    if (i == gens_.size()) return 0;
    if (dot_v(t) < 0) return 0;
    auto key = std::make_pair(i, t);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    VecZ reduced(t.size());
    for (size_t j = 0; j < t.size(); ++j) reduced[j] = t[j] - gens_[i][j];
    Int result = rec(i + 1, t) + rec(i, reduced);
    memo_.emplace(std::move(key), result);
    return result;
  }

  std::vector<VecZ> gens_;
  VecQ v_;
  std::map<std::pair<size_t, VecZ>, Int> memo_;
};

// One-shot partition count (the operation form; evaluators keep counters).
inline Int kostant_partition(const std::vector<Weight>& generators, const Weight& target,
                             const VecQ& v) {
  std::vector<VecZ> gens;
  for (const auto& g : generators) gens.push_back(weight_to_int(g));
  KostantCounter counter(std::move(gens), v);
  return counter.count(weight_to_int(target));
}

// Independent brute-force oracle: nested bounded enumeration, no memoization.
inline Int kostant_partition_naive(const std::vector<Weight>& generators, const Weight& target,
                                   const VecQ& v) {
  std::vector<VecZ> gens;
  for (const auto& g : generators) gens.push_back(weight_to_int(g));
  VecZ t = weight_to_int(target);
  Int count = 0;
  // odometer over exponent vectors bounded by the v-pairing budget
  std::vector<Int> m(gens.size(), 0);
  auto value_at = [&](size_t coord) {
    Int s = t[coord];
    for (size_t i = 0; i < gens.size(); ++i) s -= m[i] * gens[i][coord];
    return s;
  };
  auto budget_ok = [&] {
    Rat s = 0;
    for (size_t c = 0; c < t.size(); ++c) s += v[c] * Rat(value_at(c));
    return s >= 0;
  };
  while (true) {
    bool exact = true;
    for (size_t c = 0; c < t.size() && exact; ++c) exact = value_at(c) == 0;
    if (exact) ++count;
    // advance odometer
    size_t i = 0;
    for (; i < gens.size(); ++i) {
      ++m[i];
      if (budget_ok()) break;
      m[i] = 0;
    }
    if (i == gens.size()) break;
  }
  return count;
}

using Box = std::pair<VecZ, VecZ>;  // coordinatewise lo, hi (inclusive)

inline bool box_empty(const Box& b) {
  for (size_t i = 0; i < b.first.size(); ++i)
    if (b.first[i] > b.second[i]) return true;
  return false;
}

// Enumerate integer points of a box in lexicographic order.
template <typename F>
void for_each_box_point(const Box& b, F&& f) {
  if (b.first.empty() || box_empty(b)) return;
  VecZ x = b.first;
  while (true) {
    f(x);
    size_t i = x.size();
    while (i > 0) {
      --i;
      if (x[i] < b.second[i]) {
        ++x[i];
        for (size_t j = i + 1; j < x.size(); ++j) x[j] = b.first[j];
        break;
      }
      if (i == 0) return;
    }
  }
}

// Per-coordinate extremes of all subset sums of the positive roots; used to
// pad and deflate multiplicity boxes.
inline std::pair<VecZ, VecZ> root_subset_sum_range(const RootSystem& rs) {
  size_t n = rs.lattice.rank;
  VecZ lo(n, 0), hi(n, 0);
  for (const auto& a : rs.positive_roots) {
    VecZ az = weight_to_int(a);
    for (size_t i = 0; i < n; ++i) {
      if (az[i] < 0) lo[i] += az[i];
      if (az[i] > 0) hi[i] += az[i];
    }
  }
  return {lo, hi};
}

inline Box pad_box_for_roots(const Box& b, const RootSystem& rs) {
  auto [slo, shi] = root_subset_sum_range(rs);
  Box padded = b;
  for (size_t i = 0; i < padded.first.size(); ++i) {
    padded.first[i] += slo[i];
    padded.second[i] += shi[i];
  }
  return padded;
}

// Evaluates index characters and multiplicities for one model under one
// polarization, sharing partition-count memo tables across queries.
class ModelEvaluator {
 public:
  ModelEvaluator(FixedPointModel model, RootSystem rs, Polarization pol)
      : model_(std::move(model)), rs_(std::move(rs)), pol_(std::move(pol)) {
    for (const auto& p : model_.points) {
      PolarizedFactors pf = polarize(p, pol_);
      PointData pd;
      pd.sign = pf.sign;
      pd.base_shift = weight_to_int(pf.shift);
      pd.mu = weight_to_int(p.mu);
      std::vector<VecZ> gens;
      for (const auto& g : pf.generators) gens.push_back(weight_to_int(g));
      pd.counter = std::make_unique<KostantCounter>(std::move(gens), pol_.v);
      points_.push_back(std::move(pd));
    }
  }

  const FixedPointModel& model() const { return model_; }
  const RootSystem& root_system() const { return rs_; }
  const Polarization& polarization() const { return pol_; }

  // coefficient of t^lambda in sum_p t^{k mu_p} / prod (1 - t^{-w}) over the
  // isotropy weights w at p
  Int index_multiplicity(long long k, const Weight& lambda) {
    VecZ lz = weight_to_int(lambda);
    Int total = 0;
    for (auto& pd : points_) {
      VecZ target(lz.size());
      for (size_t i = 0; i < lz.size(); ++i)
        target[i] = lz[i] - Int(k) * pd.mu[i] - pd.base_shift[i];
      total += Int(pd.sign) * pd.counter->count(target);
    }
    return total;
  }

  FormalCharacter index_character(long long k, const Box& box) {
    FormalCharacter out;
    for_each_box_point(box, [&](const VecZ& x) {
      out.add(x, index_multiplicity(k, weight_from_int(x)));
    });
    return out;
  }

  // m(k, lambda): coefficient of t^lambda in index * prod_{a>0} (1 - t^{-a});
  // defined for every integral lambda, dominant or not
  Int multiplicity(long long k, const Weight& lambda) {
    build_root_subsets();
    Int total = 0;
    for (const auto& [sum, sign] : root_subset_sums_)
      total += sign * index_multiplicity(k, vec_add(lambda, sum));
    return total;
  }

  Int dominant_multiplicity(long long k, const Weight& lambda) {
    if (!rs_.is_dominant(lambda))
      throw NotDominant("dominant_multiplicity at non-dominant " + weight_to_string(lambda));
    return multiplicity(k, lambda);
  }

  // Multiplicities on the deflated box, computed from an index character on
  // the given (padded) box. The input box must already include the subset-sum
  // padding of the positive roots.
  FormalCharacter q_multiplicities(long long k, const Box& padded_box) {
    auto [slo, shi] = root_subset_sum_range(rs_);
    Box inner = padded_box;
    for (size_t i = 0; i < inner.first.size(); ++i) {
      inner.first[i] -= slo[i];
      inner.second[i] -= shi[i];
    }
    if (box_empty(inner))
      throw BoxTooSmall("box minus root padding is empty");
    build_root_subsets();
    FormalCharacter idx = index_character(k, padded_box);
    FormalCharacter out;
    for_each_box_point(inner, [&](const VecZ& x) {
      Int v = 0;
      for (const auto& [sum, sign] : root_subset_sums_) {
        VecZ shifted(x.size());
        VecZ sz = weight_to_int(sum);
        for (size_t i = 0; i < x.size(); ++i) shifted[i] = x[i] + sz[i];
        v += sign * idx.coeff(shifted);
      }
      out.add(x, v);
    });
    return out;
  }

 private:
  void build_root_subsets() {
    if (!root_subset_sums_.empty()) return;
    root_subset_sums_.push_back({zero_vec(model_.lattice.rank), Int(1)});
    for (const auto& a : rs_.positive_roots) {
      size_t n = root_subset_sums_.size();
      for (size_t i = 0; i < n; ++i) {
        auto [sum, sign] = root_subset_sums_[i];
        root_subset_sums_.push_back({vec_add(sum, a), -sign});
      }
    }
  }

  struct PointData {
    VecZ mu;
    int sign;
    VecZ base_shift;
    std::unique_ptr<KostantCounter> counter;
  };

  FixedPointModel model_;
  RootSystem rs_;
  Polarization pol_;
  std::vector<PointData> points_;
  std::vector<std::pair<Weight, Int>> root_subset_sums_;
};

// Independent check on index_character: per fixed point, expand each factor
// 1/(1 - t^{w}) over the stored tangent weights as an explicitly truncated
// geometric series in a fixed convergence regime and multiply out. Shares no
// code path with polarize/KostantCounter.
inline FormalCharacter truncated_series_oracle(const FixedPointModel& model, long long k,
                                               const Box& box) {
  size_t n = model.lattice.rank;
  // deterministic regime vector: (1, e, e^2, ...) for the first e making all
  // pairings with stored weights nonzero
  VecQ u;
  for (int denom : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29}) {
    VecQ cand(n);
    Rat p = 1;
    for (size_t i = 0; i < n; ++i) {
      cand[i] = p;
      p /= denom;
    }
    bool ok = true;
    for (const auto& pt : model.points)
      for (const auto& w : pt.tangent_weights) ok = ok && dot(cand, w) != 0;
    if (ok) {
      u = std::move(cand);
      break;
    }
  }
  if (u.empty()) throw DegeneratePolarization("no convergence regime found for oracle");

  Rat box_min = 0;
  for (size_t i = 0; i < n; ++i) {
    Rat a = u[i] * Rat(box.first[i]), b = u[i] * Rat(box.second[i]);
    box_min += a < b ? a : b;
  }

  FormalCharacter total;
  for (const auto& pt : model.points) {
    Rat c_min;
    bool first = true;
    for (const auto& w : pt.tangent_weights) {
      Rat c = dot(u, w);
      if (c < 0) c = -c;
      if (first || c < c_min) c_min = c, first = false;
    }
    Rat mu_u = Rat(k) * dot(u, pt.mu);
    Int order = mu_u <= box_min ? Int(0) : ceil_rat((mu_u - box_min) / c_min) + 1;

    FormalCharacter prod;
    {
      VecZ spike(n);
      Weight kmu = vec_scale(Rat(k), pt.mu);
      for (size_t i = 0; i < n; ++i) spike[i] = num(kmu[i]);
      prod.add(spike, Int(1));
    }
    for (const auto& w : pt.tangent_weights) {
      FormalCharacter factor;
      VecZ wz = weight_to_int(w);
      if (dot(u, w) < 0) {
        // 1/(1 - t^w) = sum_{m>=0} t^{mw}
        for (Int m = 0; m <= order; ++m) {
          VecZ e(n);
          for (size_t i = 0; i < n; ++i) e[i] = m * wz[i];
          factor.add(e, Int(1));
        }
      } else {
        // 1/(1 - t^w) = -sum_{m>=1} t^{-mw}
        for (Int m = 1; m <= order + 1; ++m) {
          VecZ e(n);
          for (size_t i = 0; i < n; ++i) e[i] = -m * wz[i];
          factor.add(e, Int(-1));
        }
      }
      FormalCharacter next = prod.convolve(factor);
      // drop monomials that can no longer reach the box (remaining factors
      // only decrease the u-pairing)
      FormalCharacter pruned;
      for (const auto& [e, c] : next.terms()) {
        Rat val = 0;
        for (size_t i = 0; i < n; ++i) val += u[i] * Rat(e[i]);
        if (val >= box_min) pruned.add(e, c);
      }
      prod = std::move(pruned);
    }
    total.add_all(prod);
  }
  return total.restrict_box(box.first, box.second);
}

}  // namespace qr
