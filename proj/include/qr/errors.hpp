// Error taxonomy. Every failure mode callers are expected to handle gets its
// own type so tests and the CLI can react precisely.
#pragma once

#include <stdexcept>
#include <string>

namespace qr {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// root system construction exceeded the closure bound (not a finite system)
struct NonFiniteSystem : Error { using Error::Error; };
// weyl_numerator called with a non-dominant highest weight
struct NotDominant : Error { using Error::Error; };

// a polarization vector pairs to zero with some tangent weight or root
struct DegeneratePolarization : Error { using Error::Error; };
// requested multiplicity box, minus the root-sum padding, is empty
struct BoxTooSmall : Error { using Error::Error; };

// fixed-point graph data violates a GKM consistency requirement
struct InconsistentGKM : Error { using Error::Error; };
// the deterministic gamma sweep ran out of candidates
struct GammaSearchExhausted : Error { using Error::Error; };
// intersection polytope p came out empty / dimension-deficient / unbounded
struct EmptyP : Error { using Error::Error; };
// 0 lies outside Delta, so the cone construction does not apply
struct ZeroNotInDelta : Error { using Error::Error; };

// no quasi-polynomial within the period/degree search bounds fit the samples
struct NotQuasiPolynomial : Error {
  int period_bound, degree_bound;
  NotQuasiPolynomial(int n, int d, const std::string& what)
      : Error(what), period_bound(n), degree_bound(d) {}
};
// evaluation or restriction requested outside the validated region
struct NotInRegion : Error { using Error::Error; };

// level xi is not weakly regular for the model
struct NotWeaklyRegular : Error { using Error::Error; };
// first-principles reduced data needs a toric model (torus G, dim M = 2 rank)
struct NotToricModel : Error { using Error::Error; };
// the two sides of a [Q,R] comparison disagree; carries the mismatch list
struct CheckFailed : Error { using Error::Error; };

// malformed input document / unknown example name / bad CLI argument
struct InputError : Error { using Error::Error; };

}  // namespace qr
