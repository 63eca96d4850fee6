#pragma once

#include <vector>

#include "k3cusp/lattice.hpp"

namespace k3cusp {

// Exhaustive solver for the systems
//   (x, w) = h,  x^2 = s
// in a hyperbolic lattice L with a fixed vector w of positive norm (so that
// w^perp is negative definite). Exact arithmetic throughout; results in
// deterministic lexicographic order.
class CosetEnumerator {
 public:
  CosetEnumerator(const IntegralLattice& L, const VecZ& w);

  // gcd of (x, w) over x in L: heights are multiples of this
  const Int& pairing_gcd() const { return pairing_gcd_; }

  std::vector<VecZ> solve(const Int& h, const Int& s, int threads = 1) const;

 private:
  const IntegralLattice& L_;
  VecZ w_;
  Int w2_;
  Int pairing_gcd_;
  MatZ perp_basis_;             // rows: basis of w^perp, rank n-1
  MatZ perp_gram_;              // negative definite
  std::vector<std::vector<Rat>> chol_u_;  // unit upper triangular of -perp_gram
  std::vector<Rat> chol_d_;               // positive diagonal
  VecZ gw_;                     // G w
};

}  // namespace k3cusp
