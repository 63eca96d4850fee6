#pragma once

#include <optional>
#include <string>
#include <vector>

#include "k3cusp/exact.hpp"

namespace k3cusp {

// An integral lattice given by a square symmetric nondegenerate Gram matrix.
// Immutable after construction; derived data (signature, discriminant) is
// computed once in the constructor.
class IntegralLattice {
 public:
  explicit IntegralLattice(MatZ gram, std::vector<std::string> labels = {});

  // Parse a lattice literal: sums of named blocks with optional twist and
  // power, e.g. "U+U(2)+E8(2)", "A1^3+D4", "<2>", "I11(2)".
  static IntegralLattice parse(const std::string& expr);

  const MatZ& gram() const { return gram_; }
  int rank() const { return gram_.rows; }
  const std::vector<std::string>& labels() const { return labels_; }

  Int pairing(const VecZ& x, const VecZ& y) const { return pair(gram_, x, y); }
  Int norm(const VecZ& x) const { return pair(gram_, x, x); }

  Int determinant() const { return det_; }
  Inertia signature() const { return sig_; }
  bool is_even() const;
  bool is_nondegenerate() const { return det_ != 0; }
  // signature (1, n-1)
  bool is_hyperbolic() const { return sig_.plus == 1 && sig_.zero == 0 && sig_.minus == rank() - 1; }

  IntegralLattice rescaled(const Int& c) const;
  IntegralLattice direct_sum(const IntegralLattice& other) const;

  // gcd of v . L
  Int divisibility(const VecZ& v) const;

  std::string to_string() const;

 private:
  MatZ gram_;
  std::vector<std::string> labels_;
  Int det_;
  Inertia sig_;
};

struct TwoElemInvariants {
  int sig_plus = 0, sig_minus = 0;
  int r = 0, a = 0, delta = 0;
  bool operator==(const TwoElemInvariants&) const = default;
  std::string to_string() const;  // "(r,a,delta)_{sig_plus}"
};

struct lattice_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotTwoElementary : lattice_error { using lattice_error::lattice_error; };
struct NotEven : lattice_error { using lattice_error::lattice_error; };
struct ParityError : lattice_error { using lattice_error::lattice_error; };
struct ZeroVector : lattice_error { using lattice_error::lattice_error; };
struct NotIsotropic : lattice_error { using lattice_error::lattice_error; };
struct NotPrimitive : lattice_error { using lattice_error::lattice_error; };
struct SplitFailed : lattice_error { using lattice_error::lattice_error; };

// 2-elementary invariants (r, a, delta); throws NotEven / NotTwoElementary.
TwoElemInvariants two_elementary_invariants(const IntegralLattice& L);
// Same but valid for odd 2-elementary lattices as well (doubled duals of
// co-odd lattices are odd).
TwoElemInvariants two_elementary_invariants_any(const IntegralLattice& L);

// The doubled dual H^dag = H^*(2); requires L 2-elementary.
IntegralLattice doubled_dual(const IntegralLattice& L);

// (g, k) = (11 - (r+a)/2, (r-a)/2); throws ParityError if r+a odd.
std::pair<int, int> gk(int r, int a);

enum class IsotropicKind { Odd, EvenOrdinary, EvenCharacteristic };
const char* to_string(IsotropicKind k);

// Classify a primitive isotropic vector e in a 2-elementary lattice.
IsotropicKind classify_isotropic(const IntegralLattice& T, const VecZ& e);

// The discriminant group A_L = L^*/L presented by generators with their
// q-values; used by classify_isotropic and the discform bridge.
struct DiscGroup {
  // generators of the 2-torsion part, as vectors in (1/2)L expressed by
  // numerator vectors w (the class of w/2); q(w/2) = w.G.w/4 mod 2Z.
  std::vector<VecZ> gens;       // numerators (vectors in L coords, class of g/2)
  int a = 0;                    // Z2-rank
};
DiscGroup discriminant_group(const IntegralLattice& L);

// e^perp / e for a primitive isotropic e; also returns a lift of the quotient
// basis into e^perp (rows, in L coordinates).
struct QuotientByIsotropic {
  IntegralLattice quotient;
  MatZ lift;  // rows: lift of quotient basis into L
};
QuotientByIsotropic quotient_by_isotropic(const IntegralLattice& L, const VecZ& e);

// Orthogonal complement of a set of vectors (rows), as a primitive sublattice:
// basis rows in L coordinates plus the induced Gram.
struct Sublattice {
  MatZ basis;  // rows, in ambient coordinates
  IntegralLattice lattice;
};
Sublattice orthogonal_complement(const IntegralLattice& L, const MatZ& vectors);

// Split T = H (+) K along a primitive isotropic vector e, per kind:
// H is U, U(2) or I_{1,1}(2) and K = e^perp/e.
struct IsotropicSplit {
  IsotropicKind kind;
  IntegralLattice H, K;
  MatZ h_basis, k_basis;  // rows in T coordinates
};
IsotropicSplit split_off_isotropic(const IntegralLattice& T, const VecZ& e);

// Exact isometry testing for definite lattices: backtracking on Gram matrices
// with a node budget.
enum class IsometryResult { Isometric, NotIsometric, Inconclusive };
IsometryResult definite_isometric(const IntegralLattice& A, const IntegralLattice& B,
                                  long node_budget = 200000);

// Enumerate all vectors of a definite lattice with norm of given value
// (negative definite: value < 0). Deterministic (lex) order; returns one
// vector per +- pair (lex-positive representative).
std::vector<VecZ> short_vectors(const IntegralLattice& L, const Int& norm_value);

}  // namespace k3cusp
