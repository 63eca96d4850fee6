#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace k3cusp {

using Int = mpz_class;
using Rat = mpq_class;

// Dense integer matrix, row major. Small sizes only (rank <= 22 throughout).
struct MatZ {
  int rows = 0, cols = 0;
  std::vector<Int> a;

  MatZ() = default;
  MatZ(int r, int c) : rows(r), cols(c), a(r * c, 0) {}
  static MatZ identity(int n);

  Int& at(int i, int j) { return a[i * cols + j]; }
  const Int& at(int i, int j) const { return a[i * cols + j]; }
  bool operator==(const MatZ&) const = default;
};

using VecZ = std::vector<Int>;

MatZ mat_from(const std::vector<std::vector<long>>& rows);
MatZ transpose(const MatZ& m);
MatZ mul(const MatZ& x, const MatZ& y);
VecZ mul(const MatZ& m, const VecZ& v);
VecZ mul_row(const VecZ& v, const MatZ& m);
Int dot(const VecZ& x, const VecZ& y);
// x^T G y
Int pair(const MatZ& g, const VecZ& x, const VecZ& y);
MatZ block_diag(const MatZ& x, const MatZ& y);
MatZ scaled(const MatZ& m, const Int& c);
bool is_symmetric(const MatZ& m);
Int content(const VecZ& v);  // gcd of entries, 0 for zero vector
VecZ primitive_part(const VecZ& v);

// Exact determinant (Bareiss).
Int det(const MatZ& m);

// Smith normal form elementary divisors (absolute values, ascending, nonzero only).
std::vector<Int> smith_divisors(MatZ m);

// Inertia (n_plus, n_zero, n_minus) of a symmetric matrix, exact.
struct Inertia {
  int plus = 0, zero = 0, minus = 0;
};
Inertia inertia(const MatZ& g);

// Integer kernel: basis (as rows) of { x in Z^cols : m x^T = 0 }, HNF-reduced.
MatZ integer_kernel(const MatZ& m);

// Row-style Hermite normal form of the lattice spanned by the rows; returns a
// basis (full row rank) of the same lattice.
MatZ row_basis_hnf(const MatZ& m);

// Saturation of the lattice spanned by the rows inside Z^cols.
MatZ saturate_rows(const MatZ& m);

// Solve m x = b over the integers (m square nonsingular); nullopt if no
// integral solution.
std::optional<VecZ> solve_integer(const MatZ& m, const VecZ& b);

// Solve a single linear diophantine equation c . x = t; nullopt if t not a
// multiple of gcd(c).
std::optional<VecZ> solve_diophantine(const VecZ& c, const Int& t);

// Inverse of a nonsingular integer matrix as (adjugate, determinant) so that
// m^{-1} = adj / det.
struct QInverse {
  MatZ adj;
  Int den;
};
QInverse inverse(const MatZ& m);

// Extend a primitive row vector to a unimodular matrix (first row = v).
MatZ complete_to_unimodular(const VecZ& v);

// Hilbert symbol (a,b)_p for p prime or p=0 meaning the real place.
int hilbert_symbol(Int a, Int b, const Int& p);

// Rational congruence class of a nondegenerate symmetric integer matrix:
// rank, signature, determinant square class and Hasse-Witt invariants.
struct QCongruence {
  int rank = 0, plus = 0, minus = 0;
  Int det_squarefree;
  std::vector<std::pair<Int, int>> hasse;  // (prime, symbol) for relevant primes
  bool operator==(const QCongruence&) const = default;
};
QCongruence rational_congruence_class(const MatZ& g);

// floor(sqrt(n)) for n >= 0.
Int isqrt_floor(const Int& n);

struct exact_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace k3cusp
