#pragma once

#include <string>
#include <vector>

#include "k3cusp/lattice.hpp"

namespace k3cusp {

// A formal word in the generators p = q_1(2), q = q_{-1}(2), u = u(2),
// v = v(2) of the 2-elementary finite quadratic forms.
struct DiscWord {
  int np = 0, nq = 0, nu = 0, nv = 0;
  int rank() const { return np + nq + 2 * nu + 2 * nv; }
  bool co_odd() const { return np + nq > 0; }
  bool operator==(const DiscWord&) const = default;
  std::string to_string() const;
};

struct WordInvariants {
  int a = 0;
  int delta = 0;
  int sig_mod8 = 0;
  bool operator==(const WordInvariants&) const = default;
};

WordInvariants word_invariants(const DiscWord& w);

// Canonical equivalence: equality of the invariant triple (a, delta, sig mod 8).
bool equivalent(const DiscWord& w1, const DiscWord& w2);

// Rewriting oracle: closure under the six generating relations
//   u^2=v^2, p^4=q^4, up=p^2q, uq=pq^2, vp=q^3, vq=p^3
// (cross-check only; throws if the state cap is hit).
bool rewrite_equivalent(const DiscWord& w1, const DiscWord& w2, long max_states = 1000000);

// "p^2 u v" or "p^2+u+v"
DiscWord parse_word(const std::string& s);

struct UnknownBlock : lattice_error { using lattice_error::lattice_error; };
struct RankTooLarge : lattice_error { using lattice_error::lattice_error; };

// Discriminant word of a standard block sum per the block table
// (U, E8 -> empty; U(2), D8, D16 -> u; D4, D12 -> v; E8(2) -> u^4;
//  A1 -> q; E7, <2> -> p; D6, D14 -> p^2; D10 -> q^2; I11(2) -> pq).
DiscWord form_of_block(const std::string& lattice_expr);

// Explicit form on Z2^a: value(x) = 2 q(x) in Z4, bil(x,y) = 2 b(x,y) in Z2.
struct FiniteForm {
  int a = 0;
  std::vector<int> gen_value;              // 2q(g_i) mod 4
  std::vector<std::vector<int>> gen_bil;   // 2b(g_i,g_j) mod 2
  int value(const std::vector<int>& x) const;  // 2q(x) mod 4, x in F2^a
  int bil(const std::vector<int>& x, const std::vector<int>& y) const;  // mod 2
};
FiniteForm explicit_form(const DiscWord& w);

enum class OrbitKind { Ordinary, Characteristic };
const char* to_string(OrbitKind k);

// Kinds of nonzero isotropic elements present in the form (brute force over
// Z2^a); requires a <= 24.
std::vector<OrbitKind> isotropic_orbit_kinds(const DiscWord& w);

// Classification of the 2-elementary index-2 sublattices S of K containing
// 2K^*, via nonzero elements of A_{K^dag} (at most one orbit per kind).
struct Index2Class {
  OrbitKind kind;
  int orbit_count = 0;
  bool operator==(const Index2Class&) const = default;
};
std::vector<Index2Class> index2_sublattice_classes(const IntegralLattice& K);

}  // namespace k3cusp
