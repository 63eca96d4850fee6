#pragma once

#include <optional>
#include <string>
#include <vector>

#include "k3cusp/catalog.hpp"
#include "k3cusp/lattice.hpp"

namespace k3cusp {

struct Root {
  VecZ vec;      // in lattice coordinates
  int norm = 0;  // -2 (white) or -4 (black)
  int div = 1;   // divisibility, 1 or 2
  bool white() const { return norm == -2; }
};

enum class DiagramStatus { FiniteCovolume, Truncated };

struct CoxeterDiagram {
  IntegralLattice lattice;
  VecZ v0;
  std::vector<Root> roots;
  MatZ gram;  // pairwise products of the simple roots
  DiagramStatus status = DiagramStatus::Truncated;

  int size() const { return (int)roots.size(); }
};

enum class EdgeKind { None, Simple, Double, Thick, Dotted };
const char* to_string(EdgeKind e);
// classification from the Gram value and the two root norms
EdgeKind edge_kind_value(const Int& g, int norm_i, int norm_j);
EdgeKind edge_kind(const CoxeterDiagram& d, int i, int j);

enum class DefType { Elliptic, Parabolic, Indefinite };

struct DiagComponent {
  std::vector<int> verts;   // indices into the diagram/subset
  bool affine = false;
  std::string symbol;       // "A15", "A1(2)", "D8", "B8(2)", "F4", "A~15", ...
  char family = '?';        // A, B, C, D, E, F
  int n = 0;                // rank of the finite part
  bool scaled = false;      // all roots of norm -4
  VecZ kernel;              // affine only: primitive isotropic, lattice coords
};

struct SubdiagramClass {
  DefType type = DefType::Indefinite;
  std::vector<DiagComponent> components;
  int total_rank = 0;  // elliptic: #verts; parabolic: #verts - #affine comps
  std::string to_string() const;
};

struct NotElliptic : lattice_error { using lattice_error::lattice_error; };
struct NotEvenRoot : lattice_error { using lattice_error::lattice_error; };
struct DiagramTruncated : lattice_error { using lattice_error::lattice_error; };
struct RootsDontGenerate : lattice_error { using lattice_error::lattice_error; };

SubdiagramClass classify(const CoxeterDiagram& d, const std::vector<int>& subset);

// conversion rules B_n(2) -> A1^n, C3 -> A3, C_n -> D_n, F4 -> D4 applied to
// an elliptic class; pure components unchanged. Result: normalized multiset.
std::vector<RootSymbol> convert_to_A1_system(const SubdiagramClass& c);

struct MaxParabolic {
  VecZ ray;                      // primitive isotropic vector
  std::vector<int> support;      // all diagram vertices orthogonal to the ray
  SubdiagramClass cls;           // classification of the support
};
// all maximal parabolic subdiagrams (total parabolic rank = rank - 2),
// deduplicated by their isotropic kernel ray
std::vector<MaxParabolic> maximal_parabolics(const CoxeterDiagram& d);

// diagram surgery at a white divisibility-2 vertex (Heegner (-1,-1)-move):
// remove the vertex and adjacent whites, recolor adjacent blacks, keep the
// projections to the orthogonal complement
CoxeterDiagram surgery(const CoxeterDiagram& d, int vertex);

bool diagram_isomorphic(const CoxeterDiagram& a, const CoxeterDiagram& b);

// orbits of vertices under the full diagram automorphism group
std::vector<std::vector<int>> diagram_automorphism_orbits(const CoxeterDiagram& d);

// orbits (up to diagram automorphism) of white divisibility-2 vertices;
// throws RootsDontGenerate when the roots span a proper sublattice
std::vector<std::vector<int>> even_root_orbits(const CoxeterDiagram& d);

// Vinberg's finite-volume criterion: every elliptic subdiagram of rank n-2
// extends to exactly two subdiagrams, each elliptic of rank n-1 or maximal
// parabolic (n = lattice rank). Requires the roots to span rank n.
bool finite_volume_certificate(const MatZ& gram, int lattice_rank);

// chamber membership relative to the diagram's simple roots
enum class ChamberPosition { Interior, Face, Outside };
struct ChamberLocation {
  ChamberPosition position;
  std::vector<int> support;  // zero set for faces
};
struct UncertifiedRegion : lattice_error { using lattice_error::lattice_error; };
ChamberLocation chamber_membership(const CoxeterDiagram& d, const VecZ& v);

}  // namespace k3cusp
