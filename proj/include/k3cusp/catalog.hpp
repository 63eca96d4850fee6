#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "k3cusp/discform.hpp"
#include "k3cusp/lattice.hpp"

namespace k3cusp {

// (r, a, delta)
struct NodeKey {
  int r = 0, a = 0, delta = 0;
  auto operator<=>(const NodeKey&) const = default;
  std::string to_string() const;
};

struct EllipticSurfaceInfo {
  std::string case_label, fibers, fiber_roots, mordell_weil;
};

struct CatalogNode {
  NodeKey key;
  int g = 0, k = 0;
  std::string gram_expr;
  std::vector<std::string> alt_gram_exprs;
  std::optional<EllipticSurfaceInfo> elliptic_surface;
  IntegralLattice lattice() const { return IntegralLattice::parse(gram_expr); }
};

enum class MoveKind { Odd, EvenOrdinary, EvenCharacteristic };
const char* to_string(MoveKind k);
std::optional<MoveKind> move_kind_from_string(const std::string& s);

struct MirrorMove {
  MoveKind kind;
  NodeKey source, target;
  bool operator==(const MirrorMove&) const = default;
};

// Heegner move kinds: (dr, da) in {(-1,-1), (+1,+1), (+1,-1), (-1,+1)}
struct HeegnerMove {
  int dr = 0, da = 0;
  NodeKey target;
};

enum class RootFlag { Plain, Star, StarStar };
const char* to_string(RootFlag f);

struct RootSymbol {
  char sym = 'A';  // A, D, E
  int n = 0;
  bool scaled = false;  // X_n(2)
  auto operator<=>(const RootSymbol&) const = default;
  std::string to_string() const;
};
std::string roots_to_string(const std::vector<RootSymbol>& roots);

struct Table1Row {
  NodeKey negdef;  // (rank, a, delta) of ooT
  std::vector<RootSymbol> roots;  // sorted multiset
  RootFlag flag = RootFlag::Plain;
};

enum class ModularType { SL2Z, Gamma0_2 };
const char* to_string(ModularType m);
struct IncidenceOutOfRange : lattice_error { using lattice_error::lattice_error; };

struct OneCuspClass {
  NodeKey negdef;                 // invariants of ooT
  Table1Row row;                  // root descriptor + flag
  std::vector<MoveKind> incident_zero_cusps;  // which mirror moves reach it
  ModularType modular = ModularType::SL2Z;
};

struct CuspDiagram {
  NodeKey node;
  std::vector<MirrorMove> zero_cusps;
  std::vector<OneCuspClass> one_cusps;
};

// Existence of a 2-elementary finite quadratic form (rank a, coparity delta,
// signature sig mod 8).
bool form_exists(int a, int delta, int sig);
// Existence of an even 2-elementary lattice of signature (tp, tm) with
// invariants (a, delta).
bool exists_2elem(int tp, int tm, int a, int delta);
// Catalog membership test derived from the existence oracle (S side and
// transcendental side).
bool node_exists_oracle(int r, int a, int delta);

class Catalog {
 public:
  // loads data files from `dir`, or $K3CUSP_DATA, or the built-in default
  static const Catalog& instance();
  explicit Catalog(const std::string& dir);

  const std::vector<CatalogNode>& nodes() const { return nodes_; }
  const std::vector<Table1Row>& table1() const { return table1_; }
  const CatalogNode* find(NodeKey k) const;
  const CatalogNode& at(NodeKey k) const;
  bool contains(NodeKey k) const { return find(k) != nullptr; }

  std::vector<MirrorMove> mirror_moves(NodeKey s) const;
  std::vector<MirrorMove> reverse_mirror_sources(NodeKey t) const;
  std::vector<HeegnerMove> heegner_moves(NodeKey s) const;

  std::vector<Table1Row> table1_rows_for(NodeKey negdef) const;
  std::vector<OneCuspClass> one_cusps(NodeKey s) const;
  CuspDiagram cusp_diagram(NodeKey s) const;

  const std::string& data_dir() const { return dir_; }

 private:
  std::string dir_;
  std::vector<CatalogNode> nodes_;
  std::vector<Table1Row> table1_;
};

ModularType modular_type(const OneCuspClass& c);

}  // namespace k3cusp
