#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "k3cusp/catalog.hpp"

using namespace k3cusp;

TEST_CASE("75 nodes, all matching the existence oracle") {
  const auto& cat = Catalog::instance();
  CHECK(cat.nodes().size() == 75);
  // oracle agreement both ways
  int oracle_count = 0;
  for (int r = 1; r <= 20; ++r)
    for (int a = 0; a <= r; ++a)
      for (int d : {0, 1})
        if (node_exists_oracle(r, a, d)) {
          ++oracle_count;
          CHECK(cat.contains({r, a, d}));
        }
  CHECK(oracle_count == 75);
  CHECK(cat.contains({14, 6, 0}));
  CHECK(!cat.contains({6, 6, 0}));
  CHECK(!cat.contains({9, 9, 0}));
}

TEST_CASE("gram expressions evaluate to the node invariants") {
  const auto& cat = Catalog::instance();
  for (const auto& n : cat.nodes()) {
    CAPTURE(n.gram_expr);
    auto L = n.lattice();
    auto inv = two_elementary_invariants(L);
    CHECK(inv.sig_plus == 1);
    CHECK(inv.r == n.key.r);
    CHECK(inv.a == n.key.a);
    CHECK(inv.delta == n.key.delta);
    CHECK(n.g >= 0);
    CHECK(n.k >= 0);
    for (const auto& alt : n.alt_gram_exprs) {
      CAPTURE(alt);
      auto inv2 = two_elementary_invariants(IntegralLattice::parse(alt));
      CHECK(inv2 == inv);
      // uniqueness cross-check: rational congruence agrees
      CHECK(rational_congruence_class(IntegralLattice::parse(alt).gram()) ==
            rational_congruence_class(L.gram()));
    }
  }
}

TEST_CASE("mirror move graph") {
  const auto& cat = Catalog::instance();
  auto mv = cat.mirror_moves({2, 2, 0});
  REQUIRE(mv.size() == 2);
  CHECK(mv[0].kind == MoveKind::Odd);
  CHECK(mv[0].target == NodeKey{18, 2, 0});
  CHECK(mv[1].kind == MoveKind::EvenOrdinary);
  CHECK(mv[1].target == NodeKey{18, 0, 0});

  CHECK(cat.mirror_moves({20, 2, 1}).empty());

  // degrees in {0,1,2,3}
  std::map<NodeKey, int> indeg;
  for (const auto& n : cat.nodes()) {
    auto out = cat.mirror_moves(n.key);
    CHECK(out.size() <= 3);
    for (const auto& m : out) ++indeg[m.target];
  }
  int maxin = 0;
  for (auto& [k, v] : indeg) maxin = std::max(maxin, v);
  CHECK(maxin == 3);

  // non-target set = {g = 0 line} + {(14,6,0)}
  std::set<NodeKey> nontargets;
  for (const auto& n : cat.nodes())
    if (indeg[n.key] == 0) nontargets.insert(n.key);
  std::set<NodeKey> expected;
  for (const auto& n : cat.nodes())
    if (n.g == 0) expected.insert(n.key);
  expected.insert({14, 6, 0});
  CHECK(nontargets == expected);

  // targets never include g=0-line nodes or (14,6,0): implied by the above
  auto rev = cat.reverse_mirror_sources({10, 8, 0});
  REQUIRE(rev.size() == 3);
  std::set<std::pair<std::string, NodeKey>> got;
  for (auto& m : rev) got.insert({to_string(m.kind), m.source});
  CHECK(got.count({"Odd", {10, 8, 0}}));
  CHECK(got.count({"EvenOrdinary", {10, 10, 0}}));
  CHECK(got.count({"EvenCharacteristic", {10, 10, 1}}));
  CHECK(cat.reverse_mirror_sources({14, 6, 0}).empty());
  auto rev18 = cat.reverse_mirror_sources({18, 0, 0});
  bool has220 = false;
  for (auto& m : rev18)
    if (m.source == NodeKey{2, 2, 0} && m.kind == MoveKind::EvenOrdinary) has220 = true;
  CHECK(has220);
}

TEST_CASE("heegner moves") {
  const auto& cat = Catalog::instance();
  // (2,0,0) -(-1,+1)-> (1,1,1) (a smoothing)
  auto hm = cat.heegner_moves({2, 0, 0});
  bool found = false;
  for (auto& m : hm)
    if (m.dr == -1 && m.da == +1 && m.target == NodeKey{1, 1, 1}) found = true;
  CHECK(found);
  // (10,10,1) -(-1,-1)-> (9,9,1) only ((9,9,0) fails existence)
  hm = cat.heegner_moves({10, 10, 1});
  std::vector<NodeKey> down;
  for (auto& m : hm)
    if (m.dr == -1 && m.da == -1) down.push_back(m.target);
  REQUIRE(down.size() == 1);
  CHECK(down[0] == NodeKey{9, 9, 1});
  // any (r,a,0) has no (-1,-1) move
  for (const auto& n : cat.nodes()) {
    if (n.key.delta == 1) continue;
    for (auto& m : cat.heegner_moves(n.key)) CHECK(!(m.dr == -1 && m.da == -1));
  }
  // every (-1,-1)-chain ends on the g=1 line in <= g-1 steps: equivalently
  // (+1,+1)^(g-1) from S reaches (10+k,10-k,1)
  for (const auto& n : cat.nodes()) {
    if (n.g < 1) continue;
    NodeKey cur = n.key;
    for (int step = 0; step < n.g - 1; ++step) {
      NodeKey up{cur.r + 1, cur.a + 1, 1};
      REQUIRE(cat.contains(up));
      cur = up;
    }
    auto [g, k] = gk(cur.r, cur.a);
    CHECK(g == 1);
    CHECK(k == n.k);
  }
}

TEST_CASE("one-cusps of (2,2,0): the hyperelliptic example") {
  const auto& cat = Catalog::instance();
  auto cusps = cat.one_cusps({2, 2, 0});
  REQUIRE(cusps.size() == 8);
  int n1600 = 0, n1620 = 0;
  for (const auto& c : cusps) {
    if (c.negdef == NodeKey{16, 0, 0}) {
      ++n1600;
      CHECK(c.incident_zero_cusps.size() == 2);
      CHECK(c.modular == ModularType::Gamma0_2);
    } else if (c.negdef == NodeKey{16, 2, 0}) {
      ++n1620;
      REQUIRE(c.incident_zero_cusps.size() == 1);
      CHECK(c.incident_zero_cusps[0] == MoveKind::Odd);
      CHECK(c.modular == ModularType::SL2Z);
    } else {
      CHECK(false);
    }
  }
  CHECK(n1600 == 2);
  CHECK(n1620 == 6);
  // root descriptors: E8^2, D16 for (16,0,0); D8^2, E7^2A1^2, E8D8, D12D4,
  // D16, A15A1(2) for (16,2,0)
  std::multiset<std::string> got, want = {
      "E8+E8", "D16",
      "D8+D8", "A1+A1+E7+E7", "D8+E8", "D4+D12", "D16", "A1(2)+A15"};
  for (const auto& c : cusps) got.insert(roots_to_string(c.row.roots));
  CHECK(got == want);
}

TEST_CASE("cusp extremes") {
  const auto& cat = Catalog::instance();
  CHECK(cat.one_cusps({20, 2, 1}).empty());
  CHECK(cat.cusp_diagram({20, 2, 1}).zero_cusps.empty());
  size_t mx = 0;
  std::vector<NodeKey> argmax;
  for (const auto& n : cat.nodes()) {
    size_t c = cat.one_cusps(n.key).size();
    CHECK(cat.mirror_moves(n.key).size() <= 3);
    if (c > mx) { mx = c; argmax = {n.key}; }
    else if (c == mx) argmax.push_back(n.key);
  }
  CHECK(mx == 14);
  REQUIRE(argmax.size() == 1);
  CHECK(argmax[0] == NodeKey{4, 4, 1});
  CHECK(cat.one_cusps({4, 4, 1}).size() == 14);
}

TEST_CASE("table 1 transcription consistency") {
  const auto& cat = Catalog::instance();
  // every row's invariants pass the negdef existence oracle; rank sums match
  for (const auto& row : cat.table1()) {
    CAPTURE(row.negdef.to_string());
    CHECK(exists_2elem(0, row.negdef.r, row.negdef.a, row.negdef.delta));
    int rk = 0;
    for (const auto& s : row.roots) rk += s.n;
    if (row.flag == RootFlag::StarStar) CHECK(rk < row.negdef.r);
    else CHECK(rk == row.negdef.r);
    // plain rows made of 2-elementary blocks: invariants match exactly
    if (row.flag == RootFlag::Plain && row.negdef.r > 0) {
      bool all2elem = true;
      std::string expr;
      for (const auto& s : row.roots) {
        // D_odd, A_{n>1} and E6 are not 2-elementary
        if (s.sym == 'A' && s.n > 1) all2elem = false;
        if (s.sym == 'D' && s.n % 2) all2elem = false;
        if (s.sym == 'E' && s.n == 6) all2elem = false;
        expr += (expr.empty() ? "" : "+") + s.to_string();
      }
      if (all2elem) {
        auto inv = two_elementary_invariants(IntegralLattice::parse(expr));
        CHECK(inv.r == row.negdef.r);
        CHECK(inv.a == row.negdef.a);
        CHECK(inv.delta == row.negdef.delta);
      }
    }
  }
  // triples reachable by composites are covered by the table
  std::set<NodeKey> reach, intable;
  for (const auto& n : cat.nodes())
    for (const auto& c : cat.one_cusps(n.key)) reach.insert(c.negdef);
  for (const auto& row : cat.table1()) intable.insert(row.negdef);
  for (const auto& t : reach) CHECK(intable.count(t) == 1);
  // the table's one extra section, (12,6,0), is unreachable: its intermediate
  // would have to be (14,6,0) or a g=0 node, which are never mirror targets
  std::set<NodeKey> extra;
  for (const auto& t : intable)
    if (!reach.count(t)) extra.insert(t);
  CHECK(extra == std::set<NodeKey>{{12, 6, 0}});
}

TEST_CASE("index2 classes match reverse mirror sources") {
  const auto& cat = Catalog::instance();
  // even moves into oT correspond to the orbit kinds in A_{K^dag}, K = Lambda+
  // = the complement of oT; its invariants are (20 - rbar, abar, *) and the
  // even sources S have a = abar + 2. Spot-check via the catalog adjacency.
  for (NodeKey t : {NodeKey{10, 8, 0}, NodeKey{18, 0, 0}, NodeKey{18, 2, 0},
                    NodeKey{14, 6, 1}, NodeKey{12, 8, 1}}) {
    auto rev = cat.reverse_mirror_sources(t);
    bool has_ord = false, has_char = false;
    for (const auto& m : rev) {
      if (m.kind == MoveKind::EvenOrdinary) has_ord = true;
      if (m.kind == MoveKind::EvenCharacteristic) has_char = true;
    }
    // K = Lambda+^ = complement of oT in II_{2,18}: 2-elementary with
    // invariants (20 - r, a, delta') of signature (1, 19-r)... realized for
    // the test through the catalog node with (20-r, a, delta) when hyperbolic:
    NodeKey comp{20 - t.r, t.a, t.delta};
    if (!cat.contains(comp)) continue;
    auto classes = index2_sublattice_classes(cat.at(comp).lattice());
    bool c_ord = false, c_char = false;
    for (const auto& cl : classes) {
      if (cl.kind == OrbitKind::Ordinary) c_ord = true;
      if (cl.kind == OrbitKind::Characteristic) c_char = true;
    }
    CAPTURE(t.to_string());
    CHECK(c_ord == has_ord);
    CHECK(c_char == has_char);
  }
}
