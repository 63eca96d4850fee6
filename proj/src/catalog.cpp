#include "k3cusp/catalog.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <sstream>

#include "json.hpp"

namespace k3cusp {

using nlohmann::json;

std::string NodeKey::to_string() const {
  std::ostringstream os;
  os << "(" << r << "," << a << "," << delta << ")";
  return os.str();
}

const char* to_string(MoveKind k) {
  switch (k) {
    case MoveKind::Odd: return "Odd";
    case MoveKind::EvenOrdinary: return "EvenOrdinary";
    case MoveKind::EvenCharacteristic: return "EvenCharacteristic";
  }
  return "?";
}

std::optional<MoveKind> move_kind_from_string(const std::string& s) {
  if (s == "Odd" || s == "odd") return MoveKind::Odd;
  if (s == "EvenOrdinary" || s == "even-ord" || s == "even-ordinary") return MoveKind::EvenOrdinary;
  if (s == "EvenCharacteristic" || s == "even-char" || s == "even-characteristic")
    return MoveKind::EvenCharacteristic;
  return std::nullopt;
}

const char* to_string(RootFlag f) {
  switch (f) {
    case RootFlag::Plain: return "plain";
    case RootFlag::Star: return "star";
    case RootFlag::StarStar: return "starstar";
  }
  return "?";
}

std::string RootSymbol::to_string() const {
  std::ostringstream os;
  os << sym << n;
  if (scaled) os << "(2)";
  return os.str();
}

std::string roots_to_string(const std::vector<RootSymbol>& roots) {
  if (roots.empty()) return "0";
  std::ostringstream os;
  for (size_t i = 0; i < roots.size(); ++i) os << (i ? "+" : "") << roots[i].to_string();
  return os.str();
}

const char* to_string(ModularType m) {
  return m == ModularType::SL2Z ? "SL2Z" : "Gamma0_2";
}

bool form_exists(int a, int delta, int sig) {
  sig = ((sig % 8) + 8) % 8;
  for (int np = 0; np <= a; ++np)
    for (int nq = 0; np + nq <= a; ++nq) {
      int rem = a - np - nq;
      if (rem % 2) continue;
      if ((np + nq > 0) != (delta == 1)) continue;
      for (int nv = 0; nv <= rem / 2; ++nv)
        if (((np - nq + 4 * nv) % 8 + 8) % 8 == sig) return true;
    }
  return false;
}

bool exists_2elem(int tp, int tm, int a, int delta) {
  int r = tp + tm;
  if (tp < 0 || tm < 0) return false;
  if (r == 0) return a == 0 && delta == 0;
  if (a < 0 || a > r) return false;
  int sig = tp - tm;
  if (!form_exists(a, delta, sig)) return false;
  // a = r means L(2) for a unimodular L; even unimodular (delta = 0) forces
  // signature = 0 mod 8
  if (a == r && delta == 0 && ((sig % 8) + 8) % 8 != 0) return false;
  return true;
}

bool node_exists_oracle(int r, int a, int delta) {
  return exists_2elem(1, r - 1, a, delta) && exists_2elem(2, 20 - r, a, delta);
}

static std::string default_data_dir() {
  if (const char* env = std::getenv("K3CUSP_DATA"); env && *env) return env;
#ifdef K3CUSP_DEFAULT_DATA_DIR
  return K3CUSP_DEFAULT_DATA_DIR;
#else
  return "data";
#endif
}

const Catalog& Catalog::instance() {
  static Catalog cat(default_data_dir());
  return cat;
}

static json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw lattice_error("cannot open data file: " + path);
  json j;
  in >> j;
  return j;
}

Catalog::Catalog(const std::string& dir) : dir_(dir) {
  json fig1 = load_json(dir + "/fig1_nodes.json");
  for (const auto& jn : fig1.at("nodes")) {
    CatalogNode n;
    n.key = {jn.at("r").get<int>(), jn.at("a").get<int>(), jn.at("delta").get<int>()};
    auto [g, k] = gk(n.key.r, n.key.a);
    n.g = g;
    n.k = k;
    n.gram_expr = jn.at("gram_expr").get<std::string>();
    if (jn.contains("alt_gram_exprs"))
      for (const auto& e : jn.at("alt_gram_exprs")) n.alt_gram_exprs.push_back(e.get<std::string>());
    if (jn.contains("elliptic_surface")) {
      const auto& es = jn.at("elliptic_surface");
      n.elliptic_surface = EllipticSurfaceInfo{
          es.at("case").get<std::string>(), es.at("fibers").get<std::string>(),
          es.at("fiber_roots").get<std::string>(), es.at("mw").get<std::string>()};
    }
    nodes_.push_back(std::move(n));
  }
  std::sort(nodes_.begin(), nodes_.end(),
            [](const CatalogNode& x, const CatalogNode& y) { return x.key < y.key; });

  json t1 = load_json(dir + "/table1_negdef.json");
  for (const auto& jr : t1.at("rows")) {
    Table1Row row;
    row.negdef = {jr.at("rank").get<int>(), jr.at("a").get<int>(), jr.at("delta").get<int>()};
    for (const auto& js : jr.at("roots")) {
      RootSymbol s;
      s.sym = js.at("sym").get<std::string>()[0];
      s.n = js.at("n").get<int>();
      s.scaled = js.at("scaled").get<bool>();
      row.roots.push_back(s);
    }
    std::sort(row.roots.begin(), row.roots.end());
    std::string f = jr.at("flag").get<std::string>();
    row.flag = f == "plain" ? RootFlag::Plain : f == "star" ? RootFlag::Star : RootFlag::StarStar;
    table1_.push_back(std::move(row));
  }
}

const CatalogNode* Catalog::find(NodeKey k) const {
  auto it = std::lower_bound(nodes_.begin(), nodes_.end(), k,
                             [](const CatalogNode& n, NodeKey key) { return n.key < key; });
  if (it != nodes_.end() && it->key == k) return &*it;
  return nullptr;
}

const CatalogNode& Catalog::at(NodeKey k) const {
  const CatalogNode* n = find(k);
  if (!n) throw lattice_error("not a catalog node: " + k.to_string());
  return *n;
}

std::vector<MirrorMove> Catalog::mirror_moves(NodeKey s) const {
  at(s);
  std::vector<MirrorMove> out;
  NodeKey t1{20 - s.r, s.a, s.delta};
  if (contains(t1)) out.push_back({MoveKind::Odd, s, t1});
  NodeKey t2{20 - s.r, s.a - 2, s.delta};
  if (contains(t2)) out.push_back({MoveKind::EvenOrdinary, s, t2});
  if (s.delta == 1) {
    NodeKey t3{20 - s.r, s.a - 2, 0};
    if (contains(t3)) out.push_back({MoveKind::EvenCharacteristic, s, t3});
  }
  return out;
}

std::vector<MirrorMove> Catalog::reverse_mirror_sources(NodeKey t) const {
  at(t);
  std::vector<MirrorMove> out;
  for (const auto& n : nodes_)
    for (const auto& mv : mirror_moves(n.key))
      if (mv.target == t) out.push_back(mv);
  return out;
}

std::vector<HeegnerMove> Catalog::heegner_moves(NodeKey s) const {
  at(s);
  std::vector<HeegnerMove> out;
  auto add = [&](int dr, int da, int reqdelta) {
    if (reqdelta >= 0 && s.delta != reqdelta) return;
    for (int d2 : {0, 1}) {
      NodeKey t{s.r + dr, s.a + da, d2};
      if (contains(t)) out.push_back({dr, da, t});
    }
  };
  add(-1, -1, 1);  // only from delta = 1
  // (+1,+1) lands on (r+1, a+1, 1) by definition
  {
    NodeKey t{s.r + 1, s.a + 1, 1};
    if (contains(t)) out.push_back({+1, +1, t});
  }
  add(+1, -1, -1);
  add(-1, +1, -1);
  return out;
}

std::vector<Table1Row> Catalog::table1_rows_for(NodeKey negdef) const {
  std::vector<Table1Row> out;
  for (const auto& row : table1_)
    if (row.negdef == negdef) out.push_back(row);
  return out;
}

std::vector<OneCuspClass> Catalog::one_cusps(NodeKey s) const {
  // composites: mirror move to oT = (rb, ab, db), then a second down move
  // whose target must exist as a negative definite lattice of rank rb-2
  struct Composite {
    NodeKey negdef;
    MoveKind first;
  };
  std::vector<Composite> comps;
  for (const auto& mv : mirror_moves(s)) {
    int rb = mv.target.r, ab = mv.target.a, db = mv.target.delta;
    if (exists_2elem(0, rb - 2, ab, db)) comps.push_back({{rb - 2, ab, db}, mv.kind});
    if (exists_2elem(0, rb - 2, ab - 2, db)) comps.push_back({{rb - 2, ab - 2, db}, mv.kind});
    if (db == 1 && exists_2elem(0, rb - 2, ab - 2, 0)) comps.push_back({{rb - 2, ab - 2, 0}, mv.kind});
  }
  // group by negdef invariants, expand per Table 1 row
  std::vector<NodeKey> seen;
  std::vector<OneCuspClass> out;
  for (const auto& c : comps) {
    if (std::find(seen.begin(), seen.end(), c.negdef) != seen.end()) continue;
    seen.push_back(c.negdef);
    std::vector<MoveKind> incident;
    for (const auto& c2 : comps)
      if (c2.negdef == c.negdef &&
          std::find(incident.begin(), incident.end(), c2.first) == incident.end())
        incident.push_back(c2.first);
    auto rows = table1_rows_for(c.negdef);
    if (rows.empty())
      throw lattice_error("no Table 1 rows for reachable invariants " + c.negdef.to_string());
    for (const auto& row : rows) {
      OneCuspClass cls;
      cls.negdef = c.negdef;
      cls.row = row;
      cls.incident_zero_cusps = incident;
      cls.modular = modular_type(cls);
      out.push_back(std::move(cls));
    }
  }
  std::sort(out.begin(), out.end(), [](const OneCuspClass& x, const OneCuspClass& y) {
    if (x.negdef != y.negdef) return x.negdef < y.negdef;
    return x.row.roots < y.row.roots;
  });
  return out;
}

ModularType modular_type(const OneCuspClass& c) {
  size_t n = c.incident_zero_cusps.size();
  if (n == 1) return ModularType::SL2Z;
  if (n == 2) return ModularType::Gamma0_2;
  throw IncidenceOutOfRange("one-cusp incident to " + std::to_string(n) + " zero-cusps");
}

CuspDiagram Catalog::cusp_diagram(NodeKey s) const {
  CuspDiagram d;
  d.node = s;
  d.zero_cusps = mirror_moves(s);
  d.one_cusps = one_cusps(s);
  return d;
}

}  // namespace k3cusp
