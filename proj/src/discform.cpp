#include "k3cusp/discform.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <map>
#include <queue>
#include <set>
#include <sstream>

namespace k3cusp {

std::string DiscWord::to_string() const {
  std::ostringstream os;
  auto emit = [&](const char* g, int n) {
    if (n == 0) return;
    if (os.tellp() > 0) os << " ";
    os << g;
    if (n > 1) os << "^" << n;
  };
  emit("p", np); emit("q", nq); emit("u", nu); emit("v", nv);
  if (os.tellp() == 0) return "1";
  return os.str();
}

WordInvariants word_invariants(const DiscWord& w) {
  WordInvariants out;
  out.a = w.rank();
  out.delta = w.co_odd() ? 1 : 0;
  out.sig_mod8 = ((w.np - w.nq + 4 * w.nv) % 8 + 8) % 8;
  return out;
}

bool equivalent(const DiscWord& w1, const DiscWord& w2) {
  return word_invariants(w1) == word_invariants(w2);
}

bool rewrite_equivalent(const DiscWord& w1, const DiscWord& w2, long max_states) {
  if (w1.rank() != w2.rank()) return false;
  // all six relations preserve total rank, so the state space is finite
  struct Rule { int l[4]; int r[4]; };
  static const std::vector<Rule> rules = {
      {{0, 0, 2, 0}, {0, 0, 0, 2}},  // u^2 = v^2
      {{4, 0, 0, 0}, {0, 4, 0, 0}},  // p^4 = q^4
      {{1, 0, 1, 0}, {2, 1, 0, 0}},  // up = p^2 q
      {{0, 1, 1, 0}, {1, 2, 0, 0}},  // uq = p q^2
      {{1, 0, 0, 1}, {0, 3, 0, 0}},  // vp = q^3
      {{0, 1, 0, 1}, {3, 0, 0, 0}},  // vq = p^3
  };
  using State = std::array<int, 4>;
  State start = {w1.np, w1.nq, w1.nu, w1.nv};
  State goal = {w2.np, w2.nq, w2.nu, w2.nv};
  std::set<State> seen = {start};
  std::queue<State> bfs;
  bfs.push(start);
  while (!bfs.empty()) {
    State s = bfs.front();
    bfs.pop();
    if (s == goal) return true;
    for (const auto& rule : rules) {
      for (int dir = 0; dir < 2; ++dir) {
        const int* l = dir ? rule.r : rule.l;
        const int* r = dir ? rule.l : rule.r;
        bool ok = true;
        for (int i = 0; i < 4; ++i)
          if (s[i] < l[i]) { ok = false; break; }
        if (!ok) continue;
        State t;
        for (int i = 0; i < 4; ++i) t[i] = s[i] - l[i] + r[i];
        if (seen.insert(t).second) {
          if ((long)seen.size() > max_states)
            throw lattice_error("rewrite_equivalent: state cap exceeded");
          bfs.push(t);
        }
      }
    }
  }
  return false;
}

DiscWord parse_word(const std::string& s) {
  DiscWord w;
  size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace((unsigned char)c) || c == '+' || c == '*') { ++i; continue; }
    int* slot = nullptr;
    if (c == 'p') slot = &w.np;
    else if (c == 'q') slot = &w.nq;
    else if (c == 'u') slot = &w.nu;
    else if (c == 'v') slot = &w.nv;
    else if (c == '1') { ++i; continue; }
    else throw lattice_error("bad discriminant word: " + s);
    ++i;
    int n = 1;
    if (i < s.size() && s[i] == '^') {
      ++i;
      size_t j = i;
      while (j < s.size() && std::isdigit((unsigned char)s[j])) ++j;
      if (j == i) throw lattice_error("bad power in word: " + s);
      n = std::stoi(s.substr(i, j - i));
      i = j;
    }
    *slot += n;
  }
  return w;
}

DiscWord form_of_block(const std::string& lattice_expr) {
  DiscWord w;
  std::string expr = lattice_expr;
  size_t pos = 0;
  while (pos <= expr.size()) {
    size_t next = expr.find('+', pos);
    std::string tok = expr.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
    pos = next == std::string::npos ? expr.size() + 1 : next + 1;
    while (!tok.empty() && std::isspace((unsigned char)tok.front())) tok.erase(tok.begin());
    while (!tok.empty() && std::isspace((unsigned char)tok.back())) tok.pop_back();
    if (tok.empty()) continue;
    int power = 1;
    if (auto c = tok.find('^'); c != std::string::npos) {
      power = std::stoi(tok.substr(c + 1));
      tok = tok.substr(0, c);
    }
    DiscWord b;
    if (tok == "U" || tok == "E8") b = {};
    else if (tok == "U(2)" || tok == "D8" || tok == "D16") b = {0, 0, 1, 0};
    else if (tok == "D4" || tok == "D12") b = {0, 0, 0, 1};
    else if (tok == "E8(2)") b = {0, 0, 4, 0};
    else if (tok == "A1") b = {0, 1, 0, 0};
    else if (tok == "E7" || tok == "<2>") b = {1, 0, 0, 0};
    else if (tok == "D6" || tok == "D14") b = {2, 0, 0, 0};
    else if (tok == "D10") b = {0, 2, 0, 0};
    else if (tok == "I11(2)") b = {1, 1, 0, 0};
    else throw UnknownBlock("no discriminant word for block '" + tok + "'");
    w.np += power * b.np; w.nq += power * b.nq;
    w.nu += power * b.nu; w.nv += power * b.nv;
  }
  return w;
}

int FiniteForm::value(const std::vector<int>& x) const {
  int s = 0;
  for (int i = 0; i < a; ++i) {
    if (!x[i]) continue;
    s = (s + gen_value[i]) % 4;
    for (int j = i + 1; j < a; ++j)
      if (x[j]) s = (s + 2 * gen_bil[i][j]) % 4;
  }
  return s;
}

int FiniteForm::bil(const std::vector<int>& x, const std::vector<int>& y) const {
  int s = 0;
  for (int i = 0; i < a; ++i)
    if (x[i])
      for (int j = 0; j < a; ++j)
        if (y[j]) s ^= gen_bil[i][j];
  return s;
}

FiniteForm explicit_form(const DiscWord& w) {
  FiniteForm f;
  f.a = w.rank();
  f.gen_value.assign(f.a, 0);
  f.gen_bil.assign(f.a, std::vector<int>(f.a, 0));
  int i = 0;
  auto add1 = [&](int val) {
    f.gen_value[i] = val;
    f.gen_bil[i][i] = ((val % 2) + 2) % 2;
    ++i;
  };
  auto add2 = [&](int ve, int vf) {
    f.gen_value[i] = ve;
    f.gen_value[i + 1] = vf;
    f.gen_bil[i][i + 1] = f.gen_bil[i + 1][i] = 1;  // b(e*, f*) = 1/2
    f.gen_bil[i][i] = ve % 2;
    f.gen_bil[i + 1][i + 1] = vf % 2;
    i += 2;
  };
  for (int k = 0; k < w.np; ++k) add1(1);     // p(e*) = 1/2
  for (int k = 0; k < w.nq; ++k) add1(3);     // q(e*) = -1/2
  for (int k = 0; k < w.nu; ++k) add2(0, 0);  // u(e*) = u(f*) = 0, u(e*+f*) = 1
  for (int k = 0; k < w.nv; ++k) add2(2, 2);  // v(e*) = v(f*) = v(e*+f*) = 1
  return f;
}

const char* to_string(OrbitKind k) {
  return k == OrbitKind::Ordinary ? "ordinary" : "characteristic";
}

std::vector<OrbitKind> isotropic_orbit_kinds(const DiscWord& w) {
  if (w.rank() > 24) throw RankTooLarge("rank > 24");
  FiniteForm f = explicit_form(w);
  bool has_ord = false, has_char = false;
  int a = f.a;
  std::vector<int> x(a);
  for (long mask = 1; mask < (1L << a); ++mask) {
    for (int i = 0; i < a; ++i) x[i] = (mask >> i) & 1;
    if (f.value(x) != 0) continue;
    bool chr = true;
    std::vector<int> y(a, 0);
    for (int g = 0; g < a && chr; ++g) {
      y[g] = 1;
      if ((f.value(y) % 2) != f.bil(y, x)) chr = false;
      y[g] = 0;
    }
    (chr ? has_char : has_ord) = true;
    if (has_ord && has_char) break;
  }
  std::vector<OrbitKind> out;
  if (has_ord) out.push_back(OrbitKind::Ordinary);
  if (has_char) out.push_back(OrbitKind::Characteristic);
  return out;
}

std::vector<Index2Class> index2_sublattice_classes(const IntegralLattice& K) {
  auto ki = two_elementary_invariants(K);
  IntegralLattice kd = doubled_dual(K);
  DiscGroup A = discriminant_group(kd);
  if (A.a == 0) return {};
  if (A.a > 24) throw RankTooLarge("rank of A_{K^dag} > 24");
  if (ki.delta == 1) {
    // K^dag odd, q defined only mod Z where it vanishes: one orbit, and the
    // sublattices keep delta = 1 (even-ordinary sources)
    return {{OrbitKind::Ordinary, 1}};
  }
  // K co-even: K^dag even, split nonzero x by q_{K^dag}(x) mod 2Z in {0, 1};
  // q = 1 gives delta_S = 1 (even-characteristic sources)
  bool has0 = false, has1 = false;
  int n = kd.rank();
  for (long mask = 1; mask < (1L << A.a); ++mask) {
    VecZ wv(n, 0);
    for (int i = 0; i < A.a; ++i)
      if ((mask >> i) & 1)
        for (int t = 0; t < n; ++t) wv[t] += A.gens[i][t];
    Int qq = pair(kd.gram(), wv, wv);
    if (qq % 4 != 0) throw lattice_error("index2: unexpected half-integral value");
    Int r = (qq / 4) % 2;
    if (r < 0) r += 2;
    (r == 0 ? has0 : has1) = true;
    if (has0 && has1) break;
  }
  std::vector<Index2Class> out;
  if (has0) out.push_back({OrbitKind::Ordinary, 1});
  if (has1) out.push_back({OrbitKind::Characteristic, 1});
  return out;
}

}  // namespace k3cusp
