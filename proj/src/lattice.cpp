#include "k3cusp/lattice.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <sstream>

namespace k3cusp {

IntegralLattice::IntegralLattice(MatZ gram, std::vector<std::string> labels)
    : gram_(std::move(gram)), labels_(std::move(labels)) {
  if (!is_symmetric(gram_)) throw lattice_error("gram matrix not symmetric");
  det_ = gram_.rows ? det(gram_) : Int(1);
  sig_ = gram_.rows ? inertia(gram_) : Inertia{};
}

bool IntegralLattice::is_even() const {
  for (int i = 0; i < rank(); ++i)
    if (gram_.at(i, i) % 2 != 0) return false;
  return true;
}

IntegralLattice IntegralLattice::rescaled(const Int& c) const {
  return IntegralLattice(scaled(gram_, c), labels_);
}

IntegralLattice IntegralLattice::direct_sum(const IntegralLattice& other) const {
  std::vector<std::string> lab = labels_;
  lab.insert(lab.end(), other.labels_.begin(), other.labels_.end());
  return IntegralLattice(block_diag(gram_, other.gram_), std::move(lab));
}

Int IntegralLattice::divisibility(const VecZ& v) const {
  if ((int)v.size() != rank()) throw lattice_error("divisibility: size");
  if (content(v) == 0) throw ZeroVector("divisibility of zero vector");
  VecZ gv = mul(gram_, v);
  Int g = 0;
  for (const auto& x : gv) g = gcd(g, x);
  return g;
}

std::string IntegralLattice::to_string() const {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < rank(); ++i) {
    os << (i ? "; " : "");
    for (int j = 0; j < rank(); ++j) os << (j ? " " : "") << gram_.at(i, j);
  }
  os << "]";
  return os.str();
}

std::string TwoElemInvariants::to_string() const {
  std::ostringstream os;
  os << "(" << r << "," << a << "," << delta << ")_" << sig_plus;
  return os.str();
}

// ---- standard blocks ----

static MatZ gram_A(int n) {
  MatZ g(n, n);
  for (int i = 0; i < n; ++i) {
    g.at(i, i) = -2;
    if (i + 1 < n) { g.at(i, i + 1) = 1; g.at(i + 1, i) = 1; }
  }
  return g;
}
static MatZ gram_D(int n) {
  MatZ g = gram_A(n);
  g.at(n - 1, n - 2) = 0; g.at(n - 2, n - 1) = 0;
  g.at(n - 1, n - 3) = 1; g.at(n - 3, n - 1) = 1;
  return g;
}
static MatZ gram_E(int n) {
  MatZ g = gram_A(n);
  g.at(n - 1, n - 2) = 0; g.at(n - 2, n - 1) = 0;
  g.at(n - 1, 2) = 1; g.at(2, n - 1) = 1;
  return g;
}
static MatZ gram_U() {
  MatZ g(2, 2);
  g.at(0, 1) = 1; g.at(1, 0) = 1;
  return g;
}

IntegralLattice IntegralLattice::parse(const std::string& expr) {
  auto fail = [&](const std::string& why) {
    throw lattice_error("bad lattice literal '" + expr + "': " + why);
  };
  std::vector<MatZ> blocks;
  std::vector<std::string> labels;
  size_t i = 0;
  auto skip_ws = [&] { while (i < expr.size() && std::isspace((unsigned char)expr[i])) ++i; };
  while (true) {
    skip_ws();
    if (i >= expr.size()) fail("empty term");
    size_t start = i;
    MatZ g;
    std::string name;
    if (expr[i] == '<') {
      size_t close = expr.find('>', i);
      if (close == std::string::npos) fail("unterminated <k>");
      long k = std::stol(expr.substr(i + 1, close - i - 1));
      g = MatZ(1, 1);
      g.at(0, 0) = k;
      name = expr.substr(i, close - i + 1);
      i = close + 1;
    } else {
      while (i < expr.size() && (std::isalnum((unsigned char)expr[i]))) ++i;
      name = expr.substr(start, i - start);
      if (name == "U") g = gram_U();
      else if (name == "I11") { g = MatZ(2, 2); g.at(0, 0) = 1; g.at(1, 1) = -1; }
      else if (name.size() >= 2 && (name[0] == 'A' || name[0] == 'D' || name[0] == 'E')) {
        int n = std::stoi(name.substr(1));
        if (n < 1) fail("bad rank");
        if (name[0] == 'A') g = gram_A(n);
        else if (name[0] == 'D') { if (n < 3) fail("D_n needs n>=3"); g = gram_D(n); }
        else { if (n < 6 || n > 8) fail("E_n needs 6<=n<=8"); g = gram_E(n); }
      } else fail("unknown block '" + name + "'");
    }
    skip_ws();
    if (i < expr.size() && expr[i] == '(') {
      size_t close = expr.find(')', i);
      if (close == std::string::npos) fail("unterminated twist");
      long tw = std::stol(expr.substr(i + 1, close - i - 1));
      if (tw == 0) fail("twist 0");
      g = scaled(g, tw);
      name += expr.substr(i, close - i + 1);
      i = close + 1;
    }
    long power = 1;
    skip_ws();
    if (i < expr.size() && expr[i] == '^') {
      ++i;
      size_t s2 = i;
      while (i < expr.size() && std::isdigit((unsigned char)expr[i])) ++i;
      if (s2 == i) fail("bad power");
      power = std::stol(expr.substr(s2, i - s2));
      if (power < 1) fail("bad power");
    }
    for (long p = 0; p < power; ++p) {
      blocks.push_back(g);
      labels.push_back(name);
    }
    skip_ws();
    if (i >= expr.size()) break;
    if (expr[i] != '+') fail("expected '+'");
    ++i;
  }
  MatZ total(0, 0);
  for (const auto& b : blocks) total = block_diag(total, b);
  return IntegralLattice(std::move(total), std::move(labels));
}

// ---- invariants ----

TwoElemInvariants two_elementary_invariants(const IntegralLattice& L) {
  if (!L.is_even()) throw NotEven("lattice has an odd diagonal entry");
  return two_elementary_invariants_any(L);
}

TwoElemInvariants two_elementary_invariants_any(const IntegralLattice& L) {
  if (!L.is_nondegenerate()) throw lattice_error("degenerate lattice");
  TwoElemInvariants inv;
  inv.sig_plus = L.signature().plus;
  inv.sig_minus = L.signature().minus;
  inv.r = L.rank();
  auto divs = smith_divisors(L.gram());
  for (const auto& d : divs) {
    if (d == 2) ++inv.a;
    else if (d != 1) throw NotTwoElementary("elementary divisor " + d.get_str());
  }
  // delta: q mod Z is linear on A_L; evaluate on dual-basis generators,
  // q(e_i^*) = (G^{-1})_{ii} mod Z.
  QInverse gi = inverse(L.gram());
  inv.delta = 0;
  for (int i = 0; i < L.rank(); ++i)
    if (gi.adj.at(i, i) % gi.den != 0) { inv.delta = 1; break; }
  return inv;
}

IntegralLattice doubled_dual(const IntegralLattice& L) {
  two_elementary_invariants_any(L);  // validates 2-elementarity
  QInverse gi = inverse(L.gram());
  MatZ g(L.rank(), L.rank());
  for (int i = 0; i < L.rank(); ++i)
    for (int j = 0; j < L.rank(); ++j) {
      Int num = 2 * gi.adj.at(i, j);
      if (num % gi.den != 0) throw NotTwoElementary("doubled dual not integral");
      g.at(i, j) = num / gi.den;
    }
  return IntegralLattice(std::move(g));
}

std::pair<int, int> gk(int r, int a) {
  if ((r + a) % 2 != 0) throw ParityError("r+a odd");
  return {11 - (r + a) / 2, (r - a) / 2};
}

const char* to_string(IsotropicKind k) {
  switch (k) {
    case IsotropicKind::Odd: return "odd";
    case IsotropicKind::EvenOrdinary: return "even-ordinary";
    case IsotropicKind::EvenCharacteristic: return "even-characteristic";
  }
  return "?";
}

DiscGroup discriminant_group(const IntegralLattice& L) {
  two_elementary_invariants_any(L);
  // Generators of A_L = L*/L: for 2-elementary L, A_L = (1/2)L' / L for the
  // sublattice L' = 2L* = {w in L : w.L in 2Z}; a basis of 2L* gives the
  // classes w/2.
  int n = L.rank();
  // 2L* = kernel of (L -> (Z/2)^n), i.e. integer solutions of G w = 2 y:
  // rows of solutions: kernel of [G | 2I] projected. Compute as the lattice
  // { w : G w = 0 mod 2 }.
  MatZ gm(n, 2 * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) gm.at(i, j) = L.gram().at(i, j);
  for (int i = 0; i < n; ++i) gm.at(i, n + i) = 2;
  MatZ ker = integer_kernel(gm);  // rows (w, y)
  MatZ w(ker.rows, n);
  for (int i = 0; i < ker.rows; ++i)
    for (int j = 0; j < n; ++j) w.at(i, j) = ker.at(i, j);
  MatZ basis = row_basis_hnf(w);  // basis of 2L*
  DiscGroup out;
  // classes of rows/2 modulo L: keep those not in L (w has an odd coordinate
  // after reduction mod 2L? simpler: w/2 in L* \ L iff w not in 2L... collect
  // independent classes via F2 elimination on w mod 2L: represent w mod 2 in
  // the basis of L: w coordinates mod 2 do NOT determine the class; instead
  // form F2 span of rows of 'basis' modulo 2L.
  // F2 Gaussian elimination of rows modulo 2 (coordinates in L basis):
  std::vector<VecZ> rows;
  for (int i = 0; i < basis.rows; ++i) {
    VecZ v(n);
    for (int j = 0; j < n; ++j) v[j] = basis.at(i, j);
    rows.push_back(v);
  }
  std::vector<VecZ> reduced;  // representatives with echelon leading 1 mod 2
  std::vector<int> lead;
  for (auto v : rows) {
    for (size_t k = 0; k < reduced.size(); ++k) {
      if (lead[k] >= 0 && v[lead[k]] % 2 != 0)
        for (int j = 0; j < n; ++j) v[j] -= reduced[k][j];
    }
    int l = -1;
    for (int j = 0; j < n; ++j)
      if (v[j] % 2 != 0) { l = j; break; }
    if (l >= 0) { reduced.push_back(v); lead.push_back(l); }
  }
  out.gens = reduced;
  out.a = (int)reduced.size();
  return out;
}

IsotropicKind classify_isotropic(const IntegralLattice& T, const VecZ& e) {
  if (T.norm(e) != 0) throw NotIsotropic("e^2 != 0");
  if (content(e) != 1) throw NotPrimitive("e not primitive");
  Int d = T.divisibility(e);
  if (d == 1) return IsotropicKind::Odd;
  if (d != 2) throw NotTwoElementary("divisibility " + d.get_str());
  // e* = e/2 in A_T; characteristic iff q(x) = (x, e*) mod Z for all x in A_T.
  DiscGroup A = discriminant_group(T);
  for (const auto& w : A.gens) {
    // x = w/2: q(x) = w.G.w/4 mod Z ; (x, e*) = w.G.e/4 mod Z
    Int qq = pair(T.gram(), w, w);       // = 4 q(x) as integer? q(x)=qq/4
    Int bb = pair(T.gram(), w, e);       // (x,e*) = bb/4
    // q(x) - (x,e*) = (qq - bb)/4 mod Z: integral iff 4 | (qq - bb)
    if ((qq - bb) % 4 != 0) return IsotropicKind::EvenOrdinary;
  }
  return IsotropicKind::EvenCharacteristic;
}

QuotientByIsotropic quotient_by_isotropic(const IntegralLattice& L, const VecZ& e) {
  if (L.norm(e) != 0) throw NotIsotropic("e^2 != 0");
  if (content(e) != 1) throw NotPrimitive("e not primitive");
  int n = L.rank();
  // e^perp: integer kernel of (G e) as a 1 x n system
  VecZ ge = mul(L.gram(), e);
  MatZ sys(1, n);
  for (int j = 0; j < n; ++j) sys.at(0, j) = ge[j];
  MatZ perp = integer_kernel(sys);  // rows: basis of e^perp, rank n-1
  if (perp.rows != n - 1) throw lattice_error("quotient: unexpected corank");
  // coordinates of e in the perp basis: c . perp = e; solve the nonsingular
  // system (perp perp^T) c = perp e over Z (Euclidean Gram of the rows).
  MatZ gr = mul(perp, transpose(perp));
  VecZ rhs = mul(perp, e);
  auto c_opt = solve_integer(gr, rhs);
  if (!c_opt) throw lattice_error("quotient: e not expressible");
  VecZ c = *c_opt;
  c = primitive_part(c);  // e primitive in e^perp
  MatZ u = complete_to_unimodular(c);  // first row = c
  // new basis of e^perp: rows of u * perp; first = e; quotient basis = rest
  MatZ nb = mul(u, perp);
  MatZ lift(n - 2, n);
  for (int i = 1; i < n - 1; ++i)
    for (int j = 0; j < n; ++j) lift.at(i - 1, j) = nb.at(i, j);
  MatZ qg(n - 2, n - 2);
  for (int i = 0; i < n - 2; ++i)
    for (int j = 0; j < n - 2; ++j) {
      VecZ ri(n), rj(n);
      for (int t = 0; t < n; ++t) { ri[t] = lift.at(i, t); rj[t] = lift.at(j, t); }
      qg.at(i, j) = pair(L.gram(), ri, rj);
    }
  return {IntegralLattice(std::move(qg)), std::move(lift)};
}

Sublattice orthogonal_complement(const IntegralLattice& L, const MatZ& vectors) {
  MatZ sys = mul(vectors, L.gram());
  MatZ basis = integer_kernel(sys);
  MatZ g(basis.rows, basis.rows);
  for (int i = 0; i < basis.rows; ++i)
    for (int j = 0; j < basis.rows; ++j) {
      VecZ ri(L.rank()), rj(L.rank());
      for (int t = 0; t < L.rank(); ++t) { ri[t] = basis.at(i, t); rj[t] = basis.at(j, t); }
      g.at(i, j) = pair(L.gram(), ri, rj);
    }
  return {basis, IntegralLattice(std::move(g))};
}

static IsotropicSplit make_split(const IntegralLattice& T, IsotropicKind kind,
                                 const MatZ& hbasis, const MatZ& kbasis) {
  auto gram_of = [&](const MatZ& rows) {
    MatZ g(rows.rows, rows.rows);
    for (int i = 0; i < rows.rows; ++i)
      for (int j = 0; j < rows.rows; ++j) {
        VecZ ri(T.rank()), rj(T.rank());
        for (int t = 0; t < T.rank(); ++t) { ri[t] = rows.at(i, t); rj[t] = rows.at(j, t); }
        g.at(i, j) = pair(T.gram(), ri, rj);
      }
    return g;
  };
  IntegralLattice H(gram_of(hbasis)), K(gram_of(kbasis));
  if (H.determinant() * K.determinant() != T.determinant())
    throw SplitFailed("H (+) K is a proper sublattice of T");
  return {kind, H, K, hbasis, kbasis};
}

IsotropicSplit split_off_isotropic(const IntegralLattice& T, const VecZ& e) {
  auto kind = classify_isotropic(T, e);
  int n = T.rank();
  auto q = quotient_by_isotropic(T, e);
  // K = lift of the quotient (a primitive sublattice isometric to e^perp/e)
  MatZ kbasis = q.lift;
  Sublattice h = orthogonal_complement(T, kbasis);
  if (h.lattice.rank() != 2) throw SplitFailed("complement rank != 2");
  auto hinv = two_elementary_invariants(h.lattice);
  bool match = (kind == IsotropicKind::Odd && hinv.a == 0) ||
               (kind == IsotropicKind::EvenOrdinary && hinv.a == 2 && hinv.delta == 0) ||
               (kind == IsotropicKind::EvenCharacteristic && hinv.a == 2 && hinv.delta == 1);
  if (match) return make_split(T, kind, h.basis, kbasis);

  // Ordinary vector sitting in an I_{1,1}(2)-type complement: rebuild the
  // split as T = U(2) (+) K' via f = y + x with y in H, (e,y) = 2, and
  // x in K of divisibility 2 with x^2 = 2 mod 4 (exists since K is co-odd).
  if (!(kind == IsotropicKind::EvenOrdinary && hinv.a == 2 && hinv.delta == 1))
    throw SplitFailed("complement type " + hinv.to_string() +
                      " does not match isotropic kind " + std::string(to_string(kind)));
  VecZ h0(n), h1(n);
  for (int t = 0; t < n; ++t) { h0[t] = h.basis.at(0, t); h1[t] = h.basis.at(1, t); }
  VecZ pe = {pair(T.gram(), e, h0), pair(T.gram(), e, h1)};
  auto c = solve_diophantine(pe, 2);
  if (!c) throw SplitFailed("no vector pairing 2 with e in H");
  VecZ y(n);
  for (int t = 0; t < n; ++t) y[t] = (*c)[0] * h0[t] + (*c)[1] * h1[t];
  DiscGroup dk = discriminant_group(q.quotient);
  VecZ x_t;
  for (const auto& w : dk.gens) {
    Int qq = pair(q.quotient.gram(), w, w);
    Int rem = qq % 4; if (rem < 0) rem += 4;
    if (rem == 2) {
      x_t.assign(n, 0);
      for (int i = 0; i < (int)w.size(); ++i)
        for (int t = 0; t < n; ++t) x_t[t] += w[i] * kbasis.at(i, t);
      break;
    }
  }
  if (x_t.empty()) throw SplitFailed("no co-odd witness in K");
  VecZ f(n);
  for (int t = 0; t < n; ++t) f[t] = y[t] + x_t[t];
  Int f2 = T.norm(f);
  if (f2 % 4 != 0 || pair(T.gram(), e, f) != 2) throw SplitFailed("fixup arithmetic failed");
  Int m = f2 / 4;
  for (int t = 0; t < n; ++t) f[t] -= m * e[t];
  MatZ hb(2, n);
  for (int t = 0; t < n; ++t) { hb.at(0, t) = e[t]; hb.at(1, t) = f[t]; }
  Sublattice k2 = orthogonal_complement(T, hb);
  MatZ kb = k2.basis;
  return make_split(T, kind, hb, kb);
}

// ---- definite machinery ----

std::vector<VecZ> short_vectors(const IntegralLattice& L, const Int& norm_value) {
  int n = L.rank();
  if (n == 0) return {};
  Inertia s = L.signature();
  bool neg = s.plus == 0;
  if (!neg && s.minus != 0) throw lattice_error("short_vectors: not definite");
  // work with positive definite form
  MatZ g = neg ? scaled(L.gram(), -1) : L.gram();
  Int target = neg ? -norm_value : norm_value;
  if (target < 0) return {};
  // rational Cholesky: g = L^T D L with unit upper triangular U and diag d
  std::vector<std::vector<Rat>> u(n, std::vector<Rat>(n));
  std::vector<Rat> dd(n);
  {
    std::vector<std::vector<Rat>> a(n, std::vector<Rat>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) a[i][j] = Rat(g.at(i, j));
    for (int i = 0; i < n; ++i) {
      dd[i] = a[i][i];
      if (dd[i] <= 0) throw lattice_error("short_vectors: not positive definite");
      for (int j = i; j < n; ++j) u[i][j] = a[i][j] / dd[i];
      for (int k = i + 1; k < n; ++k)
        for (int l = i + 1; l < n; ++l)
          a[k][l] -= dd[i] * u[i][k] * u[i][l];
    }
  }
  std::vector<VecZ> out;
  VecZ x(n, 0);
  // enumerate from the last coordinate; canonical sign: first nonzero from the
  // end is positive
  std::vector<Rat> center(n, Rat(0));
  std::function<void(int, Rat)> rec = [&](int i, Rat rem) {
    if (i < 0) {
      if (rem == 0) {
        // sign normalize: highest-index nonzero must be > 0... we enumerate
        // x[n-1] >= 0 at top level; accept all with rem==0, filter below.
        out.push_back(x);
      }
      return;
    }
    // center c_i = sum_{j>i} u[i][j] x_j
    Rat c(0);
    for (int j = i + 1; j < n; ++j)
      if (x[j] != 0) c += u[i][j] * Rat(x[j]);
    // d_i (x_i + c)^2 <= rem
    Rat bound = rem / dd[i];
    // integer range: (x + c)^2 <= bound
    // approximate sqrt for range, then adjust exactly
    Int num = bound.get_num(), den = bound.get_den();
    Int s0 = isqrt_floor(num * den);  // floor(sqrt(num*den))
    // sqrt(bound) = sqrt(num*den)/den
    Rat sq(s0 + 1, 1); sq /= Rat(den);
    Rat lo_r = -c - sq, hi_r = -c + sq;
    Int lo, hi;
    mpz_fdiv_q(lo.get_mpz_t(), lo_r.get_num().get_mpz_t(), lo_r.get_den().get_mpz_t());
    mpz_fdiv_q(hi.get_mpz_t(), hi_r.get_num().get_mpz_t(), hi_r.get_den().get_mpz_t());
    for (Int v = lo; v <= hi + 1; ++v) {
      Rat t = Rat(v) + c;
      Rat used = dd[i] * t * t;
      if (used > rem) continue;
      x[i] = v;
      rec(i - 1, rem - used);
    }
    x[i] = 0;
  };
  rec(n - 1, Rat(target));
  // drop zero, dedupe +-: keep lex-greater of {v, -v}
  std::vector<VecZ> res;
  for (auto& v : out) {
    if (content(v) == 0 && target != 0) continue;
    VecZ m(v.size());
    for (size_t i = 0; i < v.size(); ++i) m[i] = -v[i];
    if (std::lexicographical_compare(m.begin(), m.end(), v.begin(), v.end(),
                                     [](const Int& a, const Int& b) { return a < b; }))
      res.push_back(v);
  }
  std::sort(res.begin(), res.end(), [](const VecZ& a, const VecZ& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                        [](const Int& x, const Int& y) { return x < y; });
  });
  return res;
}

IsometryResult definite_isometric(const IntegralLattice& A, const IntegralLattice& B,
                                  long node_budget) {
  if (A.rank() != B.rank()) return IsometryResult::NotIsometric;
  if (A.determinant() != B.determinant()) return IsometryResult::NotIsometric;
  if (A.signature().plus != B.signature().plus || A.signature().minus != B.signature().minus)
    return IsometryResult::NotIsometric;
  int n = A.rank();
  if (n == 0) return IsometryResult::Isometric;
  bool neg = A.signature().plus == 0;
  // candidate images for each basis vector of A: vectors in B of equal norm
  std::map<Int, std::vector<VecZ>> pools;
  auto pool_for = [&](const Int& nv) -> const std::vector<VecZ>& {
    auto it = pools.find(nv);
    if (it == pools.end()) {
      auto sv = short_vectors(B, nv);
      // include +- both
      std::vector<VecZ> full;
      for (auto& v : sv) {
        full.push_back(v);
        VecZ m(v.size());
        for (size_t i = 0; i < v.size(); ++i) m[i] = -v[i];
        full.push_back(m);
      }
      it = pools.emplace(nv, std::move(full)).first;
    }
    return it->second;
  };
  (void)neg;
  long nodes = 0;
  std::vector<VecZ> img;
  std::function<bool(int)> rec = [&](int i) -> bool {
    if (i == n) return true;
    Int nv = A.gram().at(i, i);
    for (const auto& cand : pool_for(nv)) {
      if (++nodes > node_budget) return false;
      bool ok = true;
      for (int j = 0; j < i; ++j)
        if (pair(B.gram(), img[j], cand) != A.gram().at(i, j)) { ok = false; break; }
      if (!ok) continue;
      img.push_back(cand);
      if (rec(i + 1)) return true;
      img.pop_back();
    }
    return false;
  };
  bool found = rec(0);
  if (found) return IsometryResult::Isometric;
  if (nodes > node_budget) return IsometryResult::Inconclusive;
  return IsometryResult::NotIsometric;
}

}  // namespace k3cusp
