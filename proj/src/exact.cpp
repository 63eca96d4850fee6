#include "k3cusp/exact.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace k3cusp {

MatZ MatZ::identity(int n) {
  MatZ m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

MatZ mat_from(const std::vector<std::vector<long>>& rows) {
  MatZ m((int)rows.size(), rows.empty() ? 0 : (int)rows[0].size());
  for (int i = 0; i < m.rows; ++i) {
    if ((int)rows[i].size() != m.cols) throw exact_error("ragged matrix literal");
    for (int j = 0; j < m.cols; ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

MatZ transpose(const MatZ& m) {
  MatZ t(m.cols, m.rows);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) t.at(j, i) = m.at(i, j);
  return t;
}

MatZ mul(const MatZ& x, const MatZ& y) {
  if (x.cols != y.rows) throw exact_error("mul: shape mismatch");
  MatZ z(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) {
      const Int& v = x.at(i, k);
      if (v == 0) continue;
      for (int j = 0; j < y.cols; ++j) z.at(i, j) += v * y.at(k, j);
    }
  return z;
}

VecZ mul(const MatZ& m, const VecZ& v) {
  if ((int)v.size() != m.cols) throw exact_error("mul: vector size");
  VecZ out(m.rows, 0);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) out[i] += m.at(i, j) * v[j];
  return out;
}

VecZ mul_row(const VecZ& v, const MatZ& m) {
  if ((int)v.size() != m.rows) throw exact_error("mul_row: vector size");
  VecZ out(m.cols, 0);
  for (int i = 0; i < m.rows; ++i) {
    if (v[i] == 0) continue;
    for (int j = 0; j < m.cols; ++j) out[j] += v[i] * m.at(i, j);
  }
  return out;
}

Int dot(const VecZ& x, const VecZ& y) {
  if (x.size() != y.size()) throw exact_error("dot: size");
  Int s = 0;
  for (size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

Int pair(const MatZ& g, const VecZ& x, const VecZ& y) { return dot(x, mul(g, y)); }

MatZ block_diag(const MatZ& x, const MatZ& y) {
  MatZ z(x.rows + y.rows, x.cols + y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int j = 0; j < x.cols; ++j) z.at(i, j) = x.at(i, j);
  for (int i = 0; i < y.rows; ++i)
    for (int j = 0; j < y.cols; ++j) z.at(x.rows + i, x.cols + j) = y.at(i, j);
  return z;
}

MatZ scaled(const MatZ& m, const Int& c) {
  MatZ z = m;
  for (auto& v : z.a) v *= c;
  return z;
}

bool is_symmetric(const MatZ& m) {
  if (m.rows != m.cols) return false;
  for (int i = 0; i < m.rows; ++i)
    for (int j = i + 1; j < m.cols; ++j)
      if (m.at(i, j) != m.at(j, i)) return false;
  return true;
}

Int content(const VecZ& v) {
  Int g = 0;
  for (const auto& x : v) g = gcd(g, x);
  return g;
}

VecZ primitive_part(const VecZ& v) {
  Int g = content(v);
  if (g == 0) throw exact_error("primitive_part: zero vector");
  VecZ out = v;
  for (auto& x : out) x /= g;
  return out;
}

Int det(const MatZ& m) {
  if (m.rows != m.cols) throw exact_error("det: not square");
  int n = m.rows;
  if (n == 0) return 1;
  MatZ a = m;
  Int prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (a.at(k, k) == 0) {
      int p = -1;
      for (int i = k + 1; i < n; ++i)
        if (a.at(i, k) != 0) { p = i; break; }
      if (p < 0) return 0;
      for (int j = 0; j < n; ++j) swap(a.at(k, j), a.at(p, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) {
        Int t = a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j);
        a.at(i, j) = t / prev;  // exact by Bareiss
      }
    prev = a.at(k, k);
  }
  return sign > 0 ? a.at(n - 1, n - 1) : -a.at(n - 1, n - 1);
}

std::vector<Int> smith_divisors(MatZ a) {
  int n = a.rows, m = a.cols;
  std::vector<Int> divs;
  int k = 0;
  auto nonzero_at = [&](int i, int j) { return a.at(i, j) != 0; };
  while (k < n && k < m) {
    // pivot: smallest |nonzero|
    int pi = -1, pj = -1;
    for (int i = k; i < n; ++i)
      for (int j = k; j < m; ++j)
        if (nonzero_at(i, j) &&
            (pi < 0 || cmp(abs(a.at(i, j)), abs(a.at(pi, pj))) < 0)) {
          pi = i; pj = j;
        }
    if (pi < 0) break;
    for (int j = 0; j < m; ++j) swap(a.at(k, j), a.at(pi, j));
    for (int i = 0; i < n; ++i) swap(a.at(i, k), a.at(i, pj));
    bool again = true;
    while (again) {
      again = false;
      for (int i = k + 1; i < n; ++i) {
        if (a.at(i, k) == 0) continue;
        Int q; mpz_fdiv_q(q.get_mpz_t(), a.at(i, k).get_mpz_t(), a.at(k, k).get_mpz_t());
        for (int j = k; j < m; ++j) a.at(i, j) -= q * a.at(k, j);
        if (a.at(i, k) != 0) {
          for (int j = 0; j < m; ++j) swap(a.at(k, j), a.at(i, j));
          again = true;
        }
      }
      for (int j = k + 1; j < m; ++j) {
        if (a.at(k, j) == 0) continue;
        Int q; mpz_fdiv_q(q.get_mpz_t(), a.at(k, j).get_mpz_t(), a.at(k, k).get_mpz_t());
        for (int i = k; i < n; ++i) a.at(i, j) -= q * a.at(i, k);
        if (a.at(k, j) != 0) {
          for (int i = 0; i < n; ++i) swap(a.at(i, k), a.at(i, j));
          again = true;
        }
      }
      if (!again) {
        for (int i = k + 1; i < n && !again; ++i)
          for (int j = k + 1; j < m && !again; ++j)
            if (a.at(i, j) % a.at(k, k) != 0) {
              for (int j2 = 0; j2 < m; ++j2) a.at(k, j2) += a.at(i, j2);
              again = true;
            }
      }
    }
    divs.push_back(abs(a.at(k, k)));
    ++k;
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

Inertia inertia(const MatZ& g) {
  if (!is_symmetric(g)) throw exact_error("inertia: not symmetric");
  int n = g.rows;
  std::vector<std::vector<Rat>> a(n, std::vector<Rat>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a[i][j] = Rat(g.at(i, j));
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  Inertia out;
  while (!idx.empty()) {
    int d = -1;
    for (int i : idx)
      if (a[i][i] != 0) { d = i; break; }
    if (d < 0) {
      int pi = -1, pj = -1;
      for (int i : idx) {
        for (int j : idx)
          if (i != j && a[i][j] != 0) { pi = i; pj = j; break; }
        if (pi >= 0) break;
      }
      if (pi < 0) {
        out.zero += (int)idx.size();
        break;
      }
      for (int k = 0; k < n; ++k) a[pi][k] += a[pj][k];
      for (int k = 0; k < n; ++k) a[k][pi] += a[k][pj];
      d = pi;
    }
    Rat p = a[d][d];
    if (p > 0) ++out.plus; else ++out.minus;
    idx.erase(std::find(idx.begin(), idx.end(), d));
    std::vector<Rat> pivot_row(n);
    for (int j : idx) pivot_row[j] = a[d][j];
    for (int i : idx) {
      if (a[i][d] == 0) continue;
      Rat f = a[i][d] / p;
      for (int j : idx) a[i][j] -= f * pivot_row[j];
    }
    for (int i : idx) { a[i][d] = 0; a[d][i] = 0; }
  }
  return out;
}

// Column-style HNF transform: returns unimodular U with (m U) in column HNF.
static MatZ column_transform(const MatZ& m) {
  int n = m.rows, c = m.cols;
  MatZ a = m, u = MatZ::identity(c);
  int row = 0, col = 0;
  while (row < n && col < c) {
    int p = -1;
    for (int j = col; j < c; ++j)
      if (a.at(row, j) != 0 && (p < 0 || cmp(abs(a.at(row, j)), abs(a.at(row, p))) < 0)) p = j;
    if (p < 0) { ++row; continue; }
    for (int i = 0; i < n; ++i) swap(a.at(i, col), a.at(i, p));
    for (int i = 0; i < c; ++i) swap(u.at(i, col), u.at(i, p));
    bool done = false;
    while (!done) {
      done = true;
      for (int j = col + 1; j < c; ++j) {
        if (a.at(row, j) == 0) continue;
        Int q; mpz_fdiv_q(q.get_mpz_t(), a.at(row, j).get_mpz_t(), a.at(row, col).get_mpz_t());
        for (int i = 0; i < n; ++i) a.at(i, j) -= q * a.at(i, col);
        for (int i = 0; i < c; ++i) u.at(i, j) -= q * u.at(i, col);
        if (a.at(row, j) != 0) {
          for (int i = 0; i < n; ++i) swap(a.at(i, col), a.at(i, j));
          for (int i = 0; i < c; ++i) swap(u.at(i, col), u.at(i, j));
          done = false;
        }
      }
    }
    ++row; ++col;
  }
  return u;
}

MatZ integer_kernel(const MatZ& m) {
  int c = m.cols;
  MatZ u = column_transform(m);
  MatZ prod = mul(m, u);
  std::vector<int> zero_cols;
  for (int j = 0; j < c; ++j) {
    bool z = true;
    for (int i = 0; i < m.rows; ++i)
      if (prod.at(i, j) != 0) { z = false; break; }
    if (z) zero_cols.push_back(j);
  }
  MatZ k((int)zero_cols.size(), c);
  for (int i = 0; i < k.rows; ++i)
    for (int j = 0; j < c; ++j) k.at(i, j) = u.at(j, zero_cols[i]);
  return row_basis_hnf(k);
}

MatZ row_basis_hnf(const MatZ& m) {
  int n = m.rows, c = m.cols;
  MatZ a = m;
  int row = 0;
  for (int col = 0; col < c && row < n; ++col) {
    int p = -1;
    for (int i = row; i < n; ++i)
      if (a.at(i, col) != 0 && (p < 0 || cmp(abs(a.at(i, col)), abs(a.at(p, col))) < 0)) p = i;
    if (p < 0) continue;
    for (int j = 0; j < c; ++j) swap(a.at(row, j), a.at(p, j));
    bool done = false;
    while (!done) {
      done = true;
      for (int i = row + 1; i < n; ++i) {
        if (a.at(i, col) == 0) continue;
        Int q; mpz_fdiv_q(q.get_mpz_t(), a.at(i, col).get_mpz_t(), a.at(row, col).get_mpz_t());
        for (int j = 0; j < c; ++j) a.at(i, j) -= q * a.at(row, j);
        if (a.at(i, col) != 0) {
          for (int j = 0; j < c; ++j) swap(a.at(row, j), a.at(i, j));
          done = false;
        }
      }
    }
    if (a.at(row, col) < 0)
      for (int j = 0; j < c; ++j) a.at(row, j) = -a.at(row, j);
    // reduce rows above
    for (int i = 0; i < row; ++i) {
      if (a.at(i, col) == 0) continue;
      Int q; mpz_fdiv_q(q.get_mpz_t(), a.at(i, col).get_mpz_t(), a.at(row, col).get_mpz_t());
      for (int j = 0; j < c; ++j) a.at(i, j) -= q * a.at(row, j);
    }
    ++row;
  }
  MatZ out(row, c);
  for (int i = 0; i < row; ++i)
    for (int j = 0; j < c; ++j) out.at(i, j) = a.at(i, j);
  return out;
}

MatZ saturate_rows(const MatZ& m) {
  // saturation = kernel of the transpose-kernel
  return integer_kernel(integer_kernel(m));
}

std::optional<VecZ> solve_integer(const MatZ& m, const VecZ& b) {
  QInverse inv = inverse(m);
  VecZ num = mul(inv.adj, b);
  VecZ out(num.size());
  for (size_t i = 0; i < num.size(); ++i) {
    if (num[i] % inv.den != 0) return std::nullopt;
    out[i] = num[i] / inv.den;
  }
  return out;
}

std::optional<VecZ> solve_diophantine(const VecZ& c, const Int& t) {
  int n = (int)c.size();
  MatZ m(1, n);
  for (int i = 0; i < n; ++i) m.at(0, i) = c[i];
  MatZ u = column_transform(m);
  MatZ h = mul(m, u);
  int piv = -1;
  for (int j = 0; j < n; ++j)
    if (h.at(0, j) != 0) { piv = j; break; }
  if (piv < 0) {
    if (t != 0) return std::nullopt;
    return VecZ(n, 0);
  }
  if (t % h.at(0, piv) != 0) return std::nullopt;
  Int q = t / h.at(0, piv);
  VecZ out(n, 0);
  for (int i = 0; i < n; ++i) out[i] = u.at(i, piv) * q;
  return out;
}

QInverse inverse(const MatZ& m) {
  if (m.rows != m.cols) throw exact_error("inverse: not square");
  int n = m.rows;
  Int d = det(m);
  if (d == 0) throw exact_error("inverse: singular");
  // adjugate via cofactors using rational Gauss on augmented system would be
  // slower; use fraction-free solve column by column instead.
  MatZ adj(n, n);
  for (int col = 0; col < n; ++col) {
    // Cramer: adj[:,col] solves m x = d * e_col
    MatZ a = m;
    std::vector<Rat> x(n), rhs(n, Rat(0));
    rhs[col] = Rat(d);
    // rational Gaussian elimination
    std::vector<std::vector<Rat>> g(n, std::vector<Rat>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) g[i][j] = Rat(a.at(i, j));
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    for (int k = 0; k < n; ++k) {
      int p = -1;
      for (int i = k; i < n; ++i)
        if (g[i][k] != 0) { p = i; break; }
      if (p < 0) throw exact_error("inverse: singular");
      std::swap(g[k], g[p]);
      std::swap(rhs[k], rhs[p]);
      for (int i = k + 1; i < n; ++i) {
        if (g[i][k] == 0) continue;
        Rat f = g[i][k] / g[k][k];
        for (int j = k; j < n; ++j) g[i][j] -= f * g[k][j];
        rhs[i] -= f * rhs[k];
      }
    }
    for (int k = n - 1; k >= 0; --k) {
      Rat s = rhs[k];
      for (int j = k + 1; j < n; ++j) s -= g[k][j] * x[j];
      x[k] = s / g[k][k];
    }
    for (int i = 0; i < n; ++i) {
      Rat v = x[i];
      v.canonicalize();
      if (v.get_den() != 1) throw exact_error("inverse: internal");
      adj.at(i, col) = v.get_num();
    }
  }
  return {adj, d};
}

MatZ complete_to_unimodular(const VecZ& v) {
  int n = (int)v.size();
  if (content(v) != 1) throw exact_error("complete_to_unimodular: not primitive");
  MatZ m(1, n);
  for (int i = 0; i < n; ++i) m.at(0, i) = v[i];
  MatZ u = column_transform(m);  // v u = (g, 0, ..., 0) with g = +-1
  Int g = mul(m, u).at(0, 0);
  if (abs(g) != 1) throw exact_error("complete_to_unimodular: internal");
  // v = g * (first row of u^{-1}); u^{-1} is integral unimodular.
  QInverse inv = inverse(u);
  MatZ b(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Int x = inv.adj.at(i, j);
      if (inv.den < 0) x = -x;
      b.at(i, j) = x;
    }
  if (g < 0)
    for (int j = 0; j < n; ++j) b.at(0, j) = -b.at(0, j);
  for (int j = 0; j < n; ++j)
    if (b.at(0, j) != v[j]) throw exact_error("complete_to_unimodular: failed");
  if (abs(det(b)) != 1) throw exact_error("complete_to_unimodular: not unimodular");
  return b;
}

Int isqrt_floor(const Int& n) {
  if (n < 0) throw exact_error("isqrt of negative");
  Int r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

// ---- Hilbert symbols / rational congruence ----

static int val_p(Int& a, const Int& p) {
  int v = 0;
  while (a % p == 0) { a /= p; ++v; }
  return v;
}

static bool is_qr_mod_p(const Int& a, const Int& p) {
  Int e = (p - 1) / 2, r;
  mpz_powm(r.get_mpz_t(), a.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
  return r == 1;
}

int hilbert_symbol(Int a, Int b, const Int& p) {
  if (a == 0 || b == 0) throw exact_error("hilbert_symbol: zero argument");
  if (p == 0) return (a < 0 && b < 0) ? -1 : 1;
  if (p == 2) {
    int alpha = val_p(a, p), beta = val_p(b, p);
    // a = 2^alpha u, b = 2^beta w with u,w odd
    auto eps = [](const Int& u) { return ((u - 1) / 2) % 2 != 0; };   // (u-1)/2 mod 2
    auto omega = [](const Int& u) { return ((u * u - 1) / 8) % 2 != 0; };  // (u^2-1)/8 mod 2
    bool e = (eps(a) && eps(b));
    if (alpha % 2 && omega(b)) e = !e;
    if (beta % 2 && omega(a)) e = !e;
    return e ? -1 : 1;
  }
  int alpha = val_p(a, p) % 2, beta = val_p(b, p) % 2;
  Int u = a % p; if (u < 0) u += p;
  Int w = b % p; if (w < 0) w += p;
  bool e = false;
  if (alpha && beta && ((p - 1) / 2) % 2 != 0) e = !e;
  if (beta && !is_qr_mod_p(u, p)) e = !e;
  if (alpha && !is_qr_mod_p(w, p)) e = !e;
  return e ? -1 : 1;
}

QCongruence rational_congruence_class(const MatZ& g) {
  // diagonalize over Q, exactly
  int n = g.rows;
  std::vector<std::vector<Rat>> a(n, std::vector<Rat>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a[i][j] = Rat(g.at(i, j));
  std::vector<Int> diag;
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  while (!idx.empty()) {
    int d = -1;
    for (int i : idx)
      if (a[i][i] != 0) { d = i; break; }
    if (d < 0) {
      int pi = -1, pj = -1;
      for (int i : idx) {
        for (int j : idx)
          if (i != j && a[i][j] != 0) { pi = i; pj = j; break; }
        if (pi >= 0) break;
      }
      if (pi < 0) throw exact_error("rational_congruence: degenerate");
      for (int k = 0; k < n; ++k) a[pi][k] += a[pj][k];
      for (int k = 0; k < n; ++k) a[k][pi] += a[k][pj];
      d = pi;
    }
    Rat p = a[d][d];
    // squarefree integer representative of the square class of p
    Int num = p.get_num(), den = p.get_den();
    Int rep = num * den;
    Int sf = 1;
    Int m = abs(rep);
    for (Int f = 2; f * f <= m; ++f) {
      int v = 0;
      while (m % f == 0) { m /= f; ++v; }
      if (v % 2) sf *= f;
    }
    sf *= m;
    if (rep < 0) sf = -sf;
    diag.push_back(sf);
    idx.erase(std::find(idx.begin(), idx.end(), d));
    std::vector<Rat> pivot_row(n);
    for (int j : idx) pivot_row[j] = a[d][j];
    for (int i : idx) {
      if (a[i][d] == 0) continue;
      Rat f = a[i][d] / p;
      for (int j : idx) a[i][j] -= f * pivot_row[j];
    }
    for (int i : idx) { a[i][d] = 0; a[d][i] = 0; }
  }
  QCongruence out;
  out.rank = n;
  Int dd = 1;
  for (const auto& d : diag) {
    dd *= d;
    if (d > 0) ++out.plus; else ++out.minus;
  }
  // squarefree part of det
  Int sf = 1, m = abs(dd);
  for (Int f = 2; f * f <= m; ++f) {
    int v = 0;
    while (m % f == 0) { m /= f; ++v; }
    if (v % 2) sf *= f;
  }
  sf *= m;
  if (dd < 0) sf = -sf;
  out.det_squarefree = sf;
  // relevant primes: 2 and odd primes dividing any diag entry
  std::vector<Int> primes = {2};
  for (const auto& d : diag) {
    Int m2 = abs(d);
    for (Int f = 2; f * f <= m2; ++f)
      if (m2 % f == 0) {
        if (std::find(primes.begin(), primes.end(), f) == primes.end()) primes.push_back(f);
        while (m2 % f == 0) m2 /= f;
      }
    if (m2 > 1 && std::find(primes.begin(), primes.end(), m2) == primes.end()) primes.push_back(m2);
  }
  std::sort(primes.begin(), primes.end());
  for (const auto& p : primes) {
    int h = 1;
    for (size_t i = 0; i < diag.size(); ++i)
      for (size_t j = i + 1; j < diag.size(); ++j)
        h *= hilbert_symbol(diag[i], diag[j], p);
    // symbols are +1 at every prime outside the diagonal support, so only the
    // -1 entries are congruence data
    if (h == -1) out.hasse.push_back({p, h});
  }
  return out;
}

}  // namespace k3cusp
