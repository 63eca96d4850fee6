#include "k3cusp/enumerate.hpp"

#include <algorithm>
#include <thread>

namespace k3cusp {

CosetEnumerator::CosetEnumerator(const IntegralLattice& L, const VecZ& w) : L_(L), w_(w) {
  w2_ = L.norm(w);
  if (w2_ <= 0) throw lattice_error("CosetEnumerator: w^2 must be positive");
  gw_ = mul(L.gram(), w);
  pairing_gcd_ = content(gw_);
  MatZ sys(1, L.rank());
  for (int j = 0; j < L.rank(); ++j) sys.at(0, j) = gw_[j];
  perp_basis_ = integer_kernel(sys);
  int m = perp_basis_.rows;
  perp_gram_ = MatZ(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      VecZ ri(L.rank()), rj(L.rank());
      for (int t = 0; t < L.rank(); ++t) { ri[t] = perp_basis_.at(i, t); rj[t] = perp_basis_.at(j, t); }
      perp_gram_.at(i, j) = pair(L.gram(), ri, rj);
    }
  // Cholesky of the positive definite -perp_gram
  chol_u_.assign(m, std::vector<Rat>(m, Rat(0)));
  chol_d_.assign(m, Rat(0));
  std::vector<std::vector<Rat>> a(m, std::vector<Rat>(m));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) a[i][j] = Rat(-perp_gram_.at(i, j));
  for (int i = 0; i < m; ++i) {
    chol_d_[i] = a[i][i];
    if (chol_d_[i] <= 0) throw lattice_error("CosetEnumerator: w^perp not negative definite");
    for (int j = i; j < m; ++j) chol_u_[i][j] = a[i][j] / chol_d_[i];
    for (int k = i + 1; k < m; ++k)
      for (int l = i + 1; l < m; ++l)
        a[k][l] -= chol_d_[i] * chol_u_[i][k] * chol_u_[i][l];
  }
}

namespace {

// integer range of y with d (y + c)^2 <= rem (d > 0): [lo, hi]
void coord_range(const Rat& d, const Rat& c, const Rat& rem, Int& lo, Int& hi, bool& empty) {
  if (rem < 0) { empty = true; return; }
  Rat bound = rem / d;
  Int num = bound.get_num(), den = bound.get_den();
  Int s0 = isqrt_floor(num * den);  // floor(sqrt(num*den)); sqrt(bound) = that/den
  Rat sq(s0 + 1);
  sq /= Rat(den);  // strict upper bound on sqrt(bound)
  Rat lo_r = -c - sq, hi_r = -c + sq;
  mpz_fdiv_q(lo.get_mpz_t(), lo_r.get_num().get_mpz_t(), lo_r.get_den().get_mpz_t());
  mpz_cdiv_q(hi.get_mpz_t(), hi_r.get_num().get_mpz_t(), hi_r.get_den().get_mpz_t());
  empty = false;
}

struct Walker {
  int m;
  const std::vector<std::vector<Rat>>& u;
  const std::vector<Rat>& d;
  const std::vector<Rat>& offset;  // p: enumerate y with Q(y + p) = target
  std::vector<Int> y;
  std::vector<std::vector<Rat>> centers;  // centers[depth][i] = p_i + sum_{j>i fixed} u_ij y_j
  std::vector<VecZ>& out;

  Walker(int m_, const std::vector<std::vector<Rat>>& u_, const std::vector<Rat>& d_,
         const std::vector<Rat>& p_, std::vector<VecZ>& out_)
      : m(m_), u(u_), d(d_), offset(p_), out(out_) {
    y.assign(m, 0);
    centers.assign(m + 1, offset);
  }

  // enumerate level i (from m-1 downward), rem = remaining target
  void rec(int i, const Rat& rem) {
    if (i < 0) {
      if (rem == 0) {
        VecZ v(m);
        for (int t = 0; t < m; ++t) v[t] = y[t];
        out.push_back(v);
      }
      return;
    }
    const Rat& c = centers[i + 1][i];
    Int lo, hi;
    bool empty;
    coord_range(d[i], c, rem, lo, hi, empty);
    if (empty) return;
    for (Int v = lo; v <= hi; ++v) {
      Rat t = Rat(v) + c;
      Rat used = d[i] * t * t;
      if (used > rem) continue;
      y[i] = v;
      // update centers for lower levels
      centers[i] = centers[i + 1];
      if (v != 0)
        for (int k = 0; k < i; ++k) centers[i][k] += u[k][i] * Rat(v);
      rec(i - 1, rem - used);
    }
    y[i] = 0;
  }
};

}  // namespace

std::vector<VecZ> CosetEnumerator::solve(const Int& h, const Int& s, int threads) const {
  int n = L_.rank(), m = perp_basis_.rows;
  std::vector<VecZ> result;
  if (pairing_gcd_ == 0 || h % pairing_gcd_ != 0) return result;
  auto x0opt = solve_diophantine(gw_, h);
  if (!x0opt) return result;
  VecZ x0 = *x0opt;
  Int x02 = L_.norm(x0);
  if (m == 0) {
    if (x02 == s) result.push_back(x0);
    return result;
  }
  // x = x0 + y B; x^2 = x0^2 + 2 c.y + y Gm y with c = B G x0
  VecZ c(m);
  {
    VecZ gx0 = mul(L_.gram(), x0);
    for (int i = 0; i < m; ++i) {
      Int t = 0;
      for (int j = 0; j < n; ++j) t += perp_basis_.at(i, j) * gx0[j];
      c[i] = t;
    }
  }
  // complete the square over -Gm: (y+p)^T (-Gm) (y+p) = x0^2 - s + p^T(-Gm)p,
  // p = (-Gm)^{-1} (-c) ... with Gm p = c: p = Gm^{-1} c
  QInverse gi = inverse(perp_gram_);
  std::vector<Rat> p(m);
  for (int i = 0; i < m; ++i) {
    Rat t(0);
    for (int j = 0; j < m; ++j) t += Rat(gi.adj.at(i, j)) * Rat(c[j]);
    p[i] = t / Rat(gi.den);
  }
  Rat ptgp(0);  // p^T Gm p = p . c
  for (int i = 0; i < m; ++i) ptgp += p[i] * Rat(c[i]);
  Rat target = Rat(x02 - s) + ptgp;  // value of (y+p)^T (-Gm) (y+p)
  if (target < 0) return result;

  std::vector<VecZ> ys;
  if (threads <= 1 || m < 2) {
    Walker wk(m, chol_u_, chol_d_, p, ys);
    wk.rec(m - 1, target);
  } else {
    // split the top coordinate range across threads
    Int lo, hi;
    bool empty;
    coord_range(chol_d_[m - 1], p[m - 1], target, lo, hi, empty);
    if (!empty) {
      long total = (hi - lo + 1).get_si();
      int nt = std::min<long>(threads, std::max<long>(1, total));
      std::vector<std::vector<VecZ>> parts(nt);
      std::vector<std::thread> pool;
      for (int t = 0; t < nt; ++t) {
        pool.emplace_back([&, t] {
          Walker wk(m, chol_u_, chol_d_, p, parts[t]);
          for (Int v = lo + t; v <= hi; v += nt) {
            Rat tv = Rat(v) + p[m - 1];
            Rat used = chol_d_[m - 1] * tv * tv;
            if (used > target) continue;
            wk.y[m - 1] = v;
            wk.centers[m - 1] = wk.centers[m];
            if (v != 0)
              for (int k = 0; k < m - 1; ++k) wk.centers[m - 1][k] += chol_u_[k][m - 1] * Rat(v);
            wk.rec(m - 2, target - used);
          }
        });
      }
      for (auto& th : pool) th.join();
      for (auto& part : parts)
        for (auto& v : part) ys.push_back(std::move(v));
    }
  }
  for (const auto& y : ys) {
    VecZ x = x0;
    for (int i = 0; i < m; ++i)
      if (y[i] != 0)
        for (int t = 0; t < n; ++t) x[t] += y[i] * perp_basis_.at(i, t);
    result.push_back(std::move(x));
  }
  std::sort(result.begin(), result.end(), [](const VecZ& a, const VecZ& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                        [](const Int& x, const Int& y) { return x < y; });
  });
  return result;
}

}  // namespace k3cusp
