#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "k3cusp/exact.hpp"

using namespace k3cusp;

TEST_CASE("determinant") {
  CHECK(det(mat_from({{0, 1}, {1, 0}})) == -1);
  CHECK(det(mat_from({{-2}})) == -2);
  CHECK(det(mat_from({{2, 1, 0}, {1, 2, 1}, {0, 1, 2}})) == 4);  // A3 (positive)
  CHECK(det(MatZ::identity(5)) == 1);
  CHECK(det(mat_from({{1, 2}, {2, 4}})) == 0);
}

TEST_CASE("smith divisors") {
  auto d = smith_divisors(mat_from({{0, 2}, {2, 0}}));
  REQUIRE(d.size() == 2);
  CHECK(d[0] == 2);
  CHECK(d[1] == 2);
  d = smith_divisors(mat_from({{2, 1}, {1, 2}}));
  CHECK(d[0] == 1);
  CHECK(d[1] == 3);
  // brute-force style cross-check: diag(4,6) has divisors 2, 12
  d = smith_divisors(mat_from({{4, 0}, {0, 6}}));
  CHECK(d[0] == 2);
  CHECK(d[1] == 12);
}

TEST_CASE("inertia") {
  auto s = inertia(mat_from({{0, 1}, {1, 0}}));
  CHECK(s.plus == 1);
  CHECK(s.zero == 0);
  CHECK(s.minus == 1);
  s = inertia(mat_from({{-2}}));
  CHECK(s.minus == 1);
  s = inertia(mat_from({{1, 2}, {2, 4}}));
  CHECK(s.plus == 1);
  CHECK(s.zero == 1);
}

TEST_CASE("inertia is congruence invariant") {
  // deterministic pseudo-random unimodular transforms of fixed seeds
  std::vector<MatZ> seeds = {
      mat_from({{0, 1, 0}, {1, 0, 0}, {0, 0, -2}}),
      mat_from({{2, 1, 0, 0}, {1, -2, 1, 0}, {0, 1, -2, 1}, {0, 0, 1, -2}}),
      mat_from({{-2, 1, 0, 0}, {1, -2, 1, 1}, {0, 1, -2, 0}, {0, 1, 0, -2}}),
  };
  unsigned long state = 12345;
  auto rnd = [&] { state = state * 6364136223846793005ULL + 1442695040888963407ULL; return (long)((state >> 33) % 5) - 2; };
  for (const auto& g : seeds) {
    Inertia base = inertia(g);
    CHECK(base.plus + base.zero + base.minus == g.rows);
    int n = g.rows;
    MatZ b = MatZ::identity(n);
    for (int step = 0; step < 12; ++step) {
      // random elementary row op keeps det = +-1
      int i = (int)((state >> 20) % n), j = (int)((state >> 40) % n);
      long c = rnd();
      if (i == j) continue;
      for (int k = 0; k < n; ++k) b.at(i, k) += c * b.at(j, k);
    }
    MatZ g2 = mul(transpose(b), mul(g, b));
    Inertia t = inertia(g2);
    CHECK(t.plus == base.plus);
    CHECK(t.zero == base.zero);
    CHECK(t.minus == base.minus);
  }
}

TEST_CASE("kernel and hnf") {
  MatZ k = integer_kernel(mat_from({{1, 2, 3}}));
  CHECK(k.rows == 2);
  for (int i = 0; i < k.rows; ++i) {
    Int s = k.at(i, 0) + 2 * k.at(i, 1) + 3 * k.at(i, 2);
    CHECK(s == 0);
  }
  // saturation of 2Z+4Z inside Z^2 is the full primitive span
  MatZ sat = saturate_rows(mat_from({{2, 4}}));
  REQUIRE(sat.rows == 1);
  CHECK(abs(sat.at(0, 0)) == 1);
  CHECK(abs(sat.at(0, 1)) == 2);
}

TEST_CASE("solve and unimodular completion") {
  auto x = solve_integer(mat_from({{2, 1}, {1, 1}}), {Int(3), Int(2)});
  REQUIRE(x.has_value());
  CHECK((*x)[0] == 1);
  CHECK((*x)[1] == 1);
  CHECK(!solve_integer(mat_from({{2, 0}, {0, 2}}), {Int(1), Int(0)}).has_value());

  auto d = solve_diophantine({Int(6), Int(10), Int(15)}, Int(1));
  REQUIRE(d.has_value());
  CHECK(6 * (*d)[0] + 10 * (*d)[1] + 15 * (*d)[2] == 1);

  VecZ v = {Int(3), Int(5), Int(7)};
  MatZ u = complete_to_unimodular(v);
  CHECK(abs(det(u)) == 1);
  for (int j = 0; j < 3; ++j) CHECK(u.at(0, j) == v[j]);
}

TEST_CASE("inverse") {
  MatZ m = mat_from({{0, 2}, {2, 0}});
  QInverse inv = inverse(m);
  MatZ prod = mul(m, inv.adj);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) CHECK(prod.at(i, j) == (i == j ? inv.den : Int(0)));
}

TEST_CASE("hilbert symbols") {
  // (a,b)_p standard values
  CHECK(hilbert_symbol(-1, -1, 0) == -1);
  CHECK(hilbert_symbol(-1, -1, 2) == -1);
  CHECK(hilbert_symbol(-1, -1, 3) == 1);
  CHECK(hilbert_symbol(2, 3, 3) == -1);
  CHECK(hilbert_symbol(2, 2, 2) == 1);   // 2*x^2+2*y^2=z^2 has (2,2,\sqrt..): (2,2)_2=(2,-1)_2*(2,-2)... check: (2,2) ~ (2,-1)(2,-2)? direct: x=y=1,z=2 works
  CHECK(hilbert_symbol(5, 2, 5) == -1);  // 2 is not a QR mod 5
  // product formula over all places for a few samples
  for (long a : {-6L, 10L, 15L}) {
    for (long b : {-10L, 21L, 14L}) {
      int prod = hilbert_symbol(a, b, 0);
      for (long p : {2L, 3L, 5L, 7L}) prod *= hilbert_symbol(a, b, p);
      CHECK(prod == 1);
    }
  }
}

TEST_CASE("rational congruence invariants") {
  // U and <1> + <-1> are rationally congruent
  auto c1 = rational_congruence_class(mat_from({{0, 1}, {1, 0}}));
  auto c2 = rational_congruence_class(mat_from({{1, 0}, {0, -1}}));
  CHECK(c1 == c2);
  // U and U(2) are NOT rationally congruent? det square classes: -1 vs -4~-1,
  // Hasse at 2: both split... they ARE congruent over Q (scaling by 2 is a
  // congruence in GL_2(Q)). Check that:
  auto c3 = rational_congruence_class(mat_from({{0, 2}, {2, 0}}));
  CHECK(c1 == c3);
  // <2> vs <-2> differ in signature
  auto c4 = rational_congruence_class(mat_from({{2}}));
  auto c5 = rational_congruence_class(mat_from({{-2}}));
  CHECK(!(c4 == c5));
  // A2 vs diag(3, 1)? A2 = [[2,1],[1,2]] ~ diag(2, 3/2) ~ classes (2, 6):
  auto c6 = rational_congruence_class(mat_from({{2, 1}, {1, 2}}));
  auto c7 = rational_congruence_class(mat_from({{2, 0}, {0, 6}}));
  CHECK(c6 == c7);
}
