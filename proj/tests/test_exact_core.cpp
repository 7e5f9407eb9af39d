#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "k34h/intmatrix.hpp"

using namespace k34h;

namespace {

// Cofactor-expansion determinant, the independent oracle for det_exact.
BigInt det_cofactor(const IntMatrix& m) {
  const int n = m.rows;
  if (n == 0) return 1;
  if (n == 1) return m.at(0, 0);
  BigInt s = 0;
  for (int j = 0; j < n; ++j) {
    if (m.at(0, j) == 0) continue;
    IntMatrix minor(n - 1, n - 1);
    for (int i = 1; i < n; ++i) {
      int cc = 0;
      for (int c = 0; c < n; ++c) {
        if (c == j) continue;
        minor.at(i - 1, cc++) = m.at(i, c);
      }
    }
    BigInt term = m.at(0, j) * det_cofactor(minor);
    s += (j % 2 == 0) ? term : -term;
  }
  return s;
}

// Invariant factors via determinantal divisors: d_k = gcd of all k x k
// minors, k-th factor = d_k / d_{k-1}. Independent of the elimination
// code path.
std::vector<BigInt> snf_oracle(const IntMatrix& m) {
  const int n = std::min(m.rows, m.cols);
  std::vector<BigInt> dd(n + 1);
  dd[0] = 1;
  for (int k = 1; k <= n; ++k) {
    BigInt g = 0;
    std::vector<int> ri(k), ci(k);
    std::function<void(int, int)> rows = [&](int pos, int start) {
      if (pos == k) {
        std::function<void(int, int)> cols = [&](int cpos, int cstart) {
          if (cpos == k) {
            IntMatrix sub(k, k);
            for (int i = 0; i < k; ++i)
              for (int j = 0; j < k; ++j) sub.at(i, j) = m.at(ri[i], ci[j]);
            BigInt d = det_cofactor(sub);
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
            return;
          }
          for (int c = cstart; c < m.cols; ++c) ci[cpos] = c, cols(cpos + 1, c + 1);
        };
        cols(0, 0);
        return;
      }
      for (int r = start; r < m.rows; ++r) ri[pos] = r, rows(pos + 1, r + 1);
    };
    rows(0, 0);
    dd[k] = g;
  }
  std::vector<BigInt> f;
  for (int k = 1; k <= n; ++k) {
    if (dd[k] == 0) {
      f.emplace_back(0);
    } else {
      f.push_back(dd[k] / dd[k - 1]);
    }
  }
  return f;
}

IntMatrix random_matrix(std::mt19937& rng, int r, int c, int lo = -6, int hi = 6) {
  std::uniform_int_distribution<int> d(lo, hi);
  IntMatrix m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m.at(i, j) = d(rng);
  return m;
}

const IntMatrix kD4{{-2, 1, 1, 1}, {1, -2, 0, 0}, {1, 0, -2, 0}, {1, 0, 0, -2}};

IntMatrix gram_A() {
  IntMatrix u2{{0, 2}, {2, 0}};
  IntMatrix neg2(4, 4);
  for (int i = 0; i < 4; ++i) neg2.at(i, i) = -2;
  return IntMatrix::direct_sum({u2, u2, neg2});
}

IntMatrix gkz_matrix_independent() {
  // Rebuilt from its definition: rows 1..4 mark the block p, row 5 marks
  // first-row variables, row 6 marks first-column variables.
  IntMatrix a(6, 16);
  int col = 0;
  for (int p = 0; p < 4; ++p)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k, ++col) {
        a.at(p, col) = 1;
        if (j == 0) a.at(4, col) = 1;
        if (k == 0) a.at(5, col) = 1;
      }
  return a;
}

}  // namespace

TEST_CASE("snf basic cases") {
  auto s = snf(IntMatrix::identity(3));
  CHECK(s.d == std::vector<BigInt>{1, 1, 1});

  auto s2 = snf(IntMatrix{{0, 2}, {2, 0}});
  CHECK(s2.d == std::vector<BigInt>{2, 2});

  auto s3 = snf(kD4);
  CHECK(s3.d == std::vector<BigInt>{1, 1, 2, 2});
  CHECK(s3.d == snf_oracle(kD4));
}

TEST_CASE("snf reconstruction and divisibility on random matrices") {
  std::mt19937 rng(12345);
  for (int trial = 0; trial < 60; ++trial) {
    int r = 1 + int(rng() % 5), c = 1 + int(rng() % 5);
    IntMatrix m = random_matrix(rng, r, c);
    auto s = snf(m);
    IntMatrix prod = s.u * m * s.v;
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) {
        BigInt want = (i == j && i < int(s.d.size())) ? s.d[i] : BigInt(0);
        CHECK(prod.at(i, j) == want);
      }
    for (size_t i = 0; i + 1 < s.d.size(); ++i) {
      if (s.d[i + 1] == 0) continue;
      CHECK(s.d[i] != 0);
      CHECK(s.d[i + 1] % s.d[i] == 0);
    }
    BigInt du = det_exact(s.u), dv = det_exact(s.v);
    CHECK((du == 1 || du == -1));
    CHECK((dv == 1 || dv == -1));
    if (trial < 10) {
      auto oracle = snf_oracle(m);
      CHECK(s.d == oracle);
    }
  }
}

TEST_CASE("det_exact") {
  CHECK(det_exact(IntMatrix::identity(8)) == 1);
  CHECK(det_exact(kD4) == 4);
  CHECK(det_exact(kD4) == det_cofactor(kD4));
  CHECK(det_exact(gram_A()) == 256);
  CHECK_THROWS(det_exact(IntMatrix(2, 3)));

  std::mt19937 rng(777);
  for (int trial = 0; trial < 40; ++trial) {
    int n = 1 + int(rng() % 5);
    IntMatrix m = random_matrix(rng, n, n);
    CHECK(det_exact(m) == det_cofactor(m));
  }
}

TEST_CASE("det equals signed product of invariant factors") {
  std::mt19937 rng(4242);
  for (int trial = 0; trial < 30; ++trial) {
    int n = 1 + int(rng() % 4);
    IntMatrix m = random_matrix(rng, n, n);
    BigInt d = det_exact(m);
    if (d == 0) continue;
    auto s = snf(m);
    BigInt prod = 1;
    for (const auto& f : s.d) prod *= f;
    CHECK((d == prod || d == -prod));
  }
}

TEST_CASE("kernel_basis") {
  CHECK(kernel_basis(IntMatrix::identity(4)).empty());

  IntMatrix m(1, 2);
  m.at(0, 0) = 2;
  m.at(0, 1) = -2;
  auto k = kernel_basis(m);
  REQUIRE(k.size() == 1);
  CHECK(((k[0] == std::vector<BigInt>{1, 1}) || (k[0] == std::vector<BigInt>{-1, -1})));

  IntMatrix a = gkz_matrix_independent();
  CHECK(rank_of(a) == 6);
  auto ka = kernel_basis(a);
  CHECK(ka.size() == 10);
  for (const auto& v : ka) {
    auto img = a.mul_vec(v);
    for (const auto& x : img) CHECK(x == 0);
  }
  // Saturation: the stacked kernel basis has all invariant factors 1.
  IntMatrix stack(10, 16);
  for (int i = 0; i < 10; ++i)
    for (int j = 0; j < 16; ++j) stack.at(i, j) = ka[i][j];
  auto s = snf(stack);
  for (int i = 0; i < 10; ++i) CHECK(s.d[i] == 1);
}

TEST_CASE("kernel vectors of random matrices annihilate and saturate") {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 30; ++trial) {
    int r = 1 + int(rng() % 4), c = 1 + int(rng() % 5);
    IntMatrix m = random_matrix(rng, r, c, -4, 4);
    auto k = kernel_basis(m);
    for (const auto& v : k) {
      auto img = m.mul_vec(v);
      for (const auto& x : img) CHECK(x == 0);
    }
    if (!k.empty()) {
      IntMatrix stack(int(k.size()), c);
      for (size_t i = 0; i < k.size(); ++i)
        for (int j = 0; j < c; ++j) stack.at(int(i), j) = k[i][j];
      auto s = snf(stack);
      for (size_t i = 0; i < k.size(); ++i) CHECK(s.d[i] == 1);
    }
  }
}

TEST_CASE("rational helpers") {
  QMatrix q(QMatrix::identity(3));
  CHECK(rank_of(q) == 3);
  QMatrix inv = inverse(QMatrix(kD4));
  QMatrix prod = inv * QMatrix(kD4);
  CHECK(prod == QMatrix::identity(4));

  CHECK(inertia(QMatrix(kD4)) == std::make_pair(0, 4));
  CHECK(inertia(QMatrix(IntMatrix{{0, 1}, {1, 0}})) == std::make_pair(1, 1));
  CHECK_THROWS(inertia(QMatrix(IntMatrix(2, 2))));

  CHECK(parse_rat("-3/6") == rat_of(-1, 2));
  CHECK(rat_mod(rat_of(-1, 2), Rat(2)) == rat_of(3, 2));
  CHECK(rat_mod(rat_of(7, 2), Rat(1)) == rat_of(1, 2));
}
