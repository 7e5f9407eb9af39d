#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "k34h/genericity.hpp"

using namespace k34h;
using namespace k34h::gen;

namespace {

Mat2<Rat> rmat(long a, long b, long c, long d) {
  return {Rat(a), Rat(b), Rat(c), Rat(d)};
}

FourCurveConfig<Rat> random_config(std::mt19937& rng) {
  std::uniform_int_distribution<long> d(-8, 8);
  FourCurveConfig<Rat> x;
  for (int p = 0; p < 4; ++p) x[p] = rmat(d(rng), d(rng), d(rng), d(rng));
  return x;
}

}  // namespace

TEST_CASE("d_pair basics") {
  auto x = reference_config();
  CHECK(d_pair(x, 0, 1) == 0);
  CHECK(d_pair(x, 0, 0) == 2);
  CHECK(d_pair(x, 1, 1) == -32);
  Rat k = d_pair(x, 0, 1) * d_pair(x, 0, 1) - d_pair(x, 0, 0) * d_pair(x, 1, 1);
  CHECK(k == 64);

  std::mt19937 rng(1);
  for (int t = 0; t < 50; ++t) {
    auto y = random_config(rng);
    for (int p = 0; p < 4; ++p) CHECK(d_pair(y, p, p) == 2 * y[p].det());
    for (int p = 0; p < 4; ++p)
      for (int q = 0; q < 4; ++q) CHECK(d_pair(y, p, q) == d_pair(y, q, p));
  }

  // coincident curves: the Cauchy-Schwarz equality case
  auto z = x;
  z[1] = z[0];
  CHECK(d_pair(z, 0, 1) * d_pair(z, 0, 1) - d_pair(z, 0, 0) * d_pair(z, 1, 1) == 0);
}

TEST_CASE("d_triple") {
  auto x = reference_config();
  CHECK(d_triple(x, 0, 1, 2) == 900);
  CHECK(d_triple(x, 0, 1, 3) == -9216);
  CHECK(d_triple(x, 0, 2, 3) == 12096);
  CHECK(d_triple(x, 1, 2, 3) == -157500);
  CHECK_THROWS(d_triple(x, 0, 0, 1));

  // vanishing of D(pqr) is permutation invariant
  std::mt19937 rng(2);
  for (int t = 0; t < 30; ++t) {
    auto y = random_config(rng);
    bool z0 = d_triple(y, 0, 1, 2) == 0;
    CHECK(z0 == (d_triple(y, 1, 0, 2) == 0));
    CHECK(z0 == (d_triple(y, 2, 1, 0) == 0));
    CHECK(z0 == (d_triple(y, 1, 2, 0) == 0));
  }

  // three curves through a common point: all pass through (s,t) = (0,0)
  FourCurveConfig<Rat> common{rmat(1, 2, 3, 0), rmat(2, -1, 5, 0), rmat(7, 1, 1, 0),
                              rmat(1, 1, 1, 1)};
  CHECK(d_triple(common, 0, 1, 2) == 0);

  // rank < 3 forces vanishing: duplicate rows
  FourCurveConfig<Rat> dup{rmat(1, 2, 3, 4), rmat(1, 2, 3, 4), rmat(5, 6, 7, 8), rmat(1, 1, 1, 1)};
  CHECK(d_triple(dup, 0, 1, 2) == 0);
}

TEST_CASE("genericity flags") {
  auto x = reference_config();
  CHECK(genericity_flags(x).all());
  CHECK(genericity_flags(to_complex(x)).all());

  auto z = x;
  z[1] = z[0];
  auto f = genericity_flags(z);
  CHECK_FALSE(f.g2[0][1]);

  auto w = x;
  w[3] = rmat(1, 2, 2, 4);  // singular
  CHECK_FALSE(genericity_flags(w).g1[3]);
}

TEST_CASE("group action") {
  auto x = reference_config();
  Mat2<Rat> id{Rat(1), Rat(0), Rat(0), Rat(1)};
  std::array<Rat, 4> ones{Rat(1), Rat(1), Rat(1), Rat(1)};
  auto y = act(x, id, id, ones);
  for (int p = 0; p < 4; ++p) {
    CHECK(y[p].a11 == x[p].a11);
    CHECK(y[p].a22 == x[p].a22);
  }
  CHECK_THROWS(act(x, rmat(1, 2, 2, 4), id, ones));

  // vanishing loci are invariant under the action
  std::mt19937 rng(3);
  std::uniform_int_distribution<long> d(-4, 4);
  int done = 0;
  while (done < 100) {
    Mat2<Rat> g = rmat(d(rng), d(rng), d(rng), d(rng));
    Mat2<Rat> h = rmat(d(rng), d(rng), d(rng), d(rng));
    if (g.det() == 0 || h.det() == 0) continue;
    std::array<Rat, 4> lam{rat_of(2, 3), rat_of(1), rat_of(2), rat_of(-1, 2)};
    auto base = random_config(rng);
    auto moved = act(base, g, h, lam);
    auto f0 = genericity_flags(base);
    auto f1 = genericity_flags(moved);
    CHECK(f0.g1 == f1.g1);
    CHECK(f0.g3 == f1.g3);
    for (int p = 0; p < 4; ++p)
      for (int q = p + 1; q < 4; ++q) CHECK(f0.g2[p][q] == f1.g2[p][q]);
    ++done;
  }

  // scaling degrees: lambda = (2,1,1,1)
  std::array<Rat, 4> lam2{Rat(2), Rat(1), Rat(1), Rat(1)};
  auto s = act(x, id, id, lam2);
  CHECK(d_pair(s, 0, 0) == 4 * d_pair(x, 0, 0));
  CHECK(d_pair(s, 0, 1) == 2 * d_pair(x, 0, 1));
  Rat k0 = d_pair(x, 0, 1) * d_pair(x, 0, 1) - d_pair(x, 0, 0) * d_pair(x, 1, 1);
  Rat k1 = d_pair(s, 0, 1) * d_pair(s, 0, 1) - d_pair(s, 0, 0) * d_pair(s, 1, 1);
  CHECK(k1 == 4 * k0);
}

TEST_CASE("minor identities") {
  auto rep = verify_minor_identities(100);
  for (const auto& f : rep.failures) MESSAGE(f);
  CHECK(rep.ok);

  // coincident curves kill all six listed minors
  auto x = reference_config();
  x[1] = x[0];
  CHECK(d_pair(x, 0, 1) * d_pair(x, 0, 1) - d_pair(x, 0, 0) * d_pair(x, 1, 1) == 0);

  // a degenerate pair with distinct curves still has a kernel vector:
  // t = s and t = s + 2 meet only at infinity
  FourCurveConfig<Rat> deg{rmat(0, -1, 1, 0), rmat(0, -1, 1, -2), rmat(2, -5, 5, -2),
                           rmat(4, -3, 27, -64)};
  Rat k = d_pair(deg, 0, 1) * d_pair(deg, 0, 1) - d_pair(deg, 0, 0) * d_pair(deg, 1, 1);
  CHECK(k == 0);
  auto ker = minor_matrix_kernel(deg);
  REQUIRE(!ker.empty());
  // reference pair (0,1) is nondegenerate: full rank
  CHECK(minor_matrix_kernel(reference_config()).empty());
}

TEST_CASE("collision quadratics match the singular fiber data") {
  auto x = reference_config();
  // discriminant of the collision quadratic equals the g2 invariant
  std::mt19937 rng(4);
  for (int t = 0; t < 40; ++t) {
    auto y = random_config(rng);
    for (int p = 0; p < 4; ++p)
      for (int q = p + 1; q < 4; ++q) {
        auto co = collision_quadratic(y, p, q);
        Rat disc = co[1] * co[1] - 4 * co[0] * co[2];
        Rat g2 = d_pair(y, p, q) * d_pair(y, p, q) - d_pair(y, p, p) * d_pair(y, q, q);
        CHECK(disc == g2);
      }
  }
  // reference values: (1,2) gives s^2 - 16
  auto c = collision_quadratic(x, 0, 1);
  CHECK(c[0] == 1);
  CHECK(c[1] == 0);
  CHECK(c[2] == -16);
}

TEST_CASE("config json round trip") {
  auto x = reference_config();
  auto text = config_to_json_text(x);
  auto y = config_from_json_text(text);
  for (int p = 0; p < 4; ++p) {
    CHECK(x[p].a11 == y[p].a11);
    CHECK(x[p].a12 == y[p].a12);
    CHECK(x[p].a21 == y[p].a21);
    CHECK(x[p].a22 == y[p].a22);
  }
  CHECK_THROWS(config_from_json_text("{\"curves\": []}"));
}
