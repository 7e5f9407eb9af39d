#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "k34h/fibration.hpp"

using namespace k34h;
using namespace k34h::fib;

TEST_CASE("exact arithmetic in Q(sqrt 19)") {
  RealAlg19 a(Rat(4)), b(Rat(0), Rat(1)), c(Rat(-4)), d(Rat(0), Rat(-1));
  CHECK(a < b);       // 4 < sqrt(19)
  CHECK(d < c);       // -sqrt(19) < -4
  CHECK(b.sign() == 1);
  CHECK(d.sign() == -1);
  CHECK(RealAlg19(Rat(0)).sign() == 0);
  RealAlg19 tight(rat_of(-87, 20), Rat(1));  // sqrt(19) - 4.35
  CHECK(tight.sign() == 1);
  RealAlg19 tight2(rat_of(-437, 100), Rat(1));  // sqrt(19) - 4.37
  CHECK(tight2.sign() == -1);
}

TEST_CASE("twelve singular values, sorted and labeled") {
  const auto& f = singular_fibers();
  REQUIRE(f.size() == 12);
  std::vector<RealAlg19> expect = {
      RealAlg19(Rat(-12)), RealAlg19(Rat(-8)), RealAlg19(Rat(0), Rat(-1)), RealAlg19(Rat(-4)),
      RealAlg19(Rat(-2)),  RealAlg19(Rat(-1)), RealAlg19(Rat(1)),          RealAlg19(Rat(2)),
      RealAlg19(Rat(4)),   RealAlg19(Rat(0), Rat(1)), RealAlg19(Rat(8)),   RealAlg19(Rat(12))};
  for (int i = 0; i < 12; ++i) CHECK(f[i].s == expect[i]);

  // pair labels from the exact solve
  CHECK(f[8].pair == std::make_pair(1, 2));   // s = 4
  CHECK(f[3].pair == std::make_pair(1, 2));   // s = -4
  CHECK(f[6].pair == std::make_pair(1, 3));   // s = 1
  CHECK(f[7].pair == std::make_pair(1, 4));   // s = 2
  CHECK(f[1].pair == std::make_pair(1, 4));   // s = -8
  CHECK(f[10].pair == std::make_pair(2, 3));  // s = 8
  CHECK(f[9].pair == std::make_pair(3, 4));   // s = sqrt(19)
  // the printed table calls +-12 a (3,4) collision; the solve says (2,4)
  CHECK(f[11].pair == std::make_pair(2, 4));
  CHECK(f[0].pair == std::make_pair(2, 4));
}

TEST_CASE("circuit matrix table") {
  CHECK(monodromy_matrix(9) == Mat2l{{{1, 2}, {0, 1}}});    // s = 4
  CHECK(monodromy_matrix(10) == Mat2l{{{1, 2}, {0, 1}}});   // s = sqrt(19)
  CHECK(monodromy_matrix(11) == Mat2l{{{-1, 2}, {-2, 3}}}); // s = 8
  CHECK(monodromy_matrix(8) == Mat2l{{{3, 2}, {-2, -1}}});  // s = 2
  CHECK(monodromy_matrix(7) == Mat2l{{{1, 0}, {-2, 1}}});   // s = 1
  CHECK_THROWS(monodromy_matrix(0));
  CHECK_THROWS(monodromy_matrix(13));

  for (int j = 1; j <= 12; ++j) {
    CHECK(monodromy_matrix(j).det() == 1);
    CHECK(monodromy_matrix(j).trace() == 2);
  }
}

TEST_CASE("Picard-Lefschetz shape checks") {
  for (int j = 1; j <= 12; ++j) {
    auto rep = verify_picard_lefschetz(j);
    for (const auto& f : rep.failures) MESSAGE("fiber ", j, ": ", f);
    CHECK(rep.ok);
  }
  // identity is not an I2 circuit matrix
  CHECK_FALSE(picard_lefschetz_shape(Mat2l::id(), {1, 0}).ok);
  // the (1,-1) twist fixes its cycle
  Mat2l d{{{3, 2}, {-2, -1}}};
  CHECK(d.apply({1, -1}) == FiberClass{1, -1});
  // (T - I) maps everything into Z delta for delta = alpha1
  Mat2l a{{{1, 2}, {0, 1}}};
  FiberClass e2{0, 1};
  FiberClass img = a.apply(e2) - e2;
  CHECK(img == FiberClass{2, 0});
}

TEST_CASE("total monodromy is trivial in some composition order") {
  auto orders = trivial_total_monodromy_orders();
  REQUIRE(!orders.empty());
  CHECK(orders.front() == "ascending");
}

TEST_CASE("transport along cut-avoiding paths") {
  // entirely in the upper half plane: unchanged
  std::vector<Pt> up{{0, 4}, {-6, 2}, {6, 1}, {0, 4}};
  CHECK(transport({3, -2}, up) == FiberClass{3, -2});

  // positive loop around s_9 = 4
  std::vector<Pt> loop{{0, 4}, {0, 0.1}, {3.9, 0.1}, {3.9, -0.05},
                       {4.1, -0.05}, {4.1, 0.1}, {0, 0.1}, {0, 4}};
  CHECK(transport({0, 1}, loop) == FiberClass{2, 1});  // alpha2 + 2 alpha1
  CHECK(transport({1, 0}, loop) == FiberClass{1, 0});

  // loop around no singular point
  std::vector<Pt> sml{{0.5, 0.1}, {0.5, -0.5}, {0.6, -0.5}, {0.6, 0.1}, {0.5, 0.1}};
  CHECK(transport({5, 7}, sml) == FiberClass{5, 7});

  // passing through a singular point is an error
  std::vector<Pt> bad{{3, 1}, {5, -1}};
  CHECK_THROWS(transport({1, 0}, bad));
}

TEST_CASE("chain construction") {
  auto c1 = build_c(1);
  REQUIRE(c1.tracks.size() == 2);
  CHECK(c1.tracks[0].terminal == 6);
  CHECK(c1.tracks[1].terminal == 7);
  CHECK(c1.tracks[0].start_class == FiberClass{0, 1});
  CHECK(c1.tracks[1].start_class == FiberClass{0, 1});
  CHECK(c1.tracks[0].multiplicity == -c1.tracks[1].multiplicity);

  auto g5 = build_gamma(5);
  REQUIRE(g5.tracks.size() == 2);
  CHECK(g5.tracks[0].start_class == FiberClass{1, 1});
  CHECK(g5.tracks[1].start_class == FiberClass{0, -1});
  CHECK_FALSE(g5.tracks[0].terminal.has_value());

  auto g3 = build_gamma(3);
  REQUIRE(g3.tracks.size() == 1);
  CHECK(g3.tracks[0].start_class == FiberClass{1, 0});
}

TEST_CASE("closure defects") {
  for (int i = 1; i <= 8; ++i) {
    CHECK(closure_defect(build_gamma(i)).is_zero());
    CHECK(closure_defect(build_c(i)).is_zero());
  }
  CHECK(closure_defect(TwoChain{}).is_zero());

  // a lone thimble with the wrong class is flagged
  TwoChain bad;
  auto c2 = build_c(2);
  bad.tracks.push_back(c2.tracks[0]);
  bad.tracks[0].start_class = {0, 1};  // alpha2, but delta_9 = alpha1
  CHECK_THROWS(closure_defect(bad));
}

TEST_CASE("intersection numbers") {
  CHECK(intersection(build_gamma(1), build_gamma(2)) == 2);
  CHECK(intersection(build_gamma(5, 0), build_gamma(5, 1)) == -2);
  CHECK(intersection(build_gamma(8), build_c(8)) == 1);
  CHECK(intersection(build_gamma(5), build_c(2)) == -1);

  // homotopy invariance: values do not depend on the offset family
  CHECK(intersection(build_gamma(6, 1), build_c(4, 0)) ==
        intersection(build_gamma(6, 0), build_c(4, 1)));
  CHECK(intersection(build_gamma(1, 1), build_gamma(2, 0)) == 2);
  // symmetry for even-dimensional cycles
  CHECK(intersection(build_c(4), build_gamma(6)) == intersection(build_gamma(6), build_c(4)));
}

TEST_CASE("full report") {
  auto rep = full_report();
  for (const auto& f : rep.failures) MESSAGE(f);
  CHECK(rep.ok);
  CHECK(rep.gram_gamma == expected_gram_gamma());
  BigInt det = det_exact(rep.pairing_gamma_c);
  CHECK((det == 1 || det == -1));
  CHECK(rep.pairing_entries_matching == 63);
  CHECK_FALSE(rep.labels_match_printed);
  CHECK(rep.conventions.monodromy_order == "ascending");
  // the printed row-6 pairing disagrees exactly at column 4
  CHECK(rep.pairing_gamma_c.at(5, 3) == 1);
  for (const auto& d : rep.gamma_defects) CHECK(d.is_zero());
  for (const auto& d : rep.c_defects) CHECK(d.is_zero());
}
