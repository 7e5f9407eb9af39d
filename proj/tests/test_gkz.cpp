#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>

#include "k34h/gkz.hpp"
#include "k34h/volume.hpp"

using namespace k34h;
using namespace k34h::gkz;

namespace {

Mono unit(int p, int j, int k) {
  Mono m = mono_one();
  m[var_index(p, j, k)] = 1;
  return m;
}

Mono unit_var(int c, int e = 1) {
  Mono m = mono_one();
  m[c] = uint8_t(e);
  return m;
}

}  // namespace

TEST_CASE("exponent matrix and parameters") {
  const auto& d = gkz_data();
  REQUIRE(d.a_matrix.rows == 6);
  REQUIRE(d.a_matrix.cols == 16);
  CHECK(rank_of(d.a_matrix) == 6);

  // column for (p=1, jk=11) is (1,0,0,0,1,1)
  int c = var_index(1, 1, 1);
  std::vector<long> col1{1, 0, 0, 0, 1, 1};
  for (int r = 0; r < 6; ++r) CHECK(d.a_matrix.at(r, c) == col1[r]);
  // column for (p=4, jk=22) is (0,0,0,1,0,0)
  c = var_index(4, 2, 2);
  std::vector<long> col2{0, 0, 0, 1, 0, 0};
  for (int r = 0; r < 6; ++r) CHECK(d.a_matrix.at(r, c) == col2[r]);

  CHECK(d.beta[0] == rat_of(-1, 2));
  CHECK(d.beta[5] == Rat(-1));

  // each column has exactly one 1 in the first four rows
  for (int col = 0; col < 16; ++col) {
    int ones = 0;
    for (int r = 0; r < 4; ++r) ones += int(d.a_matrix.at(r, col).get_si());
    CHECK(ones == 1);
  }
}

TEST_CASE("monomial order") {
  MonomialOrder ord = MonomialOrder::revlex();
  Mono a = unit_var(0, 2), b = unit_var(1, 2);
  CHECK(ord.cmp(a, b) > 0);  // earlier variable wins in revlex
  CHECK(ord.cmp(a, a) == 0);
  Mono c = unit_var(0, 1);
  CHECK(ord.cmp(a, c) > 0);  // higher degree wins

  MonomialOrder cheap0 = MonomialOrder::revlex_cheapest(0);
  // with x0 cheapest, x0^2 loses to x1^2
  CHECK(cheap0.cmp(a, b) < 0);
}

TEST_CASE("groebner on simple inputs") {
  MonomialOrder ord = MonomialOrder::revlex();
  // a single binomial is its own reduced basis
  PolyQ g = binomial(unit_var(0, 2), unit_var(1, 2), ord);
  auto basis = groebner({g}, ord);
  REQUIRE(basis.size() == 1);
  CHECK(basis[0].terms.size() == 2);
  CHECK(basis[0].lead().mono == unit_var(0, 2));
  CHECK(is_groebner(basis, ord));

  // the twisted cubic from its three minors
  PolyQ f1 = binomial(mono_mul(unit_var(0), unit_var(2)), unit_var(1, 2), ord);
  PolyQ f2 = binomial(mono_mul(unit_var(0), unit_var(3)), mono_mul(unit_var(1), unit_var(2)), ord);
  PolyQ f3 = binomial(mono_mul(unit_var(1), unit_var(3)), unit_var(2, 2), ord);
  auto tc = groebner({f1, f2, f3}, ord);
  CHECK(is_groebner(tc, ord));
  CHECK(tc.size() == 3);
  PolyQ probe = binomial(unit_var(2, 2), mono_mul(unit_var(1), unit_var(3)), ord);
  CHECK(normal_form(probe, tc, ord).is_zero());
  // x0^2 x3 - x1^3 lies in the ideal as well
  PolyQ probe2 = binomial(mono_mul(unit_var(0, 2), unit_var(3)), unit_var(1, 3), ord);
  CHECK(normal_form(probe2, tc, ord).is_zero());
}

TEST_CASE("toric generators satisfy the lattice condition") {
  auto gens = toric_generators();
  CHECK(gens.size() >= 10);
  const auto& a = gkz_data().a_matrix;
  for (const auto& g : gens) {
    REQUIRE(g.terms.size() == 2);
    CHECK(g.terms[0].coeff == 1);
    CHECK(g.terms[1].coeff == -1);
    for (int r = 0; r < 6; ++r) {
      long su = 0, sv = 0;
      for (int c = 0; c < 16; ++c) {
        su += a.at(r, c).get_si() * g.terms[0].mono[c];
        sv += a.at(r, c).get_si() * g.terms[1].mono[c];
      }
      CHECK(su == sv);
    }
  }
}

TEST_CASE("membership in the toric ideal") {
  MonomialOrder ord = MonomialOrder::revlex();
  auto gb = toric_groebner(ord);
  CHECK(is_groebner(gb, ord));

  // d^1_11 d^2_22 - d^1_21 d^2_12
  PolyQ m1 = binomial(mono_mul(unit(1, 1, 1), unit(2, 2, 2)),
                      mono_mul(unit(1, 2, 1), unit(2, 1, 2)), ord);
  CHECK(normal_form(m1, gb, ord).is_zero());

  // d^1_12 d^2_21 - d^1_21 d^2_12
  PolyQ m2 = binomial(mono_mul(unit(1, 1, 2), unit(2, 2, 1)),
                      mono_mul(unit(1, 2, 1), unit(2, 1, 2)), ord);
  CHECK(normal_form(m2, gb, ord).is_zero());

  // d^1_11 - d^2_11 is not a member
  PolyQ m3 = binomial(unit(1, 1, 1), unit(2, 1, 1), ord);
  CHECK_FALSE(normal_form(m3, gb, ord).is_zero());

  // every second-order relation symbol reduces to zero
  CHECK(e2_membership(gb, ord));
}

TEST_CASE("squarefree initial ideal and multiplicity") {
  auto rep = multiplicity();
  CHECK(rep.initial_squarefree);
  CHECK(rep.method == "stanley-reisner");
  CHECK(rep.multiplicity == 20);
  CHECK(rep.normalized_volume == 20);

  // the Hilbert-series fallback agrees on the same leads
  auto gb = toric_groebner(MonomialOrder::revlex());
  std::vector<Mono> leads;
  for (const auto& g : gb) leads.push_back(g.lead().mono);
  CHECK(multiplicity_hilbert(leads, 6) == 20);
}

TEST_CASE("hilbert multiplicity on small ideals") {
  // a double hyperplane has degree 2
  CHECK(multiplicity_hilbert({unit_var(0, 2)}, 15) == 2);
  // a pair of hyperplanes has degree 2
  CHECK(multiplicity_hilbert({mono_mul(unit_var(0), unit_var(1))}, 15) == 2);
  // a linear space has degree 1
  CHECK(multiplicity_hilbert({unit_var(0)}, 15) == 1);
}

TEST_CASE("normalized volume of simple configurations") {
  // the unit 5-simplex spanned by 6 unit columns in R^6
  IntMatrix simplex(6, 6);
  for (int i = 0; i < 6; ++i) simplex.at(i, i) = 1;
  CHECK(normalized_volume(simplex) == 1);

  // a unit square in the z = 1 plane has normalized area 2
  IntMatrix square(3, 4);
  long pts[4][3] = {{0, 0, 1}, {1, 0, 1}, {0, 1, 1}, {1, 1, 1}};
  for (int c = 0; c < 4; ++c)
    for (int r = 0; r < 3; ++r) square.at(r, c) = pts[c][r];
  CHECK(normalized_volume(square) == 2);

  // insertion order does not matter
  IntMatrix square2(3, 4);
  int perm[4] = {3, 1, 0, 2};
  for (int c = 0; c < 4; ++c)
    for (int r = 0; r < 3; ++r) square2.at(r, c) = pts[perm[c]][r];
  CHECK(normalized_volume(square2) == 2);
}

TEST_CASE("cache round trip") {
  namespace fs = std::filesystem;
  std::string dir = (fs::temp_directory_path() / "k34h_gb_cache_test").string();
  fs::remove_all(dir);
  MonomialOrder ord = MonomialOrder::revlex();
  auto fresh = toric_groebner(ord, dir);
  // a cache file now exists and reloads to the same basis
  bool found = false;
  for (const auto& e : fs::directory_iterator(dir)) found |= e.path().extension() == ".txt";
  CHECK(found);
  auto reloaded = toric_groebner(ord, dir);
  REQUIRE(reloaded.size() == fresh.size());
  for (size_t i = 0; i < fresh.size(); ++i) {
    CHECK(reloaded[i].terms.size() == fresh[i].terms.size());
    CHECK(reloaded[i].lead().mono == fresh[i].lead().mono);
  }
  fs::remove_all(dir);
}

TEST_CASE("euler and first-order operators") {
  auto euler = euler_operators();
  REQUIRE(euler.size() == 6);
  // row 1 has four diagonal terms and constant +1/2
  int diag_terms = 0;
  Rat constant = 0;
  for (const auto& t : euler[0].terms) {
    if (degree(t.xexp) == 0 && degree(t.dexp) == 0)
      constant = t.coeff;
    else
      ++diag_terms;
  }
  CHECK(diag_terms == 4);
  CHECK(constant == rat_of(1, 2));

  // the scaling operator for p=1 is exactly euler row 1
  auto scal = scaling_operators();
  REQUIRE(scal.size() == 4);
  CHECK(scal[0].terms.size() == euler[0].terms.size());
  for (size_t i = 0; i < scal[0].terms.size(); ++i) {
    CHECK(scal[0].terms[i].coeff == euler[0].terms[i].coeff);
    CHECK(scal[0].terms[i].xexp == euler[0].terms[i].xexp);
    CHECK(scal[0].terms[i].dexp == euler[0].terms[i].dexp);
  }

  // E(1,2) contains x^1_11 d^1_21 and x^1_12 d^1_22
  auto e1 = e1_operators();
  REQUIRE(e1.size() == 4);
  const DiffOp& e12 = e1[0];
  CHECK(e12.terms.size() == 8);
  bool found1 = false, found2 = false;
  for (const auto& t : e12.terms) {
    if (t.xexp == unit(1, 1, 1) && t.dexp == unit(1, 2, 1)) found1 = true;
    if (t.xexp == unit(1, 1, 2) && t.dexp == unit(1, 2, 2)) found2 = true;
  }
  CHECK(found1);
  CHECK(found2);

  CHECK(euler_span_matches());
}

TEST_CASE("initial forms for the rank bound weight") {
  auto w = theorem5_weight();
  CHECK(w[var_index(1, 1, 1)] == 1);
  CHECK(w[var_index(2, 1, 2)] == 8);
  CHECK(w[var_index(3, 2, 1)] == 0);
  CHECK(w[var_index(4, 2, 2)] == 64);

  // single-term operator is its own initial form
  DiffOp single;
  single.terms.push_back({Rat(1), unit(1, 1, 1), unit(2, 2, 2)});
  auto is1 = initial_form(single, w);
  CHECK(is1.terms.size() == 1);

  // euler rows are weight-homogeneous of weight zero
  for (const auto& op : euler_operators())
    CHECK(initial_form(op, w).terms.size() == op.terms.size());

  // E(1,2) has the unique top term x^4_12 d^4_22
  auto e1 = e1_operators();
  auto top = initial_form(e1[0], w);
  REQUIRE(top.terms.size() == 1);
  CHECK(top.terms[0].xexp == unit(4, 1, 2));
  CHECK(top.terms[0].dexp == unit(4, 2, 2));
}
