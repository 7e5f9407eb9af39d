#include "k34h/lattice.hpp"

#include <fstream>
#include <functional>
#include <sstream>

namespace k34h::lat {

BigInt QuadLattice::pairing(const std::vector<BigInt>& x, const std::vector<BigInt>& y) const {
  std::vector<BigInt> gy = gram.mul_vec(y);
  BigInt s = 0;
  for (size_t i = 0; i < x.size(); ++i) s += x[i] * gy[i];
  return s;
}

bool QuadLattice::is_even() const {
  for (int i = 0; i < gram.rows; ++i)
    if (gram.at(i, i) % 2 != 0) return false;
  return true;
}

QuadLattice lattice_U() { return {IntMatrix{{0, 1}, {1, 0}}, {"u1", "u2"}}; }

QuadLattice lattice_Uk(long k) {
  IntMatrix m(2, 2);
  m.at(0, 1) = k;
  m.at(1, 0) = k;
  return {m, {"u1", "u2"}};
}

QuadLattice lattice_D4() {
  return {IntMatrix{{-2, 1, 1, 1}, {1, -2, 0, 0}, {1, 0, -2, 0}, {1, 0, 0, -2}},
          {"c", "a1", "a2", "a3"}};
}

QuadLattice lattice_E8() {
  IntMatrix m(8, 8);
  for (int i = 0; i < 8; ++i) m.at(i, i) = -2;
  const int edges[][2] = {{1, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {7, 8}, {2, 4}};
  for (auto& e : edges) {
    m.at(e[0] - 1, e[1] - 1) = 1;
    m.at(e[1] - 1, e[0] - 1) = 1;
  }
  return {m, {}};
}

QuadLattice lattice_scal(long n) {
  IntMatrix m(1, 1);
  m.at(0, 0) = n;
  return {m, {"v"}};
}

QuadLattice lattice_P() {
  QuadLattice d4 = lattice_D4();
  IntMatrix g = IntMatrix::direct_sum(
      {d4.gram, d4.gram, d4.gram, lattice_scal(-2).gram, lattice_scal(2).gram});
  return {g, {}};
}

QuadLattice lattice_T() {
  IntMatrix g = IntMatrix::direct_sum({lattice_Uk(2).gram, lattice_Uk(2).gram});
  IntMatrix neg2(4, 4);
  for (int i = 0; i < 4; ++i) neg2.at(i, i) = -2;
  g = IntMatrix::direct_sum({g, neg2});
  std::vector<std::string> labels;
  for (int i = 1; i <= 8; ++i) labels.push_back("eps" + std::to_string(i));
  return {g, labels};
}

QuadLattice lattice_L() {
  QuadLattice e8 = lattice_E8(), u = lattice_U();
  return {IntMatrix::direct_sum({e8.gram, e8.gram, u.gram, u.gram, u.gram}), {}};
}

BigInt discriminant(const QuadLattice& l) {
  if (!l.gram.is_symmetric()) throw std::invalid_argument("gram not symmetric");
  return det_exact(l.gram);
}

std::pair<int, int> signature(const QuadLattice& l) { return inertia(QMatrix(l.gram)); }

DiscriminantGroup discriminant_group(const QuadLattice& l) {
  if (discriminant(l) == 0) throw std::domain_error("degenerate lattice");
  SnfResult s = snf(l.gram);
  DiscriminantGroup g;
  QMatrix gq(l.gram);
  const int n = l.rank();
  for (int i = 0; i < n; ++i) {
    if (s.d[i] <= 1) continue;
    g.invariant_factors.push_back(s.d[i]);
    // lift = (column i of v) / d_i generates a cyclic factor of order d_i
    std::vector<Rat> lift(n);
    for (int r = 0; r < n; ++r) lift[r] = Rat(s.v.at(r, i)) / Rat(s.d[i]);
    std::vector<Rat> gl = gq.mul_vec(lift);
    Rat q = 0;
    for (int r = 0; r < n; ++r) q += lift[r] * gl[r];
    g.q_values.push_back(rat_mod(q, Rat(2)));
    g.generator_lifts.push_back(std::move(lift));
  }
  return g;
}

bool is_isometry(const QuadLattice& l, const IntMatrix& g) {
  if (g.rows != l.rank() || g.cols != l.rank()) return false;
  return g.transpose() * l.gram * g == l.gram;
}

IsometryZ reflection(const QuadLattice& l, const std::vector<BigInt>& alpha) {
  if (l.pairing(alpha, alpha) != -2) throw std::invalid_argument("reflection vector must have norm -2");
  const int n = l.rank();
  std::vector<BigInt> galpha = l.gram.mul_vec(alpha);
  IntMatrix m = IntMatrix::identity(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m.at(i, j) += alpha[i] * galpha[j];
  return {m};
}

bool is_in_G2(const QuadLattice& l, const IsometryZ& g) {
  if (!is_isometry(l, g.g)) throw std::invalid_argument("not an isometry");
  const int n = l.rank();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if ((g.g.at(i, j) - (i == j ? 1 : 0)) % 2 != 0) return false;
  return true;
}

bool acts_trivially_on_disc(const QuadLattice& l, const IsometryZ& g) {
  if (!is_isometry(l, g.g)) throw std::invalid_argument("not an isometry");
  DiscriminantGroup dg = discriminant_group(l);
  QMatrix gq(g.g);
  for (const auto& lift : dg.generator_lifts) {
    std::vector<Rat> moved = gq.mul_vec(lift);
    for (size_t i = 0; i < lift.size(); ++i) {
      Rat diff = moved[i] - lift[i];
      if (diff.get_den() != 1) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------

int DivisorGenerators::index_E(int i, int j, int sign) const {
  static const int pair_pos[5][5] = {{-1, -1, -1, -1, -1},
                                     {-1, -1, 0, 1, 2},
                                     {-1, -1, -1, 3, 4},
                                     {-1, -1, -1, -1, 5},
                                     {-1, -1, -1, -1, -1}};
  if (i > j) std::swap(i, j);
  int p = pair_pos[i][j];
  if (p < 0) throw std::invalid_argument("bad pair");
  return 2 * p + (sign < 0 ? 1 : 0);
}
int DivisorGenerators::index_G(int i) const { return 12 + (i - 1); }
int DivisorGenerators::index_Fs() const { return 16; }
int DivisorGenerators::index_Ft() const { return 17; }

DivisorGenerators divisor_generators() {
  DivisorGenerators d;
  d.gram18 = IntMatrix(18, 18);
  const char* signs[2] = {"+", "-"};
  for (int i = 1; i <= 4; ++i)
    for (int j = i + 1; j <= 4; ++j)
      for (int s = 0; s < 2; ++s)
        d.labels.push_back("E" + std::to_string(i) + std::to_string(j) + signs[s]);
  for (int i = 1; i <= 4; ++i) d.labels.push_back("G" + std::to_string(i));
  d.labels.push_back("Fs");
  d.labels.push_back("Ft");

  auto& m = d.gram18;
  for (int i = 1; i <= 4; ++i)
    for (int j = i + 1; j <= 4; ++j)
      for (int s : {1, -1}) {
        int e = d.index_E(i, j, s);
        m.at(e, e) = -2;
        m.at(d.index_G(i), e) = m.at(e, d.index_G(i)) = 1;
        m.at(d.index_G(j), e) = m.at(e, d.index_G(j)) = 1;
      }
  for (int i = 1; i <= 4; ++i) {
    int g = d.index_G(i);
    m.at(g, g) = -2;
    m.at(g, d.index_Fs()) = m.at(d.index_Fs(), g) = 1;
    m.at(g, d.index_Ft()) = m.at(d.index_Ft(), g) = 1;
  }
  m.at(d.index_Fs(), d.index_Ft()) = m.at(d.index_Ft(), d.index_Fs()) = 2;
  return d;
}

namespace {

std::vector<BigInt> unit18(int idx) {
  std::vector<BigInt> v(18, BigInt(0));
  v[idx] = 1;
  return v;
}

void axpy(std::vector<BigInt>& acc, long c, const std::vector<BigInt>& v) {
  for (size_t i = 0; i < acc.size(); ++i) acc[i] += c * v[i];
}

}  // namespace

BasisCheckReport theorem1_basis_check() {
  BasisCheckReport rep;
  DivisorGenerators d = divisor_generators();

  auto E = [&](int i, int j, int s) { return unit18(d.index_E(i, j, s)); };
  auto G = [&](int i) { return unit18(d.index_G(i)); };
  std::vector<BigInt> Fs = unit18(d.index_Fs());
  std::vector<BigInt> Ft = unit18(d.index_Ft());

  auto minus = [&](std::vector<BigInt> a, const std::vector<BigInt>& b) {
    axpy(a, -1, b);
    return a;
  };

  std::vector<std::vector<BigInt>> basis;
  // L1, L2, L3 of the proof: each a copy of D4.
  basis.push_back(G(1));
  basis.push_back(E(1, 4, +1));
  basis.push_back(E(1, 4, -1));
  basis.push_back(minus(Ft, E(2, 3, +1)));
  basis.push_back(G(2));
  basis.push_back(E(2, 4, +1));
  basis.push_back(E(2, 4, -1));
  basis.push_back(minus(Ft, E(1, 3, +1)));
  basis.push_back(G(3));
  basis.push_back(E(3, 4, +1));
  basis.push_back(E(3, 4, -1));
  basis.push_back(minus(Ft, E(1, 2, +1)));
  // Delta1, Delta2
  std::vector<BigInt> d1(18, BigInt(0));
  axpy(d1, 1, Fs), axpy(d1, 1, Ft);
  axpy(d1, -1, E(1, 2, +1)), axpy(d1, -1, E(1, 3, +1)), axpy(d1, -1, E(2, 3, +1));
  std::vector<BigInt> d2(18, BigInt(0));
  axpy(d2, 1, G(1)), axpy(d2, 1, G(2)), axpy(d2, 1, G(3)), axpy(d2, -1, G(4));
  axpy(d2, 1, Fs), axpy(d2, 3, Ft);
  axpy(d2, -1, E(1, 2, +1)), axpy(d2, -1, E(1, 3, +1)), axpy(d2, -1, E(2, 3, +1));
  basis.push_back(d1);
  basis.push_back(d2);

  QuadLattice span18{d.gram18, d.labels};
  rep.gram14 = IntMatrix(14, 14);
  for (int i = 0; i < 14; ++i)
    for (int j = 0; j < 14; ++j) rep.gram14.at(i, j) = span18.pairing(basis[i], basis[j]);

  IntMatrix expected = lattice_P().gram;
  if (!(rep.gram14 == expected)) {
    rep.ok = false;
    for (int i = 0; i < 14; ++i)
      for (int j = 0; j < 14; ++j)
        if (rep.gram14.at(i, j) != expected.at(i, j))
          rep.failures.push_back("gram14(" + std::to_string(i) + "," + std::to_string(j) +
                                 ") = " + rep.gram14.at(i, j).get_str() + ", expected " +
                                 expected.at(i, j).get_str());
  }

  rep.rank18 = rank_of(d.gram18);
  if (rep.rank18 != 14) {
    rep.ok = false;
    rep.failures.push_back("rank of 18-generator gram = " + std::to_string(rep.rank18));
  }

  // The four dependence relations f_s + f_t = 2 g_i + sum_j (e_ij^+ + e_ij^-)
  // must pair to zero with everything.
  for (int i = 1; i <= 4; ++i) {
    std::vector<BigInt> r(18, BigInt(0));
    axpy(r, 1, Fs), axpy(r, 1, Ft), axpy(r, -2, G(i));
    for (int j = 1; j <= 4; ++j) {
      if (j == i) continue;
      axpy(r, -1, E(std::min(i, j), std::max(i, j), +1));
      axpy(r, -1, E(std::min(i, j), std::max(i, j), -1));
    }
    std::vector<BigInt> img = d.gram18.mul_vec(r);
    for (const auto& x : img)
      if (x != 0) {
        rep.ok = false;
        rep.failures.push_back("relation vector " + std::to_string(i) + " not in the radical");
        break;
      }
  }
  return rep;
}

// ---------------------------------------------------------------------
// Glue search over the two discriminant groups (both (Z/2)^8 here).

namespace {

struct DiscData {
  DiscriminantGroup dg;
  QMatrix gram;
  // q value of an arbitrary mask-combination, in [0,2)
  std::vector<Rat> q_of_mask;  // size 256
  // pairwise bilinear values of the 8 generators, in [0,1)
  Rat b[8][8];
};

DiscData disc_data(const QuadLattice& l) {
  DiscData d;
  d.dg = discriminant_group(l);
  d.gram = QMatrix(l.gram);
  if (d.dg.generator_lifts.size() != 8)
    throw std::domain_error("expected a (Z/2)^8 discriminant group");
  for (int i = 0; i < 8; ++i) {
    std::vector<Rat> gl = d.gram.mul_vec(d.dg.generator_lifts[i]);
    for (int j = 0; j < 8; ++j) {
      Rat s = 0;
      for (size_t r = 0; r < gl.size(); ++r) s += d.dg.generator_lifts[j][r] * gl[r];
      d.b[i][j] = rat_mod(s, Rat(1));
    }
  }
  d.q_of_mask.resize(256);
  for (int m = 0; m < 256; ++m) {
    Rat q = 0;
    for (int i = 0; i < 8; ++i) {
      if (!(m >> i & 1)) continue;
      q += d.dg.q_values[i];
      // cross terms enter q twice; 2*(b mod 1) agrees with 2*b mod 2
      for (int j = i + 1; j < 8; ++j)
        if (m >> j & 1) q += 2 * d.b[i][j];
    }
    d.q_of_mask[m] = rat_mod(q, Rat(2));
  }
  return d;
}

Rat b_of_masks(const DiscData& d, int m1, int m2) {
  Rat s = 0;
  for (int i = 0; i < 8; ++i)
    if (m1 >> i & 1)
      for (int j = 0; j < 8; ++j)
        if (m2 >> j & 1) s += d.b[i][j];
  return rat_mod(s, Rat(1));
}

int f2_rank(std::vector<int> rows) {
  int rank = 0;
  for (int bit = 0; bit < 16; ++bit) {
    int piv = -1;
    for (size_t i = rank; i < rows.size(); ++i)
      if (rows[i] >> bit & 1) { piv = int(i); break; }
    if (piv < 0) continue;
    std::swap(rows[rank], rows[piv]);
    for (size_t i = 0; i < rows.size(); ++i)
      if (int(i) != rank && (rows[i] >> bit & 1)) rows[i] ^= rows[rank];
    ++rank;
  }
  return rank;
}

}  // namespace

GlueData find_glue() {
  DiscData P = disc_data(lattice_P());
  DiscData T = disc_data(lattice_T());

  // Depth-first search for an anti-isometry A_P -> A_T: generator i of A_P
  // maps to image[i], constrained by the q values, the pairwise bilinear
  // values, and F2-independence of the images.
  std::vector<int> image(8, 0);
  std::vector<int> echelon;  // accumulated images for the independence test

  std::function<bool(int)> dfs = [&](int level) -> bool {
    if (level == 8) return true;
    for (int cand = 1; cand < 256; ++cand) {
      Rat need_q = rat_mod(-P.q_of_mask[1 << level], Rat(2));
      if (T.q_of_mask[cand] != need_q) continue;
      bool ok = true;
      for (int j = 0; j < level && ok; ++j) {
        Rat need_b = rat_mod(-Rat(P.b[level][j]), Rat(1));
        if (b_of_masks(T, cand, image[j]) != need_b) ok = false;
      }
      if (!ok) continue;
      std::vector<int> rows = echelon;
      rows.push_back(cand);
      if (f2_rank(rows) != level + 1) continue;
      image[level] = cand;
      echelon.push_back(cand);
      if (dfs(level + 1)) return true;
      echelon.pop_back();
    }
    return false;
  };
  if (!dfs(0)) throw std::runtime_error("glue search exhausted without finding an isotropic graph");

  GlueData h;
  for (int i = 0; i < 8; ++i) {
    std::vector<int> gp(8, 0), gt(8, 0);
    gp[i] = 1;
    for (int b = 0; b < 8; ++b) gt[b] = image[i] >> b & 1;
    h.gens_p.push_back(gp);
    h.gens_t.push_back(gt);
  }
  return h;
}

GlueReport verify_glue(const GlueData& h) {
  GlueReport rep;
  DiscData P = disc_data(lattice_P());
  DiscData T = disc_data(lattice_T());
  auto fail = [&](const std::string& s) {
    rep.ok = false;
    rep.failures.push_back(s);
  };

  if (h.gens_p.size() != h.gens_t.size() || h.gens_p.empty()) {
    fail("generator lists empty or mismatched");
    return rep;
  }
  const int ng = int(h.gens_p.size());
  std::vector<int> mp(ng, 0), mt(ng, 0), mfull(ng, 0);
  for (int i = 0; i < ng; ++i) {
    for (int b = 0; b < 8; ++b) {
      if (h.gens_p[i][b] & 1) mp[i] |= 1 << b;
      if (h.gens_t[i][b] & 1) mt[i] |= 1 << b;
    }
    mfull[i] = mp[i] | (mt[i] << 8);
  }

  int rank = f2_rank(mfull);
  if ((1 << rank) != 256) fail("order of H is " + std::to_string(1 << rank) + ", expected 256");
  if (f2_rank(mp) != 8) fail("projection to A_P is not bijective");
  if (f2_rank(mt) != 8) fail("projection to A_T is not bijective");

  // Isotropy of q_P + q_T on every element of H.
  if (rank <= 8) {
    for (int sel = 0; sel < (1 << ng); ++sel) {
      int xp = 0, xt = 0;
      for (int i = 0; i < ng; ++i)
        if (sel >> i & 1) xp ^= mp[i], xt ^= mt[i];
      Rat qsum = rat_mod(P.q_of_mask[xp] + T.q_of_mask[xt], Rat(2));
      if (qsum != 0) {
        fail("q does not vanish on element " + std::to_string(sel));
        break;
      }
    }
    for (int i = 0; i < ng && rep.ok; ++i)
      for (int j = 0; j < ng; ++j) {
        Rat bsum = rat_mod(b_of_masks(P, mp[i], mp[j]) + b_of_masks(T, mt[i], mt[j]), Rat(1));
        if (bsum != 0) {
          fail("bilinear form does not vanish on generator pair");
          break;
        }
      }
  }

  // Overlattice of P + T generated by the glue lifts: must be even of
  // determinant -1 and signature (3,19).
  QuadLattice P14 = lattice_P(), T8 = lattice_T();
  IntMatrix g22 = IntMatrix::direct_sum({P14.gram, T8.gram});
  // Generators scaled by 2 so everything is integral (all lifts are
  // half-integral here).
  std::vector<std::vector<BigInt>> gens;
  for (int i = 0; i < 22; ++i) {
    std::vector<BigInt> v(22, BigInt(0));
    v[i] = 2;
    gens.push_back(v);
  }
  DiscriminantGroup dgp = discriminant_group(lattice_P());
  DiscriminantGroup dgt = discriminant_group(lattice_T());
  for (int i = 0; i < ng; ++i) {
    std::vector<Rat> lift(22);
    for (int b = 0; b < 8; ++b) {
      if (h.gens_p[i][b])
        for (int r = 0; r < 14; ++r) lift[r] += dgp.generator_lifts[b][r];
      if (h.gens_t[i][b])
        for (int r = 0; r < 8; ++r) lift[14 + r] += dgt.generator_lifts[b][r];
    }
    std::vector<BigInt> v(22);
    for (int r = 0; r < 22; ++r) {
      Rat x = 2 * lift[r];
      if (x.get_den() != 1) {
        fail("glue lift is not half-integral");
        return rep;
      }
      v[r] = x.get_num();
    }
    gens.push_back(v);
  }
  IntMatrix genmat(int(gens.size()), 22);
  for (size_t i = 0; i < gens.size(); ++i)
    for (int j = 0; j < 22; ++j) genmat.at(int(i), j) = gens[i][j];
  // Row-space basis from the SNF: nonzero rows of D V^-1.
  SnfResult s = snf(genmat);
  QMatrix vinv_q = inverse(QMatrix(s.v));
  IntMatrix basis(22, 22);
  int r = 0;
  for (int i = 0; i < int(s.d.size()); ++i) {
    if (s.d[i] == 0) continue;
    for (int j = 0; j < 22; ++j) {
      Rat x = Rat(s.d[i]) * vinv_q.at(i, j);
      basis.at(r, j) = x.get_num();  // v unimodular: entries integral
    }
    ++r;
  }
  if (r != 22) {
    fail("overlattice rank " + std::to_string(r) + ", expected 22");
    return rep;
  }
  // Gram of basis/2 vectors.
  IntMatrix big = basis * g22 * basis.transpose();
  IntMatrix gramM(22, 22);
  for (int i = 0; i < 22; ++i)
    for (int j = 0; j < 22; ++j) {
      if (big.at(i, j) % 4 != 0) {
        fail("overlattice gram is not integral");
        return rep;
      }
      gramM.at(i, j) = big.at(i, j) / 4;
    }
  rep.overlattice_det = det_exact(gramM);
  if (rep.overlattice_det != -1 && rep.overlattice_det != 1)
    fail("overlattice determinant " + rep.overlattice_det.get_str());
  rep.overlattice_even = true;
  for (int i = 0; i < 22; ++i)
    if (gramM.at(i, i) % 2 != 0) rep.overlattice_even = false;
  if (!rep.overlattice_even) fail("overlattice is not even");
  rep.overlattice_signature = inertia(QMatrix(gramM));
  if (rep.overlattice_signature != std::make_pair(3, 19))
    fail("overlattice signature is not (3,19)");
  return rep;
}

std::string glue_to_text(const GlueData& h) {
  std::ostringstream os;
  for (size_t i = 0; i < h.gens_p.size(); ++i) {
    for (int b = 0; b < 8; ++b) os << h.gens_p[i][b] << ' ';
    for (int b = 0; b < 8; ++b) os << h.gens_t[i][b] << (b + 1 < 8 ? " " : "");
    os << '\n';
  }
  return os.str();
}

std::optional<GlueData> glue_from_text(const std::string& text) {
  GlueData h;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::vector<int> vals;
    Rat x;
    std::string tok;
    while (ls >> tok) {
      try {
        vals.push_back(int(rat_to_long(parse_rat(tok))));
      } catch (...) {
        return std::nullopt;
      }
    }
    if (vals.size() != 16) return std::nullopt;
    h.gens_p.emplace_back(vals.begin(), vals.begin() + 8);
    h.gens_t.emplace_back(vals.begin() + 8, vals.end());
  }
  if (h.gens_p.empty()) return std::nullopt;
  return h;
}

std::vector<IsometryZ> isometry_generators_T() {
  QuadLattice T = lattice_T();
  std::vector<IsometryZ> gens;
  auto perm = [&](std::vector<int> p) {
    IntMatrix m(8, 8);
    for (int i = 0; i < 8; ++i) m.at(p[i], i) = 1;
    return m;
  };
  // component swaps inside and between the two U(2) factors
  gens.push_back({perm({1, 0, 2, 3, 4, 5, 6, 7})});
  gens.push_back({perm({0, 1, 3, 2, 4, 5, 6, 7})});
  gens.push_back({perm({2, 3, 0, 1, 4, 5, 6, 7})});
  // permutations of the four <-2> generators
  gens.push_back({perm({0, 1, 2, 3, 5, 4, 6, 7})});
  gens.push_back({perm({0, 1, 2, 3, 4, 6, 5, 7})});
  gens.push_back({perm({0, 1, 2, 3, 4, 5, 7, 6})});
  // a sign change
  IntMatrix sg = IntMatrix::identity(8);
  sg.at(4, 4) = -1;
  gens.push_back({sg});
  // reflections in assorted (-2)-vectors
  auto vec = [](std::initializer_list<long> v) {
    std::vector<BigInt> r;
    for (long x : v) r.emplace_back(x);
    return r;
  };
  gens.push_back(reflection(T, vec({0, 0, 0, 0, 1, 0, 0, 0})));
  gens.push_back(reflection(T, vec({0, 0, 0, 0, 0, 1, 0, 0})));
  gens.push_back(reflection(T, vec({0, 0, 0, 0, 0, 0, 0, 1})));
  gens.push_back(reflection(T, vec({1, 0, 0, 0, 1, 0, 0, 0})));
  gens.push_back(reflection(T, vec({0, 1, 0, 0, 0, 1, 0, 0})));
  gens.push_back(reflection(T, vec({0, 0, 1, 1, 1, 1, 1, 0})));
  gens.push_back(reflection(T, vec({1, 1, 0, 0, 1, 1, 1, 0})));
  for (const auto& g : gens)
    if (!is_isometry(T, g.g)) throw std::logic_error("generator is not an isometry");
  return gens;
}

}  // namespace k34h::lat
