#include "k34h/volume.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

namespace k34h::gkz {

namespace {

using Vec = std::vector<Rat>;

Rat det_rat(std::vector<Vec> m) {
  const int n = int(m.size());
  Rat det = 1;
  for (int k = 0; k < n; ++k) {
    int p = -1;
    for (int i = k; i < n; ++i)
      if (m[i][k] != 0) { p = i; break; }
    if (p < 0) return Rat(0);
    if (p != k) {
      std::swap(m[p], m[k]);
      det = -det;
    }
    det *= m[k][k];
    for (int i = k + 1; i < n; ++i) {
      if (m[i][k] == 0) continue;
      Rat f = m[i][k] / m[k][k];
      for (int j = k; j < n; ++j) m[i][j] -= f * m[k][j];
    }
  }
  return det;
}

}  // namespace

long normalized_volume(const IntMatrix& pts) {
  const int amb = pts.rows;     // ambient dimension
  const int npts = pts.cols;
  if (npts < 2) return 0;

  // Lattice basis of the difference lattice via SNF of the stacked
  // differences: rows of D V^{-1} with nonzero d.
  IntMatrix diffs(npts - 1, amb);
  for (int c = 1; c < npts; ++c)
    for (int r = 0; r < amb; ++r) diffs.at(c - 1, r) = pts.at(r, c) - pts.at(r, 0);
  SnfResult s = snf(diffs);
  int d = 0;
  for (const auto& f : s.d)
    if (f != 0) ++d;
  if (d == 0) return 0;
  QMatrix vinv = inverse(QMatrix(s.v));
  // basis rows (d x amb)
  std::vector<Vec> basis(d, Vec(amb));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < amb; ++j) basis[i][j] = Rat(s.d[i]) * vinv.at(i, j);

  // Express each point in basis coordinates: solve basis^T coords = p - p0.
  // Build the d x d gram of the basis to solve least-squares exactly (the
  // differences lie in the row space, so the solution is exact).
  std::vector<Vec> coords(npts, Vec(d, Rat(0)));
  {
    QMatrix bt(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        Rat acc = 0;
        for (int k = 0; k < amb; ++k) acc += basis[i][k] * basis[j][k];
        bt.at(i, j) = acc;
      }
    QMatrix bti = inverse(bt);
    for (int c = 0; c < npts; ++c) {
      Vec rhs(d, Rat(0));
      for (int i = 0; i < d; ++i)
        for (int k = 0; k < amb; ++k) rhs[i] += basis[i][k] * Rat(pts.at(k, c) - pts.at(k, 0));
      coords[c] = bti.mul_vec(rhs);
      for (const auto& x : coords[c])
        if (x.get_den() != 1) throw std::domain_error("point outside the difference lattice");
    }
  }

  // Placing triangulation over the d-dimensional coordinates.
  using Simplex = std::vector<int>;  // d+1 point indices
  std::vector<Simplex> tri;

  // initial affinely independent set
  std::vector<int> init{0};
  std::vector<Vec> dirs;
  for (int c = 1; c < npts && int(init.size()) < d + 1; ++c) {
    std::vector<Vec> probe = dirs;
    Vec dv(d);
    for (int i = 0; i < d; ++i) dv[i] = coords[c][i] - coords[init[0]][i];
    probe.push_back(dv);
    // rank check by elimination
    std::vector<Vec> m = probe;
    int rank = 0;
    for (int col = 0; col < d && rank < int(m.size()); ++col) {
      int p = -1;
      for (int i = rank; i < int(m.size()); ++i)
        if (m[i][col] != 0) { p = i; break; }
      if (p < 0) continue;
      std::swap(m[rank], m[p]);
      for (int i = rank + 1; i < int(m.size()); ++i) {
        if (m[i][col] == 0) continue;
        Rat f = m[i][col] / m[rank][col];
        for (int j = col; j < d; ++j) m[i][j] -= f * m[rank][j];
      }
      ++rank;
    }
    if (rank == int(probe.size())) {
      init.push_back(c);
      dirs = probe;
    }
  }
  if (int(init.size()) != d + 1) throw std::domain_error("points do not span the expected dimension");
  tri.push_back(init);

  auto simplex_edges = [&](const Simplex& sx) {
    std::vector<Vec> e(d, Vec(d));
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) e[i][j] = coords[sx[i + 1]][j] - coords[sx[0]][j];
    return e;
  };

  std::set<int> used(init.begin(), init.end());
  for (int c = 0; c < npts; ++c) {
    if (used.count(c)) continue;
    used.insert(c);
    // boundary facets: d-subsets appearing in exactly one simplex
    std::map<std::vector<int>, std::pair<int, int>> facets;  // facet -> (count, owner)
    for (int t = 0; t < int(tri.size()); ++t) {
      for (int omit = 0; omit <= d; ++omit) {
        std::vector<int> f;
        for (int i = 0; i <= d; ++i)
          if (i != omit) f.push_back(tri[t][i]);
        std::sort(f.begin(), f.end());
        auto it = facets.find(f);
        if (it == facets.end())
          facets[f] = {1, t * (d + 1) + omit};
        else
          it->second.first++;
      }
    }
    for (const auto& [f, info] : facets) {
      if (info.first != 1) continue;
      int owner = info.second / (d + 1), omit = info.second % (d + 1);
      int opposite = tri[owner][omit];
      // hyperplane through f: value(x) = det(x - f0, f1 - f0, ..)
      auto value = [&](int pt) -> Rat {
        std::vector<Vec> m(d, Vec(d));
        for (int j = 0; j < d; ++j) m[0][j] = coords[pt][j] - coords[f[0]][j];
        for (int i = 1; i < d; ++i)
          for (int j = 0; j < d; ++j) m[i][j] = coords[f[i]][j] - coords[f[0]][j];
        return det_rat(m);
      };
      Rat vo = value(opposite);
      Rat vc = value(c);
      if (vo == 0) throw std::logic_error("degenerate simplex in triangulation");
      // visible: c strictly on the far side from the owner simplex
      if (sgn(vc) != 0 && sgn(vc) != sgn(vo)) {
        Simplex nu(f.begin(), f.end());
        nu.push_back(c);
        tri.push_back(nu);
      }
    }
  }

  Rat total = 0;
  for (const auto& sx : tri) {
    Rat v = det_rat(simplex_edges(sx));
    total += abs(v);
  }
  if (total.get_den() != 1) throw std::logic_error("non-integral normalized volume");
  return long(total.get_num().get_si());
}

}  // namespace k34h::gkz
