#include "k34h/genericity.hpp"

#include <json.hpp>

#include <random>

namespace k34h::gen {

FourCurveConfig<Rat> reference_config() {
  auto m = [](long a, long b, long c, long d) {
    return Mat2<Rat>{Rat(a), Rat(b), Rat(c), Rat(d)};
  };
  // t = s, t = 16/s, t = (5s+2)/(2s+5), t = (3s+64)/(4s+27)
  return {m(0, -1, 1, 0), m(1, 0, 0, -16), m(2, -5, 5, -2), m(4, -3, 27, -64)};
}

FourCurveConfig<Cplx> to_complex(const FourCurveConfig<Rat>& x) {
  FourCurveConfig<Cplx> y;
  for (int p = 0; p < 4; ++p)
    y[p] = {Cplx(x[p].a11.get_d()), Cplx(x[p].a12.get_d()), Cplx(x[p].a21.get_d()),
            Cplx(x[p].a22.get_d())};
  return y;
}

bool GenericityFlags::all() const {
  for (bool b : g1)
    if (!b) return false;
  for (int p = 0; p < 4; ++p)
    for (int q = p + 1; q < 4; ++q)
      if (!g2[p][q]) return false;
  for (bool b : g3)
    if (!b) return false;
  return true;
}

GenericityFlags genericity_flags(const FourCurveConfig<Rat>& x) {
  GenericityFlags f;
  for (int p = 0; p < 4; ++p) f.g1[p] = d_pair(x, p, p) != 0;
  for (int p = 0; p < 4; ++p)
    for (int q = p + 1; q < 4; ++q) {
      Rat v = d_pair(x, p, q) * d_pair(x, p, q) - d_pair(x, p, p) * d_pair(x, q, q);
      f.g2[p][q] = f.g2[q][p] = v != 0;
    }
  for (int omit = 0; omit < 4; ++omit) {
    std::array<int, 3> t;
    int c = 0;
    for (int i = 0; i < 4; ++i)
      if (i != omit) t[c++] = i;
    f.g3[omit] = d_triple(x, t[0], t[1], t[2]) != 0;
  }
  return f;
}

namespace {
double frob(const Mat2<Cplx>& m) {
  double s = std::norm(m.a11) + std::norm(m.a12) + std::norm(m.a21) + std::norm(m.a22);
  return std::sqrt(std::max(s, 1e-300));
}
}  // namespace

GenericityFlags genericity_flags(const FourCurveConfig<Cplx>& x, double rel_tol) {
  GenericityFlags f;
  std::array<double, 4> n;
  for (int p = 0; p < 4; ++p) n[p] = frob(x[p]);
  for (int p = 0; p < 4; ++p) f.g1[p] = std::abs(d_pair(x, p, p)) > rel_tol * n[p] * n[p];
  for (int p = 0; p < 4; ++p)
    for (int q = p + 1; q < 4; ++q) {
      Cplx v = d_pair(x, p, q) * d_pair(x, p, q) - d_pair(x, p, p) * d_pair(x, q, q);
      double scale = n[p] * n[p] * n[q] * n[q];
      f.g2[p][q] = f.g2[q][p] = std::abs(v) > rel_tol * scale;
    }
  for (int omit = 0; omit < 4; ++omit) {
    std::array<int, 3> t;
    int c = 0;
    for (int i = 0; i < 4; ++i)
      if (i != omit) t[c++] = i;
    double scale = 1;
    for (int i : t) scale *= n[i] * n[i];
    f.g3[omit] = std::abs(d_triple(x, t[0], t[1], t[2])) > rel_tol * scale;
  }
  return f;
}

// ---------------------------------------------------------------------
// The 6x4 matrix of the characteristic-variety argument: rows 1..4 from
// the commutation equations, rows 5,6 the flattened curve matrices.

namespace {

std::array<std::array<Rat, 4>, 6> step4_matrix(const Mat2<Rat>& a, const Mat2<Rat>& b) {
  return {{{a.a12 * b.a21 - a.a21 * b.a12, a.a12 * b.a22 - a.a22 * b.a12,
            a.a22 * b.a21 - a.a21 * b.a22, Rat(0)},
           {a.a11 * b.a12 - a.a12 * b.a11, Rat(0), a.a11 * b.a22 - a.a22 * b.a11,
            a.a12 * b.a22 - a.a22 * b.a12},
           {a.a21 * b.a11 - a.a11 * b.a21, a.a22 * b.a11 - a.a11 * b.a22, Rat(0),
            a.a22 * b.a21 - a.a21 * b.a22},
           {Rat(0), a.a11 * b.a12 - a.a12 * b.a11, a.a21 * b.a11 - a.a11 * b.a21,
            a.a21 * b.a12 - a.a12 * b.a21},
           {a.a11, a.a12, a.a21, a.a22},
           {b.a11, b.a12, b.a21, b.a22}}};
}

Rat det4(const std::array<std::array<Rat, 4>, 6>& m, int r0, int r1, int r2, int r3) {
  std::array<int, 4> rows{r0, r1, r2, r3};
  Rat det = 0;
  for (int j = 0; j < 4; ++j) {
    std::array<int, 3> cols;
    int c = 0;
    for (int k = 0; k < 4; ++k)
      if (k != j) cols[c++] = k;
    Rat m3 = m[rows[1]][cols[0]] * (m[rows[2]][cols[1]] * m[rows[3]][cols[2]] -
                                    m[rows[2]][cols[2]] * m[rows[3]][cols[1]]) -
             m[rows[1]][cols[1]] * (m[rows[2]][cols[0]] * m[rows[3]][cols[2]] -
                                    m[rows[2]][cols[2]] * m[rows[3]][cols[0]]) +
             m[rows[1]][cols[2]] * (m[rows[2]][cols[0]] * m[rows[3]][cols[1]] -
                                    m[rows[2]][cols[1]] * m[rows[3]][cols[0]]);
    Rat term = m[rows[0]][j] * m3;
    det += (j % 2 == 0) ? term : -term;
  }
  return det;
}

Mat2<Rat> random_mat(std::mt19937& rng) {
  std::uniform_int_distribution<long> num(-9, 9);
  std::uniform_int_distribution<long> den(1, 4);
  auto r = [&]() { return rat_of(num(rng), den(rng)); };
  return {r(), r(), r(), r()};
}

}  // namespace

MinorReport verify_minor_identities(int trials, unsigned seed) {
  MinorReport rep;
  rep.trials = trials;
  for (int t = 0; t < trials; ++t) {
    std::mt19937 rng(seed + unsigned(t));  // independent stream per trial
    FourCurveConfig<Rat> x{random_mat(rng), random_mat(rng), random_mat(rng), random_mat(rng)};
    const auto& a = x[0];
    const auto& b = x[1];
    auto m = step4_matrix(a, b);
    Rat K = d_pair(x, 0, 1) * d_pair(x, 0, 1) - d_pair(x, 0, 0) * d_pair(x, 1, 1);

    struct Listed {
      std::array<int, 4> rows;
      Rat factor;
    };
    const Listed listed[6] = {
        {{0, 1, 4, 5}, a.a12 * b.a22 - a.a22 * b.a12},
        {{0, 2, 4, 5}, a.a22 * b.a21 - a.a21 * b.a22},
        {{0, 3, 4, 5}, a.a21 * b.a12 - a.a12 * b.a21},
        {{1, 2, 4, 5}, a.a11 * b.a22 - a.a22 * b.a11},
        {{1, 3, 4, 5}, a.a12 * b.a11 - a.a11 * b.a12},
        {{2, 3, 4, 5}, a.a11 * b.a21 - a.a21 * b.a11},
    };
    for (const auto& L : listed) {
      Rat minor = det4(m, L.rows[0], L.rows[1], L.rows[2], L.rows[3]);
      if (minor != L.factor * K) {
        rep.ok = false;
        rep.failures.push_back("trial " + std::to_string(t) + ": listed minor mismatch");
      }
    }
    for (int r0 = 0; r0 < 6; ++r0)
      for (int r1 = r0 + 1; r1 < 6; ++r1)
        for (int r2 = r1 + 1; r2 < 6; ++r2)
          for (int r3 = r2 + 1; r3 < 6; ++r3) {
            bool is_listed = false;
            for (const auto& L : listed)
              if (L.rows == std::array<int, 4>{r0, r1, r2, r3}) is_listed = true;
            if (is_listed) continue;
            if (det4(m, r0, r1, r2, r3) != 0) {
              rep.ok = false;
              rep.failures.push_back("trial " + std::to_string(t) + ": unlisted minor nonzero");
            }
          }
    if (!rep.ok && rep.failures.size() > 8) return rep;
  }
  return rep;
}

std::vector<Rat> minor_matrix_kernel(const FourCurveConfig<Rat>& x) {
  auto b = step4_matrix(x[0], x[1]);
  std::array<int, 4> pivot_row{-1, -1, -1, -1};
  int rank = 0;
  for (int col = 0; col < 4; ++col) {
    int p = -1;
    for (int i = rank; i < 6; ++i)
      if (b[i][col] != 0) { p = i; break; }
    if (p < 0) continue;
    std::swap(b[rank], b[p]);
    for (int i = 0; i < 6; ++i) {
      if (i == rank || b[i][col] == 0) continue;
      Rat f = b[i][col] / b[rank][col];
      for (int j = 0; j < 4; ++j) b[i][j] -= f * b[rank][j];
    }
    pivot_row[col] = rank;
    ++rank;
  }
  if (rank == 4) return {};
  int freecol = -1;
  for (int col = 0; col < 4; ++col)
    if (pivot_row[col] < 0) { freecol = col; break; }
  std::vector<Rat> v(4);
  v[freecol] = 1;
  for (int col = 0; col < 4; ++col) {
    if (pivot_row[col] < 0) continue;
    v[col] = -b[pivot_row[col]][freecol] / b[pivot_row[col]][col];
  }
  return v;
}

FourCurveConfig<Rat> config_from_json_text(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  if (!j.contains("curves") || !j["curves"].is_array() || j["curves"].size() != 4)
    throw std::invalid_argument("config must contain \"curves\": 4 matrices");
  FourCurveConfig<Rat> x;
  for (int p = 0; p < 4; ++p) {
    const auto& m = j["curves"][p];
    if (!m.is_array() || m.size() != 2 || m[0].size() != 2 || m[1].size() != 2)
      throw std::invalid_argument("each curve must be a 2x2 matrix");
    auto entry = [&](int r, int c) {
      const auto& e = m[r][c];
      if (e.is_string()) return parse_rat(e.get<std::string>());
      if (e.is_number_integer()) return Rat(e.get<long>());
      throw std::invalid_argument("matrix entries must be integers or \"p/q\" strings");
    };
    x[p] = {entry(0, 0), entry(0, 1), entry(1, 0), entry(1, 1)};
  }
  return x;
}

std::string config_to_json_text(const FourCurveConfig<Rat>& x) {
  nlohmann::json j;
  j["curves"] = nlohmann::json::array();
  for (int p = 0; p < 4; ++p) {
    auto row1 = nlohmann::json::array({rat_str(x[p].a11), rat_str(x[p].a12)});
    auto row2 = nlohmann::json::array({rat_str(x[p].a21), rat_str(x[p].a22)});
    j["curves"].push_back(nlohmann::json::array({row1, row2}));
  }
  return j.dump(2);
}

}  // namespace k34h::gen
