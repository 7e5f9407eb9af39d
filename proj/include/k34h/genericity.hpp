#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "k34h/rational.hpp"

namespace k34h::gen {

using Cplx = std::complex<double>;

template <typename S>
struct Mat2 {
  S a11{}, a12{}, a21{}, a22{};

  S det() const { return a11 * a22 - a12 * a21; }
  friend Mat2 operator*(const Mat2& x, const Mat2& y) {
    return {x.a11 * y.a11 + x.a12 * y.a21, x.a11 * y.a12 + x.a12 * y.a22,
            x.a21 * y.a11 + x.a22 * y.a21, x.a21 * y.a12 + x.a22 * y.a22};
  }
  Mat2 transpose() const { return {a11, a21, a12, a22}; }
  Mat2 scaled(const S& c) const { return {c * a11, c * a12, c * a21, c * a22}; }
};

// An ordered 4-tuple of 2x2 matrices cutting out the branch curves
// t = -(a12 s + a22)/(a11 s + a21).
template <typename S>
using FourCurveConfig = std::array<Mat2<S>, 4>;

// The reference configuration: curves t = s, t = 16/s, t = (5s+2)/(2s+5),
// t = (3s+64)/(4s+27), with denominators cleared.
FourCurveConfig<Rat> reference_config();
FourCurveConfig<Cplx> to_complex(const FourCurveConfig<Rat>& x);

// D(pq) in the expanded bilinear form, defined for singular x^p as well.
template <typename S>
S d_pair(const FourCurveConfig<S>& x, int p, int q) {
  const auto& a = x.at(p);
  const auto& b = x.at(q);
  return a.a11 * b.a22 + a.a22 * b.a11 - a.a12 * b.a21 - a.a21 * b.a12;
}

// D(pqr) = (234)(123) - (134)(124) from the 3x4 matrix of flattened rows.
template <typename S>
S d_triple(const FourCurveConfig<S>& x, int p, int q, int r) {
  if (p == q || q == r || p == r) throw std::invalid_argument("d_triple needs distinct indices");
  std::array<std::array<S, 4>, 3> m;
  int row = 0;
  for (int t : {p, q, r}) {
    m[row] = {x.at(t).a11, x.at(t).a12, x.at(t).a21, x.at(t).a22};
    ++row;
  }
  auto minor = [&](int c0, int c1, int c2) -> S {
    return m[0][c0] * (m[1][c1] * m[2][c2] - m[1][c2] * m[2][c1]) -
           m[0][c1] * (m[1][c0] * m[2][c2] - m[1][c2] * m[2][c0]) +
           m[0][c2] * (m[1][c0] * m[2][c1] - m[1][c1] * m[2][c0]);
  };
  return minor(1, 2, 3) * minor(0, 1, 2) - minor(0, 2, 3) * minor(0, 1, 3);
}

struct GenericityFlags {
  std::array<bool, 4> g1{};
  std::array<std::array<bool, 4>, 4> g2{};  // symmetric, diagonal unused
  std::array<bool, 4> g3{};                 // indexed by the omitted curve
  bool all() const;
};

GenericityFlags genericity_flags(const FourCurveConfig<Rat>& x);
GenericityFlags genericity_flags(const FourCurveConfig<Cplx>& x, double rel_tol = 1e-9);

// x^p -> lambda_p * g * x^p * h^T. Throws on singular g or h.
template <typename S>
FourCurveConfig<S> act(const FourCurveConfig<S>& x, const Mat2<S>& g, const Mat2<S>& h,
                       const std::array<S, 4>& lambda) {
  if (g.det() == S{} || h.det() == S{}) throw std::invalid_argument("group element is singular");
  FourCurveConfig<S> y;
  Mat2<S> ht = h.transpose();
  for (int p = 0; p < 4; ++p) y[p] = (g * x[p] * ht).scaled(lambda[p]);
  return y;
}

// Coefficients (quadratic, linear, constant) in s of the branch-point
// collision equation t_p(s) = t_q(s); its roots are the singular base
// points of the elliptic fibration and its discriminant equals
// D(pq)^2 - D(pp) D(qq).
template <typename S>
std::array<S, 3> collision_quadratic(const FourCurveConfig<S>& x, int p, int q) {
  const auto& a = x.at(p);
  const auto& b = x.at(q);
  return {a.a11 * b.a12 - a.a12 * b.a11,
          a.a11 * b.a22 + a.a21 * b.a12 - a.a12 * b.a21 - a.a22 * b.a11,
          a.a21 * b.a22 - a.a22 * b.a21};
}

struct MinorReport {
  bool ok = true;
  int trials = 0;
  std::vector<std::string> failures;
};

// Checks, on seeded random rational configurations, that the six listed
// 4x4 minors of the 6x4 matrix factor as (2x2 cross term) * (D(12)^2 -
// D(11) D(22)) and that the remaining nine minors vanish identically.
MinorReport verify_minor_identities(int trials, unsigned seed = 20201u);

// Exact kernel vector of the 6x4 matrix when rank < 4 (used for the
// degenerate-configuration check); empty if full rank.
std::vector<Rat> minor_matrix_kernel(const FourCurveConfig<Rat>& x);

// JSON round trip for configurations: {"curves": [[["0","-1"],["1","0"]], ...]}
FourCurveConfig<Rat> config_from_json_text(const std::string& text);
std::string config_to_json_text(const FourCurveConfig<Rat>& x);

}  // namespace k34h::gen
