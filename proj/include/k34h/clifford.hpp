#pragma once

#include <array>
#include <complex>
#include <string>
#include <vector>

#include "k34h/intmatrix.hpp"

namespace k34h::ks {

using Cplx = std::complex<double>;

// Signs and squared-generator products of the basis e_S, S a subset of
// the eight generators with norms (1, 1, -1, -1, -2, -2, -2, -2).
int basis_mul_sign(int a, int b);        // sign of e_a * e_b (masks)
const Rat& q_product(int common_mask);   // product of q_i over the mask
const std::vector<int>& even_masks();    // the 128 even-popcount masks
int even_index(int mask);                // inverse of even_masks

// Element of the Clifford algebra as a dense coefficient vector over
// subset masks. Public operations keep the support in the even part.
template <typename S>
struct Cliff {
  std::array<S, 256> c{};

  static Cliff unit() {
    Cliff z;
    z.c[0] = S(1);
    return z;
  }
  static Cliff vector(const std::array<S, 8>& v) {
    Cliff z;
    for (int i = 0; i < 8; ++i) z.c[1 << i] = v[i];
    return z;
  }
  bool even() const {
    for (int m = 0; m < 256; ++m)
      if (__builtin_popcount(unsigned(m)) % 2 && c[m] != S(0)) return false;
    return true;
  }
  friend Cliff operator+(const Cliff& x, const Cliff& y) {
    Cliff r;
    for (int m = 0; m < 256; ++m) r.c[m] = x.c[m] + y.c[m];
    return r;
  }
  friend Cliff operator-(const Cliff& x, const Cliff& y) {
    Cliff r;
    for (int m = 0; m < 256; ++m) r.c[m] = x.c[m] - y.c[m];
    return r;
  }
  Cliff scaled(const S& f) const {
    Cliff r;
    for (int m = 0; m < 256; ++m) r.c[m] = c[m] * f;
    return r;
  }
};

template <typename S>
S scalar_of_q(const Rat& q);  // Rat -> S conversion

template <typename S>
Cliff<S> cliff_mul(const Cliff<S>& x, const Cliff<S>& y) {
  Cliff<S> r;
  for (int a = 0; a < 256; ++a) {
    if (x.c[a] == S(0)) continue;
    for (int b = 0; b < 256; ++b) {
      if (y.c[b] == S(0)) continue;
      S f = x.c[a] * y.c[b] * scalar_of_q<S>(q_product(a & b));
      if (basis_mul_sign(a, b) < 0) f = -f;
      r.c[a ^ b] += f;
    }
  }
  return r;
}

// reversal of tensor factors: e_S -> (-1)^{k(k-1)/2} e_S
template <typename S>
Cliff<S> reversal(const Cliff<S>& x) {
  Cliff<S> r = x;
  for (int m = 0; m < 256; ++m) {
    int k = __builtin_popcount(unsigned(m));
    if ((k * (k - 1) / 2) % 2) r.c[m] = -r.c[m];
  }
  return r;
}

// algebra automorphism extending e_1 -> -e_1
template <typename S>
Cliff<S> star(const Cliff<S>& x) {
  Cliff<S> r = x;
  for (int m = 0; m < 256; ++m)
    if (m & 1) r.c[m] = -r.c[m];
  return r;
}

template <typename S>
Cliff<S> vec_product(const std::array<S, 8>& u, const std::array<S, 8>& v) {
  return cliff_mul(Cliff<S>::vector(u), Cliff<S>::vector(v));
}

// regular-representation trace: 256 * (coefficient of the unit) on the
// full algebra; restricted to the even part this is 128 * coeff.
template <typename S>
S reg_trace_even(const Cliff<S>& z) {
  return z.c[0] * S(128);
}

template <typename S>
const Cliff<S>& riemann_alpha() {  // 4 e_2 e_1
  static const Cliff<S> alpha = [] {
    Cliff<S> a;
    a.c[0b11] = S(-4);  // e_2 e_1 = -e_1 e_2
    return a;
  }();
  return alpha;
}

template <typename S>
S riemann_form(const Cliff<S>& x, const Cliff<S>& y) {
  return reg_trace_even(cliff_mul(cliff_mul(riemann_alpha<S>(), reversal(x)), y));
}

// ---------------------------------------------------------------------
// Change of basis between the intersection basis (Gram U(2)+U(2)-2I4)
// and the orthogonal e-basis; the printed matrix is singular, so the
// corrected one is derived from the Gram requirement.
struct OrthoChange {
  QMatrix m8;      // columns: e-basis vectors in eps coordinates
  QMatrix m8_inv;  // eps vectors in e coordinates
};

const OrthoChange& ortho_basis();

// ---------------------------------------------------------------------

struct EtaPoint {
  std::array<Cplx, 8> eta;  // eps coordinates
};

struct EtaCheck {
  double quadric_residual = 0;   // |eta^T A eta| / |eta|^2
  double positivity = 0;         // conj(eta)^T A eta
  double component_sign = 0;     // Im(eta_3 / eta_1)
  bool valid_plus() const;
  bool valid_minus() const;
};

EtaCheck check_eta(const EtaPoint& p, double tol = 1e-8);
EtaPoint sigma_on_eta(const EtaPoint& p);

// m(eta): real and imaginary parts converted to e-coordinates; checked
// for equal positive norms and orthogonality, then normalized so that
// the square is -1.
Cliff<double> m_of_eta(const EtaPoint& p, double tol = 1e-8);

// 128x128 matrix of left multiplication by m on the even part.
std::vector<std::vector<double>> complex_structure(const EtaPoint& p);

// the even lattice basis: ordered eps-monomials expanded over e-monomials
const std::vector<Cliff<Rat>>& lattice_basis_Cplus();

struct CenterReport {
  bool ok = true;
  std::vector<std::string> failures;
  int center_dim = 0;
  Rat omega_sq;
  int factor_dims[2] = {0, 0};
};

CenterReport center_and_split();

// Exact Riemann form values on the lattice basis and the minimal positive
// rational making them all integral.
struct IntegralityReport {
  bool integral_after_scaling = false;
  Rat scale;        // minimal lambda with lambda*E integral
  Rat sample_value; // E(b_0, b_1) for the record
};

IntegralityReport riemann_integrality();

}  // namespace k34h::ks
