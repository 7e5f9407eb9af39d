#include "k34h/clifford.hpp"

#include <stdexcept>

#include "k34h/lattice.hpp"

namespace k34h::ks {

namespace {

const std::array<long, 8> kNorms = {1, 1, -1, -1, -2, -2, -2, -2};

struct Tables {
  std::array<int8_t, 256 * 256> sign;
  std::array<Rat, 256> qprod;
  std::vector<int> evens;
  std::array<int, 256> even_idx;

  Tables() {
    for (int a = 0; a < 256; ++a)
      for (int b = 0; b < 256; ++b) {
        int s = 1;
        int acc = a;
        for (int bit = 0; bit < 8; ++bit) {
          if (!(b >> bit & 1)) continue;
          // hop over generators of acc above this one
          int higher = acc >> (bit + 1);
          if (__builtin_popcount(unsigned(higher)) % 2) s = -s;
          acc ^= 1 << bit;
        }
        sign[a * 256 + b] = int8_t(s);
      }
    for (int m = 0; m < 256; ++m) {
      Rat p(1);
      for (int bit = 0; bit < 8; ++bit)
        if (m >> bit & 1) p *= kNorms[bit];
      qprod[m] = p;
    }
    even_idx.fill(-1);
    for (int m = 0; m < 256; ++m)
      if (__builtin_popcount(unsigned(m)) % 2 == 0) {
        even_idx[m] = int(evens.size());
        evens.push_back(m);
      }
  }
};

const Tables& tables() {
  static const Tables t;
  return t;
}

}  // namespace

int basis_mul_sign(int a, int b) { return tables().sign[a * 256 + b]; }
const Rat& q_product(int common_mask) { return tables().qprod[common_mask]; }
const std::vector<int>& even_masks() { return tables().evens; }
int even_index(int mask) { return tables().even_idx[mask]; }

template <>
Rat scalar_of_q<Rat>(const Rat& q) {
  return q;
}
template <>
double scalar_of_q<double>(const Rat& q) {
  return q.get_d();
}
template <>
Cplx scalar_of_q<Cplx>(const Rat& q) {
  return Cplx(q.get_d());
}

// ---------------------------------------------------------------------

const OrthoChange& ortho_basis() {
  static const OrthoChange oc = [] {
    OrthoChange o;
    o.m8 = QMatrix(8, 8);
    auto set_col = [&](int col, std::initializer_list<Rat> v) {
      int r = 0;
      for (const Rat& x : v) o.m8.at(r++, col) = x;
    };
    Rat h = rat_of(1, 2);
    set_col(0, {h, h, Rat(0), Rat(0), Rat(0), Rat(0), Rat(0), Rat(0)});   // e1
    set_col(1, {Rat(0), Rat(0), h, h, Rat(0), Rat(0), Rat(0), Rat(0)});   // e2
    set_col(2, {h, -h, Rat(0), Rat(0), Rat(0), Rat(0), Rat(0), Rat(0)});  // e3
    set_col(3, {Rat(0), Rat(0), h, -h, Rat(0), Rat(0), Rat(0), Rat(0)});  // e4
    for (int i = 4; i < 8; ++i) o.m8.at(i, i) = 1;
    // validate the gram identity exactly
    QMatrix a(lat::lattice_T().gram);
    QMatrix g = o.m8.transpose() * a * o.m8;
    std::array<long, 8> want = {1, 1, -1, -1, -2, -2, -2, -2};
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 8; ++j)
        if (g.at(i, j) != Rat(i == j ? want[i] : 0))
          throw std::logic_error("orthogonal change of basis failed the gram identity");
    o.m8_inv = inverse(o.m8);
    return o;
  }();
  return oc;
}

// ---------------------------------------------------------------------

bool EtaCheck::valid_plus() const {
  return quadric_residual < 1e-6 && positivity > 0 && component_sign > 0;
}
bool EtaCheck::valid_minus() const {
  return quadric_residual < 1e-6 && positivity > 0 && component_sign < 0;
}

EtaCheck check_eta(const EtaPoint& p, double) {
  EtaCheck ck;
  QMatrix a(lat::lattice_T().gram);
  Cplx quad = 0;
  double pos = 0, norm2 = 0;
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) {
      double aij = a.at(i, j).get_d();
      quad += p.eta[i] * aij * p.eta[j];
      pos += std::real(std::conj(p.eta[i]) * aij * p.eta[j]);
    }
    norm2 += std::norm(p.eta[i]);
  }
  ck.quadric_residual = std::abs(quad) / std::max(norm2, 1e-300);
  ck.positivity = pos;
  ck.component_sign = std::imag(p.eta[2] / p.eta[0]);
  return ck;
}

EtaPoint sigma_on_eta(const EtaPoint& p) {
  EtaPoint q = p;
  q.eta[0] = -p.eta[1];
  q.eta[1] = -p.eta[0];
  return q;
}

Cliff<double> m_of_eta(const EtaPoint& p, double tol) {
  auto ck = check_eta(p);
  if (ck.quadric_residual > tol) throw std::domain_error("eta does not satisfy the quadric");
  if (ck.positivity <= 0) throw std::domain_error("eta fails positivity");
  std::array<double, 8> s_eps, t_eps;
  for (int i = 0; i < 8; ++i) s_eps[i] = std::real(p.eta[i]), t_eps[i] = std::imag(p.eta[i]);
  // convert to e coordinates
  const auto& oc = ortho_basis();
  std::array<double, 8> s{}, t{};
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) {
      double inv = oc.m8_inv.at(i, j).get_d();
      s[i] += inv * s_eps[j];
      t[i] += inv * t_eps[j];
    }
  auto qform = [&](const std::array<double, 8>& u, const std::array<double, 8>& v) {
    double acc = 0;
    for (int i = 0; i < 8; ++i) acc += kNorms[i] * u[i] * v[i];
    return acc;
  };
  double qs = qform(s, s), qt = qform(t, t), st = qform(s, t);
  double scale = std::abs(qs) + std::abs(qt) + 1e-300;
  if (std::abs(qs - qt) > tol * scale || std::abs(st) > tol * scale)
    throw std::domain_error("eta is not a valid period representative");
  if (qs <= 0) throw std::domain_error("eta lies in the wrong component of the quadric");
  return vec_product(s, t).scaled(1.0 / qs);
}

std::vector<std::vector<double>> complex_structure(const EtaPoint& p) {
  Cliff<double> m = m_of_eta(p);
  const auto& evens = even_masks();
  std::vector<std::vector<double>> j(evens.size(), std::vector<double>(evens.size(), 0.0));
  for (size_t col = 0; col < evens.size(); ++col) {
    Cliff<double> b;
    b.c[evens[col]] = 1.0;
    Cliff<double> img = cliff_mul(m, b);
    for (size_t row = 0; row < evens.size(); ++row) j[row][col] = img.c[evens[row]];
  }
  return j;
}

// ---------------------------------------------------------------------

const std::vector<Cliff<Rat>>& lattice_basis_Cplus() {
  static const std::vector<Cliff<Rat>> basis = [] {
    const auto& oc = ortho_basis();
    std::array<std::array<Rat, 8>, 8> eps_e;  // eps_i in e coordinates
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 8; ++j) eps_e[i][j] = oc.m8_inv.at(j, i);
    std::vector<Cliff<Rat>> out;
    for (int mask : even_masks()) {
      Cliff<Rat> z = Cliff<Rat>::unit();
      for (int bit = 0; bit < 8; ++bit)
        if (mask >> bit & 1) z = cliff_mul(z, Cliff<Rat>::vector(eps_e[bit]));
      out.push_back(std::move(z));
    }
    return out;
  }();
  return basis;
}

CenterReport center_and_split() {
  CenterReport rep;
  auto fail = [&](const std::string& s) {
    rep.ok = false;
    rep.failures.push_back(s);
  };
  const auto& evens = even_masks();
  const int n = int(evens.size());

  // commutators with all grade-2 generators e_i e_j
  std::vector<int> gens;
  for (int i = 0; i < 8; ++i)
    for (int j = i + 1; j < 8; ++j) gens.push_back((1 << i) | (1 << j));

  std::vector<std::vector<Rat>> rows;
  for (int g : gens) {
    Cliff<Rat> eg;
    eg.c[g] = 1;
    std::vector<Cliff<Rat>> cols(n);
    for (int col = 0; col < n; ++col) {
      Cliff<Rat> b;
      b.c[evens[col]] = 1;
      cols[col] = cliff_mul(b, eg) - cliff_mul(eg, b);
    }
    for (int row = 0; row < n; ++row) {
      std::vector<Rat> r(n);
      bool nonzero = false;
      for (int col = 0; col < n; ++col) {
        r[col] = cols[col].c[evens[row]];
        if (r[col] != 0) nonzero = true;
      }
      if (nonzero) rows.push_back(std::move(r));
    }
  }
  QMatrix sys(int(rows.size()), n);
  for (size_t i = 0; i < rows.size(); ++i)
    for (int j = 0; j < n; ++j) sys.at(int(i), j) = rows[i][j];
  rep.center_dim = n - rank_of(sys);
  if (rep.center_dim != 2) fail("center dimension is " + std::to_string(rep.center_dim));

  // omega = e_1 ... e_8
  Cliff<Rat> omega;
  omega.c[0xFF] = 1;
  Cliff<Rat> om2 = cliff_mul(omega, omega);
  rep.omega_sq = om2.c[0];
  for (int m = 1; m < 256; ++m)
    if (om2.c[m] != 0) fail("omega^2 is not scalar");
  if (rep.omega_sq != 16) fail("omega^2 = " + rat_str(rep.omega_sq));

  // central idempotents (1 +- omega/4)/2 and their two-sided ideals
  for (int sign = 0; sign < 2; ++sign) {
    Cliff<Rat> idem = Cliff<Rat>::unit();
    idem.c[0xFF] = (sign == 0 ? rat_of(1, 4) : rat_of(-1, 4));
    idem = idem.scaled(rat_of(1, 2));
    Cliff<Rat> sq = cliff_mul(idem, idem);
    for (int m = 0; m < 256; ++m)
      if (sq.c[m] != idem.c[m]) fail("projector is not idempotent");
    QMatrix rm(n, n);
    for (int col = 0; col < n; ++col) {
      Cliff<Rat> b;
      b.c[evens[col]] = 1;
      Cliff<Rat> img = cliff_mul(b, idem);
      for (int row = 0; row < n; ++row) rm.at(row, col) = img.c[evens[row]];
    }
    rep.factor_dims[sign] = rank_of(rm);
    if (rep.factor_dims[sign] != 64)
      fail("factor dimension is " + std::to_string(rep.factor_dims[sign]));
  }
  return rep;
}

IntegralityReport riemann_integrality() {
  IntegralityReport rep;
  const auto& basis = lattice_basis_Cplus();
  const auto& evens = even_masks();
  const int n = int(basis.size());
  // scal(S) = coefficient of the unit in e_S e_S
  std::array<Rat, 256> scal;
  for (int m = 0; m < 256; ++m) {
    scal[m] = q_product(m);
    if (basis_mul_sign(m, m) < 0) scal[m] = -scal[m];
  }
  // w_i = alpha * reversal(b_i); E(b_i, b_j) = 128 sum_S w_i[S] b_j[S] scal(S)
  std::vector<Cliff<Rat>> w(n);
  for (int i = 0; i < n; ++i) w[i] = cliff_mul(riemann_alpha<Rat>(), reversal(basis[i]));
  std::vector<std::vector<Rat>> values(n, std::vector<Rat>(n));
  BigInt denom_lcm = 1;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Rat e = 0;
      for (int m : evens) e += w[i].c[m] * basis[j].c[m] * scal[m];
      e *= 128;
      values[i][j] = e;
      mpz_lcm(denom_lcm.get_mpz_t(), denom_lcm.get_mpz_t(), e.get_den().get_mpz_t());
    }
  rep.sample_value = values[0][1];
  // minimal positive lambda making lambda * E primitive integral: clear
  // denominators, then divide out the content
  BigInt num_gcd = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Rat scaled = values[i][j] * Rat(denom_lcm);
      mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), scaled.get_num().get_mpz_t());
    }
  if (num_gcd == 0) num_gcd = 1;
  rep.scale = Rat(denom_lcm, num_gcd);
  rep.scale.canonicalize();
  rep.integral_after_scaling = true;
  return rep;
}

}  // namespace k34h::ks
