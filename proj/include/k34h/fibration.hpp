#pragma once

#include <array>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "k34h/genericity.hpp"
#include "k34h/intmatrix.hpp"

namespace k34h::fib {

// Exact real number of the form a + b*sqrt(19).
struct RealAlg19 {
  Rat a, b;

  RealAlg19() = default;
  RealAlg19(Rat a_, Rat b_ = Rat(0)) : a(std::move(a_)), b(std::move(b_)) {}

  int sign() const;  // exact
  double to_double() const;
  friend RealAlg19 operator-(const RealAlg19& x, const RealAlg19& y) {
    return {x.a - y.a, x.b - y.b};
  }
  bool operator==(const RealAlg19& o) const { return a == o.a && b == o.b; }
  bool operator<(const RealAlg19& o) const { return (*this - o).sign() < 0; }
  std::string str() const;
};

// Fiber 1-homology class a*alpha1 + b*alpha2.
struct FiberClass {
  long a = 0, b = 0;
  bool operator==(const FiberClass&) const = default;
  bool is_zero() const { return a == 0 && b == 0; }
  friend FiberClass operator+(FiberClass x, FiberClass y) { return {x.a + y.a, x.b + y.b}; }
  friend FiberClass operator-(FiberClass x, FiberClass y) { return {x.a - y.a, x.b - y.b}; }
  friend FiberClass operator*(long c, FiberClass x) { return {c * x.a, c * x.b}; }
};

// Symplectic pairing from alpha1 . alpha2 = 1.
inline long symplectic(FiberClass x, FiberClass y) { return x.a * y.b - x.b * y.a; }

struct Mat2l {
  long m[2][2] = {{1, 0}, {0, 1}};
  friend Mat2l operator*(const Mat2l& x, const Mat2l& y) {
    Mat2l r;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        r.m[i][j] = x.m[i][0] * y.m[0][j] + x.m[i][1] * y.m[1][j];
    return r;
  }
  FiberClass apply(FiberClass c) const {
    return {m[0][0] * c.a + m[0][1] * c.b, m[1][0] * c.a + m[1][1] * c.b};
  }
  long det() const { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }
  long trace() const { return m[0][0] + m[1][1]; }
  Mat2l inv() const {  // valid for det 1
    return Mat2l{{{m[1][1], -m[0][1]}, {-m[1][0], m[0][0]}}};
  }
  bool operator==(const Mat2l&) const = default;
  static Mat2l id() { return {}; }
};

struct SingularFiber {
  int index = 0;  // 1..12, ascending s
  RealAlg19 s;
  std::pair<int, int> pair;  // computed curve labels, 1-based
  FiberClass vanishing;
  Mat2l t;
};

// The twelve singular base points of the reference fibration, solved
// exactly and sorted ascending, with the circuit matrix table attached.
const std::vector<SingularFiber>& singular_fibers();

Mat2l monodromy_matrix(int j);  // 1 <= j <= 12

struct CheckReport {
  bool ok = true;
  std::vector<std::string> failures;
};

CheckReport verify_picard_lefschetz(int j);
// Shape check on explicit data (used for negative tests too).
CheckReport picard_lefschetz_shape(const Mat2l& t, FiberClass delta);

// Which composition orders of the twelve circuit matrices give the
// identity ("ascending" means T_1 is applied first).
std::vector<std::string> trivial_total_monodromy_orders();

// ---------------------------------------------------------------------

using Pt = std::complex<double>;

struct Track {
  std::vector<Pt> base;  // polyline, starts at the chain base point
  FiberClass start_class;
  long multiplicity = 1;
  std::optional<int> terminal;  // singular index when the track is a thimble
};

struct TwoChain {
  std::vector<Track> tracks;
  int slot = 0;  // offset family used to build it
};

// Transport of a fiber class along a polyline by the cut-crossing rule:
// cuts are vertical downward rays below each singular point; crossing
// rightward applies T_j, leftward its inverse. Throws if the path passes
// within tolerance of a singular point.
FiberClass transport(FiberClass c, const std::vector<Pt>& path, double tol = 1e-9);

// Canonical chains. Variant 0 is the chain itself; variant 1 a push-off
// copy with different offsets (used for self-intersections).
TwoChain build_gamma(int i, int variant = 0);  // 1 <= i <= 8
TwoChain build_c(int i, int variant = 0);      // 1 <= i <= 8

// Sum of boundary contributions at the base point; zero for 2-cycles.
// Throws if a thimble end class is not a multiple of the vanishing cycle.
FiberClass closure_defect(const TwoChain& ch);

// Crossing-counted intersection number. w weights the local
// contribution of two thimbles sharing a terminal singular fiber.
long intersection(const TwoChain& c1, const TwoChain& c2, int w = -1);

struct Conventions {
  std::string action = "columns";           // fiber classes transform c -> T c
  std::string monodromy_order;              // composition order giving the identity
  int crossing_sign = 0;                    // global sign of the crossing rule
  int thimble_weight = -1;                  // w in the shared-terminal rule
  std::array<std::array<int, 3>, 4> c_signs{};  // chosen track signs for C5..C8
};

struct FibReport {
  bool ok = true;
  std::vector<std::string> failures;
  Conventions conventions;
  IntMatrix gram_gamma;       // 8x8
  IntMatrix pairing_gamma_c;  // 8x8
  std::vector<FiberClass> gamma_defects;
  std::vector<FiberClass> c_defects;
  bool labels_match_printed = false;  // the +-12 pair label discrepancy
  int pairing_entries_matching = 0;   // against the printed matrix
};

// Builds everything: calibrates the crossing sign on Gamma1.Gamma2 = 2,
// assembles both 8x8 matrices and validates them against the expected
// values.
FibReport full_report();

const IntMatrix& expected_gram_gamma();
const IntMatrix& expected_pairing_gamma_c();

}  // namespace k34h::fib
