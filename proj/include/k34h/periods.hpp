#pragma once

#include <array>
#include <complex>
#include <map>
#include <memory>
#include <vector>

#include "k34h/fibration.hpp"
#include "k34h/genericity.hpp"
#include "k34h/gkz.hpp"

namespace k34h::per {

using Cplx = std::complex<double>;
using Config = gen::FourCurveConfig<Cplx>;

struct QuadParams {
  double abs_tol = 1e-10;
  double rel_tol = 1e-9;
  int max_depth = 16;
};

// Branch points of the fiber over s; throws when one sits at infinity.
std::array<Cplx, 4> branch_points_t(Cplx s, const Config& x);

// Singular base points of the configuration, matched by continuity to
// the reference ordering. Throws if the configuration is too far from
// the reference for the matching to be safe.
std::array<Cplx, 12> singular_points(const Config& x);

// Periods of the two reference 1-cycles, continued from the base point.
// The heavy lifting lives behind this evaluator: it fixes the cycle pair
// at s0 = 4i for the given configuration and evaluates their periods at
// arbitrary cut-complement points through canonical continuation paths.
class PeriodEvaluator {
 public:
  explicit PeriodEvaluator(const Config& x, const QuadParams& qp = {});
  ~PeriodEvaluator();
  PeriodEvaluator(PeriodEvaluator&&) noexcept;

  // single-valued on the cut complement; the mask selects which of the
  // two basis periods are actually needed (bit 0 and bit 1)
  std::array<Cplx, 2> basis_at(Cplx s, int active_mask = 3) const;
  // continued along an explicit path in the s-plane (for monodromy tests)
  std::array<Cplx, 2> basis_along(const std::vector<Cplx>& spath, int active_mask = 3) const;

  Cplx pairing(fib::FiberClass c, const std::array<Cplx, 2>& basis) const {
    return double(c.a) * basis[0] + double(c.b) * basis[1];
  }
  const std::array<Cplx, 12>& cuts() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  friend Cplx period_over_chain(const fib::TwoChain&, const PeriodEvaluator&,
                                const QuadParams&);
};

Cplx inner_period(Cplx s, fib::FiberClass c, const Config& x, const QuadParams& qp = {});

// Period of the cycle around a straight corridor between two of four
// given branch points, principal square-root branch at the midpoint.
// Support entry for oracle tests against classical elliptic integrals.
Cplx raw_corridor_period(const std::array<Cplx, 4>& branch_pts, int i, int j,
                         const QuadParams& qp = {});

// Integral of the continued fiber period over the base arcs of a chain.
Cplx period_over_chain(const fib::TwoChain& ch, const Config& x, const QuadParams& qp = {});
Cplx period_over_chain(const fib::TwoChain& ch, const PeriodEvaluator& ev,
                       const QuadParams& qp = {});

struct PeriodVector {
  std::array<Cplx, 8> v;    // periods over the eight gamma chains
  std::array<Cplx, 8> eta;  // inverse intersection matrix applied to v
  double bilinear_residual = 0;
  double positivity = 0;
  double component_sign = 0;
};

PeriodVector period_vector(const Config& x, const QuadParams& qp = {});

// ---------------------------------------------------------------------
// Finite-difference verification that the operators annihilate the
// period of the first gamma chain.

struct FdParams {
  double h1 = 1e-4;  // first derivatives, scaled per entry
  double h2 = 5e-3;  // second derivatives, scaled per entry
  QuadParams quad;
};

class FdEngine {
 public:
  FdEngine(const Config& x0, const FdParams& fp = {});
  // |op u| / (|u| * operator scale)
  double residual(const gkz::DiffOp& op);
  // fitted exponent e_p in u(lambda o x) ~ lambda^{e_p} u(x)
  double homogeneity_exponent(int p);
  // |u(g x) det(g) - u(x)| / |u(x)| for a small left translation, and the
  // same for the right action
  double equivariance_residual_left(const gen::Mat2<Cplx>& g);
  double equivariance_residual_right(const gen::Mat2<Cplx>& h);
  Cplx value() const { return u0_; }

 private:
  Cplx eval(const Config& x);
  Cplx d1(int var);   // cached first partials (Richardson)
  Config x0_;
  FdParams fp_;
  Cplx u0_;
  std::map<int, Cplx> d1_cache_;
  fib::TwoChain chain_;
};

// smallest/largest diagonal ratio of a pivoted orthogonalization of the
// (value, directional derivative) matrix of the eight periods
double period_rank_evidence(const Config& x, int directions = 7, unsigned seed = 5,
                            const QuadParams& qp = {});

}  // namespace k34h::per
