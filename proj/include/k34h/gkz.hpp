#pragma once

#include <optional>

#include "k34h/intmatrix.hpp"
#include "k34h/poly.hpp"

namespace k34h::gkz {

// The 6x16 exponent matrix of the hypergeometric system and its
// parameter vector (-1/2,-1/2,-1/2,-1/2,-1,-1). Columns are ordered
// (p = 1..4) x (11, 12, 21, 22).
struct GkzData {
  IntMatrix a_matrix;
  std::vector<Rat> beta;
};

const GkzData& gkz_data();

int var_index(int p, int j, int k);              // 1-based p, j, k
std::string var_name(int c, char head = 'd');    // d1_11 and so on
const std::vector<std::string>& deriv_names();

// Generating set of the toric ideal {d^u - d^v : Au = Av}, computed by
// saturating the kernel-lattice binomials variable by variable.
std::vector<PolyQ> toric_generators();

// Reduced basis of the toric ideal in the given order, cached on disk
// when a cache directory is supplied.
std::vector<PolyQ> toric_groebner(const MonomialOrder& ord, const std::string& cache_dir = "");

struct MultiplicityReport {
  bool initial_squarefree = false;
  long multiplicity = 0;        // Stanley-Reisner facet count (or Hilbert fallback)
  long normalized_volume = 0;   // independent polytope oracle
  std::string method;
};

MultiplicityReport multiplicity(const std::string& cache_dir = "");

// Multiplicity of a monomial ideal from its Hilbert series (the fallback
// path, exposed so it can be cross-checked against the facet count).
long multiplicity_hilbert(const std::vector<Mono>& leads, int krull_dim);

// All second-order relation symbols (mixed-partial equalities) as
// binomials in the derivative variables.
std::vector<PolyQ> e2_symbols();
// true when every symbol reduces to zero modulo the toric basis
bool e2_membership(const std::vector<PolyQ>& basis, const MonomialOrder& ord);

// ---------------------------------------------------------------------
// First and second order differential operators.

struct OpTerm {
  Rat coeff;
  Mono xexp;
  Mono dexp;
};

struct DiffOp {
  std::vector<OpTerm> terms;  // includes the constant term (empty exponents)
  std::string name;
};

std::vector<DiffOp> euler_operators();                // six rows of A.theta - beta
std::vector<DiffOp> e1_operators();                   // the four off-diagonal first-order ops
std::vector<DiffOp> scaling_operators();              // the four per-curve scaling rows
std::vector<DiffOp> diagonal_e_operators();           // E(1,1), E(2,2), E'(1,1), E'(2,2)
std::vector<DiffOp> e2_operators();                   // mixed-partial differences

// Sub-sum of maximal (-W, W)-weight terms; W indexed by variable.
DiffOp initial_form(const DiffOp& op, const std::array<long, kNumVars>& w);
// The weight of the text: per-block multiples p^2 of w = [[1,2],[0,4]].
std::array<long, kNumVars> theorem5_weight();

// The scaling rows plus the two diagonal first-order operators span the
// same 17-dimensional coefficient space as the six Euler rows.
bool euler_span_matches();

}  // namespace k34h::gkz
