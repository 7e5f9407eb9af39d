#pragma once

#include <optional>
#include <string>
#include <vector>

#include "k34h/intmatrix.hpp"

namespace k34h::lat {

// Integral quadratic lattice given by a symmetric Gram matrix.
struct QuadLattice {
  IntMatrix gram;
  std::vector<std::string> basis_labels;

  int rank() const { return gram.rows; }
  BigInt pairing(const std::vector<BigInt>& x, const std::vector<BigInt>& y) const;
  bool is_even() const;
};

// The standard building blocks.
QuadLattice lattice_U();
QuadLattice lattice_Uk(long k);
QuadLattice lattice_D4();   // (-2) diagonal with the central node first
QuadLattice lattice_E8();   // negative definite, Dynkin numbering
QuadLattice lattice_scal(long n);  // <n>
QuadLattice lattice_P();    // D4^3 + <-2> + <2>, rank 14
QuadLattice lattice_T();    // U(2)^2 + (-2 I4), rank 8
QuadLattice lattice_L();    // E8^2 + U^3, rank 22

BigInt discriminant(const QuadLattice& l);
std::pair<int, int> signature(const QuadLattice& l);

// M*/M with the induced quadratic form, from the SNF of the Gram matrix.
struct DiscriminantGroup {
  std::vector<BigInt> invariant_factors;       // the factors > 1
  std::vector<std::vector<Rat>> generator_lifts;  // in basis coordinates
  std::vector<Rat> q_values;                   // q(lift) mod 2, in [0,2)
};

DiscriminantGroup discriminant_group(const QuadLattice& l);

// An integral isometry of a fixed lattice.
struct IsometryZ {
  IntMatrix g;
};

bool is_isometry(const QuadLattice& l, const IntMatrix& g);
// Reflection x -> x + (x,alpha) alpha for a (-2)-vector alpha.
IsometryZ reflection(const QuadLattice& l, const std::vector<BigInt>& alpha);
// g == I mod 2; throws if g is not an isometry of l.
bool is_in_G2(const QuadLattice& l, const IsometryZ& g);
// g fixes every discriminant generator lift modulo the lattice.
bool acts_trivially_on_disc(const QuadLattice& l, const IsometryZ& g);

// ---------------------------------------------------------------------
// The 18 divisor generators E_ij^+- (12), G_i (4), F_s, F_t on the
// reference surface and the rank-14 sublattice they span.

struct DivisorGenerators {
  IntMatrix gram18;
  std::vector<std::string> labels;
  int index_E(int i, int j, int sign) const;  // i<j in 1..4, sign +1/-1
  int index_G(int i) const;                   // i in 1..4
  int index_Fs() const;
  int index_Ft() const;
};

DivisorGenerators divisor_generators();

struct BasisCheckReport {
  bool ok = true;
  std::vector<std::string> failures;
  IntMatrix gram14;  // Gram of (L1,L2,L3,Delta1,Delta2) basis
  int rank18 = 0;
};

// Builds L1,L2,L3,Delta1,Delta2 inside the divisor span, asserts the
// 14x14 Gram is exactly D4^3 + <-2> + <2> and that gram18 has rank 14
// with the four relation vectors in its kernel.
BasisCheckReport theorem1_basis_check();

// ---------------------------------------------------------------------
// Glue between A_P and A_T: a maximal isotropic subgroup of A_P + A_T
// with bijective projections, assembling P + T into a unimodular lattice.

struct GlueData {
  // Each generator as exponent vectors over the discriminant generators
  // of P (8 coords) and T (8 coords), entries in {0,1}.
  std::vector<std::vector<int>> gens_p;
  std::vector<std::vector<int>> gens_t;
};

struct GlueReport {
  bool ok = true;
  std::vector<std::string> failures;
  BigInt overlattice_det = 0;
  std::pair<int, int> overlattice_signature{0, 0};
  bool overlattice_even = false;
};

GlueData find_glue();
GlueReport verify_glue(const GlueData& h);

std::string glue_to_text(const GlueData& h);
std::optional<GlueData> glue_from_text(const std::string& text);

// Random words in a fixed generator set of isometries of T, for the
// G(2) equivalence property.
std::vector<IsometryZ> isometry_generators_T();

}  // namespace k34h::lat
