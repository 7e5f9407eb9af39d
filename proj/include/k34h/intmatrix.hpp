#pragma once

#include <initializer_list>
#include <vector>

#include "k34h/rational.hpp"

namespace k34h {

// Dense matrix of arbitrary-precision integers, row-major.
struct IntMatrix {
  int rows = 0, cols = 0;
  std::vector<BigInt> a;

  IntMatrix() = default;
  IntMatrix(int r, int c) : rows(r), cols(c), a(size_t(r) * c, BigInt(0)) {}
  IntMatrix(std::initializer_list<std::initializer_list<long>> init);

  BigInt& at(int i, int j) { return a[size_t(i) * cols + j]; }
  const BigInt& at(int i, int j) const { return a[size_t(i) * cols + j]; }

  static IntMatrix identity(int n);
  IntMatrix transpose() const;
  bool operator==(const IntMatrix& o) const = default;

  friend IntMatrix operator*(const IntMatrix& x, const IntMatrix& y);
  friend IntMatrix operator+(const IntMatrix& x, const IntMatrix& y);
  friend IntMatrix operator-(const IntMatrix& x, const IntMatrix& y);

  std::vector<BigInt> mul_vec(const std::vector<BigInt>& v) const;
  bool is_symmetric() const;
  std::string str() const;

  // Block diagonal concatenation.
  static IntMatrix direct_sum(const std::vector<IntMatrix>& blocks);
};

// Smith normal form u*m*v = diag(d), u and v unimodular, d_i | d_{i+1},
// d_i >= 0.  Deterministic: pivots by smallest nonzero absolute value,
// ties broken by lowest row then lowest column.
struct SnfResult {
  std::vector<BigInt> d;
  IntMatrix u, v;
};

SnfResult snf(const IntMatrix& m);

// Exact determinant by fraction-free (Bareiss) elimination. Throws on
// non-square input.
BigInt det_exact(const IntMatrix& m);

// Basis of the saturated integer kernel {v : m v = 0}, as columns of the
// SNF right transform. Empty kernel gives an empty list.
std::vector<std::vector<BigInt>> kernel_basis(const IntMatrix& m);

int rank_of(const IntMatrix& m);

// ---------------------------------------------------------------------
// Rational matrices: support layer for signatures, dual lattices and the
// overlattice bookkeeping.

struct QMatrix {
  int rows = 0, cols = 0;
  std::vector<Rat> a;

  QMatrix() = default;
  QMatrix(int r, int c) : rows(r), cols(c), a(size_t(r) * c) {}
  explicit QMatrix(const IntMatrix& m);

  Rat& at(int i, int j) { return a[size_t(i) * cols + j]; }
  const Rat& at(int i, int j) const { return a[size_t(i) * cols + j]; }

  static QMatrix identity(int n);
  QMatrix transpose() const;
  friend QMatrix operator*(const QMatrix& x, const QMatrix& y);
  std::vector<Rat> mul_vec(const std::vector<Rat>& v) const;
  bool operator==(const QMatrix& o) const = default;
};

QMatrix inverse(const QMatrix& m);  // throws if singular
int rank_of(const QMatrix& m);

// Exact inertia of a symmetric rational matrix via congruence
// transformations; returns (positive, negative) counts. Throws if the
// matrix is degenerate.
std::pair<int, int> inertia(const QMatrix& gram);

}  // namespace k34h
