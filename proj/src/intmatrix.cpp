#include "k34h/intmatrix.hpp"

#include <sstream>
#include <stdexcept>

namespace k34h {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> init) {
  rows = int(init.size());
  cols = rows ? int(init.begin()->size()) : 0;
  a.reserve(size_t(rows) * cols);
  for (const auto& row : init) {
    if (int(row.size()) != cols) throw std::invalid_argument("ragged initializer");
    for (long v : row) a.emplace_back(v);
  }
}

IntMatrix IntMatrix::identity(int n) {
  IntMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols, rows);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
  return t;
}

IntMatrix operator*(const IntMatrix& x, const IntMatrix& y) {
  if (x.cols != y.rows) throw std::invalid_argument("dimension mismatch in matrix product");
  IntMatrix r(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) {
      const BigInt& xik = x.at(i, k);
      if (xik == 0) continue;
      for (int j = 0; j < y.cols; ++j) r.at(i, j) += xik * y.at(k, j);
    }
  return r;
}

IntMatrix operator+(const IntMatrix& x, const IntMatrix& y) {
  if (x.rows != y.rows || x.cols != y.cols) throw std::invalid_argument("dimension mismatch");
  IntMatrix r(x.rows, x.cols);
  for (size_t i = 0; i < x.a.size(); ++i) r.a[i] = x.a[i] + y.a[i];
  return r;
}

IntMatrix operator-(const IntMatrix& x, const IntMatrix& y) {
  if (x.rows != y.rows || x.cols != y.cols) throw std::invalid_argument("dimension mismatch");
  IntMatrix r(x.rows, x.cols);
  for (size_t i = 0; i < x.a.size(); ++i) r.a[i] = x.a[i] - y.a[i];
  return r;
}

std::vector<BigInt> IntMatrix::mul_vec(const std::vector<BigInt>& v) const {
  if (int(v.size()) != cols) throw std::invalid_argument("dimension mismatch");
  std::vector<BigInt> r(rows, BigInt(0));
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) r[i] += at(i, j) * v[j];
  return r;
}

bool IntMatrix::is_symmetric() const {
  if (rows != cols) return false;
  for (int i = 0; i < rows; ++i)
    for (int j = i + 1; j < cols; ++j)
      if (at(i, j) != at(j, i)) return false;
  return true;
}

std::string IntMatrix::str() const {
  std::ostringstream os;
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) os << at(i, j).get_str() << (j + 1 < cols ? " " : "");
    os << "\n";
  }
  return os.str();
}

IntMatrix IntMatrix::direct_sum(const std::vector<IntMatrix>& blocks) {
  int r = 0, c = 0;
  for (const auto& b : blocks) r += b.rows, c += b.cols;
  IntMatrix m(r, c);
  int ro = 0, co = 0;
  for (const auto& b : blocks) {
    for (int i = 0; i < b.rows; ++i)
      for (int j = 0; j < b.cols; ++j) m.at(ro + i, co + j) = b.at(i, j);
    ro += b.rows;
    co += b.cols;
  }
  return m;
}

// ---------------------------------------------------------------------

namespace {

void swap_rows(IntMatrix& m, int i, int j) {
  if (i == j) return;
  for (int k = 0; k < m.cols; ++k) std::swap(m.at(i, k), m.at(j, k));
}
void swap_cols(IntMatrix& m, int i, int j) {
  if (i == j) return;
  for (int k = 0; k < m.rows; ++k) std::swap(m.at(k, i), m.at(k, j));
}
// row_i -= q * row_j
void add_row(IntMatrix& m, int i, int j, const BigInt& q) {
  if (q == 0) return;
  for (int k = 0; k < m.cols; ++k) m.at(i, k) -= q * m.at(j, k);
}
void add_col(IntMatrix& m, int i, int j, const BigInt& q) {
  if (q == 0) return;
  for (int k = 0; k < m.rows; ++k) m.at(k, i) -= q * m.at(k, j);
}
void negate_row(IntMatrix& m, int i) {
  for (int k = 0; k < m.cols; ++k) m.at(i, k) = -m.at(i, k);
}

}  // namespace

SnfResult snf(const IntMatrix& m) {
  SnfResult res;
  IntMatrix b = m;
  res.u = IntMatrix::identity(m.rows);
  res.v = IntMatrix::identity(m.cols);
  const int n = std::min(m.rows, m.cols);

  for (int k = 0; k < n; ++k) {
    for (;;) {
      // Smallest nonzero |entry| in the trailing submatrix; tie-break by
      // lowest row, then lowest column.
      int pi = -1, pj = -1;
      for (int i = k; i < b.rows; ++i)
        for (int j = k; j < b.cols; ++j) {
          if (b.at(i, j) == 0) continue;
          if (pi < 0 || mpz_cmpabs(b.at(i, j).get_mpz_t(), b.at(pi, pj).get_mpz_t()) < 0)
            pi = i, pj = j;
        }
      if (pi < 0) {  // trailing block is zero
        res.d.assign(n, BigInt(0));
        for (int i = 0; i < k; ++i) res.d[i] = b.at(i, i);
        for (int i = k; i < n; ++i) res.d[i] = 0;
        return res;
      }
      swap_rows(b, k, pi), swap_rows(res.u, k, pi);
      swap_cols(b, k, pj), swap_cols(res.v, k, pj);

      bool clean = true;
      for (int i = k + 1; i < b.rows; ++i) {
        if (b.at(i, k) == 0) continue;
        BigInt q = b.at(i, k) / b.at(k, k);  // truncated
        add_row(b, i, k, q), add_row(res.u, i, k, q);
        if (b.at(i, k) != 0) clean = false;
      }
      for (int j = k + 1; j < b.cols; ++j) {
        if (b.at(k, j) == 0) continue;
        BigInt q = b.at(k, j) / b.at(k, k);
        add_col(b, j, k, q), add_col(res.v, j, k, q);
        if (b.at(k, j) != 0) clean = false;
      }
      if (!clean) continue;

      // Enforce the divisibility chain: pull a non-divisible entry into
      // row k and restart the pivot loop.
      bool divides = true;
      for (int i = k + 1; i < b.rows && divides; ++i)
        for (int j = k + 1; j < b.cols && divides; ++j)
          if (b.at(i, j) % b.at(k, k) != 0) {
            add_row(b, k, i, BigInt(-1));  // row_k += row_i
            add_row(res.u, k, i, BigInt(-1));
            divides = false;
          }
      if (divides) break;
    }
    if (b.at(k, k) < 0) negate_row(b, k), negate_row(res.u, k);
  }

  res.d.resize(n);
  for (int i = 0; i < n; ++i) res.d[i] = b.at(i, i);
  return res;
}

BigInt det_exact(const IntMatrix& m) {
  if (m.rows != m.cols) throw std::invalid_argument("det of non-square matrix");
  const int n = m.rows;
  if (n == 0) return 1;
  IntMatrix b = m;
  BigInt prev = 1;
  int sign = 1;
  for (int k = 0; k + 1 < n; ++k) {
    if (b.at(k, k) == 0) {
      int p = -1;
      for (int i = k + 1; i < n; ++i)
        if (b.at(i, k) != 0) { p = i; break; }
      if (p < 0) return 0;
      swap_rows(b, k, p);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        BigInt t = b.at(i, j) * b.at(k, k) - b.at(i, k) * b.at(k, j);
        mpz_divexact(b.at(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      b.at(i, k) = 0;
    }
    prev = b.at(k, k);
  }
  return sign > 0 ? b.at(n - 1, n - 1) : -b.at(n - 1, n - 1);
}

std::vector<std::vector<BigInt>> kernel_basis(const IntMatrix& m) {
  SnfResult s = snf(m);
  int r = 0;
  for (const auto& d : s.d)
    if (d != 0) ++r;
  std::vector<std::vector<BigInt>> basis;
  for (int j = r; j < m.cols; ++j) {
    std::vector<BigInt> v(m.cols);
    for (int i = 0; i < m.cols; ++i) v[i] = s.v.at(i, j);
    basis.push_back(std::move(v));
  }
  return basis;
}

int rank_of(const IntMatrix& m) {
  SnfResult s = snf(m);
  int r = 0;
  for (const auto& d : s.d)
    if (d != 0) ++r;
  return r;
}

// ---------------------------------------------------------------------

QMatrix::QMatrix(const IntMatrix& m) : rows(m.rows), cols(m.cols), a(m.a.size()) {
  for (size_t i = 0; i < m.a.size(); ++i) a[i] = Rat(m.a[i]);
}

QMatrix QMatrix::identity(int n) {
  QMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

QMatrix QMatrix::transpose() const {
  QMatrix t(cols, rows);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
  return t;
}

QMatrix operator*(const QMatrix& x, const QMatrix& y) {
  if (x.cols != y.rows) throw std::invalid_argument("dimension mismatch in matrix product");
  QMatrix r(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) {
      const Rat& xik = x.at(i, k);
      if (xik == 0) continue;
      for (int j = 0; j < y.cols; ++j) r.at(i, j) += xik * y.at(k, j);
    }
  return r;
}

std::vector<Rat> QMatrix::mul_vec(const std::vector<Rat>& v) const {
  if (int(v.size()) != cols) throw std::invalid_argument("dimension mismatch");
  std::vector<Rat> r(rows);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) r[i] += at(i, j) * v[j];
  return r;
}

QMatrix inverse(const QMatrix& m) {
  if (m.rows != m.cols) throw std::invalid_argument("inverse of non-square matrix");
  const int n = m.rows;
  QMatrix b = m, inv = QMatrix::identity(n);
  for (int k = 0; k < n; ++k) {
    int p = -1;
    for (int i = k; i < n; ++i)
      if (b.at(i, k) != 0) { p = i; break; }
    if (p < 0) throw std::domain_error("singular matrix");
    for (int j = 0; j < n; ++j) std::swap(b.at(k, j), b.at(p, j)), std::swap(inv.at(k, j), inv.at(p, j));
    Rat piv = b.at(k, k);
    for (int j = 0; j < n; ++j) b.at(k, j) /= piv, inv.at(k, j) /= piv;
    for (int i = 0; i < n; ++i) {
      if (i == k || b.at(i, k) == 0) continue;
      Rat f = b.at(i, k);
      for (int j = 0; j < n; ++j) b.at(i, j) -= f * b.at(k, j), inv.at(i, j) -= f * inv.at(k, j);
    }
  }
  return inv;
}

int rank_of(const QMatrix& m) {
  QMatrix b = m;
  int rank = 0;
  for (int col = 0; col < b.cols && rank < b.rows; ++col) {
    int p = -1;
    for (int i = rank; i < b.rows; ++i)
      if (b.at(i, col) != 0) { p = i; break; }
    if (p < 0) continue;
    for (int j = 0; j < b.cols; ++j) std::swap(b.at(rank, j), b.at(p, j));
    for (int i = rank + 1; i < b.rows; ++i) {
      if (b.at(i, col) == 0) continue;
      Rat f = b.at(i, col) / b.at(rank, col);
      for (int j = col; j < b.cols; ++j) b.at(i, j) -= f * b.at(rank, j);
    }
    ++rank;
  }
  return rank;
}

std::pair<int, int> inertia(const QMatrix& gram) {
  if (gram.rows != gram.cols) throw std::invalid_argument("inertia of non-square matrix");
  const int n = gram.rows;
  QMatrix b = gram;
  auto congr_swap = [&](int i, int j) {
    for (int k = 0; k < n; ++k) std::swap(b.at(i, k), b.at(j, k));
    for (int k = 0; k < n; ++k) std::swap(b.at(k, i), b.at(k, j));
  };
  // row_i += f*row_j, col_i += f*col_j
  auto congr_add = [&](int i, int j, const Rat& f) {
    for (int k = 0; k < n; ++k) b.at(i, k) += f * b.at(j, k);
    for (int k = 0; k < n; ++k) b.at(k, i) += f * b.at(k, j);
  };
  int pos = 0, neg = 0;
  for (int k = 0; k < n; ++k) {
    if (b.at(k, k) == 0) {
      int p = -1;
      for (int i = k; i < n; ++i)
        if (b.at(i, i) != 0) { p = i; break; }
      if (p >= 0) {
        congr_swap(k, p);
      } else {
        int pi = -1, pj = -1;
        for (int i = k; i < n && pi < 0; ++i)
          for (int j = i + 1; j < n; ++j)
            if (b.at(i, j) != 0) { pi = i, pj = j; break; }
        if (pi < 0) throw std::domain_error("degenerate gram matrix");
        congr_add(pi, pj, Rat(1));  // creates 2*b(pi,pj) on the diagonal
        congr_swap(k, pi);
      }
    }
    Rat piv = b.at(k, k);
    if (piv > 0) ++pos; else ++neg;
    for (int i = k + 1; i < n; ++i) {
      if (b.at(i, k) == 0) continue;
      congr_add(i, k, -b.at(i, k) / piv);
    }
  }
  return {pos, neg};
}

}  // namespace k34h
