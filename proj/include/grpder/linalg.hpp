#pragma once

// Exact linear algebra over Q, F_p and Z.
//
// Field routines run Gauss-Jordan elimination on sparse rows and keep the
// echelon form fully reduced, so the kernel basis and the particular
// solution of a consistent system are canonical: pivots are the leftmost
// nonzero entries in row order, free coordinates are set to zero.
// Integer routines go through the Smith normal form.

#include <optional>
#include <span>
#include <stop_token>
#include <utility>
#include <vector>

#include "grpder/scalar.hpp"

namespace grpder {

using Vector = std::vector<Rational>;
/// (column, value) pairs, strictly increasing columns, no zero values.
using SparseRow = std::vector<std::pair<int, Rational>>;

/// Dense row-major matrix whose entries all belong to one ring.
class ExactMatrix {
 public:
  ExactMatrix(int rows, int cols, Ring ring);
  ExactMatrix(int rows, int cols, Ring ring, std::vector<Rational> entries);
  static ExactMatrix identity(int n, Ring ring);
  /// Convenience for tests and fixtures; entries are coerced into the ring.
  static ExactMatrix from_rows(const std::vector<std::vector<Rational>>& rows, Ring ring);

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }
  const Ring& ring() const noexcept { return ring_; }

  const Rational& operator()(int i, int j) const { return data_[index(i, j)]; }
  /// Assigns after coercing into the ring.
  void set(int i, int j, const Rational& v) { data_[index(i, j)] = ring_.coerce(v); }
  std::span<const Rational> row(int i) const { return {data_.data() + index(i, 0), static_cast<std::size_t>(cols_)}; }

  ExactMatrix operator*(const ExactMatrix& other) const;
  Vector operator*(const Vector& v) const;
  friend bool operator==(const ExactMatrix& a, const ExactMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.ring_ == b.ring_ && a.data_ == b.data_;
  }

 private:
  std::size_t index(int i, int j) const { return static_cast<std::size_t>(i) * cols_ + j; }

  int rows_, cols_;
  Ring ring_;
  std::vector<Rational> data_;
};

/// Incremental reduced row echelon form over a field.
///
/// Rows are added one at a time; each is reduced against the current
/// pivots and, if independent, becomes a new pivot row that is then
/// eliminated from all earlier rows.
class RowReducer {
 public:
  RowReducer(int cols, Ring field, std::stop_token stop = {});

  /// Returns true if the row increased the rank. Entries must lie in the field.
  bool add_row(const SparseRow& row);

  int cols() const noexcept { return cols_; }
  int rank() const noexcept { return static_cast<int>(rows_.size()); }
  const Ring& field() const noexcept { return field_; }
  bool is_pivot(int col) const { return pivot_of_col_[col] >= 0; }
  /// Pivot columns in increasing order.
  std::vector<int> pivot_columns() const;
  /// Fully reduced row whose leading entry (equal to 1) is in column col.
  const SparseRow& pivot_row(int col) const { return rows_[pivot_of_col_[col]]; }

  /// Kernel basis of the accumulated rows restricted to columns [0, ncols):
  /// one vector per free column f, in increasing f, with v[f] = 1.
  std::vector<Vector> kernel_basis(int ncols) const;
  std::vector<Vector> kernel_basis() const { return kernel_basis(cols_); }

 private:
  int cols_;
  Ring field_;
  std::stop_token stop_;
  std::vector<SparseRow> rows_;
  std::vector<int> pivot_of_col_;
  std::vector<Rational> scratch_;
  std::vector<char> touched_;
};

/// Entry of a sparse row, zero when absent.
Rational sparse_at(const SparseRow& row, int col);
SparseRow to_sparse(std::span<const Rational> dense);

/// Basis of {x : A x = 0}. Throws NotAField for integer matrices.
std::vector<Vector> kernel_basis(const ExactMatrix& a, std::stop_token stop = {});
/// Canonical particular solution of A x = b (free coordinates zero), or nullopt.
std::optional<Vector> solve(const ExactMatrix& a, const Vector& b, std::stop_token stop = {});
int rank(const ExactMatrix& a);
/// Nonzero rows of the reduced row echelon form, top to bottom.
std::vector<Vector> row_space_basis(const std::vector<Vector>& rows, Ring field);
/// True iff v lies in the span of the given vectors.
bool in_span(const std::vector<Vector>& basis, const Vector& v, Ring field);

/// U * A * V = S, U and V unimodular, S diagonal with d_1 | d_2 | ... and d_i >= 0.
struct SNFDecomposition {
  ExactMatrix U, S, V;
  int rank = 0;
  std::vector<Integer> diagonal() const;
};

SNFDecomposition smith_normal_form(const ExactMatrix& a);
/// Integral solution of A x = b via the Smith normal form, or nullopt.
std::optional<Vector> integer_solve(const ExactMatrix& a, const Vector& b);
/// Fraction-free (Bareiss) determinant of a square integer matrix.
Integer determinant(const ExactMatrix& a);

/// gcd of absolute values; 0 for an empty or all-zero list.
Integer gcd_list(std::span<const Integer> values);
/// d | m with the convention 0 | m iff m = 0.
bool divides(const Integer& d, const Integer& m);

}  // namespace grpder
