#include "grpder/linalg.hpp"

#include <algorithm>
#include <stdexcept>

#include "grpder/errors.hpp"

namespace grpder {

ExactMatrix::ExactMatrix(int rows, int cols, Ring ring)
    : rows_(rows), cols_(cols), ring_(ring), data_(static_cast<std::size_t>(rows) * cols) {
  if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix dimension");
}

ExactMatrix::ExactMatrix(int rows, int cols, Ring ring, std::vector<Rational> entries)
    : rows_(rows), cols_(cols), ring_(ring), data_(std::move(entries)) {
  if (rows < 0 || cols < 0 || data_.size() != static_cast<std::size_t>(rows) * cols)
    throw std::invalid_argument("matrix dimensions do not match entry count");
  for (const auto& v : data_)
    if (!ring_.contains(v)) throw MixedRings("entry " + to_string(v) + " is not in " + ring_.name());
}

ExactMatrix ExactMatrix::identity(int n, Ring ring) {
  ExactMatrix m(n, n, ring);
  for (int i = 0; i < n; ++i) m.data_[m.index(i, i)] = 1;
  return m;
}

ExactMatrix ExactMatrix::from_rows(const std::vector<std::vector<Rational>>& rows, Ring ring) {
  const int r = static_cast<int>(rows.size());
  const int c = r ? static_cast<int>(rows[0].size()) : 0;
  ExactMatrix m(r, c, ring);
  for (int i = 0; i < r; ++i) {
    if (static_cast<int>(rows[i].size()) != c) throw std::invalid_argument("ragged rows");
    for (int j = 0; j < c; ++j) m.set(i, j, rows[i][j]);
  }
  return m;
}

ExactMatrix ExactMatrix::operator*(const ExactMatrix& other) const {
  if (!(ring_ == other.ring_)) throw MixedRings("matrix product over " + ring_.name() + " and " + other.ring_.name());
  if (cols_ != other.rows_) throw std::invalid_argument("matrix product dimension mismatch");
  ExactMatrix out(rows_, other.cols_, ring_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const Rational& a = (*this)(i, k);
      if (a == 0) continue;
      for (int j = 0; j < other.cols_; ++j) out.data_[out.index(i, j)] += a * other(k, j);
    }
  for (auto& v : out.data_) ring_.reduce(v);
  return out;
}

Vector ExactMatrix::operator*(const Vector& v) const {
  if (static_cast<int>(v.size()) != cols_) throw std::invalid_argument("matrix-vector dimension mismatch");
  Vector out(rows_);
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < cols_; ++j)
      if ((*this)(i, j) != 0) out[i] += (*this)(i, j) * v[j];
    ring_.reduce(out[i]);
  }
  return out;
}

// ---------------------------------------------------------------------------

RowReducer::RowReducer(int cols, Ring field, std::stop_token stop)
    : cols_(cols), field_(field), stop_(std::move(stop)), pivot_of_col_(cols, -1), scratch_(cols), touched_(cols, 0) {
  if (!field_.is_field()) throw NotAField("row reduction requires a field, got " + field_.name());
}

Rational sparse_at(const SparseRow& row, int col) {
  auto it = std::lower_bound(row.begin(), row.end(), col, [](const auto& e, int c) { return e.first < c; });
  if (it != row.end() && it->first == col) return it->second;
  return 0;
}

SparseRow to_sparse(std::span<const Rational> dense) {
  SparseRow row;
  for (std::size_t j = 0; j < dense.size(); ++j)
    if (dense[j] != 0) row.emplace_back(static_cast<int>(j), dense[j]);
  return row;
}

bool RowReducer::add_row(const SparseRow& row) {
  if (stop_.stop_requested()) throw Cancelled("row reduction cancelled");

  std::vector<int> touched;
  touched.reserve(row.size() * 2);
  auto touch = [&](int k) {
    if (!touched_[k]) {
      touched_[k] = 1;
      scratch_[k] = 0;
      touched.push_back(k);
    }
  };
  for (const auto& [c, v] : row) {
    touch(c);
    scratch_[c] += v;
  }
  // Pivot rows are fully reduced, so subtracting one never disturbs the
  // entries of the incoming row at other pivot columns.
  for (const auto& [c, v] : row) {
    const int p = pivot_of_col_[c];
    if (p < 0) continue;
    const Rational f = v;
    for (const auto& [k, w] : rows_[p]) {
      touch(k);
      scratch_[k] -= f * w;
      field_.reduce(scratch_[k]);
    }
  }
  std::sort(touched.begin(), touched.end());
  SparseRow reduced;
  for (int k : touched) {
    if (scratch_[k] != 0) reduced.emplace_back(k, std::move(scratch_[k]));
    scratch_[k] = 0;
    touched_[k] = 0;
  }
  if (reduced.empty()) return false;

  const int lead = reduced.front().first;
  if (reduced.front().second != 1) {
    const Rational inv = field_.inverse(reduced.front().second);
    for (auto& [k, w] : reduced) {
      w *= inv;
      field_.reduce(w);
    }
  }

  for (auto& existing : rows_) {
    const Rational f = sparse_at(existing, lead);
    if (f == 0) continue;
    SparseRow merged;
    merged.reserve(existing.size() + reduced.size());
    auto a = existing.begin();
    auto b = reduced.begin();
    while (a != existing.end() || b != reduced.end()) {
      if (b == reduced.end() || (a != existing.end() && a->first < b->first)) {
        merged.push_back(std::move(*a++));
      } else if (a == existing.end() || b->first < a->first) {
        Rational w = -f * b->second;
        field_.reduce(w);
        merged.emplace_back(b->first, std::move(w));
        ++b;
      } else {
        Rational w = a->second - f * b->second;
        field_.reduce(w);
        if (w != 0) merged.emplace_back(a->first, std::move(w));
        ++a;
        ++b;
      }
    }
    existing = std::move(merged);
  }
  pivot_of_col_[lead] = static_cast<int>(rows_.size());
  rows_.push_back(std::move(reduced));
  return true;
}

std::vector<int> RowReducer::pivot_columns() const {
  std::vector<int> out;
  for (int c = 0; c < cols_; ++c)
    if (pivot_of_col_[c] >= 0) out.push_back(c);
  return out;
}

std::vector<Vector> RowReducer::kernel_basis(int ncols) const {
  std::vector<Vector> basis;
  const std::vector<int> pivots = pivot_columns();
  for (int f = 0; f < ncols; ++f) {
    if (is_pivot(f)) continue;
    Vector v(ncols);
    v[f] = 1;
    for (int p : pivots) {
      if (p >= ncols) break;
      Rational w = -sparse_at(pivot_row(p), f);
      field_.reduce(w);
      v[p] = std::move(w);
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

namespace {

Ring field_for(const ExactMatrix& a) {
  if (!a.ring().is_field()) throw NotAField("operation requires a field, matrix is over " + a.ring().name());
  return a.ring();
}

}  // namespace

std::vector<Vector> kernel_basis(const ExactMatrix& a, std::stop_token stop) {
  RowReducer rr(a.cols(), field_for(a), std::move(stop));
  for (int i = 0; i < a.rows(); ++i) rr.add_row(to_sparse(a.row(i)));
  return rr.kernel_basis();
}

std::optional<Vector> solve(const ExactMatrix& a, const Vector& b, std::stop_token stop) {
  const Ring field = field_for(a);
  if (static_cast<int>(b.size()) != a.rows()) throw std::invalid_argument("solve: right-hand side has wrong length");
  for (const auto& v : b)
    if (!field.contains(v)) throw MixedRings("right-hand side entry " + to_string(v) + " is not in " + field.name());
  const int n = a.cols();
  RowReducer rr(n + 1, field, std::move(stop));
  for (int i = 0; i < a.rows(); ++i) {
    SparseRow row = to_sparse(a.row(i));
    if (b[i] != 0) row.emplace_back(n, b[i]);
    rr.add_row(row);
  }
  if (rr.is_pivot(n)) return std::nullopt;
  Vector x(n);
  for (int p : rr.pivot_columns())
    if (p < n) x[p] = sparse_at(rr.pivot_row(p), n);
  return x;
}

int rank(const ExactMatrix& a) {
  RowReducer rr(a.cols(), a.ring().is_field() ? a.ring() : Ring::rationals());
  for (int i = 0; i < a.rows(); ++i) rr.add_row(to_sparse(a.row(i)));
  return rr.rank();
}

std::vector<Vector> row_space_basis(const std::vector<Vector>& rows, Ring field) {
  if (rows.empty()) return {};
  const int n = static_cast<int>(rows[0].size());
  RowReducer rr(n, field);
  for (const auto& r : rows) rr.add_row(to_sparse(r));
  std::vector<Vector> out;
  for (int p : rr.pivot_columns()) {
    Vector v(n);
    for (const auto& [k, w] : rr.pivot_row(p)) v[k] = w;
    out.push_back(std::move(v));
  }
  return out;
}

bool in_span(const std::vector<Vector>& basis, const Vector& v, Ring field) {
  RowReducer rr(static_cast<int>(v.size()), field);
  for (const auto& b : basis) rr.add_row(to_sparse(b));
  return !rr.add_row(to_sparse(v));
}

// ---------------------------------------------------------------------------

namespace {

struct IntMat {
  int m, n;
  std::vector<Integer> a;
  IntMat(int rows, int cols) : m(rows), n(cols), a(static_cast<std::size_t>(rows) * cols) {}
  Integer& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }
  const Integer& operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * n + j]; }
  static IntMat identity(int k) {
    IntMat id(k, k);
    for (int i = 0; i < k; ++i) id(i, i) = 1;
    return id;
  }
  void swap_rows(int i, int j) {
    if (i == j) return;
    for (int c = 0; c < n; ++c) std::swap((*this)(i, c), (*this)(j, c));
  }
  void swap_cols(int i, int j) {
    if (i == j) return;
    for (int r = 0; r < m; ++r) std::swap((*this)(r, i), (*this)(r, j));
  }
  // row_i += f * row_j
  void add_row(int i, int j, const Integer& f) {
    for (int c = 0; c < n; ++c)
      if ((*this)(j, c) != 0) (*this)(i, c) += f * (*this)(j, c);
  }
  void add_col(int i, int j, const Integer& f) {
    for (int r = 0; r < m; ++r)
      if ((*this)(r, j) != 0) (*this)(r, i) += f * (*this)(r, j);
  }
  ExactMatrix to_exact() const {
    std::vector<Rational> e(a.begin(), a.end());
    return ExactMatrix(m, n, Ring::integers(), std::move(e));
  }
};

IntMat to_int(const ExactMatrix& x) {
  if (x.ring().kind() != Ring::Kind::Integer)
    throw MixedRings("integer routine called on a matrix over " + x.ring().name());
  IntMat out(x.rows(), x.cols());
  for (int i = 0; i < x.rows(); ++i)
    for (int j = 0; j < x.cols(); ++j) out(i, j) = x(i, j).get_num();
  return out;
}

}  // namespace

std::vector<Integer> SNFDecomposition::diagonal() const {
  std::vector<Integer> d;
  for (int i = 0; i < std::min(S.rows(), S.cols()); ++i) d.push_back(S(i, i).get_num());
  return d;
}

SNFDecomposition smith_normal_form(const ExactMatrix& input) {
  IntMat s = to_int(input);
  const int m = s.m, n = s.n;
  IntMat u = IntMat::identity(m), v = IntMat::identity(n);

  // Smallest nonzero |entry| of the trailing block, first in scan order on ties.
  auto min_entry = [&](int t, int& pi, int& pj) {
    pi = pj = -1;
    for (int i = t; i < m; ++i)
      for (int j = t; j < n; ++j)
        if (s(i, j) != 0 && (pi < 0 || abs(s(i, j)) < abs(s(pi, pj)))) {
          pi = i;
          pj = j;
        }
    return pi >= 0;
  };

  int t = 0;
  for (; t < std::min(m, n); ++t) {
    int pi, pj;
    if (!min_entry(t, pi, pj)) break;
    s.swap_rows(t, pi);
    u.swap_rows(t, pi);
    s.swap_cols(t, pj);
    v.swap_cols(t, pj);

    for (;;) {
      bool clean = true;
      for (int i = t + 1; i < m; ++i) {
        if (s(i, t) == 0) continue;
        Integer q;
        mpz_tdiv_q(q.get_mpz_t(), s(i, t).get_mpz_t(), s(t, t).get_mpz_t());
        s.add_row(i, t, -q);
        u.add_row(i, t, -q);
        if (s(i, t) != 0) clean = false;
      }
      for (int j = t + 1; j < n; ++j) {
        if (s(t, j) == 0) continue;
        Integer q;
        mpz_tdiv_q(q.get_mpz_t(), s(t, j).get_mpz_t(), s(t, t).get_mpz_t());
        s.add_col(j, t, -q);
        v.add_col(j, t, -q);
        if (s(t, j) != 0) clean = false;
      }
      if (!clean) {
        // A remainder smaller than the pivot is left in row or column t.
        int bi = t, bj = t;
        for (int i = t + 1; i < m; ++i)
          if (s(i, t) != 0 && abs(s(i, t)) < abs(s(bi, bj))) bi = i, bj = t;
        for (int j = t + 1; j < n; ++j)
          if (s(t, j) != 0 && abs(s(t, j)) < abs(s(bi, bj))) bi = t, bj = j;
        s.swap_rows(t, bi);
        u.swap_rows(t, bi);
        s.swap_cols(t, bj);
        v.swap_cols(t, bj);
        continue;
      }
      int bad = -1;
      for (int i = t + 1; i < m && bad < 0; ++i)
        for (int j = t + 1; j < n; ++j)
          if (!divides(s(t, t), s(i, j))) {
            bad = i;
            break;
          }
      if (bad < 0) break;
      s.add_row(t, bad, 1);
      u.add_row(t, bad, 1);
    }
    if (s(t, t) < 0) {
      for (int c = 0; c < n; ++c) s(t, c) = -s(t, c);
      for (int c = 0; c < m; ++c) u(t, c) = -u(t, c);
    }
  }
  return SNFDecomposition{u.to_exact(), s.to_exact(), v.to_exact(), t};
}

std::optional<Vector> integer_solve(const ExactMatrix& a, const Vector& b) {
  if (static_cast<int>(b.size()) != a.rows()) throw std::invalid_argument("integer_solve: right-hand side has wrong length");
  for (const auto& x : b)
    if (x.get_den() != 1) throw MixedRings("integer_solve: right-hand side entry " + to_string(x) + " is not an integer");
  const SNFDecomposition snf = smith_normal_form(a);
  const Vector c = snf.U * b;
  Vector y(a.cols());
  for (int i = 0; i < a.rows(); ++i) {
    if (i < snf.rank) {
      const Integer d = snf.S(i, i).get_num();
      if (!divides(d, c[i].get_num())) return std::nullopt;
      y[i] = Rational(Integer(c[i].get_num() / d));
    } else if (c[i] != 0) {
      return std::nullopt;
    }
  }
  return snf.V * y;
}

Integer determinant(const ExactMatrix& x) {
  if (x.rows() != x.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  IntMat a = to_int(x);
  const int n = a.m;
  if (n == 0) return 1;
  int sign = 1;
  Integer prev = 1;
  for (int k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      int r = k + 1;
      while (r < n && a(r, k) == 0) ++r;
      if (r == n) return 0;
      a.swap_rows(k, r);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) {
        Integer num = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(a(i, j).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
      }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

Integer gcd_list(std::span<const Integer> values) {
  Integer g = 0;
  for (const auto& v : values) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
  return g;
}

bool divides(const Integer& d, const Integer& m) {
  if (d == 0) return m == 0;
  return mpz_divisible_p(m.get_mpz_t(), d.get_mpz_t()) != 0;
}

}  // namespace grpder
