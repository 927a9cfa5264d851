#include <doctest.h>

#include <random>

#include "grpder/errors.hpp"
#include "grpder/linalg.hpp"

using namespace grpder;

namespace {

const Ring Z = Ring::integers();
const Ring Q = Ring::rationals();

// Cofactor expansion; exponential but fine up to 5x5.
Integer cofactor_det(const std::vector<std::vector<Integer>>& m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  if (n == 1) return m[0][0];
  Integer det = 0;
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<std::vector<Integer>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<Integer> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(m[r][k]);
      minor.push_back(row);
    }
    det += (c % 2 ? -1 : 1) * m[0][c] * cofactor_det(minor);
  }
  return det;
}

// k-th determinantal divisor: gcd of all k x k minors.
Integer determinantal_divisor(const ExactMatrix& a, int k) {
  Integer g = 0;
  std::vector<int> rows(k), cols(k);
  auto next = [](std::vector<int>& idx, int n) {
    int i = static_cast<int>(idx.size()) - 1;
    while (i >= 0 && idx[i] == n - static_cast<int>(idx.size()) + i) --i;
    if (i < 0) return false;
    ++idx[i];
    for (int j = i + 1; j < static_cast<int>(idx.size()); ++j) idx[j] = idx[j - 1] + 1;
    return true;
  };
  for (int i = 0; i < k; ++i) rows[i] = i;
  do {
    for (int i = 0; i < k; ++i) cols[i] = i;
    do {
      std::vector<std::vector<Integer>> m(k, std::vector<Integer>(k));
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) m[i][j] = a(rows[i], cols[j]).get_num();
      g = gcd(g, cofactor_det(m));
    } while (next(cols, a.cols()));
  } while (next(rows, a.rows()));
  return g;
}

ExactMatrix random_matrix(std::mt19937_64& rng, int r, int c, int lo, int hi) {
  std::uniform_int_distribution<int> d(lo, hi);
  ExactMatrix a(r, c, Z);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) a.set(i, j, d(rng));
  return a;
}

}  // namespace

TEST_CASE("scalar rings") {
  CHECK(Ring::prime_field(5).coerce(Rational(1, 2)) == 3);
  CHECK(Ring::prime_field(5).coerce(-1) == 4);
  CHECK_THROWS_AS(Ring::prime_field(5).coerce(Rational(1, 5)), MixedRings);
  CHECK_THROWS_AS(Z.coerce(Rational(1, 2)), MixedRings);
  CHECK(Q.coerce(Rational(1, 2)) == Rational(1, 2));
  CHECK_THROWS_AS(Ring::prime_field(4), NotAField);
  CHECK_THROWS_AS(Ring::prime_field(1), NotAField);
  CHECK_THROWS_AS(Z.inverse(2), NotAField);
  CHECK(Ring::prime_field(7).inverse(3) == 5);
  CHECK(parse_ring("F5") == Ring::prime_field(5));
  CHECK(parse_ring("Z") == Z);
  CHECK_THROWS_AS(parse_ring("R"), ParseError);
  CHECK(Ring::prime_field(11).name() == "F11");
  CHECK(parse_rational("-1/2") == Rational(-1, 2));
  CHECK(parse_rational("4/2") == 2);
  CHECK(to_string(Rational(-3, 6)) == "-1/2");
  CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
  CHECK_THROWS_AS(parse_rational("x"), ParseError);
  CHECK_THROWS_AS(parse_rational(""), ParseError);
}

TEST_CASE("kernel and solve on a hand-reduced system") {
  // [1 2 3; 2 4 6; 1 0 1] has RREF [1 0 1; 0 1 1; 0 0 0], kernel spanned by (-1, -1, 1).
  auto a = ExactMatrix::from_rows({{1, 2, 3}, {2, 4, 6}, {1, 0, 1}}, Q);
  CHECK(rank(a) == 2);
  const auto k = kernel_basis(a);
  REQUIRE(k.size() == 1);
  CHECK(k[0] == Vector{-1, -1, 1});
  CHECK(a * k[0] == Vector{0, 0, 0});

  const auto x = solve(a, Vector{6, 12, 2});
  REQUIRE(x);
  CHECK(*x == Vector{2, 2, 0});  // free coordinate zeroed
  CHECK_FALSE(solve(a, Vector{1, 0, 0}));
  CHECK_THROWS_AS(kernel_basis(ExactMatrix::from_rows({{1}}, Z)), NotAField);
}

TEST_CASE("row reducer over F_2 and Q") {
  RowReducer f2(3, Ring::prime_field(2));
  CHECK(f2.add_row({{0, 1}, {1, 1}}));
  CHECK(f2.add_row({{1, 1}, {2, 1}}));
  CHECK_FALSE(f2.add_row({{0, 1}, {2, 1}}));  // sum of the first two mod 2
  CHECK(f2.rank() == 2);
  CHECK(f2.pivot_columns() == std::vector<int>{0, 1});
  CHECK(f2.pivot_row(0) == SparseRow{{0, 1}, {2, 1}});

  RowReducer q(3, Q);
  CHECK(q.add_row({{0, 1}, {1, 1}}));
  CHECK(q.add_row({{1, 1}, {2, 1}}));
  CHECK(q.add_row({{0, 1}, {2, 1}}));  // independent in characteristic 0
  CHECK(q.kernel_basis().empty());

  std::stop_source src;
  RowReducer stopped(2, Q, src.get_token());
  src.request_stop();
  CHECK_THROWS_AS(stopped.add_row({{0, 1}}), Cancelled);
}

TEST_CASE("span queries") {
  const std::vector<Vector> basis{{1, 1, 0}, {0, 1, 1}};
  CHECK(in_span(basis, {1, 2, 1}, Q));
  CHECK_FALSE(in_span(basis, {1, 0, 0}, Q));
  CHECK(in_span(basis, {1, 0, 1}, Ring::prime_field(2)));
  CHECK(row_space_basis({{2, 2, 0}, {1, 1, 0}, {0, 0, 3}}, Q) == std::vector<Vector>{{1, 1, 0}, {0, 0, 1}});
}

TEST_CASE("Smith normal form of a known matrix") {
  auto a = ExactMatrix::from_rows({{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}}, Z);
  const auto snf = smith_normal_form(a);
  CHECK(snf.diagonal() == std::vector<Integer>{2, 6, 12});
  CHECK(snf.rank == 3);
  CHECK(snf.U * a * snf.V == snf.S);

  auto zero = ExactMatrix(2, 3, Z);
  const auto z = smith_normal_form(zero);
  CHECK(z.rank == 0);
  CHECK(z.diagonal() == std::vector<Integer>{0, 0});
}

TEST_CASE("Smith diagonal matches determinantal divisors") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 60; ++t) {
    const int r = 1 + static_cast<int>(rng() % 4), c = 1 + static_cast<int>(rng() % 4);
    const auto a = random_matrix(rng, r, c, -6, 6);
    const auto snf = smith_normal_form(a);
    CHECK(snf.U * a * snf.V == snf.S);
    const auto d = snf.diagonal();
    Integer prod = 1;
    for (int k = 1; k <= std::min(r, c); ++k) {
      prod *= d[k - 1];
      CHECK(prod == determinantal_divisor(a, k));
    }
  }
}

TEST_CASE("determinant agrees with cofactor expansion") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 40; ++t) {
    const int n = 1 + static_cast<int>(rng() % 5);
    const auto a = random_matrix(rng, n, n, -5, 5);
    std::vector<std::vector<Integer>> m(n, std::vector<Integer>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m[i][j] = a(i, j).get_num();
    CHECK(determinant(a) == cofactor_det(m));
  }
  CHECK(determinant(ExactMatrix::from_rows({{0, 1}, {1, 0}}, Z)) == -1);
}

TEST_CASE("integer solve") {
  auto a = ExactMatrix::from_rows({{2}}, Z);
  CHECK_FALSE(integer_solve(a, {3}));
  CHECK(*integer_solve(a, {4}) == Vector{2});

  auto b = ExactMatrix::from_rows({{2, 0}, {0, 3}, {2, 3}}, Z);
  CHECK(*integer_solve(b, {4, 9, 13}) == Vector{2, 3});
  CHECK_FALSE(integer_solve(b, {4, 9, 14}));  // inconsistent over Q
  CHECK_FALSE(integer_solve(b, {1, 3, 4}));   // x = (1/2, 1) is not integral

  // x + y = 1 is solvable over Z although no entry is 1 in the second form 2x + 4y = 2.
  auto c = ExactMatrix::from_rows({{2, 4}}, Z);
  const auto x = integer_solve(c, {2});
  REQUIRE(x);
  CHECK(c * *x == Vector{2});
  CHECK_FALSE(integer_solve(c, {3}));
}

TEST_CASE("gcd conventions") {
  CHECK(gcd_list(std::vector<Integer>{}) == 0);
  CHECK(gcd_list(std::vector<Integer>{0, 0}) == 0);
  CHECK(gcd_list(std::vector<Integer>{-4, 6}) == 2);
  CHECK(divides(0, 0));
  CHECK_FALSE(divides(0, 3));
  CHECK(divides(-2, 6));
  CHECK_FALSE(divides(4, 6));
}
