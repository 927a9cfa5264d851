#include "grpder/group.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cstdlib>
#include <numeric>

#include "grpder/errors.hpp"

namespace grpder {

std::size_t default_max_order() {
  if (const char* env = std::getenv("GRPDER_MAX_ORDER")) {
    std::size_t value = 0;
    std::string_view s(env);
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec == std::errc() && ptr == s.data() + s.size() && value > 0) return value;
  }
  return 4096;
}

std::string FiniteGroup::label(int i) const {
  if (has_labels()) return labels_[i];
  return std::to_string(i);
}

int FiniteGroup::find_label(std::string_view label) const {
  for (int i = 0; i < n_ && has_labels(); ++i)
    if (labels_[i] == label) return i;
  return -1;
}

bool FiniteGroup::is_abelian() const {
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j)
      if (mul(i, j) != mul(j, i)) return false;
  return true;
}

int FiniteGroup::element_order(int i) const {
  int k = 1;
  for (int p = i; p != 0; p = mul(p, i)) ++k;
  return k;
}

bool Subset::contains(int i) const { return std::binary_search(members.begin(), members.end(), i); }

namespace {

// Elements reachable from the identity by right multiplication with gens.
std::vector<char> right_closure(const std::vector<int>& table, int n, const std::vector<int>& gens) {
  std::vector<char> seen(n, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    for (int g : gens) {
      int y = table[static_cast<std::size_t>(x) * n + g];
      if (!seen[y]) {
        seen[y] = 1;
        stack.push_back(y);
      }
    }
  }
  return seen;
}

std::vector<int> greedy_generators(const std::vector<int>& table, int n) {
  std::vector<int> gens;
  std::vector<char> seen = right_closure(table, n, gens);
  for (int i = 0; i < n; ++i) {
    if (seen[i]) continue;
    gens.push_back(i);
    seen = right_closure(table, n, gens);
  }
  return gens;
}

}  // namespace

GroupPtr make_from_table(const std::vector<std::vector<int>>& rows, std::vector<std::string> labels,
                         std::size_t max_order) {
  using R = NotAGroup::Reason;
  const std::size_t n = rows.size();
  if (n == 0) throw NotAGroup(R::Malformed, "empty table");
  if (n > max_order)
    throw OrderTooLarge("group order " + std::to_string(n) + " exceeds cap " + std::to_string(max_order));
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n) throw NotAGroup(R::Malformed, "table is not square");
    for (int v : rows[i])
      if (v < 0 || static_cast<std::size_t>(v) >= n)
        throw NotAGroup(R::Malformed, "entry " + std::to_string(v) + " out of range");
  }
  if (!labels.empty() && labels.size() != n)
    throw NotAGroup(R::Malformed, "label count does not match order");

  const int order = static_cast<int>(n);
  std::vector<int> table(n * n);
  for (std::size_t i = 0; i < n; ++i) std::copy(rows[i].begin(), rows[i].end(), table.begin() + i * n);
  auto at = [&](int i, int j) { return table[static_cast<std::size_t>(i) * n + j]; };

  for (int i = 0; i < order; ++i)
    if (at(0, i) != i || at(i, 0) != i)
      throw NotAGroup(R::NoIdentityAtZero, "index 0 is not a two-sided identity at " + std::to_string(i));

  std::vector<char> seen(n);
  for (int i = 0; i < order; ++i) {
    std::fill(seen.begin(), seen.end(), 0);
    for (int j = 0; j < order; ++j) {
      if (seen[at(i, j)]) throw NotAGroup(R::NotLatin, "row " + std::to_string(i) + " repeats an entry");
      seen[at(i, j)] = 1;
    }
    std::fill(seen.begin(), seen.end(), 0);
    for (int j = 0; j < order; ++j) {
      if (seen[at(j, i)]) throw NotAGroup(R::NotLatin, "column " + std::to_string(i) + " repeats an entry");
      seen[at(j, i)] = 1;
    }
  }

  std::vector<int> inverse(n, -1);
  for (int i = 0; i < order; ++i) {
    for (int j = 0; j < order; ++j)
      if (at(i, j) == 0 && at(j, i) == 0) inverse[i] = j;
    if (inverse[i] < 0) throw NotAGroup(R::NoInverse, "element " + std::to_string(i) + " has no inverse");
  }

  // Light's test: (x a) y = x (a y) for all x, y and a ranging over a
  // generating set is equivalent to full associativity.
  for (int a : greedy_generators(table, order))
    for (int x = 0; x < order; ++x)
      for (int y = 0; y < order; ++y)
        if (at(at(x, a), y) != at(x, at(a, y)))
          throw NotAGroup(R::NotAssociative, "(" + std::to_string(x) + "*" + std::to_string(a) + ")*" +
                                                 std::to_string(y) + " differs");

  std::shared_ptr<FiniteGroup> g(new FiniteGroup());
  g->n_ = order;
  g->table_ = std::move(table);
  g->inverse_ = std::move(inverse);
  g->labels_ = std::move(labels);
  return g;
}

namespace {

GroupPtr build(int n, auto&& product, std::vector<std::string> labels) {
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) t[i][j] = product(i, j);
  return make_from_table(t, std::move(labels), std::max<std::size_t>(default_max_order(), n));
}

GroupPtr cyclic(int n) {
  std::vector<std::string> labels{"e"};
  for (int k = 1; k < n; ++k) labels.push_back(k == 1 ? "g" : "g^" + std::to_string(k));
  return build(n, [n](int i, int j) { return (i + j) % n; }, std::move(labels));
}

// r^a s^b at index a + m*b, with s r s = r^{-1}.
GroupPtr dihedral(int m) {
  std::vector<std::string> labels;
  for (int b = 0; b < 2; ++b)
    for (int a = 0; a < m; ++a) {
      std::string r = a == 0 ? "" : (a == 1 ? "r" : "r" + std::to_string(a));
      std::string s = b == 0 ? "" : "s";
      labels.push_back(r.empty() && s.empty() ? "e" : r + s);
    }
  return build(2 * m,
               [m](int i, int j) {
                 int a = i % m, b = i / m, c = j % m, d = j / m;
                 int e = ((b == 0 ? a + c : a - c) % m + m) % m;
                 return e + m * ((b + d) % 2);
               },
               std::move(labels));
}

// +-u for u in {1, i, j, k}; index 2*u + (negative ? 1 : 0).
GroupPtr quaternion() {
  // unit products as (sign, unit)
  static constexpr std::array<std::array<std::pair<int, int>, 4>, 4> units{{
      {{{1, 0}, {1, 1}, {1, 2}, {1, 3}}},
      {{{1, 1}, {-1, 0}, {1, 3}, {-1, 2}}},
      {{{1, 2}, {-1, 3}, {-1, 0}, {1, 1}}},
      {{{1, 3}, {1, 2}, {-1, 1}, {-1, 0}}},
  }};
  return build(8,
               [](int x, int y) {
                 auto [s, u] = units[x / 2][y / 2];
                 int sign = s * (x % 2 ? -1 : 1) * (y % 2 ? -1 : 1);
                 return 2 * u + (sign < 0 ? 1 : 0);
               },
               {"1", "-1", "i", "-i", "j", "-j", "k", "-k"});
}

// Even permutations of {0,1,2,3} in lexicographic one-line order; the
// product p*q is the composition p(q(x)).
GroupPtr alternating4() {
  std::array<int, 4> p{0, 1, 2, 3};
  std::vector<std::array<int, 4>> perms;
  do {
    int inversions = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) inversions += p[i] > p[j];
    if (inversions % 2 == 0) perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  std::vector<std::string> labels;
  for (const auto& q : perms) {
    std::string s;
    for (int v : q) s += static_cast<char>('0' + v);
    labels.push_back(s == "0123" ? "e" : s);
  }
  return build(static_cast<int>(perms.size()),
               [&](int i, int j) {
                 std::array<int, 4> c{};
                 for (int x = 0; x < 4; ++x) c[x] = perms[i][perms[j][x]];
                 return static_cast<int>(std::find(perms.begin(), perms.end(), c) - perms.begin());
               },
               std::move(labels));
}

}  // namespace

GroupPtr standard_group(std::string_view name) {
  if (name == "D4") return dihedral(4);
  if (name == "S3") return dihedral(3);
  if (name == "Q8") return quaternion();
  if (name == "A4") return alternating4();
  if (name == "C2xC2") {
    auto c2 = cyclic(2);
    auto v = direct_product(c2, c2);
    std::vector<std::vector<int>> t(4, std::vector<int>(4));
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) t[i][j] = v->mul(i, j);
    return make_from_table(t, {"e", "b", "a", "ab"});
  }
  if (name.size() >= 2 && name[0] == 'C') {
    std::string_view digits = name.substr(name[1] == '_' ? 2 : 1);
    int n = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), n);
    if (!digits.empty() && ec == std::errc() && ptr == digits.data() + digits.size() && n >= 1)
      return cyclic(n);
  }
  throw UnknownGroupName("unknown group name '" + std::string(name) + "'");
}

GroupPtr direct_product(const GroupPtr& g1, const GroupPtr& g2) {
  const int n1 = g1->order(), n2 = g2->order();
  std::vector<std::vector<int>> t(static_cast<std::size_t>(n1) * n2, std::vector<int>(n1 * n2));
  for (int a = 0; a < n1 * n2; ++a)
    for (int b = 0; b < n1 * n2; ++b) t[a][b] = g1->mul(a / n2, b / n2) * n2 + g2->mul(a % n2, b % n2);
  std::vector<std::string> labels;
  if (g1->has_labels() || g2->has_labels()) {
    for (int a = 0; a < n1 * n2; ++a) labels.push_back("(" + g1->label(a / n2) + "," + g2->label(a % n2) + ")");
  }
  return make_from_table(t, std::move(labels));
}

Subset center(const GroupPtr& g) {
  Subset z{g, {}};
  for (int i = 0; i < g->order(); ++i) {
    bool central = true;
    for (int j = 0; j < g->order() && central; ++j) central = g->mul(i, j) == g->mul(j, i);
    if (central) z.members.push_back(i);
  }
  return z;
}

std::vector<Subset> conjugacy_classes(const GroupPtr& g) {
  const int n = g->order();
  std::vector<char> done(n, 0);
  std::vector<Subset> classes;
  for (int i = 0; i < n; ++i) {
    if (done[i]) continue;
    Subset c{g, {}};
    for (int h = 0; h < n; ++h) {
      int x = g->conjugate(i, h);
      if (!done[x]) {
        done[x] = 1;
        c.members.push_back(x);
      }
    }
    std::sort(c.members.begin(), c.members.end());
    classes.push_back(std::move(c));
  }
  return classes;
}

std::vector<int> center_transversal(const GroupPtr& g) {
  const Subset z = center(g);
  std::vector<char> covered(g->order(), 0);
  std::vector<int> reps;
  for (int i = 0; i < g->order(); ++i) {
    if (covered[i]) continue;
    reps.push_back(i);
    for (int c : z.members) covered[g->mul(i, c)] = 1;
  }
  return reps;
}

std::vector<int> generators(const FiniteGroup& g) { return greedy_generators(g.table(), g.order()); }

bool same_group(const GroupPtr& a, const GroupPtr& b) {
  return a == b || (a && b && a->same_table(*b));
}

bool is_homomorphism(const FiniteGroup& g, std::span<const int> f) {
  const int n = g.order();
  if (static_cast<int>(f.size()) != n) return false;
  for (int v : f)
    if (v < 0 || v >= n) return false;
  if (f[0] != 0) return false;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (f[g.mul(i, j)] != g.mul(f[i], f[j])) return false;
  return true;
}

bool is_automorphism(const FiniteGroup& g, std::span<const int> f) {
  if (!is_homomorphism(g, f)) return false;
  std::vector<int> sorted(f.begin(), f.end());
  std::sort(sorted.begin(), sorted.end());
  return std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
}

std::vector<int> conjugation_map(const FiniteGroup& g, int a) {
  std::vector<int> f(g.order());
  for (int i = 0; i < g.order(); ++i) f[i] = g.conjugate(i, a);
  return f;
}

}  // namespace grpder
