#pragma once

// Finite groups stored as validated Cayley tables.
//
// Elements are indices 0..n-1 and index 0 is always the identity. Tables
// are immutable after construction and shared through GroupPtr.

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace grpder {

class FiniteGroup;
using GroupPtr = std::shared_ptr<const FiniteGroup>;

/// Order cap applied when no explicit cap is passed: $GRPDER_MAX_ORDER or 4096.
std::size_t default_max_order();

class FiniteGroup {
 public:
  int order() const noexcept { return n_; }
  int mul(int i, int j) const noexcept { return table_[static_cast<std::size_t>(i) * n_ + j]; }
  int inverse(int i) const noexcept { return inverse_[i]; }
  /// i^{-1} j
  int left_div(int i, int j) const noexcept { return mul(inverse_[i], j); }
  /// i j^{-1}
  int right_div(int i, int j) const noexcept { return mul(i, inverse_[j]); }
  int conjugate(int g, int by) const noexcept { return mul(mul(by, g), inverse_[by]); }

  std::span<const int> row(int i) const {
    return {table_.data() + static_cast<std::size_t>(i) * n_, static_cast<std::size_t>(n_)};
  }
  const std::vector<int>& table() const noexcept { return table_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  bool has_labels() const noexcept { return !labels_.empty(); }
  /// Label if present, otherwise the decimal index.
  std::string label(int i) const;
  /// Index of the element with the given label, or -1.
  int find_label(std::string_view label) const;

  bool is_abelian() const;
  int element_order(int i) const;
  bool same_table(const FiniteGroup& other) const { return n_ == other.n_ && table_ == other.table_; }

 private:
  friend GroupPtr make_from_table(const std::vector<std::vector<int>>&, std::vector<std::string>,
                                  std::size_t);
  FiniteGroup() = default;

  int n_ = 0;
  std::vector<int> table_;
  std::vector<int> inverse_;
  std::vector<std::string> labels_;
};

/// Sorted, duplicate-free set of element indices of a parent group.
struct Subset {
  GroupPtr parent;
  std::vector<int> members;

  std::size_t size() const noexcept { return members.size(); }
  bool contains(int i) const;
};

/// Validates identity-at-0, Latin square, inverses and associativity.
/// Throws NotAGroup, or OrderTooLarge when n exceeds max_order.
GroupPtr make_from_table(const std::vector<std::vector<int>>& table,
                         std::vector<std::string> labels = {},
                         std::size_t max_order = default_max_order());

/// C_n / Cn, C2xC2, S3, D4, Q8, A4. Element orderings are documented in README.md.
GroupPtr standard_group(std::string_view name);

/// Index of (a, b) is a * |G2| + b.
GroupPtr direct_product(const GroupPtr& g1, const GroupPtr& g2);

Subset center(const GroupPtr& g);
/// Orbits under conjugation, sorted by least member.
std::vector<Subset> conjugacy_classes(const GroupPtr& g);
/// Least index of each coset of the center, ascending (so 0 comes first).
std::vector<int> center_transversal(const GroupPtr& g);

/// Greedy generating set: repeatedly adds the least element not yet reached.
std::vector<int> generators(const FiniteGroup& g);

bool same_group(const GroupPtr& a, const GroupPtr& b);

/// Checks f(0) = 0 and f(ij) = f(i) f(j).
bool is_homomorphism(const FiniteGroup& g, std::span<const int> f);
bool is_automorphism(const FiniteGroup& g, std::span<const int> f);
/// g -> a g a^{-1}
std::vector<int> conjugation_map(const FiniteGroup& g, int a);

}  // namespace grpder
