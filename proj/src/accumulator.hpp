#pragma once

// Scratch buffer for sums of products of sparse group ring elements.

#include <algorithm>
#include <vector>

#include "grpder/group.hpp"
#include "grpder/linalg.hpp"

namespace grpder::detail {

class Accumulator {
 public:
  Accumulator(const FiniteGroup& group, Ring ring)
      : group_(group), ring_(ring), values_(group.order()), touched_(group.order(), 0) {}

  // += c * a * b
  void add_product(const SparseRow& a, const SparseRow& b, const Rational& c = 1) {
    for (const auto& [i, x] : a)
      for (const auto& [j, y] : b) {
        const int k = group_.mul(i, j);
        touch(k);
        values_[k] += c * x * y;
      }
  }

  // += c * a
  void add(const SparseRow& a, const Rational& c = 1) {
    for (const auto& [i, x] : a) {
      touch(i);
      values_[i] += c * x;
    }
  }

  bool is_zero() {
    for (int k : list_) {
      ring_.reduce(values_[k]);
      if (values_[k] != 0) return false;
    }
    return true;
  }

  SparseRow take() {
    std::sort(list_.begin(), list_.end());
    SparseRow out;
    for (int k : list_) {
      ring_.reduce(values_[k]);
      if (values_[k] != 0) out.emplace_back(k, values_[k]);
    }
    clear();
    return out;
  }

  std::vector<Rational> take_dense() {
    std::vector<Rational> out(values_.size());
    for (int k : list_) {
      ring_.reduce(values_[k]);
      out[k] = values_[k];
    }
    clear();
    return out;
  }

  void clear() {
    for (int k : list_) {
      values_[k] = 0;
      touched_[k] = 0;
    }
    list_.clear();
  }

 private:
  void touch(int k) {
    if (!touched_[k]) {
      touched_[k] = 1;
      list_.push_back(k);
    }
  }

  const FiniteGroup& group_;
  Ring ring_;
  std::vector<Rational> values_;
  std::vector<char> touched_;
  std::vector<int> list_;
};

}  // namespace grpder::detail
