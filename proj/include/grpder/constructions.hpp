#pragma once

// Two constructive families:
//  * abelian groups, where a unit tau(b) - sigma(b) pins every derivation to
//    delta = (tau(b) - sigma(b))^{-1} delta(b) (tau - sigma);
//  * finite truncations G_n = H^n of an infinite direct power, carrying
//    sigma = sigma_1 x ... x sigma_1 and delta_n = delta_{x_1 + ... + x_n}
//    with tau = id.

#include <cstdint>
#include <optional>
#include <span>
#include <stop_token>
#include <vector>

#include "grpder/derivations.hpp"

namespace grpder {

/// Checks delta(a) = (tau(b) - sigma(b))^{-1} delta(b) (tau - sigma)(a) on every basis element.
/// Throws NotAbelian or DifferenceNotAUnit.
bool commutative_derivation_form(const DerivationMap& delta, const GroupRingElement& b);

inline constexpr std::uint64_t kUnitSearchSeed = 0x5eed'2019'0405ULL;
inline constexpr int kUnitSearchBudget = 200;

/// Looks for b with tau(b) - sigma(b) invertible: first every basis element,
/// then `random_budget` combinations with coefficients in {-2..2} drawn from
/// `seed`. nullopt means "not found within budget". Throws NotAbelian.
std::optional<GroupRingElement> find_unit_difference(const EndoPtr& sigma, const EndoPtr& tau,
                                                     std::uint64_t seed = kUnitSearchSeed,
                                                     int random_budget = kUnitSearchBudget);

/// True iff the automorphism maps every conjugacy class onto itself.
/// Throws NotAnAutomorphism.
bool class_preserving_check(const GroupPtr& h, std::span<const int> sigma1);

inline constexpr std::size_t kTruncationMaxOrder = 512;

struct TruncationBundle {
  GroupPtr base;
  int n = 0;
  GroupPtr group;                  ///< H^n, factor 1 in the most significant digit
  std::vector<int> base_sigma;     ///< sigma_1 as an index map on H
  std::vector<int> base_choices;   ///< x_i as indices of H
  std::vector<int> witnesses;      ///< x_i embedded in factor i of G_n
  EndoPtr sigma, tau;
  DerivationMap delta;

  /// x_1 + ... + x_n in FG_n.
  GroupRingElement witness_sum() const;
};

/// Index in H^n of the element that is h in factor `factor` (1-based) and 1 elsewhere.
int embed_in_factor(int base_order, int n, int factor, int h);
/// Indices of G_m = H^m x {1}^{n-m} inside H^n, ascending.
std::vector<int> embedded_prefix(int base_order, int n, int m);

/// Throws AbelianBase, NotAnAutomorphism, NotClassPreserving, CentralChoice,
/// TrivialInnerChoice (x_i induces the zero derivation on H) or
/// TruncationTooLarge (|H|^n above max_order). The default choice for every
/// factor is the least-index non-central x with delta_x nonzero on H.
TruncationBundle build_truncation(const GroupPtr& h, std::vector<int> sigma1, int n, Ring field = Ring::rationals(),
                                  std::optional<std::vector<int>> x_choices = std::nullopt,
                                  std::size_t max_order = kTruncationMaxOrder);

/// delta_n(g) == delta_{x_i}(g) for every g in the i-th factor, all i.
/// Holds when sigma_1 is the identity; otherwise the other summands
/// contribute (x_j)(g - sigma(g)).
bool restricts_to_factor_inner(const TruncationBundle& bundle);
/// delta_n restricted to the embedded F[G_m] equals delta_m, for m = small.n.
bool restriction_matches(const TruncationBundle& big, const TruncationBundle& small);

/// Witness alpha with delta = delta_alpha and support inside S, or nullopt.
std::optional<GroupRingElement> inner_witness_with_support(const DerivationMap& delta, const Subset& support,
                                                           std::stop_token stop = {});

}  // namespace grpder
