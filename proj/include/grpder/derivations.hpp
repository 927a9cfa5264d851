#pragma once

// (sigma, tau)-derivations of group rings: delta(ab) = delta(a) tau(b) + sigma(a) delta(b).
//
// A derivation is stored through its values on the group basis. Over a
// field the full derivation space is the kernel of the Leibniz system,
// the inner derivations delta_x(a) = x tau(a) - sigma(a) x form a subspace,
// and H^1 is the quotient. Over Z innerness is decided twice: once by an
// integer solve of the witness system (Smith normal form) and once by the
// per-equation gcd test; the two routes share no code.

#include <optional>
#include <span>
#include <stop_token>
#include <vector>

#include "grpder/group_ring.hpp"

namespace grpder {

class DerivationMap {
 public:
  /// Checks delta(1) = 0 and the Leibniz rule on every basis pair.
  /// Throws NotADerivation, MixedRings or MixedGroups.
  static DerivationMap make(std::vector<GroupRingElement> images, EndoPtr sigma, EndoPtr tau);
  /// For images already known to satisfy the invariants.
  static DerivationMap unchecked(std::vector<GroupRingElement> images, EndoPtr sigma, EndoPtr tau);
  static DerivationMap zero(EndoPtr sigma, EndoPtr tau);

  const GroupPtr& group() const noexcept { return sigma_->group(); }
  const Ring& ring() const noexcept { return sigma_->ring(); }
  const EndoPtr& sigma() const noexcept { return sigma_; }
  const EndoPtr& tau() const noexcept { return tau_; }
  const std::vector<GroupRingElement>& images() const noexcept { return images_; }
  const GroupRingElement& image(int i) const { return images_[i]; }
  bool is_zero() const;

  /// Linear extension to an arbitrary element.
  GroupRingElement apply(const GroupRingElement& a) const;

  DerivationMap operator+(const DerivationMap& other) const;
  DerivationMap scaled(const Rational& c) const;
  /// Compares images only.
  friend bool operator==(const DerivationMap& a, const DerivationMap& b) { return a.images_ == b.images_; }

 private:
  DerivationMap(std::vector<GroupRingElement> images, EndoPtr sigma, EndoPtr tau);

  std::vector<GroupRingElement> images_;
  EndoPtr sigma_, tau_;
};

struct DerivationSpace {
  EndoPtr sigma, tau;
  std::vector<DerivationMap> basis;
  std::vector<DerivationMap> inner_basis;
  int h1_dimension = 0;
};

/// Exact check of delta(1) = 0 and Leibniz on all n^2 basis pairs.
bool is_derivation(std::span<const GroupRingElement> images, const RingEndomorphism& sigma,
                   const RingEndomorphism& tau);

/// g -> x tau(g) - sigma(g) x
DerivationMap inner_derivation(const GroupRingElement& x, EndoPtr sigma, EndoPtr tau);

/// Kernel of the Leibniz system in the unknowns delta(g), g != 1. Throws NotAField.
DerivationSpace derivation_space(EndoPtr sigma, EndoPtr tau, std::stop_token stop = {});
/// delta_{g_h} for the h whose columns are pivots of the map x -> delta_x.
std::vector<DerivationMap> inner_space(EndoPtr sigma, EndoPtr tau, std::stop_token stop = {});
/// Basis of {y : y tau(g) = sigma(g) y for all g}, the kernel of x -> delta_x.
std::vector<GroupRingElement> twisted_centralizer(EndoPtr sigma, EndoPtr tau, std::stop_token stop = {});
int h1_dimension(EndoPtr sigma, EndoPtr tau, std::stop_token stop = {});

/// alpha with delta = delta_alpha over a field, free coordinates zeroed, or nullopt.
std::optional<GroupRingElement> inner_witness(const DerivationMap& delta, std::stop_token stop = {});
/// Validating overload; throws NotADerivation.
std::optional<GroupRingElement> inner_witness(std::span<const GroupRingElement> images, EndoPtr sigma, EndoPtr tau,
                                              std::stop_token stop = {});
/// Same system with alpha_h forced to zero for h outside `allowed` (sorted indices).
std::optional<GroupRingElement> inner_witness_restricted(const DerivationMap& delta, std::span<const int> allowed,
                                                         std::stop_token stop = {});

/// Integral alpha with delta = delta_alpha via the Smith normal form of the
/// stacked system over all g in G, or nullopt. Requires Z coefficients.
std::optional<GroupRingElement> inner_witness_integer(const DerivationMap& delta);
std::optional<GroupRingElement> inner_witness_integer(std::span<const GroupRingElement> images, EndoPtr sigma,
                                                      EndoPtr tau);

/// One failing (g, x) pair of the gcd test.
struct GcdFailure {
  int g, x;
  Integer gcd, m;
};

/// For every g, x: gcd_h (c^g_{h^{-1}x} - b^g_{xh^{-1}}) | m^g_x, where
/// tau(g) = sum c^g_t t, sigma(g) = sum b^g_s s, delta(g) = sum m^g_x x.
bool gcd_criterion(const DerivationMap& delta);
bool gcd_criterion(std::span<const GroupRingElement> images, EndoPtr sigma, EndoPtr tau);
std::vector<GcdFailure> gcd_criterion_failures(const DerivationMap& delta);

/// delta over Z read over Q (sigma, tau extended the same way). Throws NotCentral.
DerivationMap extend_scalars(const DerivationMap& delta, Ring target = Ring::rationals());
/// Inverse of extend_scalars for derivations with coefficients in the smaller ring.
DerivationMap restrict_scalars(const DerivationMap& delta, Ring target = Ring::integers());

/// delta(g) - alpha (u tau(g) u^{-1} - sigma(g)) lies in [FG, FG] for every g.
/// Throws NotAUnit for a non-invertible u and NotAWitness when delta != delta_alpha.
bool zc2_congruence_check(const DerivationMap& delta, const GroupRingElement& u, const GroupRingElement& alpha);

}  // namespace grpder
