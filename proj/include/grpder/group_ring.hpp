#pragma once

// Group rings RG for R in {Z, Q, F_p} and their ring endomorphisms.

#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "grpder/group.hpp"
#include "grpder/linalg.hpp"
#include "grpder/scalar.hpp"

namespace grpder {

/// sum_i coeffs[i] g_i, with coeffs.size() == |G| and every coefficient in ring().
class GroupRingElement {
 public:
  /// The zero element.
  GroupRingElement(GroupPtr group, Ring ring);
  /// Coefficients are coerced into the ring; throws MixedRings when impossible.
  GroupRingElement(GroupPtr group, Ring ring, std::vector<Rational> coeffs);

  static GroupRingElement basis(GroupPtr group, Ring ring, int index, const Rational& coeff = 1);
  static GroupRingElement one(GroupPtr group, Ring ring) { return basis(std::move(group), ring, 0); }

  const GroupPtr& group() const noexcept { return group_; }
  const Ring& ring() const noexcept { return ring_; }
  int size() const noexcept { return static_cast<int>(coeffs_.size()); }
  const Rational& operator[](int i) const { return coeffs_[i]; }
  std::span<const Rational> coeffs() const noexcept { return coeffs_; }
  void set(int i, const Rational& v) { coeffs_[i] = ring_.coerce(v); }

  bool is_zero() const;
  std::vector<int> support() const;
  SparseRow sparse() const { return to_sparse(coeffs_); }

  GroupRingElement& operator+=(const GroupRingElement& other);
  GroupRingElement& operator-=(const GroupRingElement& other);
  GroupRingElement operator-() const;
  GroupRingElement scaled(const Rational& c) const;

  friend GroupRingElement operator+(GroupRingElement a, const GroupRingElement& b) { return a += b; }
  friend GroupRingElement operator-(GroupRingElement a, const GroupRingElement& b) { return a -= b; }
  friend GroupRingElement operator*(const GroupRingElement& a, const GroupRingElement& b);
  friend bool operator==(const GroupRingElement& a, const GroupRingElement& b);

 private:
  void check_compatible(const GroupRingElement& other) const;

  GroupPtr group_;
  Ring ring_;
  std::vector<Rational> coeffs_;
};

/// Convolution product through the Cayley table. Throws MixedRings / MixedGroups.
GroupRingElement multiply(const GroupRingElement& a, const GroupRingElement& b);
Rational augmentation(const GroupRingElement& a);
/// Class sums, one per conjugacy class in class order: a basis of Z(RG).
std::vector<GroupRingElement> center_basis(const GroupPtr& group, Ring ring);

/// Two-sided inverse, or nullopt when a is not a unit. Over Z the inverse
/// is found for trivial units +-g directly and otherwise accepted only when
/// the rational inverse is integral.
std::optional<GroupRingElement> invert(const GroupRingElement& a);

/// Coefficient-wise image in another ring (Z -> Q, Z -> F_p, Q -> F_p, Q -> Z when integral).
GroupRingElement change_ring(const GroupRingElement& a, Ring ring);

/// Basis of span{ab - ba} (reduced echelon rows); dimension |G| - #classes.
std::vector<GroupRingElement> commutator_subspace(const GroupPtr& group, Ring field);
bool in_commutator_span(const GroupRingElement& a);

/// A ring endomorphism of RG given by the images of the group basis.
class RingEndomorphism {
 public:
  const GroupPtr& group() const noexcept { return group_; }
  const Ring& ring() const noexcept { return ring_; }
  int size() const noexcept { return static_cast<int>(images_.size()); }
  const std::vector<GroupRingElement>& images() const noexcept { return images_; }
  const GroupRingElement& image(int i) const { return images_[i]; }

  /// R-linear extension to an arbitrary element.
  GroupRingElement apply(const GroupRingElement& a) const;
  /// Column i holds the coefficients of the image of g_i.
  ExactMatrix matrix() const;
  bool is_identity() const;
  friend bool operator==(const RingEndomorphism& a, const RingEndomorphism& b) { return a.images_ == b.images_; }

 private:
  friend std::shared_ptr<const RingEndomorphism> make_endomorphism_unchecked(std::vector<GroupRingElement>);
  explicit RingEndomorphism(std::vector<GroupRingElement> images);

  GroupPtr group_;
  Ring ring_;
  std::vector<GroupRingElement> images_;
};

using EndoPtr = std::shared_ptr<const RingEndomorphism>;

/// Skips the multiplicativity check; for images known to be multiplicative.
EndoPtr make_endomorphism_unchecked(std::vector<GroupRingElement> images);

EndoPtr identity_endo(const GroupPtr& group, Ring ring);
/// Linear extension of a group endomorphism f. Throws NotAHomomorphism.
EndoPtr endo_from_group_map(const GroupPtr& group, Ring ring, std::span<const int> f);
/// Validates images[0] = 1 and multiplicativity on every basis pair.
/// Throws NotMultiplicative(i, j) naming the first failing pair.
EndoPtr endo_from_images(std::vector<GroupRingElement> images);
/// g_i -> u^{-1} g_i u. Throws NotAUnit.
EndoPtr conjugation_endo(const GroupRingElement& u);
/// True iff every class sum is fixed.
bool is_central_endo(const RingEndomorphism& phi);
EndoPtr change_ring(const RingEndomorphism& phi, Ring ring);

}  // namespace grpder
