#include "grpder/group_ring.hpp"

#include <algorithm>

#include "accumulator.hpp"
#include "grpder/errors.hpp"

namespace grpder {

GroupRingElement::GroupRingElement(GroupPtr group, Ring ring)
    : group_(std::move(group)), ring_(ring), coeffs_(group_->order()) {}

GroupRingElement::GroupRingElement(GroupPtr group, Ring ring, std::vector<Rational> coeffs)
    : group_(std::move(group)), ring_(ring), coeffs_(std::move(coeffs)) {
  if (static_cast<int>(coeffs_.size()) != group_->order())
    throw MixedGroups("element has " + std::to_string(coeffs_.size()) + " coefficients, group order is " +
                      std::to_string(group_->order()));
  for (auto& c : coeffs_) c = ring_.coerce(c);
}

GroupRingElement GroupRingElement::basis(GroupPtr group, Ring ring, int index, const Rational& coeff) {
  GroupRingElement e(std::move(group), ring);
  e.set(index, coeff);
  return e;
}

bool GroupRingElement::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return c == 0; });
}

std::vector<int> GroupRingElement::support() const {
  std::vector<int> s;
  for (int i = 0; i < size(); ++i)
    if (coeffs_[i] != 0) s.push_back(i);
  return s;
}

void GroupRingElement::check_compatible(const GroupRingElement& other) const {
  if (!(ring_ == other.ring_)) throw MixedRings("elements over " + ring_.name() + " and " + other.ring_.name());
  if (!same_group(group_, other.group_)) throw MixedGroups("elements of different groups");
}

GroupRingElement& GroupRingElement::operator+=(const GroupRingElement& other) {
  check_compatible(other);
  for (int i = 0; i < size(); ++i) {
    coeffs_[i] += other.coeffs_[i];
    ring_.reduce(coeffs_[i]);
  }
  return *this;
}

GroupRingElement& GroupRingElement::operator-=(const GroupRingElement& other) {
  check_compatible(other);
  for (int i = 0; i < size(); ++i) {
    coeffs_[i] -= other.coeffs_[i];
    ring_.reduce(coeffs_[i]);
  }
  return *this;
}

GroupRingElement GroupRingElement::operator-() const { return scaled(-1); }

GroupRingElement GroupRingElement::scaled(const Rational& c) const {
  const Rational k = ring_.coerce(c);
  GroupRingElement out(*this);
  for (auto& v : out.coeffs_) {
    v *= k;
    ring_.reduce(v);
  }
  return out;
}

GroupRingElement operator*(const GroupRingElement& a, const GroupRingElement& b) {
  a.check_compatible(b);
  detail::Accumulator acc(*a.group_, a.ring_);
  acc.add_product(a.sparse(), b.sparse());
  GroupRingElement out(a.group_, a.ring_);
  out.coeffs_ = acc.take_dense();
  return out;
}

bool operator==(const GroupRingElement& a, const GroupRingElement& b) {
  return a.ring_ == b.ring_ && same_group(a.group_, b.group_) && a.coeffs_ == b.coeffs_;
}

GroupRingElement multiply(const GroupRingElement& a, const GroupRingElement& b) { return a * b; }

Rational augmentation(const GroupRingElement& a) {
  Rational s = 0;
  for (const auto& c : a.coeffs()) s += c;
  a.ring().reduce(s);
  return s;
}

std::vector<GroupRingElement> center_basis(const GroupPtr& group, Ring ring) {
  std::vector<GroupRingElement> out;
  for (const Subset& cls : conjugacy_classes(group)) {
    GroupRingElement e(group, ring);
    for (int i : cls.members) e.set(i, 1);
    out.push_back(std::move(e));
  }
  return out;
}

namespace {

std::optional<GroupRingElement> invert_over_field(const GroupRingElement& a) {
  const FiniteGroup& g = *a.group();
  const int n = g.order();
  // Rows 0..n-1: (a x)_k = sum_j a_{k j^{-1}} x_j; rows n..2n-1: (x a)_k = sum_j a_{j^{-1} k} x_j.
  ExactMatrix m(2 * n, n, a.ring());
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j) {
      m.set(k, j, a[g.right_div(k, j)]);
      m.set(n + k, j, a[g.left_div(j, k)]);
    }
  Vector rhs(2 * n);
  rhs[0] = 1;
  rhs[n] = 1;
  auto x = solve(m, rhs);
  if (!x) return std::nullopt;
  return GroupRingElement(a.group(), a.ring(), std::move(*x));
}

}  // namespace

std::optional<GroupRingElement> invert(const GroupRingElement& a) {
  if (a.ring().is_field()) return invert_over_field(a);
  const auto supp = a.support();
  if (supp.size() == 1 && (a[supp[0]] == 1 || a[supp[0]] == -1))
    return GroupRingElement::basis(a.group(), a.ring(), a.group()->inverse(supp[0]), a[supp[0]]);
  auto q = invert_over_field(change_ring(a, Ring::rationals()));
  if (!q) return std::nullopt;
  for (const auto& c : q->coeffs())
    if (c.get_den() != 1) return std::nullopt;
  return change_ring(*q, a.ring());
}

GroupRingElement change_ring(const GroupRingElement& a, Ring ring) {
  return GroupRingElement(a.group(), ring, std::vector<Rational>(a.coeffs().begin(), a.coeffs().end()));
}

std::vector<GroupRingElement> commutator_subspace(const GroupPtr& group, Ring field) {
  if (!field.is_field()) throw NotAField("commutator subspace requires a field, got " + field.name());
  const int n = group->order();
  RowReducer rr(n, field);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const int a = group->mul(i, j), b = group->mul(j, i);
      if (a == b) continue;
      SparseRow row;
      Rational minus_one = -1;
      field.reduce(minus_one);
      row.emplace_back(std::min(a, b), a < b ? Rational(1) : minus_one);
      row.emplace_back(std::max(a, b), a < b ? minus_one : Rational(1));
      rr.add_row(row);
    }
  std::vector<GroupRingElement> out;
  for (int p : rr.pivot_columns()) {
    GroupRingElement e(group, field);
    for (const auto& [k, w] : rr.pivot_row(p)) e.set(k, w);
    out.push_back(std::move(e));
  }
  return out;
}

bool in_commutator_span(const GroupRingElement& a) {
  const auto basis = commutator_subspace(a.group(), a.ring());
  std::vector<Vector> rows;
  for (const auto& b : basis) rows.emplace_back(b.coeffs().begin(), b.coeffs().end());
  return in_span(rows, Vector(a.coeffs().begin(), a.coeffs().end()), a.ring());
}

// ---------------------------------------------------------------------------

RingEndomorphism::RingEndomorphism(std::vector<GroupRingElement> images)
    : group_(images.at(0).group()), ring_(images.at(0).ring()), images_(std::move(images)) {
  if (static_cast<int>(images_.size()) != group_->order())
    throw MixedGroups("endomorphism needs " + std::to_string(group_->order()) + " images, got " +
                      std::to_string(images_.size()));
  for (const auto& e : images_)
    if (!(e.ring() == ring_) || !same_group(e.group(), group_))
      throw MixedRings("endomorphism images must share one group and ring");
}

GroupRingElement RingEndomorphism::apply(const GroupRingElement& a) const {
  if (!(a.ring() == ring_)) throw MixedRings("endomorphism over " + ring_.name() + " applied to element over " + a.ring().name());
  if (!same_group(a.group(), group_)) throw MixedGroups("endomorphism applied to element of another group");
  detail::Accumulator acc(*group_, ring_);
  for (int i = 0; i < a.size(); ++i)
    if (a[i] != 0) acc.add(images_[i].sparse(), a[i]);
  return GroupRingElement(group_, ring_, acc.take_dense());
}

ExactMatrix RingEndomorphism::matrix() const {
  const int n = size();
  ExactMatrix m(n, n, ring_);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) m.set(k, i, images_[i][k]);
  return m;
}

bool RingEndomorphism::is_identity() const {
  for (int i = 0; i < size(); ++i)
    if (!(images_[i] == GroupRingElement::basis(group_, ring_, i))) return false;
  return true;
}

EndoPtr make_endomorphism_unchecked(std::vector<GroupRingElement> images) {
  return std::shared_ptr<const RingEndomorphism>(new RingEndomorphism(std::move(images)));
}

EndoPtr identity_endo(const GroupPtr& group, Ring ring) {
  std::vector<GroupRingElement> images;
  for (int i = 0; i < group->order(); ++i) images.push_back(GroupRingElement::basis(group, ring, i));
  return make_endomorphism_unchecked(std::move(images));
}

EndoPtr endo_from_group_map(const GroupPtr& group, Ring ring, std::span<const int> f) {
  if (!is_homomorphism(*group, f)) throw NotAHomomorphism("index map is not a group endomorphism");
  std::vector<GroupRingElement> images;
  for (int i = 0; i < group->order(); ++i) images.push_back(GroupRingElement::basis(group, ring, f[i]));
  return make_endomorphism_unchecked(std::move(images));
}

EndoPtr endo_from_images(std::vector<GroupRingElement> images) {
  if (images.empty()) throw MixedGroups("endomorphism needs at least one image");
  auto phi = make_endomorphism_unchecked(std::move(images));
  const auto& g = *phi->group();
  if (!(phi->image(0) == GroupRingElement::one(phi->group(), phi->ring()))) throw NotMultiplicative(0, 0);
  std::vector<SparseRow> sparse;
  for (const auto& e : phi->images()) sparse.push_back(e.sparse());
  detail::Accumulator acc(g, phi->ring());
  for (int i = 0; i < g.order(); ++i)
    for (int j = 0; j < g.order(); ++j) {
      acc.add_product(sparse[i], sparse[j]);
      acc.add(sparse[g.mul(i, j)], -1);
      if (!acc.is_zero()) throw NotMultiplicative(i, j);
      acc.clear();
    }
  return phi;
}

EndoPtr conjugation_endo(const GroupRingElement& u) {
  auto inv = invert(u);
  if (!inv) throw NotAUnit("conjugating element is not a unit of " + u.ring().name() + "G");
  std::vector<GroupRingElement> images;
  const auto uinv = inv->sparse();
  const auto usp = u.sparse();
  detail::Accumulator acc(*u.group(), u.ring());
  for (int i = 0; i < u.group()->order(); ++i) {
    for (const auto& [k, x] : uinv)
      for (const auto& [l, y] : usp) acc.add(SparseRow{{u.group()->mul(u.group()->mul(k, i), l), x * y}});
    images.emplace_back(u.group(), u.ring(), acc.take_dense());
  }
  return make_endomorphism_unchecked(std::move(images));
}

bool is_central_endo(const RingEndomorphism& phi) {
  for (const auto& z : center_basis(phi.group(), phi.ring()))
    if (!(phi.apply(z) == z)) return false;
  return true;
}

EndoPtr change_ring(const RingEndomorphism& phi, Ring ring) {
  std::vector<GroupRingElement> images;
  for (const auto& e : phi.images()) images.push_back(change_ring(e, ring));
  return make_endomorphism_unchecked(std::move(images));
}

}  // namespace grpder
