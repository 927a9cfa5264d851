#include <doctest.h>

#include <random>

#include "grpder/errors.hpp"
#include "grpder/group_ring.hpp"

using namespace grpder;

namespace {

const Ring Z = Ring::integers();
const Ring Q = Ring::rationals();

GroupRingElement elem(const GroupPtr& g, Ring r, std::vector<Rational> c) { return GroupRingElement(g, r, std::move(c)); }

GroupRingElement random_elem(const GroupPtr& g, Ring r, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(-3, 3);
  GroupRingElement x(g, r);
  for (int i = 0; i < g->order(); ++i) x.set(i, d(rng));
  return x;
}

// Product through explicit double sum over pairs of labels.
GroupRingElement naive_product(const GroupRingElement& a, const GroupRingElement& b) {
  const auto& g = a.group();
  std::vector<Rational> c(g->order());
  for (int i = 0; i < g->order(); ++i)
    for (int j = 0; j < g->order(); ++j) c[g->find_label(g->label(g->mul(i, j)))] += a[i] * b[j];
  return GroupRingElement(g, a.ring(), c);
}

}  // namespace

TEST_CASE("multiplication") {
  auto c2 = standard_group("C2");
  const auto one = GroupRingElement::one(c2, Q);
  const auto g = GroupRingElement::basis(c2, Q, 1);
  CHECK(((one + g) * (one - g)).is_zero());
  CHECK((one + g) * (one + g) == (one + g).scaled(2));

  auto q8 = standard_group("Q8");
  const auto i = GroupRingElement::basis(q8, Z, q8->find_label("i"));
  const auto j = GroupRingElement::basis(q8, Z, q8->find_label("j"));
  CHECK(i * j == GroupRingElement::basis(q8, Z, q8->find_label("k")));
  CHECK(j * i == GroupRingElement::basis(q8, Z, q8->find_label("-k")));

  std::mt19937_64 rng(3);
  for (const char* name : {"S3", "Q8", "A4"}) {
    auto grp = standard_group(name);
    for (int t = 0; t < 10; ++t) {
      const auto a = random_elem(grp, Q, rng), b = random_elem(grp, Q, rng), c = random_elem(grp, Q, rng);
      CHECK(a * b == naive_product(a, b));
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK(augmentation(a * b) == augmentation(a) * augmentation(b));
    }
  }
}

TEST_CASE("F_p arithmetic stays reduced") {
  auto c3 = standard_group("C3");
  const Ring f3 = Ring::prime_field(3);
  const auto x = elem(c3, f3, {2, 2, 0});
  const auto sq = x * x;  // 4 + 8g + 4g^2 = 1 + 2g + g^2 mod 3
  CHECK(sq == elem(c3, f3, {1, 2, 1}));
  for (const auto& c : sq.coeffs()) CHECK(f3.contains(c));
}

TEST_CASE("ring and group mismatches") {
  auto c2 = standard_group("C2"), c3 = standard_group("C3");
  CHECK_THROWS_AS(GroupRingElement::one(c2, Z) + GroupRingElement::one(c2, Q), MixedRings);
  CHECK_THROWS_AS(GroupRingElement::one(c2, Q) * GroupRingElement::one(c3, Q), MixedGroups);
  CHECK_THROWS_AS(elem(c2, Z, {Rational(1, 2), 0}), MixedRings);
}

TEST_CASE("inverses") {
  auto c2 = standard_group("C2");
  CHECK_FALSE(invert(elem(c2, Q, {1, 1})));  // zero divisor
  CHECK(*invert(elem(c2, Q, {2, 0})) == elem(c2, Q, {Rational(1, 2), 0}));
  CHECK_FALSE(invert(elem(c2, Z, {2, 0})));
  CHECK(*invert(elem(c2, Z, {0, -1})) == elem(c2, Z, {0, -1}));

  auto c3 = standard_group("C3");
  // (1 + g)(1 - g + g^2) = 2 in QC3
  CHECK(*invert(elem(c3, Q, {1, 1, 0})) == elem(c3, Q, {Rational(1, 2), Rational(-1, 2), Rational(1, 2)}));
  CHECK_FALSE(invert(elem(c3, Z, {1, 1, 0})));

  // Non-trivial unit of ZC5: (g + g^4 - 1)^{-1} = g^2 + g^3 - 1
  auto c5 = standard_group("C5");
  CHECK(*invert(elem(c5, Z, {-1, 1, 0, 0, 1})) == elem(c5, Z, {-1, 0, 1, 1, 0}));

  auto s3 = standard_group("S3");
  std::mt19937_64 rng(5);
  for (int t = 0; t < 20; ++t) {
    const auto a = random_elem(s3, Q, rng);
    const auto inv = invert(a);
    if (!inv) continue;
    CHECK(a * *inv == GroupRingElement::one(s3, Q));
    CHECK(*inv * a == GroupRingElement::one(s3, Q));
  }
  const Ring f5 = Ring::prime_field(5);
  const auto u = elem(s3, f5, {2, 1, 0, 0, 0, 3});
  if (const auto v = invert(u)) CHECK(u * *v == GroupRingElement::one(s3, f5));
}

TEST_CASE("center basis and commutators") {
  std::mt19937_64 rng(9);
  for (const char* name : {"S3", "D4", "Q8", "A4", "C4"}) {
    CAPTURE(name);
    auto g = standard_group(name);
    const auto classes = center_basis(g, Q);
    CHECK(classes.size() == conjugacy_classes(g).size());
    for (const auto& c : classes)
      for (int t = 0; t < 5; ++t) {
        const auto a = random_elem(g, Q, rng);
        CHECK(c * a == a * c);
      }
    const auto comm = commutator_subspace(g, Q);
    CHECK(static_cast<int>(comm.size()) == g->order() - static_cast<int>(classes.size()));
    const auto a = random_elem(g, Q, rng), b = random_elem(g, Q, rng);
    CHECK(in_commutator_span(a * b - b * a));
    CHECK_FALSE(in_commutator_span(GroupRingElement::one(g, Q)));
  }
}

TEST_CASE("change of ring") {
  auto c3 = standard_group("C3");
  const auto x = elem(c3, Z, {1, -2, 7});
  CHECK(change_ring(x, Q) == elem(c3, Q, {1, -2, 7}));
  CHECK(change_ring(x, Ring::prime_field(5)) == elem(c3, Ring::prime_field(5), {1, 3, 2}));
  CHECK(change_ring(change_ring(x, Q), Z) == x);
  CHECK_THROWS_AS(change_ring(elem(c3, Q, {Rational(1, 2), 0, 0}), Z), MixedRings);
}

TEST_CASE("endomorphisms") {
  auto c4 = standard_group("C4");
  const auto id = identity_endo(c4, Q);
  CHECK(id->is_identity());
  CHECK(is_central_endo(*id));

  // sign twist g^k -> (-1)^k g^k
  std::vector<GroupRingElement> twist;
  for (int k = 0; k < 4; ++k) twist.push_back(GroupRingElement::basis(c4, Q, k, k % 2 ? -1 : 1));
  const auto tw = endo_from_images(twist);
  CHECK(tw->apply(elem(c4, Q, {1, 2, 3, 4})) == elem(c4, Q, {1, -2, 3, -4}));
  CHECK_FALSE(is_central_endo(*tw));
  const auto m = tw->matrix();
  CHECK(m(1, 1) == -1);
  CHECK(m(2, 2) == 1);

  auto c3 = standard_group("C3");
  std::vector<GroupRingElement> bad;
  for (int k = 0; k < 3; ++k) bad.push_back(GroupRingElement::basis(c3, Q, k, k ? -1 : 1));
  CHECK_THROWS_AS(endo_from_images(bad), NotMultiplicative);

  auto shifted = twist;
  shifted[0] = shifted[0].scaled(2);
  try {
    endo_from_images(shifted);
    FAIL("expected NotMultiplicative");
  } catch (const NotMultiplicative& e) {
    CHECK(e.first() == 0);
    CHECK(e.second() == 0);
  }

  const std::vector<int> square{0, 2, 1};
  CHECK_FALSE(is_central_endo(*endo_from_group_map(c3, Q, square)));
  const std::vector<int> not_hom{0, 1, 1};
  CHECK_THROWS_AS(endo_from_group_map(c3, Q, not_hom), NotAHomomorphism);
}

TEST_CASE("conjugation endomorphisms") {
  auto s3 = standard_group("S3");
  const int r = s3->find_label("r"), s = s3->find_label("s");
  const auto er = GroupRingElement::basis(s3, Q, r);
  const auto conj = conjugation_endo(er);
  // u^{-1} s u with u = r
  CHECK(conj->image(s) == GroupRingElement::basis(s3, Q, s3->mul(s3->mul(s3->inverse(r), s), r)));
  CHECK(is_central_endo(*conj));

  const auto u = elem(s3, Q, {2, 1, 0, 1, 0, 0});
  REQUIRE(invert(u));
  const auto cu = conjugation_endo(u);
  CHECK(is_central_endo(*cu));
  const auto uinv = *invert(u);
  for (int g = 0; g < 6; ++g) CHECK(cu->image(g) == uinv * GroupRingElement::basis(s3, Q, g) * u);

  CHECK_THROWS_AS(conjugation_endo(elem(s3, Q, {1, 1, 1, 0, 0, 0})), NotAUnit);

  const auto back = change_ring(*conjugation_endo(GroupRingElement::basis(s3, Q, r)), Z);
  CHECK(back->ring() == Z);
}
