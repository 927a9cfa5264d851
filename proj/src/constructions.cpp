#include "grpder/constructions.hpp"

#include <algorithm>
#include <random>

#include "grpder/errors.hpp"

namespace grpder {

namespace {

void require_abelian(const GroupPtr& g) {
  if (!g->is_abelian()) throw NotAbelian("construction requires an abelian group");
}

int ipow(int b, int e) {
  int r = 1;
  while (e-- > 0) r *= b;
  return r;
}

}  // namespace

bool commutative_derivation_form(const DerivationMap& delta, const GroupRingElement& b) {
  require_abelian(delta.group());
  const auto& sigma = *delta.sigma();
  const auto& tau = *delta.tau();
  const auto diff = tau.apply(b) - sigma.apply(b);
  const auto inv = invert(diff);
  if (!inv) throw DifferenceNotAUnit("tau(b) - sigma(b) is not a unit");
  const auto lead = *inv * delta.apply(b);
  for (int g = 0; g < delta.group()->order(); ++g)
    if (!(delta.image(g) == lead * (tau.image(g) - sigma.image(g)))) return false;
  return true;
}

std::optional<GroupRingElement> find_unit_difference(const EndoPtr& sigma, const EndoPtr& tau, std::uint64_t seed,
                                                     int random_budget) {
  require_abelian(sigma->group());
  const auto& group = sigma->group();
  const Ring ring = sigma->ring();
  auto is_hit = [&](const GroupRingElement& b) { return invert(tau->apply(b) - sigma->apply(b)).has_value(); };

  for (int i = 0; i < group->order(); ++i) {
    auto b = GroupRingElement::basis(group, ring, i);
    if (is_hit(b)) return b;
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coeff(-2, 2);
  for (int k = 0; k < random_budget; ++k) {
    GroupRingElement b(group, ring);
    for (int i = 0; i < group->order(); ++i) b.set(i, ring.coerce(coeff(rng)));
    if (!b.is_zero() && is_hit(b)) return b;
  }
  return std::nullopt;
}

bool class_preserving_check(const GroupPtr& h, std::span<const int> sigma1) {
  if (!is_automorphism(*h, sigma1)) throw NotAnAutomorphism("sigma_1 is not an automorphism of H");
  for (const Subset& cls : conjugacy_classes(h))
    for (int x : cls.members)
      if (!cls.contains(sigma1[x])) return false;
  return true;
}

GroupRingElement TruncationBundle::witness_sum() const {
  GroupRingElement s(group, delta.ring());
  for (int w : witnesses) s += GroupRingElement::basis(group, delta.ring(), w);
  return s;
}

int embed_in_factor(int base_order, int n, int factor, int h) { return h * ipow(base_order, n - factor); }

std::vector<int> embedded_prefix(int base_order, int n, int m) {
  std::vector<int> out;
  const int stride = ipow(base_order, n - m);
  for (int a = 0; a < ipow(base_order, m); ++a) out.push_back(a * stride);
  return out;
}

TruncationBundle build_truncation(const GroupPtr& h, std::vector<int> sigma1, int n, Ring field,
                                  std::optional<std::vector<int>> x_choices, std::size_t max_order) {
  if (h->is_abelian()) throw AbelianBase("base group must be non-abelian");
  if (!class_preserving_check(h, sigma1)) throw NotClassPreserving("sigma_1 moves a conjugacy class");
  if (n < 1) throw TruncationTooLarge("truncation level must be at least 1");
  const int q = h->order();
  std::size_t order = 1;
  for (int i = 0; i < n; ++i) {
    order *= static_cast<std::size_t>(q);
    if (order > max_order)
      throw TruncationTooLarge("|H|^" + std::to_string(n) + " exceeds the cap " + std::to_string(max_order));
  }

  const Subset z = center(h);
  const auto base_sigma = endo_from_group_map(h, field, sigma1);
  const auto base_id = identity_endo(h, field);
  auto trivial_on_base = [&](int x) {
    return inner_derivation(GroupRingElement::basis(h, field, x), base_sigma, base_id).is_zero();
  };

  std::vector<int> choices;
  if (x_choices) {
    if (static_cast<int>(x_choices->size()) != n)
      throw CentralChoice("expected " + std::to_string(n) + " choices, got " + std::to_string(x_choices->size()));
    for (int x : *x_choices) {
      if (x < 0 || x >= q) throw CentralChoice("choice " + std::to_string(x) + " is not an element of H");
      if (z.contains(x)) throw CentralChoice("choice " + h->label(x) + " is central in H");
      if (trivial_on_base(x)) throw TrivialInnerChoice("choice " + h->label(x) + " induces the zero derivation on H");
    }
    choices = *x_choices;
  } else {
    int pick = -1;
    for (int x = 0; x < q && pick < 0; ++x)
      if (!z.contains(x) && !trivial_on_base(x)) pick = x;
    if (pick < 0) throw TrivialInnerChoice("every non-central element induces the zero derivation on H");
    choices.assign(n, pick);
  }

  GroupPtr g = h;
  for (int i = 1; i < n; ++i) g = direct_product(g, h);
  const int size = g->order();

  std::vector<int> sigma_map(size);
  for (int idx = 0; idx < size; ++idx) {
    int rest = idx, image = 0, place = 1;
    for (int i = 0; i < n; ++i) {
      image += sigma1[rest % q] * place;
      rest /= q;
      place *= q;
    }
    sigma_map[idx] = image;
  }

  TruncationBundle bundle{h, n, g, std::move(sigma1), choices, {}, endo_from_group_map(g, field, sigma_map),
                          identity_endo(g, field), DerivationMap::zero(identity_endo(g, field), identity_endo(g, field))};
  for (int i = 1; i <= n; ++i) bundle.witnesses.push_back(embed_in_factor(q, n, i, choices[i - 1]));
  const auto x_sum = bundle.witness_sum();
  auto delta = inner_derivation(x_sum, bundle.sigma, bundle.tau);
  bundle.delta = DerivationMap::make(delta.images(), bundle.sigma, bundle.tau);

  // Each factor sees its own inner derivation plus (x_j)(g - sigma(g)) from the others.
  for (int i = 1; i <= n; ++i) {
    const auto xi = GroupRingElement::basis(g, field, bundle.witnesses[i - 1]);
    const auto others = x_sum - xi;
    for (int y = 0; y < q; ++y) {
      const int e = embed_in_factor(q, n, i, y);
      const auto ge = GroupRingElement::basis(g, field, e);
      const auto se = bundle.sigma->image(e);
      if (!(bundle.delta.image(e) == xi * ge - se * xi + others * (ge - se)))
        throw NotADerivation("truncation derivation disagrees with its factor decomposition");
    }
  }
  return bundle;
}

bool restricts_to_factor_inner(const TruncationBundle& bundle) {
  const int q = bundle.base->order();
  for (int i = 1; i <= bundle.n; ++i) {
    const auto xi = GroupRingElement::basis(bundle.group, bundle.delta.ring(), bundle.witnesses[i - 1]);
    const auto local = inner_derivation(xi, bundle.sigma, bundle.tau);
    for (int y = 0; y < q; ++y) {
      const int e = embed_in_factor(q, bundle.n, i, y);
      if (!(bundle.delta.image(e) == local.image(e))) return false;
    }
  }
  return true;
}

bool restriction_matches(const TruncationBundle& big, const TruncationBundle& small) {
  const int q = big.base->order();
  if (small.n > big.n || small.base->order() != q) return false;
  const int stride = ipow(q, big.n - small.n);
  for (int a = 0; a < small.group->order(); ++a) {
    const auto& lhs = big.delta.image(a * stride);
    const auto& rhs = small.delta.image(a);
    for (int k = 0; k < big.group->order(); ++k) {
      const Rational expected = (k % stride == 0) ? rhs[k / stride] : Rational(0);
      if (lhs[k] != expected) return false;
    }
  }
  return true;
}

std::optional<GroupRingElement> inner_witness_with_support(const DerivationMap& delta, const Subset& support,
                                                           std::stop_token stop) {
  if (!same_group(support.parent, delta.group())) throw MixedGroups("support subset belongs to another group");
  return inner_witness_restricted(delta, support.members, std::move(stop));
}

}  // namespace grpder
