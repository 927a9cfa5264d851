#include "grpder/derivations.hpp"

#include <algorithm>

#include "accumulator.hpp"
#include "grpder/errors.hpp"

namespace grpder {

namespace {

void check_pair(const RingEndomorphism& sigma, const RingEndomorphism& tau) {
  if (!(sigma.ring() == tau.ring())) throw MixedRings("sigma over " + sigma.ring().name() + ", tau over " + tau.ring().name());
  if (!same_group(sigma.group(), tau.group())) throw MixedGroups("sigma and tau act on different groups");
}

void check_images(std::span<const GroupRingElement> images, const RingEndomorphism& sigma) {
  if (static_cast<int>(images.size()) != sigma.size())
    throw MixedGroups("derivation needs " + std::to_string(sigma.size()) + " images, got " + std::to_string(images.size()));
  for (const auto& e : images) {
    if (!(e.ring() == sigma.ring())) throw MixedRings("derivation image over " + e.ring().name() + ", endomorphisms over " + sigma.ring().name());
    if (!same_group(e.group(), sigma.group())) throw MixedGroups("derivation image lives in another group");
  }
}

std::vector<SparseRow> sparse_images(std::span<const GroupRingElement> images) {
  std::vector<SparseRow> out;
  out.reserve(images.size());
  for (const auto& e : images) out.push_back(e.sparse());
  return out;
}

// Sorts by column, merges duplicates and drops zeros.
SparseRow normalize(SparseRow row, const Ring& ring) {
  std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  SparseRow out;
  for (auto& [c, v] : row) {
    if (!out.empty() && out.back().first == c) {
      out.back().second += v;
    } else {
      out.emplace_back(c, std::move(v));
    }
  }
  SparseRow cleaned;
  for (auto& [c, v] : out) {
    ring.reduce(v);
    if (v != 0) cleaned.emplace_back(c, std::move(v));
  }
  return cleaned;
}

// Rows indexed by (k-th entry of gens, x); column c stands for alpha_{allowed[c]}
// and holds the x-coefficient of e_h tau(g) - sigma(g) e_h.
std::vector<SparseRow> witness_rows(const RingEndomorphism& sigma, const RingEndomorphism& tau,
                                    std::span<const int> gens, std::span<const int> allowed) {
  const FiniteGroup& g = *sigma.group();
  const int n = g.order();
  std::vector<SparseRow> rows(gens.size() * static_cast<std::size_t>(n));
  detail::Accumulator acc(g, sigma.ring());
  std::vector<SparseRow> s, t;
  for (int gen : gens) {
    s.push_back(sigma.image(gen).sparse());
    t.push_back(tau.image(gen).sparse());
  }
  for (std::size_t c = 0; c < allowed.size(); ++c) {
    const SparseRow e{{allowed[c], Rational(1)}};
    for (std::size_t k = 0; k < gens.size(); ++k) {
      acc.add_product(e, t[k]);
      acc.add_product(s[k], e, -1);
      for (auto& [x, v] : acc.take()) rows[k * n + x].emplace_back(static_cast<int>(c), std::move(v));
    }
  }
  return rows;
}

std::vector<int> all_indices(int n) {
  std::vector<int> v(n);
  for (int i = 0; i < n; ++i) v[i] = i;
  return v;
}

GroupRingElement element_from(const GroupPtr& g, Ring ring, std::span<const Rational> values) {
  return GroupRingElement(g, ring, std::vector<Rational>(values.begin(), values.end()));
}

}  // namespace

// ---------------------------------------------------------------------------

DerivationMap::DerivationMap(std::vector<GroupRingElement> images, EndoPtr sigma, EndoPtr tau)
    : images_(std::move(images)), sigma_(std::move(sigma)), tau_(std::move(tau)) {
  check_pair(*sigma_, *tau_);
  check_images(images_, *sigma_);
}

DerivationMap DerivationMap::make(std::vector<GroupRingElement> images, EndoPtr sigma, EndoPtr tau) {
  DerivationMap d(std::move(images), std::move(sigma), std::move(tau));
  if (!is_derivation(d.images_, *d.sigma_, *d.tau_))
    throw NotADerivation("images violate delta(1) = 0 or the (sigma, tau)-Leibniz rule");
  return d;
}

DerivationMap DerivationMap::unchecked(std::vector<GroupRingElement> images, EndoPtr sigma, EndoPtr tau) {
  return DerivationMap(std::move(images), std::move(sigma), std::move(tau));
}

DerivationMap DerivationMap::zero(EndoPtr sigma, EndoPtr tau) {
  std::vector<GroupRingElement> images(sigma->size(), GroupRingElement(sigma->group(), sigma->ring()));
  return DerivationMap(std::move(images), std::move(sigma), std::move(tau));
}

bool DerivationMap::is_zero() const {
  return std::all_of(images_.begin(), images_.end(), [](const auto& e) { return e.is_zero(); });
}

GroupRingElement DerivationMap::apply(const GroupRingElement& a) const {
  if (!(a.ring() == ring())) throw MixedRings("derivation over " + ring().name() + " applied to element over " + a.ring().name());
  if (!same_group(a.group(), group())) throw MixedGroups("derivation applied to element of another group");
  detail::Accumulator acc(*group(), ring());
  for (int i = 0; i < a.size(); ++i)
    if (a[i] != 0) acc.add(images_[i].sparse(), a[i]);
  return GroupRingElement(group(), ring(), acc.take_dense());
}

DerivationMap DerivationMap::operator+(const DerivationMap& other) const {
  std::vector<GroupRingElement> out;
  for (std::size_t i = 0; i < images_.size(); ++i) out.push_back(images_[i] + other.images_.at(i));
  return DerivationMap(std::move(out), sigma_, tau_);
}

DerivationMap DerivationMap::scaled(const Rational& c) const {
  std::vector<GroupRingElement> out;
  for (const auto& e : images_) out.push_back(e.scaled(c));
  return DerivationMap(std::move(out), sigma_, tau_);
}

bool is_derivation(std::span<const GroupRingElement> images, const RingEndomorphism& sigma,
                   const RingEndomorphism& tau) {
  check_pair(sigma, tau);
  check_images(images, sigma);
  if (!images[0].is_zero()) return false;
  const FiniteGroup& g = *sigma.group();
  const auto d = sparse_images(images);
  const auto s = sparse_images(sigma.images());
  const auto t = sparse_images(tau.images());
  detail::Accumulator acc(g, sigma.ring());
  for (int i = 0; i < g.order(); ++i)
    for (int j = 0; j < g.order(); ++j) {
      acc.add(d[g.mul(i, j)]);
      acc.add_product(d[i], t[j], -1);
      acc.add_product(s[i], d[j], -1);
      if (!acc.is_zero()) return false;
      acc.clear();
    }
  return true;
}

DerivationMap inner_derivation(const GroupRingElement& x, EndoPtr sigma, EndoPtr tau) {
  check_pair(*sigma, *tau);
  std::vector<GroupRingElement> images;
  for (int i = 0; i < sigma->size(); ++i) images.push_back(x * tau->image(i) - sigma->image(i) * x);
  return DerivationMap::unchecked(std::move(images), std::move(sigma), std::move(tau));
}

namespace {

// Row reduction of the map x -> delta_x, restricted to generator rows.
RowReducer reduce_inner_map(const RingEndomorphism& sigma, const RingEndomorphism& tau, std::stop_token stop) {
  const int n = sigma.group()->order();
  const auto gens = generators(*sigma.group());
  RowReducer rr(n, sigma.ring(), std::move(stop));
  for (const auto& row : witness_rows(sigma, tau, gens, all_indices(n))) rr.add_row(row);
  return rr;
}

void require_field(const RingEndomorphism& sigma) {
  if (!sigma.ring().is_field()) throw NotAField("operation requires field coefficients, got " + sigma.ring().name());
}

}  // namespace

DerivationSpace derivation_space(EndoPtr sigma, EndoPtr tau, std::stop_token stop) {
  check_pair(*sigma, *tau);
  require_field(*sigma);
  const FiniteGroup& g = *sigma->group();
  const Ring field = sigma->ring();
  const int n = g.order();
  const int unknowns = (n - 1) * n;
  auto unknown = [n](int l, int m) { return (l - 1) * n + m; };
  const auto s = sparse_images(sigma->images());
  const auto t = sparse_images(tau->images());

  // delta(g_i g_j) - delta(g_i) tau(g_j) - sigma(g_i) delta(g_j) = 0, coordinate k.
  // Pairs with i = 0 or j = 0 hold identically once delta(1) = 0. Taking g_j
  // from the generating set is enough: if the rule holds for (a, b) and for
  // every (x, s) with s a generator, expanding delta(a b s) gives it for
  // (a, b s), so by induction on word length the row space is unchanged.
  RowReducer rr(unknowns, field, stop);
  SparseRow row;
  const auto gens = generators(g);
  for (int i = 1; i < n; ++i)
    for (int j : gens) {
      const int prod = g.mul(i, j);
      for (int k = 0; k < n; ++k) {
        row.clear();
        if (prod != 0) row.emplace_back(unknown(prod, k), 1);
        for (const auto& [q, c] : t[j]) row.emplace_back(unknown(i, g.right_div(k, q)), -c);
        for (const auto& [p, b] : s[i]) row.emplace_back(unknown(j, g.left_div(p, k)), -b);
        rr.add_row(normalize(row, field));
      }
    }

  DerivationSpace space{sigma, tau, {}, {}, 0};
  for (const auto& v : rr.kernel_basis()) {
    std::vector<GroupRingElement> images;
    images.emplace_back(sigma->group(), field);
    for (int l = 1; l < n; ++l)
      images.push_back(element_from(sigma->group(), field, std::span<const Rational>(v).subspan((l - 1) * n, n)));
    space.basis.push_back(DerivationMap::unchecked(std::move(images), sigma, tau));
  }
  space.inner_basis = inner_space(sigma, tau, stop);
  space.h1_dimension = static_cast<int>(space.basis.size() - space.inner_basis.size());
  return space;
}

std::vector<DerivationMap> inner_space(EndoPtr sigma, EndoPtr tau, std::stop_token stop) {
  check_pair(*sigma, *tau);
  require_field(*sigma);
  const RowReducer rr = reduce_inner_map(*sigma, *tau, std::move(stop));
  std::vector<DerivationMap> out;
  for (int h : rr.pivot_columns())
    out.push_back(inner_derivation(GroupRingElement::basis(sigma->group(), sigma->ring(), h), sigma, tau));
  return out;
}

std::vector<GroupRingElement> twisted_centralizer(EndoPtr sigma, EndoPtr tau, std::stop_token stop) {
  check_pair(*sigma, *tau);
  require_field(*sigma);
  const RowReducer rr = reduce_inner_map(*sigma, *tau, std::move(stop));
  std::vector<GroupRingElement> out;
  for (auto& v : rr.kernel_basis()) out.emplace_back(sigma->group(), sigma->ring(), std::move(v));
  return out;
}

int h1_dimension(EndoPtr sigma, EndoPtr tau, std::stop_token stop) {
  return derivation_space(std::move(sigma), std::move(tau), std::move(stop)).h1_dimension;
}

// ---------------------------------------------------------------------------

std::optional<GroupRingElement> inner_witness_restricted(const DerivationMap& delta, std::span<const int> allowed,
                                                         std::stop_token stop) {
  require_field(*delta.sigma());
  const FiniteGroup& g = *delta.group();
  const int n = g.order();
  const int cols = static_cast<int>(allowed.size());
  // Two derivations that agree on a generating set agree everywhere, so
  // the generator rows carry the whole system.
  const auto gens = generators(g);
  auto rows = witness_rows(*delta.sigma(), *delta.tau(), gens, allowed);
  RowReducer rr(cols + 1, delta.ring(), std::move(stop));
  for (std::size_t k = 0; k < gens.size(); ++k)
    for (int x = 0; x < n; ++x) {
      auto& row = rows[k * n + x];
      const Rational& rhs = delta.image(gens[k])[x];
      if (rhs != 0) row.emplace_back(cols, rhs);
      rr.add_row(row);
    }
  if (rr.is_pivot(cols)) return std::nullopt;
  GroupRingElement alpha(delta.group(), delta.ring());
  for (int p : rr.pivot_columns())
    if (p < cols) alpha.set(allowed[p], sparse_at(rr.pivot_row(p), cols));
  return alpha;
}

std::optional<GroupRingElement> inner_witness(const DerivationMap& delta, std::stop_token stop) {
  return inner_witness_restricted(delta, all_indices(delta.group()->order()), std::move(stop));
}

std::optional<GroupRingElement> inner_witness(std::span<const GroupRingElement> images, EndoPtr sigma, EndoPtr tau,
                                              std::stop_token stop) {
  auto d = DerivationMap::make(std::vector<GroupRingElement>(images.begin(), images.end()), std::move(sigma), std::move(tau));
  return inner_witness(d, std::move(stop));
}

std::optional<GroupRingElement> inner_witness_integer(const DerivationMap& delta) {
  if (delta.ring().kind() != Ring::Kind::Integer)
    throw MixedRings("integer witness requires Z coefficients, got " + delta.ring().name());
  const int n = delta.group()->order();
  const auto all = all_indices(n);
  const auto rows = witness_rows(*delta.sigma(), *delta.tau(), all, all);
  ExactMatrix a(n * n, n, Ring::integers());
  Vector m(static_cast<std::size_t>(n) * n);
  for (int g = 0; g < n; ++g)
    for (int x = 0; x < n; ++x) {
      for (const auto& [c, v] : rows[g * n + x]) a.set(g * n + x, c, v);
      m[g * n + x] = delta.image(g)[x];
    }
  auto alpha = integer_solve(a, m);
  if (!alpha) return std::nullopt;
  return GroupRingElement(delta.group(), Ring::integers(), std::move(*alpha));
}

std::optional<GroupRingElement> inner_witness_integer(std::span<const GroupRingElement> images, EndoPtr sigma,
                                                      EndoPtr tau) {
  auto d = DerivationMap::make(std::vector<GroupRingElement>(images.begin(), images.end()), std::move(sigma), std::move(tau));
  return inner_witness_integer(d);
}

std::vector<GcdFailure> gcd_criterion_failures(const DerivationMap& delta) {
  if (delta.ring().kind() != Ring::Kind::Integer)
    throw MixedRings("gcd criterion requires Z coefficients, got " + delta.ring().name());
  const FiniteGroup& grp = *delta.group();
  const int n = grp.order();
  std::vector<GcdFailure> failures;
  std::vector<Integer> row(n);
  for (int g = 0; g < n; ++g) {
    const auto& c = delta.tau()->image(g);
    const auto& b = delta.sigma()->image(g);
    for (int x = 0; x < n; ++x) {
      for (int h = 0; h < n; ++h) row[h] = c[grp.left_div(h, x)].get_num() - b[grp.right_div(x, h)].get_num();
      Integer d = gcd_list(row);
      Integer m = delta.image(g)[x].get_num();
      if (!divides(d, m)) failures.push_back({g, x, d, m});
    }
  }
  return failures;
}

bool gcd_criterion(const DerivationMap& delta) { return gcd_criterion_failures(delta).empty(); }

bool gcd_criterion(std::span<const GroupRingElement> images, EndoPtr sigma, EndoPtr tau) {
  auto d = DerivationMap::make(std::vector<GroupRingElement>(images.begin(), images.end()), std::move(sigma), std::move(tau));
  return gcd_criterion(d);
}

// ---------------------------------------------------------------------------

DerivationMap extend_scalars(const DerivationMap& delta, Ring target) {
  if (!is_central_endo(*delta.sigma())) throw NotCentral("sigma does not fix the center of the group ring");
  if (!is_central_endo(*delta.tau())) throw NotCentral("tau does not fix the center of the group ring");
  std::vector<GroupRingElement> images;
  for (const auto& e : delta.images()) images.push_back(change_ring(e, target));
  return DerivationMap::unchecked(std::move(images), change_ring(*delta.sigma(), target),
                                  change_ring(*delta.tau(), target));
}

DerivationMap restrict_scalars(const DerivationMap& delta, Ring target) {
  std::vector<GroupRingElement> images;
  for (const auto& e : delta.images()) images.push_back(change_ring(e, target));
  return DerivationMap::unchecked(std::move(images), change_ring(*delta.sigma(), target),
                                  change_ring(*delta.tau(), target));
}

bool zc2_congruence_check(const DerivationMap& delta, const GroupRingElement& u, const GroupRingElement& alpha) {
  require_field(*delta.sigma());
  const auto u_inv = invert(u);
  if (!u_inv) throw NotAUnit("u is not invertible in " + u.ring().name() + "G");
  if (!(inner_derivation(alpha, delta.sigma(), delta.tau()) == delta))
    throw NotAWitness("alpha does not induce delta");

  const auto comm = commutator_subspace(delta.group(), delta.ring());
  RowReducer base(delta.group()->order(), delta.ring());
  for (const auto& c : comm) base.add_row(c.sparse());
  for (int g = 0; g < delta.group()->order(); ++g) {
    const auto diff = delta.image(g) - alpha * (u * delta.tau()->image(g) * *u_inv - delta.sigma()->image(g));
    RowReducer probe = base;
    if (probe.add_row(diff.sparse())) return false;
  }
  return true;
}

}  // namespace grpder
