#include "grpder/verify.hpp"

#include <algorithm>
#include <future>
#include <map>
#include <random>
#include <sstream>

#include "grpder/constructions.hpp"
#include "grpder/errors.hpp"

namespace grpder {

namespace {

constexpr const char* kDeskGroups[] = {"C2", "C3", "C4", "C2xC2", "C6", "S3", "D4", "Q8", "A4"};
constexpr int kUnitsPerGroup = 2;

using Rng = std::mt19937_64;

Rng criterion_rng(std::uint64_t seed, int criterion) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(criterion)};
  return Rng(seq);
}

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

GroupRingElement random_element(const GroupPtr& g, Ring ring, Rng& rng, int lo, int hi) {
  GroupRingElement x(g, ring);
  for (int i = 0; i < g->order(); ++i) x.set(i, uniform(rng, lo, hi));
  return x;
}

GroupRingElement random_combination(const std::vector<GroupRingElement>& basis, const GroupPtr& g, Ring ring,
                                    Rng& rng, int lo, int hi) {
  GroupRingElement x(g, ring);
  for (const auto& b : basis) x += b.scaled(uniform(rng, lo, hi));
  return x;
}

DerivationMap random_derivation(const DerivationSpace& space, Rng& rng) {
  DerivationMap d = DerivationMap::zero(space.sigma, space.tau);
  for (const auto& b : space.basis) d = d + b.scaled(uniform(rng, -2, 2));
  return d;
}

GroupRingElement random_unit(const GroupPtr& g, Ring ring, Rng& rng) {
  for (;;) {
    auto u = random_element(g, ring, rng, -2, 2);
    if (invert(u)) return u;
  }
}

/// Endomorphism pool: identity, conjugation by every element, and a few
/// conjugations by random units of QG.
struct EndoPool {
  std::vector<EndoPtr> endos;
  std::vector<std::string> names;
};

EndoPtr conj_by_element(const GroupPtr& g, Ring ring, int a) {
  return endo_from_group_map(g, ring, conjugation_map(*g, a));
}

EndoPool make_pool(const GroupPtr& g, Ring ring, Rng* rng, int units) {
  EndoPool pool;
  pool.endos.push_back(identity_endo(g, ring));
  pool.names.push_back("id");
  for (int a = 0; a < g->order(); ++a) {
    pool.endos.push_back(conj_by_element(g, ring, a));
    pool.names.push_back("conj:" + g->label(a));
  }
  for (int k = 0; k < units && rng; ++k) {
    const auto u = random_unit(g, ring, *rng);
    pool.endos.push_back(conjugation_endo(u));
    pool.names.push_back("unit" + std::to_string(k + 1));
  }
  return pool;
}

/// Homomorphisms G -> {+1, -1} other than the trivial one, found through
/// their kernels (subgroups of index 2).
std::vector<std::vector<int>> sign_characters(const GroupPtr& g) {
  std::vector<std::vector<int>> out;
  const int n = g->order();
  if (n % 2 != 0 || n > 24) return out;
  std::vector<int> pick(n, 0);
  std::fill(pick.begin() + 1, pick.begin() + n / 2, 1);  // identity always in the kernel
  std::vector<int> rest(pick.begin() + 1, pick.end());
  std::sort(rest.begin(), rest.end(), std::greater<>());
  do {
    std::vector<char> in(n, 0);
    in[0] = 1;
    for (int i = 1; i < n; ++i) in[i] = static_cast<char>(rest[i - 1]);
    bool closed = true;
    for (int a = 0; a < n && closed; ++a)
      for (int b = 0; b < n && closed; ++b)
        if (in[a] && in[b] && !in[g->mul(a, b)]) closed = false;
    if (closed) {
      std::vector<int> chi(n);
      for (int i = 0; i < n; ++i) chi[i] = in[i] ? 1 : -1;
      out.push_back(std::move(chi));
    }
  } while (std::prev_permutation(rest.begin(), rest.end()));
  return out;
}

/// g -> chi(g) phi(g) for a sign character chi and a group endomorphism phi.
EndoPtr sign_twisted(const GroupPtr& g, Ring ring, const std::vector<int>& chi, const std::vector<int>& phi) {
  std::vector<GroupRingElement> images;
  for (int i = 0; i < g->order(); ++i) images.push_back(GroupRingElement::basis(g, ring, phi[i], chi[i]));
  return make_endomorphism_unchecked(std::move(images));
}

struct CaseList {
  int criterion;
  std::vector<VerificationCase> cases;

  void add(std::string claim, std::string group, std::string ring, std::string parameters, std::string expected,
           std::string observed, bool pass) {
    char id[16];
    std::snprintf(id, sizeof id, "C%d.%02d", criterion, static_cast<int>(cases.size()) + 1);
    cases.push_back({id, std::move(claim), std::move(group), std::move(ring), std::move(parameters),
                     std::move(expected), std::move(observed), pass});
  }
};

std::string count_str(int good, int total) { return std::to_string(good) + "/" + std::to_string(total); }

// 1: H^1 = 0 over Q for central sigma, tau.
std::vector<VerificationCase> criterion_h1_zero(const VerificationOptions& opt) {
  CaseList out{1, {}};
  Rng rng = criterion_rng(opt.seed, 1);
  const Ring q = Ring::rationals();
  for (const char* name : kDeskGroups) {
    const auto g = standard_group(name);
    const auto pool = make_pool(g, q, &rng, kUnitsPerGroup);
    int pairs = 0, zero = 0, noncentral = 0, worst = 0;
    for (const auto& e : pool.endos)
      if (!is_central_endo(*e)) ++noncentral;
    for (const auto& s : pool.endos)
      for (const auto& t : pool.endos) {
        const int h1 = h1_dimension(s, t);
        ++pairs;
        if (h1 == 0) ++zero;
        worst = std::max(worst, h1);
      }
    out.add("h1 vanishes for central sigma, tau", name, "Q",
            std::to_string(pool.endos.size()) + " endomorphisms (id, inner, " + std::to_string(kUnitsPerGroup) +
                " unit conjugations), all pairs",
            "h1 = 0 on " + std::to_string(pairs) + " pairs, all central",
            "h1 = 0 on " + count_str(zero, pairs) + " pairs, max h1 " + std::to_string(worst) + ", non-central " +
                std::to_string(noncentral),
            zero == pairs && noncentral == 0);
  }
  return out.cases;
}

// 2: characteristic dividing |G| breaks the vanishing.
std::vector<VerificationCase> criterion_char_p(const VerificationOptions&) {
  CaseList out{2, {}};
  struct Item {
    const char* group;
    unsigned long p;
    int expected;
  };
  for (const Item& it : {Item{"C2", 2, 2}, Item{"S3", 5, 0}}) {
    const auto g = standard_group(it.group);
    const Ring f = Ring::prime_field(it.p);
    const int h1 = h1_dimension(identity_endo(g, f), identity_endo(g, f));
    out.add("h1 over F_p with sigma = tau = id", it.group, f.name(), "sigma = tau = id",
            "h1 = " + std::to_string(it.expected), "h1 = " + std::to_string(h1), h1 == it.expected);
  }
  return out.cases;
}

// 3: elementary derivation identities on random instances.
std::vector<VerificationCase> criterion_identities(const VerificationOptions& opt) {
  CaseList out{3, {}};
  Rng rng = criterion_rng(opt.seed, 3);
  const Ring q = Ring::rationals();
  constexpr int kInstances = 100;
  for (const char* name : kDeskGroups) {
    const auto g = standard_group(name);
    const int n = g->order();
    const auto pool = make_pool(g, q, &rng, kUnitsPerGroup);
    const auto classes = center_basis(g, q);
    const Subset z = center(g);
    std::map<std::pair<int, int>, std::pair<DerivationSpace, std::vector<GroupRingElement>>> cache;
    std::map<std::string, int> failures;

    for (int inst = 0; inst < kInstances; ++inst) {
      const int si = uniform(rng, 0, static_cast<int>(pool.endos.size()) - 1);
      const int ti = uniform(rng, 0, static_cast<int>(pool.endos.size()) - 1);
      const auto& sigma = pool.endos[si];
      const auto& tau = pool.endos[ti];
      auto it = cache.find({si, ti});
      if (it == cache.end())
        it = cache.emplace(std::pair{si, ti}, std::pair{derivation_space(sigma, tau), twisted_centralizer(sigma, tau)})
                 .first;
      const auto& [space, centralizer] = it->second;

      const auto x = random_element(g, q, rng, -3, 3);
      const auto y = random_element(g, q, rng, -3, 3);
      const auto dx = inner_derivation(x, sigma, tau);
      const auto dy = inner_derivation(y, sigma, tau);
      const auto delta = random_derivation(space, rng);

      if (!dx.image(0).is_zero() || !delta.image(0).is_zero()) ++failures["delta(1)"];
      if (!(inner_derivation(x + y, sigma, tau) == dx + dy)) ++failures["additivity"];

      std::vector<Vector> cvecs;
      for (const auto& c : centralizer) cvecs.emplace_back(c.coeffs().begin(), c.coeffs().end());
      auto in_centralizer = [&](const GroupRingElement& d) {
        return in_span(cvecs, Vector(d.coeffs().begin(), d.coeffs().end()), q);
      };
      if ((dx == dy) != in_centralizer(x - y)) ++failures["kernel (random y)"];
      const auto y2 = x + random_combination(centralizer, g, q, rng, -2, 2);
      if (!(inner_derivation(y2, sigma, tau) == dx) || !in_centralizer(x - y2)) ++failures["kernel (shifted y)"];
      if (static_cast<int>(space.inner_basis.size()) != n - static_cast<int>(centralizer.size()))
        ++failures["rank"];

      const auto alpha = random_combination(classes, g, q, rng, -2, 2);
      const auto d_alpha = delta.apply(alpha);
      auto power = GroupRingElement::one(g, q);  // alpha^{k-1}
      for (int k = 1; k <= 5; ++k) {
        if (!(delta.apply(power * alpha) == (power * d_alpha).scaled(k))) {
          ++failures["power rule"];
          break;
        }
        power = power * alpha;
      }
      const bool center_killed = std::all_of(z.members.begin(), z.members.end(), [&](int zi) {
        return std::all_of(space.basis.begin(), space.basis.end(),
                           [&](const DerivationMap& b) { return b.image(zi).is_zero(); });
      });
      if (!center_killed) ++failures["torsion center"];
    }
    int bad = 0;
    std::string detail;
    for (const auto& [k, v] : failures) {
      bad += v;
      detail += " " + k + ":" + std::to_string(v);
    }
    out.add("derivation identities (delta(1), additivity, kernel, rank, power rule, center)", name, "Q",
            std::to_string(kInstances) + " random instances", "0 violations",
            std::to_string(bad) + " violations" + detail, bad == 0);
  }
  return out.cases;
}

GroupRingElement to_integers(const GroupRingElement& e) { return change_ring(e, Ring::integers()); }

// Smallest common multiple of denominators, then divide out the content.
std::vector<GroupRingElement> primitive_integral(const DerivationMap& d, Integer scale) {
  Integer den = 1, content = 0;
  for (const auto& im : d.images())
    for (const auto& c : im.coeffs()) den = lcm(den, Integer(c.get_den()));
  for (const auto& im : d.images())
    for (const auto& c : im.coeffs()) content = gcd(content, Integer(c * den));
  std::vector<GroupRingElement> out;
  for (const auto& im : d.images()) {
    auto s = im.scaled(Rational(den * scale, content == 0 ? Integer(1) : content));
    out.push_back(to_integers(s));
  }
  return out;
}

struct Disagreement {
  int order;
  Integer height;
  Json fixture;
};

// 4: gcd test against the Smith normal form solve over Z.
std::vector<VerificationCase> criterion_gcd(const VerificationOptions& opt) {
  CaseList out{4, {}};
  Rng rng = criterion_rng(opt.seed, 4);
  const Ring z = Ring::integers(), q = Ring::rationals();
  const char* groups[] = {"S3", "Q8", "C4", "D4", "C2xC2", "C3", "C6"};
  constexpr int kInstances = 200;
  int agree = 0, inner = 0, not_inner = 0, from_basis = 0, witness_bad = 0;
  std::optional<Disagreement> smallest;

  for (int inst = 0; inst < kInstances; ++inst) {
    const auto g = standard_group(groups[inst % std::size(groups)]);
    auto pool = make_pool(g, z, nullptr, 0);
    std::vector<int> id_map(g->order());
    for (int i = 0; i < g->order(); ++i) id_map[i] = i;
    for (const auto& chi : sign_characters(g)) {
      pool.endos.push_back(sign_twisted(g, z, chi, id_map));
      pool.endos.push_back(sign_twisted(g, z, chi, conjugation_map(*g, uniform(rng, 0, g->order() - 1))));
    }
    const auto& sigma = pool.endos[uniform(rng, 0, static_cast<int>(pool.endos.size()) - 1)];
    const auto& tau = pool.endos[uniform(rng, 0, static_cast<int>(pool.endos.size()) - 1)];

    std::vector<GroupRingElement> images;
    if (inst % 2 == 1) {
      const auto space = derivation_space(change_ring(*sigma, q), change_ring(*tau, q));
      if (!space.basis.empty()) {
        const auto& b = space.basis[uniform(rng, 0, static_cast<int>(space.basis.size()) - 1)];
        images = primitive_integral(b, uniform(rng, 1, 3));
        ++from_basis;
      }
    }
    if (images.empty()) images = inner_derivation(random_element(g, z, rng, -3, 3), sigma, tau).images();

    const auto delta = DerivationMap::make(images, sigma, tau);
    const bool by_gcd = gcd_criterion(delta);
    const auto witness = inner_witness_integer(delta);
    if (witness && !(inner_derivation(*witness, sigma, tau) == delta)) ++witness_bad;
    (witness ? inner : not_inner) += 1;
    if (by_gcd == witness.has_value()) {
      ++agree;
      continue;
    }
    Integer height = 0;
    for (const auto& im : images)
      for (const auto& c : im.coeffs()) height = std::max(height, Integer(abs(c.get_num())));
    if (!smallest || g->order() < smallest->order || (g->order() == smallest->order && height < smallest->height))
      smallest = Disagreement{g->order(), height, fixture_to_json("gcd-disagreement-" + std::to_string(inst), delta)};
  }
  if (smallest && opt.dump_dir) {
    std::filesystem::create_directories(*opt.dump_dir);
    write_text_file(*opt.dump_dir / "gcd_counterexample.json", smallest->fixture.dump(2) + "\n");
  }
  out.add("gcd criterion agrees with integral solvability", "S3,Q8,C4,D4,C2xC2,C3,C6", "Z",
          std::to_string(kInstances) + " instances (" + std::to_string(from_basis) +
              " scaled field-basis), sigma, tau from id, inner and sign-twisted maps",
          "agree on " + std::to_string(kInstances),
          "agree on " + count_str(agree, kInstances) + " (inner " + std::to_string(inner) + ", not inner " +
              std::to_string(not_inner) + ")",
          agree == kInstances);
  out.add("integer witnesses reproduce delta", "S3,Q8,C4,D4,C2xC2,C3,C6", "Z", "every witness found",
          "delta_alpha = delta", std::to_string(witness_bad) + " mismatches", witness_bad == 0);
  return out.cases;
}

std::vector<DerivationFixture> builtin_fixtures() {
  std::vector<DerivationFixture> out;
  const Ring z = Ring::integers();
  auto add = [&](const char* name, const char* group, int s, int t, std::vector<int> x) {
    const auto g = standard_group(group);
    const auto sigma = conj_by_element(g, z, s);
    const auto tau = conj_by_element(g, z, t);
    std::vector<Rational> c(x.begin(), x.end());
    const auto d = inner_derivation(GroupRingElement(g, z, c), sigma, tau);
    out.push_back({name, group, g, sigma, tau, d.images()});
  };
  add("builtin-s3", "S3", 0, 1, {1, 0, 2, -1, 0, 0});
  add("builtin-q8", "Q8", 2, 4, {0, 1, 0, 0, 3, 0, -2, 0});
  add("builtin-zero-d4", "D4", 1, 1, {0, 0, 0, 0, 0, 0, 0, 0});
  return out;
}

// 5: extension to Q and back.
std::vector<VerificationCase> criterion_extension(const VerificationOptions& opt) {
  CaseList out{5, {}};
  std::vector<std::pair<std::string, std::optional<DerivationFixture>>> fixtures;
  std::vector<std::string> load_errors;
  if (opt.fixtures) {
    std::vector<std::filesystem::path> files;
    if (std::filesystem::is_directory(*opt.fixtures))
      for (const auto& entry : std::filesystem::directory_iterator(*opt.fixtures))
        if (entry.path().extension() == ".json") files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    if (files.empty()) out.add("fixtures present", "-", "Z", opt.fixtures->string(), "at least one fixture", "none", false);
    for (const auto& f : files) {
      try {
        fixtures.emplace_back(f.filename().string(), fixture_from_json(read_json_file(f)));
      } catch (const Error& e) {
        fixtures.emplace_back(f.filename().string(), std::nullopt);
        load_errors.push_back(e.what());
      }
    }
  } else {
    for (auto& f : builtin_fixtures()) fixtures.emplace_back(f.name, std::move(f));
  }

  std::size_t err = 0;
  for (const auto& [label, fx] : fixtures) {
    if (!fx) {
      out.add("fixture loads", "-", "Z", label, "valid fixture", "load error: " + load_errors[err++], false);
      continue;
    }
    const std::string& gname = fx->group_name;
    if (!is_derivation(fx->delta, *fx->sigma, *fx->tau)) {
      out.add("Z-derivation extends to Q and back", gname, "Z", label, "valid Z-derivation", "not a derivation",
              false);
      continue;
    }
    const auto delta = DerivationMap::unchecked(fx->delta, fx->sigma, fx->tau);
    std::string observed;
    bool pass = false;
    try {
      const auto ext = extend_scalars(delta);
      const bool valid = is_derivation(ext.images(), *ext.sigma(), *ext.tau());
      const bool back = restrict_scalars(ext) == delta;
      const auto w = inner_witness(ext);
      const bool witnessed = w && inner_derivation(*w, ext.sigma(), ext.tau()) == ext;
      pass = valid && back && witnessed;
      observed = std::string("extension ") + (valid ? "valid" : "invalid") + ", restriction " +
                 (back ? "identical" : "differs") + ", Q-witness " + (witnessed ? "present" : "absent");
    } catch (const Error& e) {
      observed = e.what();
    }
    out.add("Z-derivation extends to Q and back", gname, "Z -> Q", label,
            "extension valid, restriction identical, Q-witness present", observed, pass);
  }
  return out.cases;
}

// 6: abelian closed form.
std::vector<VerificationCase> criterion_abelian(const VerificationOptions&) {
  CaseList out{6, {}};
  const Ring q = Ring::rationals();
  for (const char* name : {"C2", "C4"}) {
    const auto g = standard_group(name);
    std::vector<GroupRingElement> twist;
    for (int k = 0; k < g->order(); ++k) twist.push_back(GroupRingElement::basis(g, q, k, k % 2 ? -1 : 1));
    const auto sigma = identity_endo(g, q);
    const auto tau = endo_from_images(twist);
    const auto b = find_unit_difference(sigma, tau);
    const auto space = derivation_space(sigma, tau);
    int ok = 0;
    if (b)
      for (const auto& d : space.basis) ok += commutative_derivation_form(d, *b);
    const int dim = static_cast<int>(space.basis.size());
    out.add("closed form delta = (tau(b)-sigma(b))^-1 delta(b) (tau - sigma)", name, "Q",
            "sigma = id, tau: g^k -> (-1)^k g^k",
            "unit difference found, closed form on every basis element",
            std::string(b ? "b found" : "no b") + ", closed form on " + count_str(ok, dim) + " basis elements",
            b.has_value() && ok == dim);
  }
  return out.cases;
}

// 7: truncations of the non-inner example.
std::vector<VerificationCase> criterion_truncation(const VerificationOptions&) {
  CaseList out{7, {}};
  const auto h = standard_group("Q8");
  const auto sigma1 = conjugation_map(*h, h->find_label("i"));
  for (int n = 1; n <= 3; ++n) {
    const auto bundle = build_truncation(h, sigma1, n);
    const std::string gname = "Q8^" + std::to_string(n);
    const std::string params = "sigma_1 = conj:i, x = " + h->label(bundle.base_choices[0]);
    const bool valid = is_derivation(bundle.delta.images(), *bundle.sigma, *bundle.tau);
    out.add("delta_n is a derivation", gname, "Q", params, "valid", valid ? "valid" : "invalid", valid);
    const auto w = inner_witness(bundle.delta);
    const bool full = w && inner_derivation(*w, bundle.sigma, bundle.tau) == bundle.delta;
    out.add("full witness exists", gname, "Q", params, "present", full ? "present" : "absent", full);
    if (n >= 2) {
      const Subset s{bundle.group, embedded_prefix(h->order(), n, n - 1)};
      const bool feasible = inner_witness_with_support(bundle.delta, s).has_value();
      out.add("no witness supported on G_{n-1}", gname, "Q", params + ", S = G_" + std::to_string(n - 1), "absent",
              feasible ? "present" : "absent", !feasible);
    }
  }
  return out.cases;
}

ExactMatrix random_integer_matrix(Rng& rng) {
  const int r = uniform(rng, 1, 12), c = uniform(rng, 1, 12);
  const Ring z = Ring::integers();
  ExactMatrix a(r, c, z);
  if (uniform(rng, 0, 2) == 0) {
    const int k = uniform(rng, 1, std::min(r, c));
    ExactMatrix b(r, k, z), d(k, c, z);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < k; ++j) b.set(i, j, uniform(rng, -3, 3));
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < c; ++j) d.set(i, j, uniform(rng, -3, 3));
    return b * d;
  }
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) a.set(i, j, uniform(rng, -9, 9));
  return a;
}

ExactMatrix over_rationals(const ExactMatrix& a) {
  ExactMatrix out(a.rows(), a.cols(), Ring::rationals());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) out.set(i, j, a(i, j));
  return out;
}

// 8: Smith normal form self-checks.
std::vector<VerificationCase> criterion_linalg(const VerificationOptions& opt) {
  CaseList out{8, {}};
  Rng rng = criterion_rng(opt.seed, 8);
  constexpr int kMatrices = 500;
  int recon = 0, chain = 0, unimod = 0, solve_ok = 0;
  for (int m = 0; m < kMatrices; ++m) {
    const auto a = random_integer_matrix(rng);
    const auto snf = smith_normal_form(a);
    recon += (snf.U * a * snf.V == snf.S);

    bool diag = true;
    for (int i = 0; i < a.rows(); ++i)
      for (int j = 0; j < a.cols(); ++j)
        if (i != j && snf.S(i, j) != 0) diag = false;
    const auto d = snf.diagonal();
    for (std::size_t i = 0; i < d.size(); ++i) {
      if (d[i] < 0) diag = false;
      if (static_cast<int>(i) >= snf.rank && d[i] != 0) diag = false;
      if (static_cast<int>(i) < snf.rank && d[i] == 0) diag = false;
      if (i + 1 < d.size() && !divides(d[i], d[i + 1])) diag = false;
    }
    chain += diag;
    unimod += (abs(determinant(snf.U)) == 1 && abs(determinant(snf.V)) == 1);

    // b either in the integer image (A x0) or random.
    Vector b(a.rows());
    const bool planted = uniform(rng, 0, 1) == 0;
    if (planted) {
      Vector x0(a.cols());
      for (auto& v : x0) v = uniform(rng, -4, 4);
      b = a * x0;
    } else {
      for (auto& v : b) v = uniform(rng, -20, 20);
    }
    const auto xz = integer_solve(a, b);
    const auto xq = solve(over_rationals(a), b);
    const auto ub = snf.U * b;
    bool expect = xq.has_value();
    for (int i = 0; i < a.rows() && expect; ++i) {
      const Integer ui = ub[i].get_num();
      if (!divides(i < static_cast<int>(d.size()) ? d[i] : Integer(0), ui)) expect = false;
    }
    bool ok = (xz.has_value() == expect) && (!planted || xz.has_value());
    if (xz) {
      ok = ok && a * *xz == b;
      for (const auto& v : *xz) ok = ok && v.get_den() == 1;
    }
    solve_ok += ok;
  }
  const std::string params = std::to_string(kMatrices) + " random matrices up to 12x12";
  out.add("U A V = S", "-", "Z", params, count_str(kMatrices, kMatrices), count_str(recon, kMatrices),
          recon == kMatrices);
  out.add("S diagonal with d_1 | d_2 | ...", "-", "Z", params, count_str(kMatrices, kMatrices),
          count_str(chain, kMatrices), chain == kMatrices);
  out.add("U, V unimodular", "-", "Z", params, count_str(kMatrices, kMatrices), count_str(unimod, kMatrices),
          unimod == kMatrices);
  out.add("integer_solve matches rational solve + divisibility", "-", "Z", params, count_str(kMatrices, kMatrices),
          count_str(solve_ok, kMatrices), solve_ok == kMatrices);
  return out.cases;
}

GroupRingElement random_central_unit(const GroupPtr& g, Ring ring, Rng& rng) {
  const auto classes = center_basis(g, ring);
  for (;;) {
    auto c = random_combination(classes, g, ring, rng, -2, 2);
    if (invert(c)) return c;
  }
}

// 9: congruence modulo [QG, QG].
std::vector<VerificationCase> criterion_congruence(const VerificationOptions& opt) {
  CaseList out{9, {}};
  Rng rng = criterion_rng(opt.seed, 9);
  const Ring q = Ring::rationals();
  constexpr int kTrials = 5;
  for (const char* name : {"S3", "Q8"}) {
    const auto g = standard_group(name);
    const auto id = identity_endo(g, q);
    const auto one = GroupRingElement::one(g, q);

    int ok = 0;
    for (int t = 0; t < kTrials; ++t) {
      const auto alpha = random_element(g, q, rng, -3, 3);
      ok += zc2_congruence_check(inner_derivation(alpha, id, id), one, alpha);
    }
    out.add("congruence holds for sigma = tau = id, u = 1", name, "Q", "delta = delta_alpha, random alpha",
            count_str(kTrials, kTrials), count_str(ok, kTrials), ok == kTrials);

    const auto zero = GroupRingElement(g, q);
    const bool trivial = zc2_congruence_check(DerivationMap::zero(id, id), one, zero);
    out.add("congruence holds for delta = 0, alpha = 0", name, "Q", "sigma = tau = id, u = 1", "true",
            trivial ? "true" : "false", trivial);

    ok = 0;
    std::string conj;
    for (int t = 0; t < kTrials; ++t) {
      const int a = uniform(rng, 0, g->order() - 1);
      const auto sigma = conjugation_endo(GroupRingElement::basis(g, q, a));
      // u tau(g) u^{-1} = sigma(g) for every g forces u into the center.
      const auto u = random_central_unit(g, q, rng);
      const auto alpha = random_element(g, q, rng, -3, 3);
      ok += zc2_congruence_check(inner_derivation(alpha, sigma, sigma), u, alpha);
      conj += (t ? "," : "") + g->label(a);
    }
    out.add("congruence holds when u tau(g) u^-1 = sigma(g)", name, "Q",
            "sigma = tau = conjugation by " + conj + ", u a random central unit", count_str(kTrials, kTrials),
            count_str(ok, kTrials), ok == kTrials);
  }
  return out.cases;
}

}  // namespace

int VerificationReport::passed() const {
  return static_cast<int>(std::count_if(cases.begin(), cases.end(), [](const auto& c) { return c.pass; }));
}

int VerificationReport::failed() const { return static_cast<int>(cases.size()) - passed(); }

std::vector<VerificationCase> run_criterion(int criterion, const VerificationOptions& options) {
  using Fn = std::vector<VerificationCase> (*)(const VerificationOptions&);
  static constexpr Fn kFns[] = {criterion_h1_zero,   criterion_char_p,     criterion_identities,
                                criterion_gcd,       criterion_extension,  criterion_abelian,
                                criterion_truncation, criterion_linalg,    criterion_congruence};
  if (criterion < 1 || criterion > kCriterionCount) throw Error("no criterion " + std::to_string(criterion));
  try {
    return kFns[criterion - 1](options);
  } catch (const Error& e) {
    CaseList out{criterion, {}};
    out.add("criterion ran to completion", "-", "-", "-", "no error", e.what(), false);
    return out.cases;
  }
}

VerificationReport run_verification(const VerificationOptions& options) {
  VerificationReport report;
  std::vector<std::future<std::vector<VerificationCase>>> jobs;
  for (int c = 1; c <= kCriterionCount; ++c)
    jobs.push_back(std::async(options.parallel ? std::launch::async : std::launch::deferred,
                              [c, &options] { return run_criterion(c, options); }));
  for (auto& j : jobs)
    for (auto& c : j.get()) report.cases.push_back(std::move(c));
  std::stable_sort(report.cases.begin(), report.cases.end(), [](const auto& a, const auto& b) {
    const int ca = std::stoi(a.id.substr(1)), cb = std::stoi(b.id.substr(1));
    return ca != cb ? ca < cb : a.id < b.id;
  });
  return report;
}

Json report_to_json(const VerificationReport& report) {
  Json cases = Json::array();
  for (const auto& c : report.cases)
    cases.push_back({{"id", c.id},
                     {"claim", c.claim},
                     {"group", c.group},
                     {"ring", c.ring},
                     {"parameters", c.parameters},
                     {"expected", c.expected},
                     {"observed", c.observed},
                     {"pass", c.pass}});
  Json j;
  j["cases"] = std::move(cases);
  j["summary"] = {{"total", report.cases.size()}, {"passed", report.passed()}, {"failed", report.failed()}};
  return j;
}

std::string format_report_table(const VerificationReport& report) {
  std::ostringstream out;
  for (const auto& c : report.cases)
    out << c.id << "  " << (c.pass ? "PASS" : "FAIL") << "  [" << c.group << ", " << c.ring << "] " << c.claim
        << "\n        expected: " << c.expected << "\n        observed: " << c.observed << "\n";
  out << report.passed() << " passed, " << report.failed() << " failed, " << report.cases.size() << " total\n";
  return out.str();
}

EndoPtr parse_endo_spec(const std::string& spec, const GroupPtr& group, Ring ring) {
  if (spec == "id") return identity_endo(group, ring);
  if (spec.rfind("conj:", 0) == 0) {
    const std::string label = spec.substr(5);
    int a = group->find_label(label);
    if (a < 0 && !label.empty() && std::all_of(label.begin(), label.end(), ::isdigit)) a = std::stoi(label);
    if (a < 0 || a >= group->order()) throw ParseError("no element \"" + label + "\" in the group");
    return conj_by_element(group, ring, a);
  }
  const auto endo = endo_from_json(read_json_file(spec), group);
  return endo->ring() == ring ? endo : change_ring(*endo, ring);
}

DerivationFixture fixture_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("group") || !j.contains("delta"))
    throw ParseError("fixture needs \"group\" and \"delta\"");
  DerivationFixture fx;
  fx.name = j.value("name", "");
  const auto& gj = j.at("group");
  fx.group = gj.is_string() ? standard_group(gj.get<std::string>()) : group_from_json(gj);
  fx.group_name = gj.is_string() ? gj.get<std::string>() : "order " + std::to_string(fx.group->order());
  const Ring z = Ring::integers();
  auto endo = [&](const char* key) -> EndoPtr {
    if (!j.contains(key)) return identity_endo(fx.group, z);
    const auto& e = j.at(key);
    if (e.is_string()) {
      const auto s = e.get<std::string>();
      if (s != "id" && s.rfind("conj:", 0) != 0) throw ParseError("bad endomorphism spec \"" + s + "\"");
      return parse_endo_spec(s, fx.group, z);
    }
    return endo_from_json(e, fx.group);
  };
  fx.sigma = endo("sigma");
  fx.tau = endo("tau");
  fx.delta = images_from_json(j.at("delta"), fx.group);
  return fx;
}

Json fixture_to_json(const std::string& name, const DerivationMap& delta) {
  Json j;
  j["name"] = name;
  j["group"] = group_to_json(*delta.group());
  j["sigma"] = images_to_json(delta.sigma()->images());
  j["tau"] = images_to_json(delta.tau()->images());
  j["delta"] = images_to_json(delta.images());
  return j;
}

}  // namespace grpder
