// grpder: command-line front end.
//
// Exit codes: 0 success, 1 property or expectation failure, 2 usage or parse error.

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "grpder/constructions.hpp"
#include "grpder/errors.hpp"
#include "grpder/io.hpp"
#include "grpder/verify.hpp"

using namespace grpder;

namespace {

constexpr int kOk = 0, kFailed = 1, kUsage = 2;

struct PropertyFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

GroupPtr load_group(const std::string& spec) {
  if (std::filesystem::is_regular_file(spec)) return group_from_json(read_json_file(spec));
  return standard_group(spec);
}

Ring resolve_ring(const std::string& name, std::optional<unsigned long> p) {
  if (name == "Fp") {
    if (!p) throw ParseError("--ring/--field Fp needs --p");
    return Ring::prime_field(*p);
  }
  return parse_ring(name);
}

DerivationMap load_derivation(const std::string& path, const GroupPtr& g, const EndoPtr& sigma, const EndoPtr& tau) {
  auto images = images_from_json(read_json_file(path), g);
  for (auto& im : images)
    if (!(im.ring() == sigma->ring())) im = change_ring(im, sigma->ring());
  return DerivationMap::make(std::move(images), sigma, tau);
}

void emit(const Json& j, const std::string& out) {
  if (out.empty())
    std::cout << j.dump(2) << "\n";
  else
    write_text_file(out, j.dump(2) + "\n");
}

void emit_text(const std::string& text, const std::string& out) {
  if (out.empty())
    std::cout << text;
  else
    write_text_file(out, text);
}

Json group_info(const GroupPtr& g) {
  Json j;
  j["order"] = g->order();
  j["abelian"] = g->is_abelian();
  const Subset z = center(g);
  j["center_size"] = z.size();
  Json zl = Json::array();
  for (int i : z.members) zl.push_back(g->label(i));
  j["center"] = std::move(zl);
  const auto classes = conjugacy_classes(g);
  j["class_count"] = classes.size();
  Json cl = Json::array();
  for (const auto& c : classes) {
    Json members = Json::array();
    for (int i : c.members) members.push_back(g->label(i));
    cl.push_back(std::move(members));
  }
  j["classes"] = std::move(cl);
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Twisted derivations of finite group rings"};
  app.require_subcommand(1);

  // group
  auto* group_cmd = app.add_subcommand("group", "Build or inspect groups");
  group_cmd->require_subcommand(1);
  std::string group_out, make_name, prod_a, prod_b, info_path;
  auto* make_cmd = group_cmd->add_subcommand("make", "Standard group as Group JSON");
  make_cmd->add_option("--name", make_name, "C<n>, C2xC2, S3, D4, Q8 or A4")->required();
  make_cmd->add_option("-o,--output", group_out, "Write to a file instead of stdout");
  auto* product_cmd = group_cmd->add_subcommand("product", "Direct product of two groups");
  product_cmd->add_option("a", prod_a, "Group JSON file or standard name")->required();
  product_cmd->add_option("b", prod_b, "Group JSON file or standard name")->required();
  product_cmd->add_option("-o,--output", group_out, "Write to a file instead of stdout");
  auto* info_cmd = group_cmd->add_subcommand("info", "Order, center and conjugacy classes");
  info_cmd->add_option("group", info_path, "Group JSON file or standard name")->required();

  // shared options
  std::string grp, sigma_spec = "id", tau_spec = "id", delta_path, ring_name = "Q";
  std::optional<unsigned long> p;
  auto add_common = [&](CLI::App* cmd, bool with_delta) {
    cmd->add_option("--group", grp, "Group JSON file or standard name")->required();
    cmd->add_option("--sigma", sigma_spec, "id, conj:<label> or endomorphism JSON file");
    cmd->add_option("--tau", tau_spec, "id, conj:<label> or endomorphism JSON file");
    cmd->add_option("--p", p, "Prime for Fp");
    if (with_delta) cmd->add_option("--delta", delta_path, "Derivation JSON file")->required();
  };

  auto* h1_cmd = app.add_subcommand("h1", "Derivation, inner and H^1 dimensions over a field");
  add_common(h1_cmd, false);
  std::optional<int> expect_h1;
  h1_cmd->add_option("--field", ring_name, "Q, Fp (with --p) or F<p>");
  h1_cmd->add_option("--expect-h1", expect_h1, "Exit 1 unless h1 equals this value");

  auto* inner_cmd = app.add_subcommand("inner-check", "Decide whether a derivation is inner");
  add_common(inner_cmd, true);
  inner_cmd->add_option("--ring", ring_name, "Z, Q, Fp (with --p) or F<p>");

  auto* gcd_cmd = app.add_subcommand("gcd-criterion", "Per-equation gcd test over Z");
  add_common(gcd_cmd, true);

  auto* cx_cmd = app.add_subcommand("counterexample", "Truncation of the non-inner direct power example");
  std::string base = "Q8", sigma_by;
  int level = 1;
  cx_cmd->add_option("--base", base, "Q8 or D4")->check(CLI::IsMember({"Q8", "D4"}));
  cx_cmd->add_option("--n", level, "Truncation level");
  cx_cmd->add_option("--sigma-by", sigma_by, "sigma_1 = conjugation by this element (default i for Q8, r for D4)");

  auto* verify_cmd = app.add_subcommand("verify-paper", "Run the verification suite");
  std::string json_out, fixtures_dir, dump_dir;
  std::uint64_t seed = kDefaultVerifySeed;
  bool serial = false;
  verify_cmd->add_option("--json", json_out, "Write the report as JSON");
  verify_cmd->add_option("--seed", seed, "Seed for randomized cases")->capture_default_str();
  verify_cmd->add_option("--fixtures", fixtures_dir, "Directory of Z-derivation fixtures");
  verify_cmd->add_option("--dump", dump_dir, "Directory for counterexample fixtures");
  verify_cmd->add_flag("--serial", serial, "Run criteria one after another");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (make_cmd->parsed()) {
      emit_text(format_group_json(*standard_group(make_name)), group_out);
    } else if (product_cmd->parsed()) {
      emit_text(format_group_json(*direct_product(load_group(prod_a), load_group(prod_b))), group_out);
    } else if (info_cmd->parsed()) {
      emit(group_info(load_group(info_path)), "");
    } else if (h1_cmd->parsed()) {
      const auto g = load_group(grp);
      const Ring f = resolve_ring(ring_name, p);
      if (!f.is_field()) throw NotAField("h1 needs a field");
      const auto sigma = parse_endo_spec(sigma_spec, g, f);
      const auto tau = parse_endo_spec(tau_spec, g, f);
      const auto space = derivation_space(sigma, tau);
      Json j;
      j["group"] = grp;
      j["ring"] = f.name();
      j["derivation_dim"] = space.basis.size();
      j["inner_dim"] = space.inner_basis.size();
      j["h1"] = space.h1_dimension;
      j["sigma_central"] = is_central_endo(*sigma);
      j["tau_central"] = is_central_endo(*tau);
      emit(j, "");
      if (expect_h1 && *expect_h1 != space.h1_dimension)
        throw PropertyFailure("expected h1 = " + std::to_string(*expect_h1) + ", got " +
                              std::to_string(space.h1_dimension));
    } else if (inner_cmd->parsed()) {
      const auto g = load_group(grp);
      const Ring r = resolve_ring(ring_name, p);
      const auto sigma = parse_endo_spec(sigma_spec, g, r);
      const auto tau = parse_endo_spec(tau_spec, g, r);
      const auto delta = load_derivation(delta_path, g, sigma, tau);
      Json j;
      j["group"] = grp;
      j["ring"] = r.name();
      j["derivation_valid"] = true;
      if (r.is_field()) {
        const auto w = inner_witness(delta);
        j["inner"] = w.has_value();
        j["witness"] = w ? element_to_json(*w) : Json(nullptr);
      } else {
        const auto w = inner_witness_integer(delta);
        const bool by_gcd = gcd_criterion(delta);
        j["inner"] = w.has_value();
        j["witness"] = w ? element_to_json(*w) : Json(nullptr);
        j["gcd_criterion"] = by_gcd;
        j["agreement"] = by_gcd == w.has_value();
      }
      emit(j, "");
    } else if (gcd_cmd->parsed()) {
      const auto g = load_group(grp);
      const Ring z = Ring::integers();
      const auto sigma = parse_endo_spec(sigma_spec, g, z);
      const auto tau = parse_endo_spec(tau_spec, g, z);
      const auto delta = load_derivation(delta_path, g, sigma, tau);
      const auto failures = gcd_criterion_failures(delta);
      Json j;
      j["group"] = grp;
      j["gcd_criterion"] = failures.empty();
      Json fl = Json::array();
      for (const auto& f : failures)
        fl.push_back({{"g", g->label(f.g)}, {"x", g->label(f.x)}, {"gcd", f.gcd.get_str()}, {"m", f.m.get_str()}});
      j["failures"] = std::move(fl);
      emit(j, "");
    } else if (cx_cmd->parsed()) {
      const auto h = standard_group(base);
      if (sigma_by.empty()) sigma_by = base == "Q8" ? "i" : "r";
      const int a = h->find_label(sigma_by);
      if (a < 0) throw ParseError("no element \"" + sigma_by + "\" in " + base);
      const auto bundle = build_truncation(h, conjugation_map(*h, a), level);
      Json j;
      j["base"] = base;
      j["n"] = level;
      j["sigma_by"] = sigma_by;
      j["x"] = h->label(bundle.base_choices[0]);
      j["order"] = bundle.group->order();
      j["delta_valid"] = is_derivation(bundle.delta.images(), *bundle.sigma, *bundle.tau);
      const auto w = inner_witness(bundle.delta);
      j["witness_full"] = w ? element_to_json(*w) : Json(nullptr);
      if (level >= 2) {
        const Subset s{bundle.group, embedded_prefix(h->order(), level, level - 1)};
        j["restricted_support_feasible"] = inner_witness_with_support(bundle.delta, s).has_value();
      } else {
        j["restricted_support_feasible"] = nullptr;
      }
      emit(j, "");
    } else if (verify_cmd->parsed()) {
      VerificationOptions opt;
      opt.seed = seed;
      opt.parallel = !serial;
      if (!fixtures_dir.empty()) opt.fixtures = fixtures_dir;
      if (!dump_dir.empty()) opt.dump_dir = dump_dir;
      const auto report = run_verification(opt);
      std::cout << format_report_table(report);
      if (!json_out.empty()) write_text_file(json_out, report_to_json(report).dump(2) + "\n");
      return report.all_pass() ? kOk : kFailed;
    }
  } catch (const PropertyFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailed;
  } catch (const NotADerivation& e) {
    std::cerr << "error: not a derivation: " << e.what() << "\n";
    return kFailed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kOk;
}
