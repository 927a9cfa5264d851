#pragma once

// Batch verification suite. Each criterion expands into a list of cases;
// criteria run concurrently but the report is always ordered by case id.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "grpder/io.hpp"

namespace grpder {

inline constexpr std::uint64_t kDefaultVerifySeed = 20190405;

struct VerificationCase {
  std::string id;         ///< "C<criterion>.<nn>", sortable
  std::string claim;
  std::string group;
  std::string ring;
  std::string parameters;
  std::string expected;
  std::string observed;
  bool pass = false;
};

struct VerificationReport {
  std::vector<VerificationCase> cases;
  int passed() const;
  int failed() const;
  bool all_pass() const { return failed() == 0; }
};

struct VerificationOptions {
  std::uint64_t seed = kDefaultVerifySeed;
  /// Z-derivation fixtures for criterion 5; every *.json file is loaded.
  std::optional<std::filesystem::path> fixtures;
  /// Where criterion 4 writes a counterexample fixture on disagreement.
  std::optional<std::filesystem::path> dump_dir;
  bool parallel = true;
};

inline constexpr int kCriterionCount = 9;

/// Cases of a single criterion (1-based).
std::vector<VerificationCase> run_criterion(int criterion, const VerificationOptions& options);
VerificationReport run_verification(const VerificationOptions& options);

Json report_to_json(const VerificationReport& report);
std::string format_report_table(const VerificationReport& report);

/// A Z-derivation fixture: {"name", "group", "sigma", "tau", "delta"}.
/// "group" is a standard name or a group object; "sigma"/"tau" are "id",
/// "conj:<label>" or {"images": [...]}.
struct DerivationFixture {
  std::string name;
  std::string group_name;
  GroupPtr group;
  EndoPtr sigma, tau;
  std::vector<GroupRingElement> delta;
};

/// Throws ParseError on malformed input; validity of delta is not checked.
DerivationFixture fixture_from_json(const nlohmann::json& j);
Json fixture_to_json(const std::string& name, const DerivationMap& delta);

/// Resolves "id", "conj:<label>" or an endomorphism JSON file path.
EndoPtr parse_endo_spec(const std::string& spec, const GroupPtr& group, Ring ring);

}  // namespace grpder
