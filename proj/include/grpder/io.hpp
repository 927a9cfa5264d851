#pragma once

// JSON formats.
//
//   Group:        {"order": n, "table": [[int, ...], ...], "labels": ["e", ...]}
//   Element:      {"ring": "Z"|"Q"|"Fp", "p": int (Fp only), "coeffs": ["3", "-1/2", ...]}
//   Endomorphism: {"images": [element, ...]}
//   Derivation:   {"images": [element, ...]}

#include <filesystem>
#include <string>

#include <json.hpp>

#include "grpder/derivations.hpp"

namespace grpder {

using Json = nlohmann::ordered_json;

/// Pretty form with one table row per line; parse(format(G)) reproduces G.
std::string format_group_json(const FiniteGroup& g);
Json group_to_json(const FiniteGroup& g);
/// Throws ParseError or NotAGroup.
GroupPtr group_from_json(const nlohmann::json& j);

Json ring_to_json(const Ring& r);
Json element_to_json(const GroupRingElement& e);
/// Throws ParseError, MixedGroups (wrong length) or MixedRings.
GroupRingElement element_from_json(const nlohmann::json& j, const GroupPtr& group);
Json images_to_json(const std::vector<GroupRingElement>& images);
std::vector<GroupRingElement> images_from_json(const nlohmann::json& j, const GroupPtr& group);
/// Validated through endo_from_images.
EndoPtr endo_from_json(const nlohmann::json& j, const GroupPtr& group);

/// Throws ParseError when the file is missing or not JSON.
nlohmann::json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace grpder
