#include "grpder/io.hpp"

#include <fstream>
#include <sstream>

#include "grpder/errors.hpp"

namespace grpder {

std::string format_group_json(const FiniteGroup& g) {
  std::ostringstream out;
  out << "{\n  \"order\": " << g.order() << ",\n  \"table\": [\n";
  for (int i = 0; i < g.order(); ++i) {
    out << "    [";
    for (int j = 0; j < g.order(); ++j) out << (j ? "," : "") << g.mul(i, j);
    out << "]" << (i + 1 < g.order() ? "," : "") << "\n";
  }
  out << "  ]";
  if (g.has_labels()) out << ",\n  \"labels\": " << Json(g.labels()).dump();
  out << "\n}\n";
  return out.str();
}

Json group_to_json(const FiniteGroup& g) {
  Json j;
  j["order"] = g.order();
  Json table = Json::array();
  for (int i = 0; i < g.order(); ++i) table.push_back(std::vector<int>(g.row(i).begin(), g.row(i).end()));
  j["table"] = std::move(table);
  if (g.has_labels()) j["labels"] = g.labels();
  return j;
}

GroupPtr group_from_json(const nlohmann::json& j) {
  try {
    if (!j.is_object() || !j.contains("order") || !j.contains("table")) throw ParseError("group JSON needs \"order\" and \"table\"");
    const int n = j.at("order").get<int>();
    auto table = j.at("table").get<std::vector<std::vector<int>>>();
    if (static_cast<int>(table.size()) != n) throw ParseError("\"order\" does not match the table size");
    std::vector<std::string> labels;
    if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
    return make_from_table(table, std::move(labels));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad group JSON: ") + e.what());
  }
}

Json ring_to_json(const Ring& r) {
  Json j;
  switch (r.kind()) {
    case Ring::Kind::Integer: j["ring"] = "Z"; break;
    case Ring::Kind::Rational: j["ring"] = "Q"; break;
    case Ring::Kind::PrimeField:
      j["ring"] = "Fp";
      j["p"] = r.modulus();
      break;
  }
  return j;
}

Json element_to_json(const GroupRingElement& e) {
  Json j = ring_to_json(e.ring());
  Json coeffs = Json::array();
  for (const auto& c : e.coeffs()) coeffs.push_back(to_string(c));
  j["coeffs"] = std::move(coeffs);
  return j;
}

namespace {

Ring ring_from_json(const nlohmann::json& j) {
  const std::string name = j.at("ring").get<std::string>();
  if (name == "Z") return Ring::integers();
  if (name == "Q") return Ring::rationals();
  if (name == "Fp") {
    if (!j.contains("p")) throw ParseError("ring \"Fp\" needs \"p\"");
    return Ring::prime_field(j.at("p").get<unsigned long>());
  }
  throw ParseError("unknown ring \"" + name + "\"");
}

}  // namespace

GroupRingElement element_from_json(const nlohmann::json& j, const GroupPtr& group) {
  try {
    if (!j.is_object() || !j.contains("ring") || !j.contains("coeffs")) throw ParseError("element JSON needs \"ring\" and \"coeffs\"");
    const Ring ring = ring_from_json(j);
    std::vector<Rational> coeffs;
    for (const auto& c : j.at("coeffs")) {
      if (c.is_string()) {
        coeffs.push_back(parse_rational(c.get<std::string>()));
      } else if (c.is_number_integer()) {
        coeffs.push_back(parse_rational(c.dump()));
      } else {
        throw ParseError("coefficient must be an integer or a \"num/den\" string");
      }
      if (!ring.contains(coeffs.back()))
        throw MixedRings("coefficient " + to_string(coeffs.back()) + " is not a canonical element of " + ring.name());
    }
    return GroupRingElement(group, ring, std::move(coeffs));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad element JSON: ") + e.what());
  }
}

Json images_to_json(const std::vector<GroupRingElement>& images) {
  Json arr = Json::array();
  for (const auto& e : images) arr.push_back(element_to_json(e));
  Json j;
  j["images"] = std::move(arr);
  return j;
}

std::vector<GroupRingElement> images_from_json(const nlohmann::json& j, const GroupPtr& group) {
  if (!j.is_object() || !j.contains("images") || !j.at("images").is_array())
    throw ParseError("expected {\"images\": [...]}");
  std::vector<GroupRingElement> out;
  for (const auto& e : j.at("images")) out.push_back(element_from_json(e, group));
  if (static_cast<int>(out.size()) != group->order())
    throw ParseError("expected " + std::to_string(group->order()) + " images, got " + std::to_string(out.size()));
  return out;
}

EndoPtr endo_from_json(const nlohmann::json& j, const GroupPtr& group) {
  return endo_from_images(images_from_json(j, group));
}

nlohmann::json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path.string());
  out << text;
}

}  // namespace grpder
