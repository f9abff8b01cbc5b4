#include "topocheck/space_io.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace topocheck {

namespace {

std::vector<std::string> digit_labels(int n) {
  std::vector<std::string> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) out.push_back(std::to_string(i));
  return out;
}

int parse_point_count(std::string_view text, int cap) {
  int n = 0;
  if (text.empty()) throw std::invalid_argument("missing point count");
  for (char c : text) {
    if (c < '0' || c > '9') throw std::invalid_argument("invalid point count '" + std::string(text) + "'");
    n = n * 10 + (c - '0');
    if (n > 100) break;
  }
  if (n < 1 || n > cap)
    throw std::invalid_argument("point count " + std::to_string(n) + " outside 1.." + std::to_string(cap));
  return n;
}

std::string trimmed(std::string_view s) {
  std::size_t b = s.find_first_not_of(" \t");
  std::size_t e = s.find_last_not_of(" \t");
  if (b == std::string_view::npos) return {};
  return std::string(s.substr(b, e - b + 1));
}

// "{a,b,c}" → labels; "{}" → empty.
std::vector<std::string> parse_brace_set(std::string_view item) {
  std::string t = trimmed(item);
  if (t.size() < 2 || t.front() != '{' || t.back() != '}')
    throw std::invalid_argument("expected a set like {1,2}, got '" + t + "'");
  std::vector<std::string> labels;
  std::string inner = t.substr(1, t.size() - 2);
  std::istringstream in(inner);
  std::string part;
  while (std::getline(in, part, ',')) {
    std::string label = trimmed(part);
    if (label.empty()) throw std::invalid_argument("empty label in set '" + t + "'");
    labels.push_back(std::move(label));
  }
  return labels;
}

// Top-level comma-separated list of brace sets.
std::vector<std::vector<std::string>> parse_set_list(std::string_view text) {
  std::vector<std::vector<std::string>> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t' || text[pos] == ',')) ++pos;
    if (pos >= text.size()) break;
    if (text[pos] != '{') throw std::invalid_argument("expected '{' in set list");
    std::size_t close = text.find('}', pos);
    if (close == std::string_view::npos) throw std::invalid_argument("unterminated set in list");
    out.push_back(parse_brace_set(text.substr(pos, close - pos + 1)));
    pos = close + 1;
  }
  return out;
}

std::vector<std::string> union_labels(const std::vector<std::vector<std::string>>& members) {
  std::vector<std::string> points;
  for (const auto& member : members)
    for (const std::string& label : member)
      if (std::find(points.begin(), points.end(), label) == points.end()) points.push_back(label);
  return points;
}

Mask mask_from(const std::vector<std::string>& points, const std::vector<std::string>& member) {
  Mask m = 0;
  for (const std::string& label : member) {
    auto it = std::find(points.begin(), points.end(), label);
    if (it == points.end()) throw std::invalid_argument("set member '" + label + "' is not a point");
    m |= Mask(1) << (it - points.begin());
  }
  return m;
}

std::vector<std::string> labels_from_json(const nlohmann::json& arr, const char* what) {
  if (!arr.is_array()) throw std::invalid_argument(std::string(what) + " must be an array");
  std::vector<std::string> out;
  for (const auto& item : arr) {
    if (item.is_string())
      out.push_back(item.get<std::string>());
    else if (item.is_number_integer())
      out.push_back(std::to_string(item.get<long long>()));
    else
      throw std::invalid_argument(std::string(what) + " entries must be strings or integers");
  }
  return out;
}

}  // namespace

FiniteSpace builtin_space(std::string_view name, int cap) {
  if (name == "sierpinski")
    return FiniteSpace::from_subbase({"0", "1"}, {0b10}, cap);
  if (name == "t2")
    return FiniteSpace::from_subbase({"1", "2", "3"}, {0b001, 0b010}, cap);
  if (name == "prop853-S")
    return FiniteSpace::from_subbase({"1", "2", "3", "4"}, {0b0001, 0b0011, 0b0100, 0b1100}, cap);
  if (name == "prop853-T")
    return FiniteSpace::from_subbase({"1", "2", "3", "4"}, {0b0001, 0b0011, 0b0101, 0b1111}, cap);
  if (name.starts_with("discrete:")) {
    int n = parse_point_count(name.substr(9), cap);
    std::vector<Mask> opens(std::size_t(1) << n);
    std::iota(opens.begin(), opens.end(), Mask(0));
    return FiniteSpace::from_opens(digit_labels(n), std::move(opens), cap);
  }
  if (name.starts_with("indiscrete:")) {
    int n = parse_point_count(name.substr(11), cap);
    return FiniteSpace::from_opens(digit_labels(n), {0, Mask((1u << n) - 1)}, cap);
  }
  throw std::invalid_argument("unknown built-in space '" + std::string(name) + "'");
}

FiniteSpace space_from_json(std::string_view text, int cap) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("space is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw std::invalid_argument("space JSON must be an object");
  bool has_subbase = doc.contains("subbase");
  bool has_opens = doc.contains("opens");
  if (has_subbase == has_opens)
    throw std::invalid_argument("space JSON needs exactly one of 'subbase' or 'opens'");

  const nlohmann::json& family_json = has_subbase ? doc.at("subbase") : doc.at("opens");
  if (!family_json.is_array()) throw std::invalid_argument("set family must be an array of arrays");
  std::vector<std::vector<std::string>> members;
  for (const auto& member : family_json) members.push_back(labels_from_json(member, "set member list"));

  std::vector<std::string> points =
      doc.contains("points") ? labels_from_json(doc.at("points"), "points") : union_labels(members);

  std::vector<Mask> masks;
  masks.reserve(members.size());
  for (const auto& member : members) masks.push_back(mask_from(points, member));
  return has_subbase ? FiniteSpace::from_subbase(std::move(points), masks, cap)
                     : FiniteSpace::from_opens(std::move(points), std::move(masks), cap);
}

FiniteSpace space_from_file(const std::string& path, int cap) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open space file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return space_from_json(buf.str(), cap);
}

std::string space_to_json(const FiniteSpace& space) {
  nlohmann::json doc;
  doc["points"] = space.labels();
  nlohmann::json opens = nlohmann::json::array();
  for (Mask u : space.opens()) opens.push_back(space.labels_of_mask(u));
  doc["opens"] = std::move(opens);
  return doc.dump();
}

FiniteSpace space_from_inline(std::string_view text, int cap) {
  auto members = parse_set_list(text);
  if (members.empty()) throw std::invalid_argument("empty inline subbase");
  auto points = union_labels(members);
  std::vector<Mask> masks;
  masks.reserve(members.size());
  for (const auto& member : members) masks.push_back(mask_from(points, member));
  return FiniteSpace::from_subbase(std::move(points), masks, cap);
}

FiniteSpace resolve_space(const std::string& arg, int cap) {
  if (arg == "sierpinski" || arg == "t2" || arg == "prop853-S" || arg == "prop853-T" ||
      arg.starts_with("discrete:") || arg.starts_with("indiscrete:"))
    return builtin_space(arg, cap);
  if (!arg.empty() && arg.front() == '{') return space_from_inline(arg, cap);
  if (std::filesystem::exists(arg)) return space_from_file(arg, cap);
  throw std::invalid_argument("cannot resolve space '" + arg +
                              "': not a built-in name, existing file, or inline subbase");
}

Valuation valuation_from_text(const FiniteSpace& space, std::string_view text) {
  Valuation v;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find(';', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string entry = trimmed(text.substr(pos, end - pos));
    pos = end + 1;
    if (entry.empty()) continue;
    std::size_t eq = entry.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("valuation entry '" + entry + "' is not NAME={labels}");
    std::string name = trimmed(std::string_view(entry).substr(0, eq));
    if (name.empty()) throw std::invalid_argument("valuation entry with empty atom name");
    Mask m = mask_from(space.labels(), parse_brace_set(std::string_view(entry).substr(eq + 1)));
    if (!space.is_open(m))
      throw std::invalid_argument("valuation of '" + name + "' is not an open set of the space");
    if (v.assignment.contains(name))
      throw std::invalid_argument("atom '" + name + "' assigned twice");
    v.assignment[name] = m;
  }
  return v;
}

std::string set_to_text(const FiniteSpace& space, Mask m) {
  std::string out = "{";
  bool first = true;
  for (const std::string& label : space.labels_of_mask(m)) {
    if (!first) out += ",";
    out += label;
    first = false;
  }
  return out + "}";
}

}  // namespace topocheck
