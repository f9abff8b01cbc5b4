#include "topocheck/principles.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "principles_manifest.hpp"

namespace topocheck {

std::string to_string(EqClass c) {
  switch (c) {
    case EqClass::Lem: return "LEM-class";
    case EqClass::Wlem: return "WLEM-class";
    case EqClass::Dgp: return "DGP-class";
    case EqClass::IpcValid: return "IPC-valid";
    case EqClass::Unclassified: return "unclassified";
  }
  return "?";
}

EqClass eq_class_from_string(std::string_view s) {
  if (s == "LEM-class") return EqClass::Lem;
  if (s == "WLEM-class") return EqClass::Wlem;
  if (s == "DGP-class") return EqClass::Dgp;
  if (s == "IPC-valid") return EqClass::IpcValid;
  if (s == "unclassified") return EqClass::Unclassified;
  throw std::invalid_argument("unknown principle class '" + std::string(s) + "'");
}

const Catalog& Catalog::builtin() {
  static const Catalog instance = Catalog::from_json(kBuiltinPrinciplesJson);
  return instance;
}

Catalog Catalog::from_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("catalog manifest is not valid JSON: ") + e.what());
  }
  if (!doc.is_array()) throw std::invalid_argument("catalog manifest must be a JSON array");
  Catalog catalog;
  for (const auto& item : doc) {
    if (!item.is_object() || !item.contains("id") || !item.contains("schema"))
      throw std::invalid_argument("catalog entry must be an object with 'id' and 'schema'");
    Principle p;
    p.id = item.at("id").get<std::string>();
    if (p.id.empty()) throw std::invalid_argument("catalog entry with empty id");
    if (catalog.find(p.id) != nullptr)
      throw std::invalid_argument("duplicate principle id '" + p.id + "'");
    try {
      p.schema = parse(item.at("schema").get<std::string>());
    } catch (const ParseError& e) {
      throw std::invalid_argument("schema of '" + p.id + "': " + e.what());
    }
    p.metavars = atoms(p.schema);
    p.arity = int(p.metavars.size());
    p.eq_class = item.contains("class") ? eq_class_from_string(item.at("class").get<std::string>())
                                        : EqClass::Unclassified;
    p.citation = item.value("cite", std::string{});
    catalog.entries_.push_back(std::move(p));
  }
  return catalog;
}

Catalog Catalog::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open catalog file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_json(buf.str());
}

std::string Catalog::to_json() const {
  nlohmann::json doc = nlohmann::json::array();
  for (const Principle& p : entries_)
    doc.push_back({{"id", p.id},
                   {"schema", render(p.schema)},
                   {"class", to_string(p.eq_class)},
                   {"cite", p.citation}});
  return doc.dump(2);
}

const Principle* Catalog::find(std::string_view id) const {
  for (const Principle& p : entries_)
    if (p.id == id) return &p;
  return nullptr;
}

const Principle& Catalog::require(std::string_view id) const {
  const Principle* p = find(id);
  if (p == nullptr) throw std::invalid_argument("unknown principle '" + std::string(id) + "'");
  return *p;
}

std::map<EqClass, std::vector<std::string>> Catalog::equivalence_classes() const {
  std::map<EqClass, std::vector<std::string>> out;
  for (const Principle& p : entries_) out[p.eq_class].push_back(p.id);
  return out;
}

FormulaRef instantiate(const Principle& p, const std::vector<FormulaRef>& args) {
  if (int(args.size()) != p.arity)
    throw std::invalid_argument("principle '" + p.id + "' expects " + std::to_string(p.arity) +
                                " arguments, got " + std::to_string(args.size()));
  std::map<std::string, FormulaRef> binding;
  for (int i = 0; i < p.arity; ++i) binding[p.metavars[i]] = args[i];
  return substitute(p.schema, binding);
}

bool valid_schema(const FiniteSpace& space, const Principle& p) {
  return valid_schema(space, *p.schema, std::max(kDefaultArityLimit, p.arity));
}

CounterexampleReport counterexample_kind(const FiniteSpace& space, const Principle& p) {
  return counterexample_kind(space, *p.schema, std::max(kDefaultArityLimit, p.arity));
}

}  // namespace topocheck
