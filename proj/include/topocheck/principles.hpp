#ifndef TOPOCHECK_PRINCIPLES_HPP
#define TOPOCHECK_PRINCIPLES_HPP

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "topocheck/formula.hpp"
#include "topocheck/semantics.hpp"

namespace topocheck {

/// Declared strength of a principle when interpreted over a single space.
/// Members of one class validate or fail together on every space.
enum class EqClass { Lem, Wlem, Dgp, IpcValid, Unclassified };

std::string to_string(EqClass c);
EqClass eq_class_from_string(std::string_view s);

/// A named schema. Metavariables are the schema's atoms in first-occurrence
/// order; arity is their count.
struct Principle {
  std::string id;
  FormulaRef schema;
  std::vector<std::string> metavars;
  int arity = 0;
  EqClass eq_class = EqClass::Unclassified;
  std::string citation;
};

/// Immutable principle catalog, loaded from a JSON manifest of entries
/// { "id": str, "schema": formula-string, "class": str, "cite": str }.
class Catalog {
public:
  /// The catalog compiled into the library (data/principles.json).
  static const Catalog& builtin();
  static Catalog from_json(std::string_view text);
  static Catalog from_file(const std::string& path);

  std::string to_json() const;
  const std::vector<Principle>& entries() const { return entries_; }
  const Principle* find(std::string_view id) const;
  const Principle& require(std::string_view id) const;  // throws on unknown id

  /// Class → member ids, in catalog order.
  std::map<EqClass, std::vector<std::string>> equivalence_classes() const;

private:
  std::vector<Principle> entries_;
};

/// Positional substitution: metavariable i receives args[i].
FormulaRef instantiate(const Principle& p, const std::vector<FormulaRef>& args);

/// Schema checks with the entry's own arity as the enumeration budget
/// (never below the default limit).
bool valid_schema(const FiniteSpace& space, const Principle& p);
CounterexampleReport counterexample_kind(const FiniteSpace& space, const Principle& p);

}  // namespace topocheck

#endif  // TOPOCHECK_PRINCIPLES_HPP
