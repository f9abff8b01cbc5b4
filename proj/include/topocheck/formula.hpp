#ifndef TOPOCHECK_FORMULA_HPP
#define TOPOCHECK_FORMULA_HPP

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace topocheck {

/// Connective of a propositional formula node. Negation is not a
/// constructor: ~f is represented as Imp(f, Bottom).
enum class Conn { Atom, Bottom, And, Or, Imp };

class Formula;
/// Shared handle to a formula node. The class exposes no mutating API, so
/// shared nodes behave as values.
using FormulaRef = std::shared_ptr<Formula>;

/// Immutable formula tree. Instances are created through the factory
/// functions and shared freely across threads.
class Formula {
public:
  static FormulaRef atom(std::string name);
  static FormulaRef bottom();
  static FormulaRef conj(FormulaRef lhs, FormulaRef rhs);
  static FormulaRef disj(FormulaRef lhs, FormulaRef rhs);
  static FormulaRef imp(FormulaRef lhs, FormulaRef rhs);
  static FormulaRef neg(FormulaRef inner);  // sugar for imp(inner, bottom())

  Conn kind() const { return kind_; }
  const std::string& name() const { return name_; }  // Atom only
  const FormulaRef& left() const { return left_; }
  const FormulaRef& right() const { return right_; }

  /// True iff this node is Imp(f, Bottom).
  bool is_negation() const {
    return kind_ == Conn::Imp && right_->kind() == Conn::Bottom;
  }

private:
  Formula(Conn kind, std::string name, FormulaRef left, FormulaRef right)
      : kind_(kind), name_(std::move(name)), left_(std::move(left)), right_(std::move(right)) {}

  Conn kind_;
  std::string name_;
  FormulaRef left_;
  FormulaRef right_;
};

/// Structural equality. No normalization is performed.
bool equal(const Formula& a, const Formula& b);
inline bool equal(const FormulaRef& a, const FormulaRef& b) { return equal(*a, *b); }

/// Syntax error with the byte offset of the offending token and the set of
/// token descriptions that would have been accepted there.
class ParseError : public std::runtime_error {
public:
  ParseError(std::string message, std::size_t offset, std::vector<std::string> expected);

  std::size_t offset() const { return offset_; }
  const std::vector<std::string>& expected() const { return expected_; }

private:
  std::size_t offset_;
  std::vector<std::string> expected_;
};

/// Parses ASCII (`~ & | -> <-> _|_`) or Unicode (`¬ ∧ ∨ → ↔ ⊥`) syntax.
/// Precedence ~ > & > | > ->, with & and | left-associative and ->
/// right-associative. `a <-> b` expands to `(a -> b) & (b -> a)`.
FormulaRef parse(std::string_view text);

/// Minimal-parenthesization ASCII rendering; inverse of parse up to
/// structural equality. Imp(f, Bottom) is printed as "~" applied to f.
std::string render(const Formula& f);
inline std::string render(const FormulaRef& f) { return render(*f); }

/// Distinct atom names in first-occurrence order.
std::vector<std::string> atoms(const Formula& f);
inline std::vector<std::string> atoms(const FormulaRef& f) { return atoms(*f); }

/// Simultaneous replacement of every atom. Every atom of `schema` must be
/// bound; an unbound atom raises std::invalid_argument naming it.
FormulaRef substitute(const FormulaRef& schema, const std::map<std::string, FormulaRef>& binding);

}  // namespace topocheck

#endif  // TOPOCHECK_FORMULA_HPP
