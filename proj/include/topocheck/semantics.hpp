#ifndef TOPOCHECK_SEMANTICS_HPP
#define TOPOCHECK_SEMANTICS_HPP

#include <map>
#include <optional>
#include <string>

#include "topocheck/formula.hpp"
#include "topocheck/topology.hpp"

namespace topocheck {

/// Assignment of open sets to atoms. Bottom is not stored; evaluation pins
/// it to the empty set.
struct Valuation {
  std::map<std::string, Mask> assignment;
};

inline constexpr int kDefaultArityLimit = 3;

/// Truth value of `f`: atoms look up the valuation, ⊥ ↦ ∅, ∧ ↦ ∩, ∨ ↦ ∪ and
/// → ↦ relative pseudo-complement. The result is always open. Unassigned
/// atoms and assignments that are not open raise std::invalid_argument.
Mask eval(const FiniteSpace& space, const Valuation& v, const Formula& f);

/// ⟦f⟧ = X.
bool forces(const FiniteSpace& space, const Valuation& v, const Formula& f);

/// ⟦phi⟧ ⊆ ⟦psi⟧; agrees with forces(space, v, phi -> psi).
bool entails(const FiniteSpace& space, const Valuation& v, const Formula& phi, const Formula& psi);

/// Schema validity: every assignment of opens to the schema's atoms forces
/// the instance. Instances under arbitrary substitutions follow, since the
/// value of any formula is itself an open. Throws when the schema has more
/// than `arity_limit` atoms. With `prune_automorphisms` the first
/// metavariable ranges over one open per automorphism orbit only; validity
/// is invariant under automorphisms, so the answer is unchanged.
bool valid_schema(const FiniteSpace& space, const Formula& schema,
                  int arity_limit = kDefaultArityLimit, bool prune_automorphisms = false);

enum class Verdict { Validates, Weak, Strong };

std::string to_string(Verdict v);

/// Outcome of checking a schema on one space. For a weak counterexample the
/// witness minimizes |truth_set|, ties broken by the lexicographically least
/// assignment in open-enumeration order. For a strong counterexample the
/// witness forces the negation of the instance (so truth_set is empty) and
/// is the least such assignment.
struct CounterexampleReport {
  Verdict kind = Verdict::Validates;
  std::optional<std::map<std::string, Mask>> witness;
  Mask truth_set = 0;  // ⟦instance⟧ under the witness; X when validating
};

CounterexampleReport counterexample_kind(const FiniteSpace& space, const Formula& schema,
                                         int arity_limit = kDefaultArityLimit);

}  // namespace topocheck

#endif  // TOPOCHECK_SEMANTICS_HPP
