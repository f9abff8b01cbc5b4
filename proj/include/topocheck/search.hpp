#ifndef TOPOCHECK_SEARCH_HPP
#define TOPOCHECK_SEARCH_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "topocheck/principles.hpp"
#include "topocheck/semantics.hpp"
#include "topocheck/topology.hpp"

namespace topocheck {

struct RefutedPrinciple {
  std::string id;
  std::map<std::string, Mask> witness;  // metavariable → open
  Mask truth_set = 0;
};

/// A space separating one set of principles from another, with witnesses.
struct SeparationResult {
  FiniteSpace space;
  std::vector<std::string> validated;
  std::vector<RefutedPrinciple> refuted;
  std::uint64_t spaces_examined = 0;  // position of the hit in search order
  int points_reached = 0;
};

struct SeparationSearch {
  std::optional<SeparationResult> result;
  std::uint64_t spaces_examined = 0;
  int points_reached = 0;
};

/// Smallest space (fewest points, then least canonical code) validating all
/// of `validate` and refuting all of `refute`. "Refute" is the weak sense
/// (not forced under some assignment); with `strong` set every refuted
/// schema must have an assignment forcing its negation. Searches canonical
/// representatives only, which suffices: validity is a homeomorphism
/// invariant. Stats are independent of the worker count.
SeparationSearch find_separating_model(const Catalog& catalog,
                                       const std::vector<std::string>& validate,
                                       const std::vector<std::string>& refute, int max_points,
                                       bool strong = false, int jobs = 1,
                                       int cap = kDefaultPointCap);

/// Validity of every catalog entry on one space, in catalog order.
struct SpaceProfile {
  CanonicalCode code;
  std::vector<std::string> ids;
  std::vector<std::uint8_t> valid;
};

SpaceProfile profile(const Catalog& catalog, const FiniteSpace& space);

/// One ordered pair of the survey: a minimal witness space validating
/// `validates` and refuting `refutes`, or the record that none exists up to
/// the bound.
struct SurveyPair {
  std::string validates;
  std::string refutes;
  std::optional<SeparationResult> witness;
  std::uint64_t spaces_examined = 0;
};

struct SurveyReport {
  int max_points = 0;
  std::vector<std::string> representatives;
  std::vector<SurveyPair> pairs;
};

/// Pairwise implication survey over class representatives (the eponymous
/// member of each strength class, plus unclassified entries individually).
SurveyReport survey(const Catalog& catalog, int max_points, int jobs = 1,
                    int cap = kDefaultPointCap);

/// DOT digraph of the survey: an edge A -> B for every pair with no
/// countermodel up to the bound, the bound recorded on the edge.
std::string to_dot(const SurveyReport& report);

struct ClassViolation {
  int n = 0;
  CanonicalCode code;
  EqClass eq_class = EqClass::Unclassified;
  std::vector<std::pair<std::string, bool>> member_validity;
};

struct ClassReport {
  int max_points = 0;
  std::uint64_t spaces_checked = 0;
  std::vector<ClassViolation> violations;
};

/// Checks, over every canonical space up to max_points, that the members of
/// each declared equivalence class (unclassified entries excluded) have
/// identical validity.
ClassReport verify_equivalence_classes(const Catalog& catalog, int max_points, int jobs = 1,
                                       int cap = kDefaultPointCap);

}  // namespace topocheck

#endif  // TOPOCHECK_SEARCH_HPP
