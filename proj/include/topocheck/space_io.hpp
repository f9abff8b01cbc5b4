#ifndef TOPOCHECK_SPACE_IO_HPP
#define TOPOCHECK_SPACE_IO_HPP

#include <string>
#include <string_view>

#include "topocheck/semantics.hpp"
#include "topocheck/topology.hpp"

namespace topocheck {

/// Built-in spaces: "sierpinski", "t2", "prop853-S", "prop853-T",
/// "discrete:n", "indiscrete:n". Throws on an unknown name.
FiniteSpace builtin_space(std::string_view name, int cap = kDefaultPointCap);

/// JSON space: { "points": [labels...], "subbase": [[labels...], ...] } or
/// { "points": ..., "opens": [[labels...], ...] }. A given "opens" family is
/// validated, not closed. When "points" is omitted the point set is the
/// union of the members, in first-occurrence order. Labels may be strings
/// or integers; integers are used as their decimal strings.
FiniteSpace space_from_json(std::string_view text, int cap = kDefaultPointCap);
FiniteSpace space_from_file(const std::string& path, int cap = kDefaultPointCap);

std::string space_to_json(const FiniteSpace& space);

/// Inline subbase notation "{1},{1,2},{3},{3,4}"; the point set is the
/// union of the members, in first-occurrence order.
FiniteSpace space_from_inline(std::string_view text, int cap = kDefaultPointCap);

/// Builtin name, then existing file path, then inline subbase.
FiniteSpace resolve_space(const std::string& arg, int cap = kDefaultPointCap);

/// Valuation notation "P={1,2};Q={}". Every assigned set must be open.
Valuation valuation_from_text(const FiniteSpace& space, std::string_view text);

/// "{1,2}" with labels in point order.
std::string set_to_text(const FiniteSpace& space, Mask m);

}  // namespace topocheck

#endif  // TOPOCHECK_SPACE_IO_HPP
