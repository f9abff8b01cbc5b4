#ifndef TOPOCHECK_TOPOLOGY_HPP
#define TOPOCHECK_TOPOLOGY_HPP

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace topocheck {

/// A subset of the points of a space, one bit per point (bit i = point i).
using Mask = std::uint32_t;

/// Hard ceiling on point count; masks and permutation search assume it.
inline constexpr int kHardPointLimit = 7;
/// Default cap. Raising it to kHardPointLimit is supported but enumeration
/// cost explodes (9.5M labeled topologies on 7 points).
inline constexpr int kDefaultPointCap = 6;

/// Identifies a finite space up to homeomorphism: the lexicographically
/// minimal row-major bit matrix of the specialization preorder over all
/// point permutations, prefixed by the point count.
struct CanonicalCode {
  std::uint8_t n = 0;
  std::uint64_t bits = 0;  // n*n matrix bits, cell (i,j) at position n*n-1-(i*n+j)

  friend bool operator==(const CanonicalCode&, const CanonicalCode&) = default;
  friend auto operator<=>(const CanonicalCode&, const CanonicalCode&) = default;

  std::vector<std::uint8_t> bytes() const;
  std::string hex() const;
};

/// True iff `family` is a topology on n points: contains the empty set and
/// the full set and is closed under pairwise union and intersection.
bool is_topology(int n, const std::vector<Mask>& family);

/// A finite topological space. Points carry external labels; all set
/// arithmetic runs on bit masks over the internal indices 0..n-1.
/// Immutable after construction.
class FiniteSpace {
public:
  /// Smallest topology on the given points containing `subbase`. The full
  /// set is the whole point set even when the subbase does not cover it.
  static FiniteSpace from_subbase(std::vector<std::string> labels, const std::vector<Mask>& subbase,
                                  int cap = kDefaultPointCap);

  /// Validates `opens` as a topology (it is not closed up).
  static FiniteSpace from_opens(std::vector<std::string> labels, std::vector<Mask> opens,
                                int cap = kDefaultPointCap);

  /// Rebuilds the representative space of a canonical code; its points are
  /// labeled "0".."n-1" and its own canonical_form() equals `code`.
  static FiniteSpace from_code(const CanonicalCode& code);

  int point_count() const { return n_; }
  Mask full() const { return n_ == 0 ? 0 : (Mask(1) << n_) - 1; }
  const std::vector<Mask>& opens() const { return opens_; }  // sorted ascending
  const std::vector<std::string>& labels() const { return labels_; }

  bool is_open(Mask m) const;
  /// Index into opens() (which is sorted), or -1.
  int open_index(Mask m) const;

  /// Largest open subset of `subset`. Requires subset ⊆ full().
  Mask interior(Mask subset) const;

  /// Relative pseudo-complement Int(u' ∪ v). Both arguments must be open.
  Mask heyting_imp(Mask u, Mask v) const;

  /// heyting_imp(u, ∅) = Int(u').
  Mask pseudo_complement(Mask u) const;

  /// up[x] = {y | every open containing x contains y}; this is also the
  /// minimal open neighbourhood of x. The relation x ⊑ y is reflexive and
  /// transitive, and the opens are exactly its up-closed sets.
  std::vector<Mask> specialization_upsets() const;

  /// Equal codes iff the spaces are homeomorphic.
  CanonicalCode canonical_form() const;

  /// All point permutations mapping the open-set family onto itself,
  /// the identity included.
  std::vector<std::vector<int>> automorphisms() const;

  // Label helpers.
  int label_index(std::string_view label) const;  // -1 when unknown
  Mask mask_of_labels(std::span<const std::string> labels) const;
  std::vector<std::string> labels_of_mask(Mask m) const;

private:
  struct Unchecked {};
  FiniteSpace(Unchecked, std::vector<std::string> labels, std::vector<Mask> opens);

  static void check_labels(const std::vector<std::string>& labels, int cap);

  int n_;
  std::vector<std::string> labels_;
  std::vector<Mask> opens_;

  friend void enumerate_spaces(int, bool, const std::function<void(const FiniteSpace&)>&, int, int);
};

/// Streams every topology on n points (as spaces labeled "0".."n-1"), in
/// lexicographic order of their minimal-neighbourhood tuples. With
/// `up_to_homeomorphism` set, exactly one representative per canonical code
/// is emitted, in ascending code order; `jobs` > 1 parallelizes that mode.
void enumerate_spaces(int n, bool up_to_homeomorphism,
                      const std::function<void(const FiniteSpace&)>& emit,
                      int cap = kDefaultPointCap, int jobs = 1);

/// Convenience wrapper collecting the stream; intended for canonical
/// enumeration and small n.
std::vector<FiniteSpace> enumerate_spaces_vec(int n, bool up_to_homeomorphism,
                                              int cap = kDefaultPointCap, int jobs = 1);

}  // namespace topocheck

#endif  // TOPOCHECK_TOPOLOGY_HPP
