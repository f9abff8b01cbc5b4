#include "topocheck/topology.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <future>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace topocheck {

namespace {

std::vector<std::string> digit_labels(int n) {
  std::vector<std::string> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) out.push_back(std::to_string(i));
  return out;
}

// Lexicographically minimal row-major matrix of the relation given by
// up-sets, over all point permutations. Shared by FiniteSpace and the
// enumerator, which canonicalizes preorders without building spaces.
std::uint64_t minimal_matrix_bits(std::span<const Mask> up, int n) {
  if (n == 0) return 0;
  std::array<int, kHardPointLimit> p{};
  std::iota(p.begin(), p.begin() + n, 0);
  std::uint64_t best = ~std::uint64_t{0};
  do {
    std::uint64_t bits = 0;
    bool worse = false;
    for (int i = 0; i < n; ++i) {
      Mask row = up[p[i]];
      std::uint64_t r = 0;
      for (int j = 0; j < n; ++j) r = (r << 1) | ((row >> p[j]) & 1u);
      bits = (bits << n) | r;
      if (bits > (best >> ((n - 1 - i) * n))) {
        worse = true;
        break;
      }
    }
    if (!worse && bits < best) best = bits;
  } while (std::next_permutation(p.begin(), p.begin() + n));
  return best;
}

// Opens of the Alexandrov topology of a preorder: the up-closed masks.
std::vector<Mask> upclosed_masks(std::span<const Mask> up, int n) {
  Mask full = n == 0 ? 0 : (Mask(1) << n) - 1;
  std::vector<Mask> opens;
  for (Mask m = 0;; ++m) {
    bool ok = true;
    for (int x = 0; x < n && ok; ++x)
      if (((m >> x) & 1u) != 0 && (up[x] & ~m) != 0) ok = false;
    if (ok) opens.push_back(m);
    if (m == full) break;
  }
  return opens;
}

// Depth-first enumeration of all preorders on n points as tuples of up-sets
// (rows). rows[i] must contain i; i ∈ rows[j] forces rows[i] ⊆ rows[j].
// Visits tuples in lexicographic order. row0_mod/row0_rem partition the
// search on the first row for parallel runs.
template <typename Sink>
void for_each_preorder(int n, int row0_mod, int row0_rem, Sink&& sink) {
  Mask full = (Mask(1) << n) - 1;
  std::array<Mask, kHardPointLimit> rows{};
  auto rec = [&](auto&& self, int i) -> void {
    if (i == n) {
      sink(std::span<const Mask>(rows.data(), n));
      return;
    }
    for (Mask u = 0; u <= full; ++u) {
      if (((u >> i) & 1u) == 0) continue;
      bool ok = true;
      for (int j = 0; j < i && ok; ++j) {
        if (((rows[j] >> i) & 1u) != 0 && (u & ~rows[j]) != 0) ok = false;
        if (((u >> j) & 1u) != 0 && (rows[j] & ~u) != 0) ok = false;
      }
      if (!ok) continue;
      rows[i] = u;
      self(self, i + 1);
    }
  };
  if (row0_mod <= 1) {
    rec(rec, 0);
    return;
  }
  int index = 0;
  for (Mask u = 0; u <= full; ++u) {
    if (((u >> 0) & 1u) == 0) continue;
    if (index++ % row0_mod != row0_rem) continue;
    rows[0] = u;
    rec(rec, 1);
  }
}

}  // namespace

std::vector<std::uint8_t> CanonicalCode::bytes() const {
  int cells = int(n) * int(n);
  std::vector<std::uint8_t> out(1 + (cells + 7) / 8, 0);
  out[0] = n;
  for (int k = 0; k < cells; ++k)
    if ((bits >> (cells - 1 - k)) & 1u) out[1 + k / 8] |= std::uint8_t(0x80u >> (k % 8));
  return out;
}

std::string CanonicalCode::hex() const {
  static const char* digits = "0123456789abcdef";
  std::string out;
  for (std::uint8_t b : bytes()) {
    out += digits[b >> 4];
    out += digits[b & 0xf];
  }
  return out;
}

bool is_topology(int n, const std::vector<Mask>& family) {
  if (n < 0 || n > kHardPointLimit)
    throw std::invalid_argument("is_topology: point count out of range");
  Mask full = n == 0 ? 0 : (Mask(1) << n) - 1;
  std::vector<char> present(std::size_t(full) + 1, 0);
  for (Mask m : family) {
    if ((m & ~full) != 0) return false;
    present[m] = 1;
  }
  if (!present[0] || !present[full]) return false;
  for (std::size_t i = 0; i < family.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) {
      if (!present[family[i] & family[j]]) return false;
      if (!present[family[i] | family[j]]) return false;
    }
  return true;
}

FiniteSpace::FiniteSpace(Unchecked, std::vector<std::string> labels, std::vector<Mask> opens)
    : n_(int(labels.size())), labels_(std::move(labels)), opens_(std::move(opens)) {}

void FiniteSpace::check_labels(const std::vector<std::string>& labels, int cap) {
  if (cap < 0 || cap > kHardPointLimit)
    throw std::invalid_argument("point cap out of range (hard limit " +
                                std::to_string(kHardPointLimit) + ")");
  if (int(labels.size()) > cap)
    throw std::invalid_argument("point cap exceeded: " + std::to_string(labels.size()) +
                                " points with cap " + std::to_string(cap));
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i].empty()) throw std::invalid_argument("empty point label");
    for (std::size_t j = 0; j < i; ++j)
      if (labels[i] == labels[j]) throw std::invalid_argument("duplicate point label '" + labels[i] + "'");
  }
}

FiniteSpace FiniteSpace::from_subbase(std::vector<std::string> labels,
                                      const std::vector<Mask>& subbase, int cap) {
  check_labels(labels, cap);
  int n = int(labels.size());
  Mask full = n == 0 ? 0 : (Mask(1) << n) - 1;
  std::vector<char> present(std::size_t(full) + 1, 0);
  std::vector<Mask> fam;
  auto add = [&](Mask m) {
    if (!present[m]) {
      present[m] = 1;
      fam.push_back(m);
    }
  };
  add(0);
  add(full);
  for (Mask m : subbase) {
    if ((m & ~full) != 0) throw std::invalid_argument("subbase member outside the point set");
    add(m);
  }
  // Close under pairwise intersections, then unions, each to a fixpoint;
  // members appended mid-pass are paired with everything before them. The
  // union closure of an intersection-closed family stays intersection-closed.
  for (std::size_t i = 0; i < fam.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) add(fam[i] & fam[j]);
  for (std::size_t i = 0; i < fam.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) add(fam[i] | fam[j]);
  std::sort(fam.begin(), fam.end());
  return FiniteSpace(Unchecked{}, std::move(labels), std::move(fam));
}

FiniteSpace FiniteSpace::from_opens(std::vector<std::string> labels, std::vector<Mask> opens,
                                    int cap) {
  check_labels(labels, cap);
  std::sort(opens.begin(), opens.end());
  opens.erase(std::unique(opens.begin(), opens.end()), opens.end());
  if (!is_topology(int(labels.size()), opens))
    throw std::invalid_argument("open-set family is not a topology");
  return FiniteSpace(Unchecked{}, std::move(labels), std::move(opens));
}

FiniteSpace FiniteSpace::from_code(const CanonicalCode& code) {
  int n = code.n;
  if (n > kHardPointLimit) throw std::invalid_argument("canonical code point count out of range");
  int cells = n * n;
  std::vector<Mask> up(n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if ((code.bits >> (cells - 1 - (i * n + j))) & 1u) up[i] |= Mask(1) << j;
  for (int i = 0; i < n; ++i) {
    if (((up[i] >> i) & 1u) == 0)
      throw std::invalid_argument("canonical code is not reflexive");
    for (int j = 0; j < n; ++j)
      if (((up[i] >> j) & 1u) != 0 && (up[j] & ~up[i]) != 0)
        throw std::invalid_argument("canonical code is not transitive");
  }
  return FiniteSpace(Unchecked{}, digit_labels(n), upclosed_masks(up, n));
}

bool FiniteSpace::is_open(Mask m) const {
  return std::binary_search(opens_.begin(), opens_.end(), m);
}

int FiniteSpace::open_index(Mask m) const {
  auto it = std::lower_bound(opens_.begin(), opens_.end(), m);
  if (it == opens_.end() || *it != m) return -1;
  return int(it - opens_.begin());
}

Mask FiniteSpace::interior(Mask subset) const {
  if ((subset & ~full()) != 0) throw std::invalid_argument("interior: subset outside the point set");
  Mask result = 0;
  for (Mask u : opens_)
    if ((u & ~subset) == 0) result |= u;
  return result;
}

Mask FiniteSpace::heyting_imp(Mask u, Mask v) const {
  if (!is_open(u) || !is_open(v)) throw std::invalid_argument("heyting_imp: argument is not open");
  return interior((~u & full()) | v);
}

Mask FiniteSpace::pseudo_complement(Mask u) const { return heyting_imp(u, 0); }

std::vector<Mask> FiniteSpace::specialization_upsets() const {
  std::vector<Mask> up(n_, full());
  for (Mask u : opens_)
    for (int x = 0; x < n_; ++x)
      if ((u >> x) & 1u) up[x] &= u;
  return up;
}

CanonicalCode FiniteSpace::canonical_form() const {
  auto up = specialization_upsets();
  return CanonicalCode{std::uint8_t(n_), minimal_matrix_bits(up, n_)};
}

std::vector<std::vector<int>> FiniteSpace::automorphisms() const {
  std::vector<int> p(n_);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> out;
  do {
    bool preserves = true;
    for (Mask u : opens_) {
      Mask image = 0;
      for (int i = 0; i < n_; ++i)
        if ((u >> i) & 1u) image |= Mask(1) << p[i];
      if (!is_open(image)) {
        preserves = false;
        break;
      }
    }
    if (preserves) out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

int FiniteSpace::label_index(std::string_view label) const {
  for (int i = 0; i < n_; ++i)
    if (labels_[i] == label) return i;
  return -1;
}

Mask FiniteSpace::mask_of_labels(std::span<const std::string> labels) const {
  Mask m = 0;
  for (const std::string& l : labels) {
    int i = label_index(l);
    if (i < 0) throw std::invalid_argument("unknown point label '" + l + "'");
    m |= Mask(1) << i;
  }
  return m;
}

std::vector<std::string> FiniteSpace::labels_of_mask(Mask m) const {
  if ((m & ~full()) != 0) throw std::invalid_argument("mask outside the point set");
  std::vector<std::string> out;
  for (int i = 0; i < n_; ++i)
    if ((m >> i) & 1u) out.push_back(labels_[i]);
  return out;
}

void enumerate_spaces(int n, bool up_to_homeomorphism,
                      const std::function<void(const FiniteSpace&)>& emit, int cap, int jobs) {
  if (cap < 0 || cap > kHardPointLimit)
    throw std::invalid_argument("point cap out of range (hard limit " +
                                std::to_string(kHardPointLimit) + ")");
  if (n < 1 || n > cap)
    throw std::invalid_argument("point count " + std::to_string(n) + " outside 1.." +
                                std::to_string(cap));
  if (!up_to_homeomorphism) {
    // Labeled stream; sequential so emission order stays lexicographic.
    auto labels = digit_labels(n);
    for_each_preorder(n, 1, 0, [&](std::span<const Mask> rows) {
      emit(FiniteSpace(FiniteSpace::Unchecked{}, labels, upclosed_masks(rows, n)));
    });
    return;
  }
  jobs = std::max(1, jobs);
  std::vector<std::uint64_t> codes;
  if (jobs == 1 || n < 5) {
    for_each_preorder(n, 1, 0, [&](std::span<const Mask> rows) {
      codes.push_back(minimal_matrix_bits(rows, n));
    });
  } else {
    std::vector<std::future<std::vector<std::uint64_t>>> parts;
    for (int r = 0; r < jobs; ++r)
      parts.push_back(std::async(std::launch::async, [n, jobs, r] {
        std::vector<std::uint64_t> local;
        for_each_preorder(n, jobs, r, [&](std::span<const Mask> rows) {
          local.push_back(minimal_matrix_bits(rows, n));
        });
        return local;
      }));
    for (auto& part : parts) {
      auto local = part.get();
      codes.insert(codes.end(), local.begin(), local.end());
    }
  }
  std::sort(codes.begin(), codes.end());
  codes.erase(std::unique(codes.begin(), codes.end()), codes.end());
  for (std::uint64_t bits : codes) emit(FiniteSpace::from_code({std::uint8_t(n), bits}));
}

std::vector<FiniteSpace> enumerate_spaces_vec(int n, bool up_to_homeomorphism, int cap, int jobs) {
  std::vector<FiniteSpace> out;
  enumerate_spaces(n, up_to_homeomorphism, [&](const FiniteSpace& s) { out.push_back(s); }, cap,
                   jobs);
  return out;
}

}  // namespace topocheck
