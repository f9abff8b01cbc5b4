#include "topocheck/semantics.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <vector>

namespace topocheck {

namespace {

// Formulas are flattened to postfix programs over atom slots so the schema
// loops below do not touch strings or tree nodes per assignment.
struct Instr {
  enum Op : std::uint8_t { PushSlot, PushBottom, And, Or, Imp } op;
  int slot = 0;
};

void compile(const Formula& f, const std::vector<std::string>& slots, std::vector<Instr>& out) {
  switch (f.kind()) {
    case Conn::Atom: {
      auto it = std::find(slots.begin(), slots.end(), f.name());
      out.push_back({Instr::PushSlot, int(it - slots.begin())});
      return;
    }
    case Conn::Bottom:
      out.push_back({Instr::PushBottom});
      return;
    case Conn::And:
    case Conn::Or:
    case Conn::Imp:
      compile(*f.left(), slots, out);
      compile(*f.right(), slots, out);
      out.push_back({f.kind() == Conn::And ? Instr::And : f.kind() == Conn::Or ? Instr::Or : Instr::Imp});
      return;
  }
}

// Dense tables over one space's open-set lattice: every value a formula can
// take is an open, so evaluation runs on open indices with O(1) operations.
class OpenLattice {
public:
  explicit OpenLattice(const FiniteSpace& space)
      : opens_(space.opens()), count_(int(opens_.size())) {
    index_of_mask_.assign(std::size_t(space.full()) + 1, -1);
    for (int i = 0; i < count_; ++i) index_of_mask_[opens_[i]] = std::int16_t(i);
    imp_.resize(std::size_t(count_) * count_);
    for (int a = 0; a < count_; ++a)
      for (int b = 0; b < count_; ++b)
        imp_[std::size_t(a) * count_ + b] = index_of_mask_[space.heyting_imp(opens_[a], opens_[b])];
    top_ = std::int16_t(count_ - 1);  // opens are sorted, the full set is last
  }

  int count() const { return count_; }
  int top() const { return top_; }
  Mask mask_of(int idx) const { return opens_[idx]; }
  int index_of(Mask m) const { return index_of_mask_[m]; }
  int imp_index(int a, int b) const { return imp_[std::size_t(a) * count_ + b]; }

  // prog is a well-formed postfix program (compile() output) of depth <= 31.
  int run(const std::vector<Instr>& prog, const int* slots) const {
    int stack[32] = {0};
    int sp = 0;
    for (const Instr& ins : prog) {
      switch (ins.op) {
        case Instr::PushSlot:
          stack[sp++] = slots[ins.slot];
          break;
        case Instr::PushBottom:
          stack[sp++] = 0;  // the empty set is the least open, index 0
          break;
        case Instr::And: {
          --sp;
          stack[sp - 1] = index_of_mask_[opens_[stack[sp - 1]] & opens_[stack[sp]]];
          break;
        }
        case Instr::Or: {
          --sp;
          stack[sp - 1] = index_of_mask_[opens_[stack[sp - 1]] | opens_[stack[sp]]];
          break;
        }
        case Instr::Imp: {
          --sp;
          stack[sp - 1] = imp_[std::size_t(stack[sp - 1]) * count_ + stack[sp]];
          break;
        }
      }
    }
    return stack[0];
  }

private:
  std::vector<Mask> opens_;
  int count_;
  std::int16_t top_;
  std::vector<std::int16_t> index_of_mask_;
  std::vector<std::int16_t> imp_;
};

int compiled_depth(const std::vector<Instr>& prog) {
  int depth = 0, max_depth = 0;
  for (const Instr& ins : prog) {
    depth += (ins.op == Instr::PushSlot || ins.op == Instr::PushBottom) ? 1 : -1;
    max_depth = std::max(max_depth, depth);
  }
  return max_depth;
}

// Visits assignments of open indices to `arity` slots in lexicographic
// (odometer) order. Returns false if the visitor stopped the scan.
template <typename Visit>
bool scan_assignments(int open_count, int arity, Visit&& visit) {
  std::vector<int> slots(std::size_t(std::max(arity, 1)), 0);
  while (true) {
    if (!visit(slots.data())) return false;
    int i = arity - 1;
    while (i >= 0 && slots[i] == open_count - 1) slots[i--] = 0;
    if (i < 0) return true;
    ++slots[i];
  }
}

std::vector<Instr> compile_schema(const Formula& schema, const std::vector<std::string>& metavars,
                                  int arity_limit) {
  if (int(metavars.size()) > arity_limit)
    throw std::invalid_argument("schema arity " + std::to_string(metavars.size()) +
                                " exceeds the limit of " + std::to_string(arity_limit));
  std::vector<Instr> prog;
  compile(schema, metavars, prog);
  if (compiled_depth(prog) > 31) throw std::invalid_argument("formula nests too deeply");
  return prog;
}

}  // namespace

Mask eval(const FiniteSpace& space, const Valuation& v, const Formula& f) {
  switch (f.kind()) {
    case Conn::Atom: {
      auto it = v.assignment.find(f.name());
      if (it == v.assignment.end())
        throw std::invalid_argument("eval: unassigned atom '" + f.name() + "'");
      if (!space.is_open(it->second))
        throw std::invalid_argument("eval: value of atom '" + f.name() + "' is not open");
      return it->second;
    }
    case Conn::Bottom:
      return 0;
    case Conn::And:
      return eval(space, v, *f.left()) & eval(space, v, *f.right());
    case Conn::Or:
      return eval(space, v, *f.left()) | eval(space, v, *f.right());
    case Conn::Imp: {
      Mask a = eval(space, v, *f.left());
      Mask b = eval(space, v, *f.right());
      return space.heyting_imp(a, b);
    }
  }
  throw std::logic_error("unreachable");
}

bool forces(const FiniteSpace& space, const Valuation& v, const Formula& f) {
  return eval(space, v, f) == space.full();
}

bool entails(const FiniteSpace& space, const Valuation& v, const Formula& phi, const Formula& psi) {
  Mask a = eval(space, v, phi);
  Mask b = eval(space, v, psi);
  return (a & ~b) == 0;
}

namespace {

// One open per automorphism orbit, each the least index of its orbit.
std::vector<int> slot_orbit_reps(const FiniteSpace& space, const OpenLattice& lat) {
  auto autos = space.automorphisms();
  std::vector<std::uint8_t> is_rep(std::size_t(lat.count()), 1);
  for (int i = 0; i < lat.count(); ++i) {
    if (!is_rep[i]) continue;
    for (const auto& p : autos) {
      Mask u = lat.mask_of(i);
      Mask image = 0;
      for (std::size_t x = 0; x < p.size(); ++x)
        if ((u >> x) & 1u) image |= Mask(1) << p[x];
      int j = lat.index_of(image);
      if (j > i) is_rep[j] = 0;
    }
  }
  std::vector<int> reps;
  for (int i = 0; i < lat.count(); ++i)
    if (is_rep[i]) reps.push_back(i);
  return reps;
}

}  // namespace

bool valid_schema(const FiniteSpace& space, const Formula& schema, int arity_limit,
                  bool prune_automorphisms) {
  auto metavars = atoms(schema);
  int arity = int(metavars.size());
  auto prog = compile_schema(schema, metavars, arity_limit);
  OpenLattice lat(space);
  auto forced = [&](const int* slots) { return lat.run(prog, slots) == lat.top(); };
  if (!prune_automorphisms || arity == 0)
    return scan_assignments(lat.count(), arity, forced);
  for (int rep : slot_orbit_reps(space, lat)) {
    std::vector<int> slots(std::size_t(arity), 0);
    slots[0] = rep;
    while (true) {
      if (!forced(slots.data())) return false;
      int i = arity - 1;
      while (i >= 1 && slots[i] == lat.count() - 1) slots[i--] = 0;
      if (i < 1) break;
      ++slots[i];
    }
  }
  return true;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Validates: return "validates";
    case Verdict::Weak: return "weak";
    case Verdict::Strong: return "strong";
  }
  return "?";
}

CounterexampleReport counterexample_kind(const FiniteSpace& space, const Formula& schema,
                                         int arity_limit) {
  auto metavars = atoms(schema);
  int arity = int(metavars.size());
  auto prog = compile_schema(schema, metavars, arity_limit);
  OpenLattice lat(space);

  bool any_failure = false;
  std::vector<int> strong_slots;  // least assignment forcing the negated instance
  std::vector<int> weak_slots;    // least assignment among those of minimal |truth|
  int weak_truth = -1;
  int weak_size = space.point_count() + 1;

  scan_assignments(lat.count(), arity, [&](const int* slots) {
    int truth = lat.run(prog, slots);
    if (truth == lat.top()) return true;
    any_failure = true;
    if (strong_slots.empty() && lat.imp_index(truth, 0) == lat.top())
      strong_slots.assign(slots, slots + arity);
    int size = std::popcount(lat.mask_of(truth));
    if (size < weak_size) {
      weak_size = size;
      weak_truth = truth;
      weak_slots.assign(slots, slots + arity);
    }
    return true;
  });

  CounterexampleReport report;
  if (!any_failure) {
    report.kind = Verdict::Validates;
    report.truth_set = space.full();
    return report;
  }
  const std::vector<int>& slots = strong_slots.empty() ? weak_slots : strong_slots;
  report.kind = strong_slots.empty() ? Verdict::Weak : Verdict::Strong;
  report.witness.emplace();
  for (int i = 0; i < arity; ++i) (*report.witness)[metavars[i]] = lat.mask_of(slots[i]);
  report.truth_set = strong_slots.empty()
                         ? lat.mask_of(weak_truth)
                         : lat.mask_of(lat.run(prog, strong_slots.data()));
  return report;
}

}  // namespace topocheck
