#include "topocheck/search.hpp"

#include <algorithm>
#include <atomic>
#include <stdexcept>
#include <thread>

namespace topocheck {

namespace {

// Applies fn to 0..count-1, possibly on several threads, and returns the
// results in index order. fn must be safe to call concurrently.
template <typename Fn>
auto map_in_order(std::size_t count, int jobs, Fn&& fn) {
  using R = std::invoke_result_t<Fn&, std::size_t>;
  static_assert(!std::is_same_v<R, bool>, "use uint8_t, vector<bool> is not thread-safe");
  std::vector<R> out(count);
  jobs = std::max(1, jobs);
  if (jobs == 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) out[i] = fn(i);
  };
  std::vector<std::thread> pool;
  int threads = std::min<int>(jobs, int(count));
  pool.reserve(threads - 1);
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  return out;
}

std::vector<const Principle*> resolve_ids(const Catalog& catalog,
                                          const std::vector<std::string>& ids) {
  std::vector<const Principle*> out;
  out.reserve(ids.size());
  for (const std::string& id : ids) out.push_back(&catalog.require(id));
  return out;
}

bool refutes(const FiniteSpace& space, const Principle& p, bool strong) {
  if (!strong) return !valid_schema(space, p);
  return counterexample_kind(space, p).kind == Verdict::Strong;
}

SeparationResult make_result(const FiniteSpace& space,
                             const std::vector<const Principle*>& validate,
                             const std::vector<const Principle*>& refute) {
  SeparationResult r{space, {}, {}, 0, space.point_count()};
  for (const Principle* p : validate) r.validated.push_back(p->id);
  for (const Principle* p : refute) {
    CounterexampleReport rep = counterexample_kind(space, *p);
    r.refuted.push_back({p->id, rep.witness.value_or(std::map<std::string, Mask>{}), rep.truth_set});
  }
  return r;
}

}  // namespace

SeparationSearch find_separating_model(const Catalog& catalog,
                                       const std::vector<std::string>& validate,
                                       const std::vector<std::string>& refute, int max_points,
                                       bool strong, int jobs, int cap) {
  if (max_points < 1 || max_points > cap)
    throw std::invalid_argument("max_points outside 1.." + std::to_string(cap));
  auto validate_ps = resolve_ids(catalog, validate);
  auto refute_ps = resolve_ids(catalog, refute);

  auto qualifies = [&](const FiniteSpace& s) -> std::uint8_t {
    for (const Principle* p : validate_ps)
      if (!valid_schema(s, *p)) return 0;
    for (const Principle* p : refute_ps)
      if (!refutes(s, *p, strong)) return 0;
    return 1;
  };

  SeparationSearch search;
  for (int n = 1; n <= max_points; ++n) {
    auto spaces = enumerate_spaces_vec(n, true, cap, jobs);
    std::size_t hit = spaces.size();
    if (jobs <= 1) {
      for (std::size_t i = 0; i < spaces.size(); ++i)
        if (qualifies(spaces[i])) {
          hit = i;
          break;
        }
    } else {
      auto flags = map_in_order(spaces.size(), jobs, [&](std::size_t i) { return qualifies(spaces[i]); });
      hit = std::size_t(std::find(flags.begin(), flags.end(), 1) - flags.begin());
    }
    if (hit < spaces.size()) {
      search.spaces_examined += hit + 1;
      search.points_reached = n;
      search.result = make_result(spaces[hit], validate_ps, refute_ps);
      search.result->spaces_examined = search.spaces_examined;
      search.result->points_reached = n;
      return search;
    }
    search.spaces_examined += spaces.size();
    search.points_reached = n;
  }
  return search;
}

SpaceProfile profile(const Catalog& catalog, const FiniteSpace& space) {
  SpaceProfile out;
  out.code = space.canonical_form();
  for (const Principle& p : catalog.entries()) {
    out.ids.push_back(p.id);
    out.valid.push_back(valid_schema(space, p) ? 1 : 0);
  }
  return out;
}

namespace {

std::vector<const Principle*> survey_representatives(const Catalog& catalog) {
  const EqClass strength[] = {EqClass::Lem, EqClass::Wlem, EqClass::Dgp};
  std::vector<const Principle*> reps;
  for (EqClass c : strength) {
    const Principle* rep = nullptr;
    for (const Principle& p : catalog.entries()) {
      if (p.eq_class != c) continue;
      if (rep == nullptr) rep = &p;
      // prefer the eponymous entry when present
      if ((c == EqClass::Lem && p.id == "LEM") || (c == EqClass::Wlem && p.id == "WLEM") ||
          (c == EqClass::Dgp && p.id == "DGP"))
        rep = &p;
    }
    if (rep != nullptr) reps.push_back(rep);
  }
  for (const Principle& p : catalog.entries())
    if (p.eq_class == EqClass::Unclassified) reps.push_back(&p);
  return reps;
}

}  // namespace

SurveyReport survey(const Catalog& catalog, int max_points, int jobs, int cap) {
  if (max_points < 1 || max_points > cap)
    throw std::invalid_argument("max_points outside 1.." + std::to_string(cap));
  auto reps = survey_representatives(catalog);
  SurveyReport report;
  report.max_points = max_points;
  for (const Principle* p : reps) report.representatives.push_back(p->id);
  for (std::size_t a = 0; a < reps.size(); ++a)
    for (std::size_t b = 0; b < reps.size(); ++b)
      if (a != b) report.pairs.push_back({reps[a]->id, reps[b]->id, std::nullopt, 0});

  std::uint64_t position = 0;
  for (int n = 1; n <= max_points; ++n) {
    auto spaces = enumerate_spaces_vec(n, true, cap, jobs);
    auto validity = map_in_order(spaces.size(), jobs, [&](std::size_t i) {
      std::vector<std::uint8_t> v(reps.size());
      for (std::size_t r = 0; r < reps.size(); ++r) v[r] = valid_schema(spaces[i], *reps[r]) ? 1 : 0;
      return v;
    });
    for (std::size_t i = 0; i < spaces.size(); ++i) {
      ++position;
      std::size_t pair_index = 0;
      for (std::size_t a = 0; a < reps.size(); ++a)
        for (std::size_t b = 0; b < reps.size(); ++b) {
          if (a == b) continue;
          SurveyPair& pair = report.pairs[pair_index++];
          if (!pair.witness.has_value() && validity[i][a] && !validity[i][b]) {
            pair.witness = make_result(spaces[i], {reps[a]}, {reps[b]});
            pair.witness->spaces_examined = position;
            pair.spaces_examined = position;
          }
        }
    }
  }
  for (SurveyPair& pair : report.pairs)
    if (!pair.witness.has_value()) pair.spaces_examined = position;
  return report;
}

std::string to_dot(const SurveyReport& report) {
  std::string out = "digraph principle_implications {\n";
  out += "  rankdir=TB;\n  node [shape=box];\n";
  for (const std::string& id : report.representatives) out += "  \"" + id + "\";\n";
  for (const SurveyPair& pair : report.pairs) {
    if (pair.witness.has_value()) continue;
    out += "  \"" + pair.validates + "\" -> \"" + pair.refutes + "\" [label=\"n<=" +
           std::to_string(report.max_points) + "\"];\n";
  }
  out += "}\n";
  return out;
}

ClassReport verify_equivalence_classes(const Catalog& catalog, int max_points, int jobs, int cap) {
  if (max_points < 1 || max_points > cap)
    throw std::invalid_argument("max_points outside 1.." + std::to_string(cap));
  std::vector<std::pair<EqClass, std::vector<const Principle*>>> classes;
  for (auto& [c, ids] : catalog.equivalence_classes()) {
    if (c == EqClass::Unclassified || ids.size() < 2) continue;
    std::vector<const Principle*> members;
    for (const std::string& id : ids) members.push_back(&catalog.require(id));
    classes.emplace_back(c, std::move(members));
  }

  ClassReport report;
  report.max_points = max_points;
  for (int n = 1; n <= max_points; ++n) {
    auto spaces = enumerate_spaces_vec(n, true, cap, jobs);
    auto violations = map_in_order(spaces.size(), jobs, [&](std::size_t i) {
      std::vector<ClassViolation> local;
      for (const auto& [c, members] : classes) {
        std::vector<std::pair<std::string, bool>> validity;
        validity.reserve(members.size());
        for (const Principle* p : members) validity.emplace_back(p->id, valid_schema(spaces[i], *p));
        bool first = validity.front().second;
        bool mixed = std::any_of(validity.begin(), validity.end(),
                                 [&](const auto& e) { return e.second != first; });
        if (mixed)
          local.push_back({spaces[i].point_count(), spaces[i].canonical_form(), c, std::move(validity)});
      }
      return local;
    });
    report.spaces_checked += spaces.size();
    for (auto& local : violations)
      report.violations.insert(report.violations.end(), local.begin(), local.end());
  }
  return report;
}

}  // namespace topocheck
