#include "topocheck/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <ostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "topocheck/principles.hpp"
#include "topocheck/search.hpp"
#include "topocheck/semantics.hpp"
#include "topocheck/space_io.hpp"

namespace topocheck::cli {

namespace {

using nlohmann::json;

int default_jobs() {
  if (const char* env = std::getenv("TOPOCHECK_JOBS")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  return 1;
}

json json_of_mask(const FiniteSpace& space, Mask m) { return json(space.labels_of_mask(m)); }

json json_of_space(const FiniteSpace& space) {
  json opens = json::array();
  for (Mask u : space.opens()) opens.push_back(space.labels_of_mask(u));
  return json{{"points", space.labels()}, {"opens", std::move(opens)}};
}

json json_of_witness(const FiniteSpace& space, const std::map<std::string, Mask>& witness) {
  json out = json::object();
  for (const auto& [atom, mask] : witness) out[atom] = json_of_mask(space, mask);
  return out;
}

std::string witness_text(const FiniteSpace& space, const Principle& p,
                         const std::map<std::string, Mask>& witness) {
  std::string out;
  for (const std::string& var : p.metavars) {
    auto it = witness.find(var);
    if (it == witness.end()) continue;
    if (!out.empty()) out += " ";
    out += var + "=" + set_to_text(space, it->second);
  }
  return out;
}

struct Context {
  std::string format = "text";
  int jobs = default_jobs();
  int cap = kDefaultPointCap;
  std::string catalog_path;

  const Catalog& catalog() {
    if (!catalog_path.empty() && !loaded_) {
      loaded_catalog_ = Catalog::from_file(catalog_path);
      loaded_ = true;
    }
    return loaded_ ? loaded_catalog_ : Catalog::builtin();
  }

private:
  Catalog loaded_catalog_;
  bool loaded_ = false;
};

int cmd_eval(Context& ctx, const std::string& space_arg, const std::string& valuation_arg,
             const std::string& formula_arg, std::ostream& out) {
  FiniteSpace space = resolve_space(space_arg, ctx.cap);
  Valuation v = valuation_from_text(space, valuation_arg);
  FormulaRef f = parse(formula_arg);
  Mask value = eval(space, v, *f);
  bool forced = value == space.full();
  if (ctx.format == "json") {
    json v_json = json::object();
    for (const auto& [atom, mask] : v.assignment) v_json[atom] = json_of_mask(space, mask);
    out << json{{"space", json_of_space(space)},
                {"formula", render(f)},
                {"valuation", std::move(v_json)},
                {"value", json_of_mask(space, value)},
                {"forced", forced}}
               .dump()
        << "\n";
  } else {
    out << set_to_text(space, value) << (forced ? " (forced)" : "") << "\n";
  }
  return forced ? 0 : 1;
}

int cmd_check(Context& ctx, const std::string& space_arg, const std::vector<std::string>& ids,
              std::ostream& out) {
  FiniteSpace space = resolve_space(space_arg, ctx.cap);
  const Catalog& catalog = ctx.catalog();
  bool all_valid = true;
  json results = json::array();
  for (const std::string& id : ids) {
    const Principle& p = catalog.require(id);
    CounterexampleReport rep = counterexample_kind(space, p);
    if (rep.kind != Verdict::Validates) all_valid = false;
    if (ctx.format == "json") {
      json entry{{"principle", p.id}, {"kind", to_string(rep.kind)}};
      if (rep.witness.has_value()) {
        entry["witness"] = json_of_witness(space, *rep.witness);
        entry["truth"] = json_of_mask(space, rep.truth_set);
      } else {
        entry["witness"] = nullptr;
        entry["truth"] = nullptr;
      }
      results.push_back(std::move(entry));
    } else {
      if (rep.kind == Verdict::Validates) {
        out << p.id << ": validates\n";
      } else {
        out << p.id << ": " << to_string(rep.kind) << " counterexample, witness "
            << witness_text(space, p, *rep.witness) << ", truth=" << set_to_text(space, rep.truth_set)
            << "\n";
      }
    }
  }
  if (ctx.format == "json")
    out << json{{"space", json_of_space(space)}, {"results", std::move(results)}}.dump() << "\n";
  return all_valid ? 0 : 1;
}

int cmd_separate(Context& ctx, const std::vector<std::string>& validate,
                 const std::vector<std::string>& refute, int max_points, bool strong,
                 std::ostream& out) {
  SeparationSearch search =
      find_separating_model(ctx.catalog(), validate, refute, max_points, strong, ctx.jobs, ctx.cap);
  if (ctx.format == "json") {
    json doc{{"found", search.result.has_value()},
             {"stats",
              {{"spaces_examined", search.spaces_examined}, {"points_reached", search.points_reached}}}};
    if (search.result.has_value()) {
      const SeparationResult& r = *search.result;
      doc["n"] = r.space.point_count();
      doc["points"] = r.space.labels();
      json opens = json::array();
      for (Mask u : r.space.opens()) opens.push_back(r.space.labels_of_mask(u));
      doc["opens"] = std::move(opens);
      doc["validated"] = r.validated;
      json witnesses = json::object();
      json truths = json::object();
      json refuted = json::array();
      for (const RefutedPrinciple& ref : r.refuted) {
        witnesses[ref.id] = json_of_witness(r.space, ref.witness);
        truths[ref.id] = json_of_mask(r.space, ref.truth_set);
        refuted.push_back(ref.id);
      }
      doc["refuted"] = std::move(refuted);
      doc["witnesses"] = std::move(witnesses);
      doc["truths"] = std::move(truths);
    }
    out << doc.dump() << "\n";
  } else if (search.result.has_value()) {
    const SeparationResult& r = *search.result;
    out << "found: n=" << r.space.point_count() << ", opens";
    for (Mask u : r.space.opens()) out << " " << set_to_text(r.space, u);
    out << "\n";
    for (const RefutedPrinciple& ref : r.refuted) {
      const Principle& p = ctx.catalog().require(ref.id);
      out << "  refutes " << ref.id << ": witness " << witness_text(r.space, p, ref.witness)
          << ", truth=" << set_to_text(r.space, ref.truth_set) << "\n";
    }
    out << "  spaces examined: " << r.spaces_examined << "\n";
  } else {
    out << "no separating model with at most " << max_points << " points (examined "
        << search.spaces_examined << " spaces)\n";
  }
  return search.result.has_value() ? 0 : 1;
}

int cmd_profile(Context& ctx, const std::string& space_arg, std::ostream& out) {
  FiniteSpace space = resolve_space(space_arg, ctx.cap);
  SpaceProfile prof = profile(ctx.catalog(), space);
  if (ctx.format == "json") {
    json entries = json::array();
    for (std::size_t i = 0; i < prof.ids.size(); ++i)
      entries.push_back({{"id", prof.ids[i]}, {"valid", prof.valid[i] != 0}});
    out << json{{"space", json_of_space(space)},
                {"code", prof.code.hex()},
                {"profile", std::move(entries)}}
               .dump()
        << "\n";
  } else {
    for (std::size_t i = 0; i < prof.ids.size(); ++i)
      out << prof.ids[i] << ": " << (prof.valid[i] ? "valid" : "invalid") << "\n";
  }
  return 0;
}

int cmd_enumerate(Context& ctx, int n, bool up_to_homeo, std::ostream& out) {
  enumerate_spaces(
      n, up_to_homeo,
      [&](const FiniteSpace& space) {
        if (ctx.format == "json") {
          json doc = json_of_space(space);
          doc["n"] = space.point_count();
          if (up_to_homeo) doc["code"] = space.canonical_form().hex();
          out << doc.dump() << "\n";
        } else {
          out << "opens:";
          for (Mask u : space.opens()) out << " " << set_to_text(space, u);
          out << "\n";
        }
      },
      ctx.cap, ctx.jobs);
  return 0;
}

int cmd_survey(Context& ctx, int max_points, const std::string& dot_path, std::ostream& out) {
  SurveyReport report = survey(ctx.catalog(), max_points, ctx.jobs, ctx.cap);
  if (!dot_path.empty()) {
    std::ofstream dot(dot_path);
    if (!dot) throw std::invalid_argument("cannot write DOT file '" + dot_path + "'");
    dot << to_dot(report);
  }
  if (ctx.format == "dot") {
    out << to_dot(report);
    return 0;
  }
  if (ctx.format == "json") {
    json pairs = json::array();
    for (const SurveyPair& pair : report.pairs) {
      json entry{{"validates", pair.validates},
                 {"refutes", pair.refutes},
                 {"found", pair.witness.has_value()},
                 {"spaces_examined", pair.spaces_examined}};
      if (pair.witness.has_value()) {
        const SeparationResult& r = *pair.witness;
        entry["n"] = r.space.point_count();
        entry["space"] = json_of_space(r.space);
        entry["witnesses"] = json::object();
        for (const RefutedPrinciple& ref : r.refuted)
          entry["witnesses"][ref.id] = json_of_witness(r.space, ref.witness);
      }
      pairs.push_back(std::move(entry));
    }
    out << json{{"max_points", report.max_points},
                {"representatives", report.representatives},
                {"pairs", std::move(pairs)}}
               .dump()
        << "\n";
  } else {
    for (const SurveyPair& pair : report.pairs) {
      out << "validates " << pair.validates << ", refutes " << pair.refutes << ": ";
      if (pair.witness.has_value())
        out << "countermodel at n=" << pair.witness->space.point_count() << "\n";
      else
        out << "none up to n=" << report.max_points << "\n";
    }
  }
  return 0;
}

int cmd_verify_classes(Context& ctx, int max_points, std::ostream& out) {
  ClassReport report = verify_equivalence_classes(ctx.catalog(), max_points, ctx.jobs, ctx.cap);
  if (ctx.format == "json") {
    json violations = json::array();
    for (const ClassViolation& v : report.violations) {
      json members = json::object();
      for (const auto& [id, valid] : v.member_validity) members[id] = valid;
      violations.push_back({{"n", v.n},
                            {"code", v.code.hex()},
                            {"class", to_string(v.eq_class)},
                            {"members", std::move(members)}});
    }
    out << json{{"max_points", report.max_points},
                {"spaces_checked", report.spaces_checked},
                {"violations", std::move(violations)}}
               .dump()
        << "\n";
  } else {
    out << "checked " << report.spaces_checked << " spaces up to " << report.max_points
        << " points: " << report.violations.size() << " violation(s)\n";
    for (const ClassViolation& v : report.violations) {
      out << "  " << to_string(v.eq_class) << " disagrees on space " << v.code.hex() << ":";
      for (const auto& [id, valid] : v.member_validity) out << " " << id << "=" << (valid ? "T" : "F");
      out << "\n";
    }
  }
  return report.violations.empty() ? 0 : 1;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Context ctx;
  CLI::App app{"finite topological models for intuitionistic propositional logic"};
  app.name("topocheck");
  app.add_option("--format", ctx.format, "output format")
      ->check(CLI::IsMember({"text", "json", "dot"}))
      ->capture_default_str();
  app.add_option("--jobs", ctx.jobs, "worker threads (env TOPOCHECK_JOBS)")
      ->check(CLI::PositiveNumber);
  app.add_option("--cap", ctx.cap, "point cap")
      ->check(CLI::Range(1, kHardPointLimit))
      ->capture_default_str();
  app.add_option("--catalog", ctx.catalog_path, "principle catalog JSON file");
  app.require_subcommand(1);

  std::string space_arg, valuation_arg, formula_arg, dot_path;
  std::vector<std::string> ids, validate, refute;
  int n_points = 0, max_points = 0;
  bool up_to_homeo = false, strong = false;

  CLI::App* eval_cmd = app.add_subcommand("eval", "evaluate a formula to its truth set");
  eval_cmd->add_option("space", space_arg, "built-in name, JSON file, or inline subbase")->required();
  eval_cmd->add_option("valuation", valuation_arg, "e.g. \"P={1,2};Q={}\"")->required();
  eval_cmd->add_option("formula", formula_arg)->required();

  CLI::App* check_cmd = app.add_subcommand("check", "check principles on a space");
  check_cmd->add_option("space", space_arg)->required();
  check_cmd->add_option("principles", ids, "principle ids")->required();

  CLI::App* separate_cmd = app.add_subcommand("separate", "search for a separating model");
  separate_cmd->add_option("--validate", validate, "principles the model must validate")
      ->delimiter(',');
  separate_cmd->add_option("--refute", refute, "principles the model must refute")->delimiter(',');
  separate_cmd->add_option("--max", max_points, "largest point count to search")->required();
  separate_cmd->add_flag("--strong", strong, "demand strong counterexamples");

  CLI::App* profile_cmd = app.add_subcommand("profile", "validity of every catalog entry");
  profile_cmd->add_option("space", space_arg)->required();

  CLI::App* enumerate_cmd = app.add_subcommand("enumerate", "stream all topologies on n points");
  enumerate_cmd->add_option("n", n_points)->required();
  enumerate_cmd->add_flag("--up-to-homeo", up_to_homeo, "one representative per homeomorphism class");

  CLI::App* survey_cmd = app.add_subcommand("survey", "pairwise implication survey");
  survey_cmd->add_option("--max", max_points)->required();
  survey_cmd->add_option("--dot", dot_path, "write the implication digraph to a file");

  CLI::App* verify_cmd = app.add_subcommand("verify-classes", "per-space equivalence class check");
  verify_cmd->add_option("--max", max_points)->required();

  for (CLI::App* sub : {eval_cmd, check_cmd, separate_cmd, profile_cmd, enumerate_cmd, survey_cmd,
                        verify_cmd})
    sub->fallthrough();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  if (ctx.format == "dot" && !survey_cmd->parsed()) {
    err << "error: --format dot applies only to survey\n";
    return 2;
  }

  try {
    if (eval_cmd->parsed()) return cmd_eval(ctx, space_arg, valuation_arg, formula_arg, out);
    if (check_cmd->parsed()) return cmd_check(ctx, space_arg, ids, out);
    if (separate_cmd->parsed())
      return cmd_separate(ctx, validate, refute, max_points, strong, out);
    if (profile_cmd->parsed()) return cmd_profile(ctx, space_arg, out);
    if (enumerate_cmd->parsed()) return cmd_enumerate(ctx, n_points, up_to_homeo, out);
    if (survey_cmd->parsed()) return cmd_survey(ctx, max_points, dot_path, out);
    if (verify_cmd->parsed()) return cmd_verify_classes(ctx, max_points, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace topocheck::cli
