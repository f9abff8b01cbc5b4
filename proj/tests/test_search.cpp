#include <doctest.h>

#include "oracles.hpp"
#include "topocheck/search.hpp"
#include "topocheck/space_io.hpp"

using namespace topocheck;

namespace {

// Independent Appendix-style validity checks over a raw open-set family,
// used to cross-check the separation search on labeled topologies.
Mask o_interior(const std::vector<Mask>& opens, Mask a) {
  Mask r = 0;
  for (Mask u : opens)
    if ((u & ~a) == 0) r |= u;
  return r;
}

bool o_lem(const std::vector<Mask>& opens, Mask full) {
  for (Mask u : opens)
    if ((u | o_interior(opens, ~u & full)) != full) return false;
  return true;
}

bool o_wlem(const std::vector<Mask>& opens, Mask full) {
  for (Mask u : opens) {
    Mask nu = o_interior(opens, ~u & full);
    if ((nu | o_interior(opens, ~nu & full)) != full) return false;
  }
  return true;
}

bool o_dgp(const std::vector<Mask>& opens, Mask full) {
  for (Mask u : opens)
    for (Mask v : opens)
      if ((o_interior(opens, (~u & full) | v) | o_interior(opens, (~v & full) | u)) != full)
        return false;
  return true;
}

bool o_valid(const std::string& id, const std::vector<Mask>& opens, Mask full) {
  if (id == "LEM") return o_lem(opens, full);
  if (id == "WLEM") return o_wlem(opens, full);
  return o_dgp(opens, full);
}

// Smallest n <= max such that some labeled topology validates a and
// refutes b; 0 when none exists.
int o_minimal_separation(const std::string& a, const std::string& b, int max) {
  for (int n = 1; n <= max; ++n) {
    Mask full = (Mask(1) << n) - 1;
    for (const auto& family : oracle::all_labeled_topologies(n))
      if (o_valid(a, family, full) && !o_valid(b, family, full)) return n;
  }
  return 0;
}

}  // namespace

TEST_CASE("separating WLEM from DGP needs four points") {
  const Catalog& c = Catalog::builtin();
  SeparationSearch found = find_separating_model(c, {"WLEM"}, {"DGP"}, 4);
  REQUIRE(found.result.has_value());
  CHECK(found.result->points_reached == 4);
  CHECK(valid_schema(found.result->space, c.require("WLEM")));
  CHECK_FALSE(valid_schema(found.result->space, c.require("DGP")));

  CHECK_FALSE(find_separating_model(c, {"WLEM"}, {"DGP"}, 3).result.has_value());

  // the four-point space from the catalogued example qualifies
  FiniteSpace t = builtin_space("prop853-T");
  CHECK(valid_schema(t, c.require("WLEM")));
  CHECK_FALSE(valid_schema(t, c.require("DGP")));
}

TEST_CASE("separating DGP from LEM: the two-point space with one open point") {
  const Catalog& c = Catalog::builtin();
  SeparationSearch found = find_separating_model(c, {"DGP"}, {"LEM"}, 4);
  REQUIRE(found.result.has_value());
  CHECK(found.result->points_reached == 2);
  CHECK(found.result->space.canonical_form() == builtin_space("sierpinski").canonical_form());
  REQUIRE(found.result->refuted.size() == 1);
  CHECK(found.result->refuted.front().id == "LEM");
  CHECK(found.result->refuted.front().truth_set != found.result->space.full());
}

TEST_CASE("no model validates LEM and refutes WLEM") {
  SeparationSearch none = find_separating_model(Catalog::builtin(), {"LEM"}, {"WLEM"}, 5);
  CHECK_FALSE(none.result.has_value());
  CHECK(none.points_reached == 5);
}

TEST_CASE("search errors") {
  CHECK_THROWS_AS(find_separating_model(Catalog::builtin(), {"NOPE"}, {}, 3),
                  std::invalid_argument);
  CHECK_THROWS_AS(find_separating_model(Catalog::builtin(), {"LEM"}, {}, 9),
                  std::invalid_argument);
}

TEST_CASE("strong refutation searches") {
  // No strong counterexample to LEM exists anywhere.
  CHECK_FALSE(
      find_separating_model(Catalog::builtin(), {}, {"LEM"}, 4, /*strong=*/true).result.has_value());

  // A schema that is strongly refutable: ~p on any space, at p = X.
  Catalog custom = Catalog::from_json(R"([{"id":"NOTP","schema":"~p"}])");
  SeparationSearch found = find_separating_model(custom, {}, {"NOTP"}, 2, /*strong=*/true);
  REQUIRE(found.result.has_value());
  CHECK(found.result->points_reached == 1);
}

TEST_CASE("separation agrees with the labeled brute force (n <= 3)") {
  const Catalog& c = Catalog::builtin();
  const char* ids[] = {"LEM", "WLEM", "DGP"};
  for (const char* a : ids)
    for (const char* b : ids) {
      if (std::string(a) == b) continue;
      int oracle_n = o_minimal_separation(a, b, 3);
      SeparationSearch search = find_separating_model(c, {a}, {b}, 3);
      if (oracle_n == 0) {
        CHECK_FALSE(search.result.has_value());
      } else {
        REQUIRE(search.result.has_value());
        CHECK(search.result->points_reached == oracle_n);
      }
    }
}

TEST_CASE("absence is monotone in the bound") {
  const Catalog& c = Catalog::builtin();
  for (int k = 1; k <= 3; ++k)
    CHECK_FALSE(find_separating_model(c, {"WLEM"}, {"DGP"}, k).result.has_value());
}

TEST_CASE("search is deterministic across worker counts") {
  const Catalog& c = Catalog::builtin();
  SeparationSearch one = find_separating_model(c, {"WLEM"}, {"DGP"}, 4, false, 1);
  SeparationSearch four = find_separating_model(c, {"WLEM"}, {"DGP"}, 4, false, 4);
  REQUIRE(one.result.has_value());
  REQUIRE(four.result.has_value());
  CHECK(one.spaces_examined == four.spaces_examined);
  CHECK(one.result->space.opens() == four.result->space.opens());
  CHECK(one.result->refuted.front().witness == four.result->refuted.front().witness);
}

TEST_CASE("profiles") {
  const Catalog& c = Catalog::builtin();

  SpaceProfile disc = profile(c, builtin_space("discrete:3"));
  CHECK(std::all_of(disc.valid.begin(), disc.valid.end(), [](std::uint8_t v) { return v == 1; }));

  SpaceProfile sier = profile(c, builtin_space("sierpinski"));
  auto value = [&](const SpaceProfile& p, const std::string& id) {
    for (std::size_t i = 0; i < p.ids.size(); ++i)
      if (p.ids[i] == id) return p.valid[i] != 0;
    FAIL("missing id");
    return false;
  };
  CHECK_FALSE(value(sier, "LEM"));
  CHECK(value(sier, "WLEM"));
  CHECK(value(sier, "DGP"));
  CHECK(value(sier, "DM2"));

  SpaceProfile t2 = profile(c, builtin_space("t2"));
  CHECK_FALSE(value(t2, "LEM"));
  CHECK_FALSE(value(t2, "WLEM"));
  CHECK_FALSE(value(t2, "DGP"));
  CHECK(t2.ids.size() == c.entries().size());
}

TEST_CASE("survey over four points") {
  SurveyReport report = survey(Catalog::builtin(), 4);
  CHECK(report.representatives == std::vector<std::string>({"LEM", "WLEM", "DGP"}));
  REQUIRE(report.pairs.size() == 6);

  auto pair = [&](const std::string& a, const std::string& b) -> const SurveyPair& {
    for (const SurveyPair& p : report.pairs)
      if (p.validates == a && p.refutes == b) return p;
    throw std::logic_error("missing pair");
  };
  CHECK_FALSE(pair("LEM", "DGP").witness.has_value());
  CHECK_FALSE(pair("LEM", "WLEM").witness.has_value());
  CHECK_FALSE(pair("DGP", "WLEM").witness.has_value());
  CHECK(pair("DGP", "LEM").witness->space.point_count() == 2);
  CHECK(pair("WLEM", "LEM").witness->space.point_count() == 2);
  CHECK(pair("WLEM", "DGP").witness->space.point_count() == 4);

  std::string dot = to_dot(report);
  CHECK(dot.find("\"LEM\" -> \"DGP\"") != std::string::npos);
  CHECK(dot.find("\"LEM\" -> \"WLEM\"") != std::string::npos);
  CHECK(dot.find("\"DGP\" -> \"WLEM\"") != std::string::npos);
  CHECK(dot.find("\"DGP\" -> \"LEM\"") == std::string::npos);
  CHECK(dot.find("n<=4") != std::string::npos);
}

TEST_CASE("survey minimal witnesses match the standalone search") {
  const Catalog& c = Catalog::builtin();
  SurveyReport report = survey(c, 3);
  for (const SurveyPair& pair : report.pairs) {
    SeparationSearch direct = find_separating_model(c, {pair.validates}, {pair.refutes}, 3);
    CHECK(pair.witness.has_value() == direct.result.has_value());
    if (pair.witness.has_value()) {
      CHECK(pair.witness->space.opens() == direct.result->space.opens());
      CHECK(pair.spaces_examined == direct.spaces_examined);
    }
  }
}

TEST_CASE("verify_equivalence_classes finds no violations") {
  ClassReport report = verify_equivalence_classes(Catalog::builtin(), 3);
  CHECK(report.spaces_checked == 13);  // 1 + 3 + 9
  CHECK(report.violations.empty());
}

TEST_CASE("verify_equivalence_classes reports a planted violation") {
  // DNE misfiled next to WLEM: the two disagree on the Sierpinski space.
  Catalog broken = Catalog::from_json(R"([
    {"id": "WLEM", "schema": "~p | ~~p", "class": "WLEM-class"},
    {"id": "BAD",  "schema": "~~p -> p", "class": "WLEM-class"}
  ])");
  ClassReport report = verify_equivalence_classes(broken, 2);
  REQUIRE_FALSE(report.violations.empty());
  CHECK(report.violations.front().eq_class == EqClass::Wlem);
}
