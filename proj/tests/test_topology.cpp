#include <doctest.h>

#include <numeric>
#include <set>
#include <random>

#include "oracles.hpp"
#include "topocheck/space_io.hpp"
#include "topocheck/topology.hpp"

using namespace topocheck;

namespace {

FiniteSpace permuted(const FiniteSpace& s, const std::vector<int>& perm) {
  std::vector<Mask> opens;
  for (Mask u : s.opens()) opens.push_back(oracle::permute_mask(u, perm));
  return FiniteSpace::from_opens(s.labels(), std::move(opens), kHardPointLimit);
}

}  // namespace

TEST_CASE("from_subbase: the two-point space with one open point") {
  FiniteSpace s = FiniteSpace::from_subbase({"0", "1"}, {0b10});
  CHECK(s.opens() == std::vector<Mask>({0b00, 0b10, 0b11}));
}

TEST_CASE("from_subbase: the four-point spaces of the separation example") {
  FiniteSpace t = builtin_space("prop853-T");
  CHECK(t.opens().size() == 6);
  CHECK(t.opens() == std::vector<Mask>({0b0000, 0b0001, 0b0011, 0b0101, 0b0111, 0b1111}));

  FiniteSpace s = builtin_space("prop853-S");
  CHECK(s.opens().size() == 9);
  CHECK(s.opens() ==
        std::vector<Mask>({0b0000, 0b0001, 0b0011, 0b0100, 0b0101, 0b0111, 0b1100, 0b1101, 0b1111}));
}

TEST_CASE("from_subbase matches the intersection-of-topologies oracle") {
  std::mt19937 rng(101);
  for (int n = 1; n <= 4; ++n) {
    Mask full = (Mask(1) << n) - 1;
    for (int trial = 0; trial < 25; ++trial) {
      std::vector<Mask> subbase;
      for (int k = int(rng() % 4); k > 0; --k) subbase.push_back(Mask(rng()) & full);
      std::vector<std::string> labels;
      for (int i = 0; i < n; ++i) labels.push_back(std::to_string(i));
      FiniteSpace s = FiniteSpace::from_subbase(labels, subbase);
      CHECK(s.opens() == oracle::smallest_topology_containing(n, subbase));
    }
  }
}

TEST_CASE("from_subbase closes multi-way intersections") {
  // {1,2,3} ∩ {1,2,4} ∩ {1,3,4} = {1} arises from no single pairwise pass
  FiniteSpace s =
      FiniteSpace::from_subbase({"1", "2", "3", "4"}, {0b0111, 0b1011, 0b1101});
  CHECK(s.is_open(0b0001));
  CHECK(is_topology(4, s.opens()));
  CHECK(s.opens() == oracle::smallest_topology_containing(4, {0b0111, 0b1011, 0b1101}));
}

TEST_CASE("from_subbase: empty subbase gives the indiscrete topology") {
  FiniteSpace s = FiniteSpace::from_subbase({"a", "b", "c"}, {});
  CHECK(s.opens() == std::vector<Mask>({0b000, 0b111}));
}

TEST_CASE("from_subbase: the full set is the given point set, not the union") {
  FiniteSpace s = FiniteSpace::from_subbase({"1", "2", "3"}, {0b001});
  CHECK(s.full() == 0b111);
  CHECK(s.opens() == std::vector<Mask>({0b000, 0b001, 0b111}));
}

TEST_CASE("is_topology examples") {
  CHECK(is_topology(2, {0b00, 0b10, 0b11}));
  CHECK_FALSE(is_topology(2, {0b00, 0b10}));                    // missing the full set
  CHECK_FALSE(is_topology(3, {0b000, 0b001, 0b010, 0b111}));    // missing the union {1,2}
}

TEST_CASE("is_topology agrees with the brute-force oracle on every family (n <= 3)") {
  for (int n = 1; n <= 3; ++n) {
    auto closed = oracle::all_labeled_topologies(n);
    std::set<std::vector<Mask>> closed_set(closed.begin(), closed.end());
    Mask full = (Mask(1) << n) - 1;
    std::vector<Mask> proper;
    for (Mask m = 1; m < full; ++m) proper.push_back(m);
    for (std::uint32_t pick = 0; pick < (1u << proper.size()); ++pick) {
      std::vector<Mask> family{0};
      for (std::size_t i = 0; i < proper.size(); ++i)
        if ((pick >> i) & 1u) family.push_back(proper[i]);
      family.push_back(full);
      std::sort(family.begin(), family.end());
      CHECK(is_topology(n, family) == (closed_set.count(family) != 0));
    }
  }
}

TEST_CASE("interior examples") {
  FiniteSpace t2 = builtin_space("t2");
  CHECK(t2.interior(0b110) == 0b010);  // A = {2,3} → {2}
  CHECK(t2.interior(t2.full()) == t2.full());

  FiniteSpace s = builtin_space("prop853-S");
  CHECK(s.interior(0b1110) == 0b1100);  // A = {2,3,4} → {3,4}
  CHECK_THROWS_AS(s.interior(0b10000), std::invalid_argument);
}

TEST_CASE("heyting implication examples") {
  FiniteSpace t = builtin_space("prop853-T");
  CHECK(t.heyting_imp(0b0011, 0b0101) == 0b0101);  // {1,2} → {1,3} = {1,3}

  FiniteSpace t2 = builtin_space("t2");
  CHECK(t2.heyting_imp(0b001, 0b010) == 0b010);    // {1} → {2} = {2}
  CHECK(t2.heyting_imp(0b001, 0b011) == t2.full());  // U ⊆ V forces X
  CHECK_THROWS_AS(t2.heyting_imp(0b100, 0b010), std::invalid_argument);  // {3} is not open
}

TEST_CASE("pseudo-complement examples") {
  FiniteSpace t2 = builtin_space("t2");
  CHECK(t2.pseudo_complement(0b001) == 0b010);  // ¬{1} = {2}
  CHECK(t2.pseudo_complement(0) == t2.full());

  FiniteSpace sier = builtin_space("sierpinski");
  CHECK(sier.pseudo_complement(0b10) == 0);
}

TEST_CASE("specialization preorder") {
  FiniteSpace disc = builtin_space("discrete:3");
  CHECK(disc.specialization_upsets() == std::vector<Mask>({0b001, 0b010, 0b100}));

  FiniteSpace indisc = builtin_space("indiscrete:3");
  CHECK(indisc.specialization_upsets() == std::vector<Mask>({0b111, 0b111, 0b111}));

  FiniteSpace sier = builtin_space("sierpinski");  // open point 1
  CHECK(sier.specialization_upsets() == std::vector<Mask>({0b11, 0b10}));
}

TEST_CASE("canonical form: relabeling invariance and separation") {
  FiniteSpace open0 = FiniteSpace::from_subbase({"0", "1"}, {0b01});
  FiniteSpace open1 = FiniteSpace::from_subbase({"0", "1"}, {0b10});
  CHECK(open0.canonical_form() == open1.canonical_form());
  CHECK(open0.canonical_form() != builtin_space("discrete:2").canonical_form());
  CHECK(builtin_space("prop853-S").canonical_form() != builtin_space("prop853-T").canonical_form());
}

TEST_CASE("canonical form is invariant under every permutation") {
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 40; ++trial) {
    FiniteSpace s = oracle::random_space(rng, 5);
    std::vector<int> perm(s.point_count());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    CHECK(permuted(s, perm).canonical_form() == s.canonical_form());
  }
}

TEST_CASE("canonical code bytes start with the point count") {
  FiniteSpace sier = builtin_space("sierpinski");
  auto bytes = sier.canonical_form().bytes();
  REQUIRE(bytes.size() == 2);  // 1 + ceil(4/8)
  CHECK(bytes[0] == 2);
  CHECK(sier.canonical_form().hex().substr(0, 2) == "02");
}

TEST_CASE("enumeration: labeled counts and exact families") {
  const int expected[] = {0, 1, 4, 29, 355};
  for (int n = 1; n <= 4; ++n) {
    auto oracle_families = oracle::all_labeled_topologies(n);
    CHECK(int(oracle_families.size()) == expected[n]);
    std::vector<std::vector<Mask>> streamed;
    enumerate_spaces(n, false, [&](const FiniteSpace& s) { streamed.push_back(s.opens()); });
    CHECK(streamed.size() == oracle_families.size());
    std::sort(streamed.begin(), streamed.end());
    std::sort(oracle_families.begin(), oracle_families.end());
    CHECK(streamed == oracle_families);
  }
}

TEST_CASE("enumeration: homeomorphism classes") {
  const std::size_t expected[] = {0, 1, 3, 9, 33};
  for (int n = 1; n <= 4; ++n) {
    auto reps = enumerate_spaces_vec(n, true);
    CHECK(reps.size() == expected[n]);
    CHECK(oracle::count_homeo_classes(oracle::all_labeled_topologies(n), n) == expected[n]);
    // representatives decode their own codes, and arrive in ascending order
    CanonicalCode last{};
    for (const FiniteSpace& rep : reps) {
      CanonicalCode code = rep.canonical_form();
      CHECK(code.n == std::uint8_t(n));
      CHECK(FiniteSpace::from_code(code).opens() == rep.opens());
      CHECK(last < code);
      last = code;
    }
  }
}

TEST_CASE("enumeration: five-point counts match the known sequences") {
  std::size_t labeled = 0;
  enumerate_spaces(5, false, [&](const FiniteSpace&) { ++labeled; });
  CHECK(labeled == 6942);
  std::size_t reps = 0;
  enumerate_spaces(5, true, [&](const FiniteSpace&) { ++reps; });
  CHECK(reps == 139);
}

TEST_CASE("enumeration is deterministic across worker counts") {
  auto one = enumerate_spaces_vec(4, true, kDefaultPointCap, 1);
  auto four = enumerate_spaces_vec(4, true, kDefaultPointCap, 4);
  REQUIRE(one.size() == four.size());
  for (std::size_t i = 0; i < one.size(); ++i) CHECK(one[i].opens() == four[i].opens());
}

TEST_CASE("enumeration rejects out-of-range point counts") {
  CHECK_THROWS_AS(enumerate_spaces_vec(0, false), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_spaces_vec(7, false), std::invalid_argument);       // default cap 6
  CHECK_NOTHROW(enumerate_spaces_vec(5, true, 5));
  CHECK_THROWS_AS(enumerate_spaces_vec(8, false, 8), std::invalid_argument);    // hard limit 7
}

TEST_CASE("residuation law on random spaces") {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 2000; ++trial) {
    FiniteSpace s = oracle::random_space(rng, 6);
    const auto& opens = s.opens();
    Mask u = opens[rng() % opens.size()];
    Mask v = opens[rng() % opens.size()];
    Mask w = opens[rng() % opens.size()];
    bool below = ((u & v) & ~w) == 0;
    bool residuated = (u & ~s.heyting_imp(v, w)) == 0;
    CHECK(below == residuated);
  }
}

TEST_CASE("interior is monotone, idempotent, deflationary and fixes opens") {
  std::mt19937 rng(4242);
  for (int trial = 0; trial < 500; ++trial) {
    FiniteSpace s = oracle::random_space(rng, 6);
    Mask a = Mask(rng()) & s.full();
    Mask b = a | (Mask(rng()) & s.full());
    Mask ia = s.interior(a);
    CHECK((ia & ~a) == 0);                       // deflationary
    CHECK((ia & ~s.interior(b)) == 0);           // monotone under a ⊆ b
    CHECK(s.interior(ia) == ia);                 // idempotent
    CHECK(s.is_open(ia));
    Mask u = s.opens()[rng() % s.opens().size()];
    CHECK(s.interior(u) == u);                   // fixes opens
  }
}

TEST_CASE("triple pseudo-complement collapses") {
  std::mt19937 rng(31337);
  for (int trial = 0; trial < 300; ++trial) {
    FiniteSpace s = oracle::random_space(rng, 6);
    Mask u = s.opens()[rng() % s.opens().size()];
    Mask nu = s.pseudo_complement(u);
    CHECK(s.pseudo_complement(s.pseudo_complement(nu)) == nu);
  }
}

TEST_CASE("space JSON round trip") {
  std::mt19937 rng(777777);
  for (int trial = 0; trial < 50; ++trial) {
    FiniteSpace s = oracle::random_space(rng, 6);
    FiniteSpace back = space_from_json(space_to_json(s));
    CHECK(back.labels() == s.labels());
    CHECK(back.opens() == s.opens());
  }
  // a given "opens" family is validated, not closed
  CHECK_THROWS_AS(space_from_json(R"({"points":[1,2,3],"opens":[[],[1],[2],[1,2,3]]})"),
                  std::invalid_argument);
  // omitted points default to the union of the members
  FiniteSpace u = space_from_json(R"({"subbase":[[1],[1,2]]})");
  CHECK(u.labels() == std::vector<std::string>({"1", "2"}));
}

TEST_CASE("from_code validates the relation") {
  // not reflexive: cell (0,0) = 0
  CHECK_THROWS_AS(FiniteSpace::from_code({2, 0b0111}), std::invalid_argument);
  // not transitive: 0 below 1 and 1 below 2, but 0 not below 2
  CHECK_THROWS_AS(FiniteSpace::from_code({3, 0b110011001}), std::invalid_argument);
}

TEST_CASE("construction errors") {
  std::vector<std::string> eight{"0", "1", "2", "3", "4", "5", "6", "7"};
  CHECK_THROWS_AS(FiniteSpace::from_subbase(eight, {}), std::invalid_argument);  // beyond cap
  CHECK_THROWS_AS(FiniteSpace::from_subbase(eight, {}, kHardPointLimit), std::invalid_argument);
  CHECK_THROWS_AS(FiniteSpace::from_subbase({"a", "a"}, {}), std::invalid_argument);
  CHECK_THROWS_AS(FiniteSpace::from_subbase({"a"}, {0b10}), std::invalid_argument);
  CHECK_THROWS_AS(FiniteSpace::from_opens({"a", "b"}, {0b00, 0b01}), std::invalid_argument);
  FiniteSpace s = builtin_space("t2");
  std::vector<std::string> bad{"9"};
  CHECK_THROWS_AS(s.mask_of_labels(bad), std::invalid_argument);
}
