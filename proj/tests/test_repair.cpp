#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mpb/finset.hpp"
#include "mpb/repair.hpp"
#include "oracle.hpp"
#include "support.hpp"

using namespace mpb;

namespace {

void check_repaired(const GluingFamily& original, const RepairedFamily& r) {
  CHECK(validate_family(r.family).empty());
  CHECK(r.family.labels == original.labels);
  for (std::size_t i = 0; i < original.size(); ++i) CHECK(r.family.pieces[i]->same_presentation(*original.pieces[i]));
  CHECK(r.cocycle.overall);
  CHECK(check_cocycle(r.family).overall);
  CHECK(r.comparison_bijective);
  CHECK(pullback_space(r.family, all_indices(r.family)).subspace == r.original.space.subspace);
}

}  // namespace

TEST_CASE("example 2 is repaired with a two-dimensional B'_23") {
  const GluingFamily fam = family_fixture("example2");
  const RepairedFamily r = repair(fam);
  check_repaired(fam, r);
  const FiniteGluingSpec spec = tcirc_a_spec();
  CHECK(r.family.overlap(1, 2)->dim() == 2);
  CHECK(oracle::naive_shared_classes(spec, 1, 2) == 2);
  CHECK(r.family.overlap(0, 1)->dim() == oracle::naive_shared_classes(spec, 0, 1));
  CHECK(r.family.overlap(0, 2)->dim() == oracle::naive_shared_classes(spec, 0, 2));
  // Conditions (2) and (3) now hold as well.
  const TheoremReport t = check_theorem_equivalence(r.family);
  CHECK(t.condition2_holds);
  CHECK(t.condition3_holds);
}

TEST_CASE("example 3 keeps its overlap dimensions") {
  const GluingFamily fam = family_fixture("example3");
  const RepairedFamily r = repair(fam);
  check_repaired(fam, r);
  for (const auto& [key, alg] : fam.overlaps) CHECK(r.family.overlap(key.first, key.second)->dim() == alg->dim());
}

TEST_CASE("example 1 is refused: B^π -> B_2 is not onto") {
  const GluingFamily fam = family_fixture("example1");
  try {
    repair(fam);
    FAIL("repair should have been refused");
  } catch (const RepairRefused& e) {
    REQUIRE(e.non_surjective_piece.has_value());
    CHECK(*e.non_surjective_piece == 1);
    CHECK_FALSE(e.distributivity_witness.has_value());
  }
}

TEST_CASE("a non-distributive kernel lattice in B^π is refused with a witness") {
  const GluingFamily fam = mpb::testing::three_lines_family();
  try {
    repair(fam);
    FAIL("repair should have been refused");
  } catch (const RepairRefused& e) {
    CHECK_FALSE(e.non_surjective_piece.has_value());
    REQUIRE(e.distributivity_witness.has_value());
    const auto& [a, b, c] = *e.distributivity_witness;
    CHECK(intersect(a, sum(b, c)) != sum(intersect(a, b), intersect(a, c)));
  }
}

TEST_CASE("property: repair on the random corpus") {
  std::size_t repaired = 0, refused = 0;
  for (auto seed : mpb::testing::corpus_seeds(80)) {
    const FiniteGluingSpec spec = random_spec(seed);
    const GluingFamily fam = dualize(spec);
    bool all_embedded = true;
    for (std::size_t i = 0; i < spec.size(); ++i)
      all_embedded = all_embedded && check_embedding(spec, {i}, all_indices(fam)).injective;
    if (!all_embedded) {
      CHECK_THROWS_AS(repair(fam), RepairRefused);
      ++refused;
      continue;
    }
    const RepairedFamily r = repair(fam);
    check_repaired(fam, r);
    for (const auto& [key, alg] : r.family.overlaps)
      CHECK(alg->dim() == oracle::naive_shared_classes(spec, key.first, key.second));
    ++repaired;
  }
  CHECK(repaired > 0);
  CHECK(refused > 0);
}
