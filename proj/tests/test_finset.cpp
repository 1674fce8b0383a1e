#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mpb/finset.hpp"
#include "mpb/specfile.hpp"
#include "oracle.hpp"
#include "support.hpp"

#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

using namespace mpb;

namespace {

IndexSet everything(const FiniteGluingSpec& s) {
  IndexSet all(s.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return all;
}

std::size_t point_count(const FiniteGluingSpec& s, const IndexSet& k) {
  std::size_t n = 0;
  for (auto i : k) n += s.spaces[i].size();
  return n;
}

std::string golden_path(std::uint64_t seed) {
  return std::string(MPB_GOLDEN_DIR) + "/random_spec_" + std::to_string(seed) + ".json";
}

}  // namespace

TEST_CASE("chain points") {
  CHECK(chain_points(3) == std::vector<std::string>{"-1", "0", "1"});
  CHECK(chain_points(2) == std::vector<std::string>{"-1", "1"});
  CHECK(chain_points(5) == std::vector<std::string>{"-1", "-1/2", "0", "1/2", "1"});
  CHECK_THROWS_AS(chain_points(1), std::invalid_argument);
}

TEST_CASE("glue: fixture class counts") {
  const FiniteGluingSpec tstar = tstar_spec();
  const GluedSpace g = glue(tstar, everything(tstar));
  CHECK(g.classes.size() == 5);
  CHECK(oracle::naive_class_count(tstar, everything(tstar)) == 5);
  std::size_t largest = 0;
  for (const auto& c : g.classes) largest = std::max(largest, c.size());
  CHECK(largest == 5);

  const FiniteGluingSpec a = tcirc_a_spec();
  CHECK(glue(a, everything(a)).classes.size() == 6);
  CHECK(oracle::naive_class_count(a, everything(a)) == 6);

  const GluedSpace single = glue(a, {1});
  CHECK(single.classes.size() == 3);
  CHECK(single.merges == 0);
}

TEST_CASE("check_embedding: fixtures") {
  const FiniteGluingSpec a = tcirc_a_spec();
  const IndexSet all = everything(a);
  for (std::size_t i = 0; i < 3; ++i) CHECK(check_embedding(a, {i}, all).injective);
  const EmbeddingCheck e = check_embedding(a, {1, 2}, all);
  CHECK_FALSE(e.injective);
  REQUIRE(e.merged.size() == 1);
  // The merged classes are those of 1_2 and 1_3.
  const GluedSpace partial = glue(a, {1, 2});
  const std::set<PointRef> firsts = {partial.classes[e.merged[0].first].front(),
                                     partial.classes[e.merged[0].second].front()};
  CHECK(firsts == std::set<PointRef>{{1, 2}, {2, 2}});

  const FiniteGluingSpec c = tcirc_c_spec();
  for (std::size_t mask = 1; mask < 8; ++mask) {
    IndexSet k;
    for (std::size_t i = 0; i < 3; ++i)
      if (mask >> i & 1) k.push_back(i);
    CHECK(check_embedding(c, k, everything(c)).injective);
  }

  const FiniteGluingSpec t = tstar_spec();
  CHECK_FALSE(check_embedding(t, {1}, everything(t)).injective);
  CHECK(check_embedding(t, {0}, everything(t)).injective);
}

TEST_CASE("dualize: endpoint chains reproduce the evaluation maps") {
  const GluingFamily fam = family_fixture("example2", 2);
  // f -> f(1) on I_1 and I_2, f -> f(-1) between I_2 and I_3.
  CHECK(fam.map(0, 1).matrix == MatrixQ::from_rows(2, {{0, 1}}));
  CHECK(fam.map(1, 0).matrix == MatrixQ::from_rows(2, {{0, 1}}));
  CHECK(fam.map(1, 2).matrix == MatrixQ::from_rows(2, {{1, 0}}));
  CHECK(fam.map(2, 1).matrix == MatrixQ::from_rows(2, {{1, 0}}));
  CHECK(validate_family(fam).empty());

  const GluingFamily three = family_fixture("example3");
  CHECK(three.overlap(1, 2)->dim() == 2);
  CHECK(three.overlap(0, 1)->dim() == 1);
  CHECK(three.overlap(0, 1) == three.overlap(1, 0));
}

TEST_CASE("dualize: empty identification gives the zero overlap") {
  FiniteGluingSpec s;
  s.labels = {"a", "b"};
  s.spaces = {{"x", "y"}, {"z"}};
  const GluingFamily fam = dualize(s);
  CHECK(fam.overlap(0, 1)->dim() == 0);
  CHECK(fam.map(0, 1).matrix.rows() == 0);
  CHECK(fam.map(1, 0).matrix.cols() == 1);
  CHECK(validate_family(fam).empty());
}

TEST_CASE("duality_check: fixtures and the one-piece spec") {
  const DualityReport t = duality_check(tstar_spec());
  CHECK(t.consistent);
  CHECK(t.pullback_dim == 5);
  CHECK(t.class_count == 5);
  CHECK(duality_check(tcirc_a_spec()).consistent);
  CHECK(duality_check(tcirc_c_spec()).consistent);

  FiniteGluingSpec one;
  one.labels = {"solo"};
  one.spaces = {{"p", "q"}};
  const DualityReport r = duality_check(one);
  CHECK(r.consistent);
  CHECK(r.pullback_dim == 2);
}

TEST_CASE("validate_spec rejects non-bijective identifications") {
  FiniteGluingSpec s;
  s.labels = {"a", "b"};
  s.spaces = {{"x", "y"}, {"z", "w"}};
  s.identifications[{0, 1}] = {{0, 0}, {1, 0}};
  CHECK_THROWS_AS(validate_spec(s), InvalidSpec);
  s.identifications[{0, 1}] = {{0, 5}};
  CHECK_THROWS_AS(validate_spec(s), InvalidSpec);
  s.identifications[{0, 1}] = {{0, 1}, {1, 0}};
  CHECK_NOTHROW(validate_spec(s));
}

TEST_CASE("zero identifications and twin spaces") {
  FiniteGluingSpec s;
  s.labels = {"a", "b", "c"};
  s.spaces = {{"1", "2"}, {"1", "2", "3"}, {"1"}};
  CHECK(glue(s, everything(s)).classes.size() == 6);
  for (std::size_t i = 0; i < 3; ++i) CHECK(check_embedding(s, {i}, everything(s)).injective);

  FiniteGluingSpec twins;
  twins.labels = {"a", "b"};
  twins.spaces = {{"1", "2", "3"}, {"1", "2", "3"}};
  twins.identifications[{0, 1}] = {{0, 0}, {1, 1}, {2, 2}};
  CHECK(glue(twins, everything(twins)).classes.size() == 3);
}

TEST_CASE("random_spec respects its bounds and is deterministic") {
  for (auto seed : mpb::testing::corpus_seeds(100)) {
    const FiniteGluingSpec s = random_spec(seed);
    CHECK(s.size() >= 1);
    CHECK(s.size() <= 6);
    for (const auto& sp : s.spaces) {
      CHECK(!sp.empty());
      CHECK(sp.size() <= 12);
    }
    CHECK_NOTHROW(validate_spec(s));
    CHECK(gluing_to_json(random_spec(seed)) == gluing_to_json(s));
  }
}

TEST_CASE("random_spec golden files") {
  const bool update = std::getenv("MPB_UPDATE_GOLDEN") != nullptr;
  for (std::uint64_t seed : {1u, 2u, 3u, 42u}) {
    const std::string text = gluing_to_json(random_spec(seed)).dump(2) + "\n";
    const std::string path = golden_path(seed);
    if (update) {
      std::ofstream(path) << text;
      continue;
    }
    std::ifstream in(path);
    REQUIRE_MESSAGE(in.good(), "missing golden file " << path);
    std::stringstream buf;
    buf << in.rdbuf();
    CHECK(buf.str() == text);
  }
}

TEST_CASE("property: glue accounting and monotonicity") {
  for (auto seed : mpb::testing::corpus_seeds(150)) {
    const FiniteGluingSpec s = random_spec(seed);
    const IndexSet all = everything(s);
    const GluedSpace full = glue(s, all);
    CHECK(full.classes.size() == point_count(s, all) - full.merges);
    CHECK(full.classes.size() == oracle::naive_class_count(s, all));
    for (std::size_t i = 0; i < s.size(); ++i)
      for (std::size_t j = i + 1; j < s.size(); ++j) {
        const GluedSpace part = glue(s, {i, j});
        CHECK(part.classes.size() == oracle::naive_class_count(s, {i, j}));
        // Every class of the partial gluing lands inside a single class.
        for (const auto& cls : part.classes) {
          std::set<std::size_t> images;
          for (const auto& [piece, point] : cls) images.insert(full.class_of.at(piece).at(point));
          CHECK(images.size() == 1);
        }
      }
    CHECK(duality_check(s).consistent);
  }
}
